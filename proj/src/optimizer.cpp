// Copyright 2026 The qfridge Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "qfridge/optimizer.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <numeric>
#include <optional>
#include <random>
#include <string>
#include <vector>

namespace qfridge {

namespace {

constexpr int kFree = 4;  // ln E3, ln p2, ln p3, ln g
constexpr int kCouplingAxis = 3;
constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kPostHocSlack = 1e-9;
constexpr double kCoolingSlack = 1e-12;

using Point = std::array<double, kFree>;

struct BudgetExhausted {};

struct Candidate {
  Point v{};
  double TS = kInf;
  double max_w = kInf;
};

std::vector<double> log_space(double lo, double hi, int n) {
  std::vector<double> out(static_cast<std::size_t>(n));
  if (n == 1) {
    out[0] = hi;
    return out;
  }
  const double a = std::log(lo);
  const double b = std::log(hi);
  for (int i = 0; i < n; ++i) out[static_cast<std::size_t>(i)] = std::exp(a + (b - a) * i / (n - 1));
  return out;
}

class Search {
 public:
  Search(const OptimizationProblem& problem, long budget, const SearchOptions& options)
      : problem_(problem), budget_(budget), options_(options) {
    const SearchBounds& b = problem.bounds;
    lo_ = {std::log(b.E3_min), std::log(b.p2_max * b.lower_ratio),
           std::log(b.p3_max * b.lower_ratio), std::log(b.g_max * b.lower_ratio)};
    hi_ = {std::log(b.E3_max), std::log(b.p2_max), std::log(b.p3_max), std::log(b.g_max)};
  }

  const Point& lower() const { return lo_; }
  const Point& upper() const { return hi_; }

  FridgeParams params_at(const Point& v) const {
    return problem_.params(std::exp(v[0]), std::exp(v[1]), std::exp(v[2]), std::exp(v[3]));
  }

  Point clamp(Point v) const {
    for (int i = 0; i < kFree; ++i) v[i] = std::clamp(v[i], lo_[i], hi_[i]);
    return v;
  }

  Candidate evaluate(const Point& v) {
    if (evaluations_ >= budget_) throw BudgetExhausted{};
    ++evaluations_;
    Candidate c;
    c.v = v;
    try {
      const XBlockState state = solve_x_block(params_at(v));
      const DensityMatrix rho = state.to_density_matrix();
      double ground = 0.0;
      for (int i = 0; i < 4; ++i) ground += state.populations[static_cast<std::size_t>(i)];
      const double gamma = ground - thermal_population(problem_.E1, problem_.TC);
      const double excited = 1.0 - ground;
      // Inverted or degenerate populations have no temperature; TS stays infinite.
      if (std::isfinite(ground) && ground > excited && excited > 0.0) {
        c.TS = temperature_from_excess(gamma, problem_.E1, problem_.TC);
      }
      c.max_w = std::max({witness_value(rho, WitnessSet::r_ch()),
                          witness_value(rho, WitnessSet::c_rh()),
                          witness_value(rho, WitnessSet::cr_h())});
    } catch (const Error&) {
      ++failures_;
      return c;
    }
    if (!std::isfinite(c.TS)) return c;
    if (!best_any_ || c.TS < best_any_->TS) best_any_ = c;
    if (c.max_w <= 0.0) {
      ++feasible_;
      if (!best_feasible_ || c.TS < best_feasible_->TS) best_feasible_ = c;
    } else if (!best_infeasible_ || c.TS < best_infeasible_->TS) {
      best_infeasible_ = c;
    }
    return c;
  }

  // Value seen by the simplex search.
  double objective(const Point& v) {
    const Candidate c = evaluate(v);
    if (!problem_.constrained || c.max_w <= 0.0) return c.TS;
    return repair(v);
  }

  // Bisect ln g between the box floor and v's coupling for the separable boundary.
  double repair(const Point& v) {
    Point probe = v;
    double feasible = lo_[kCouplingAxis];
    double infeasible = v[kCouplingAxis];
    probe[kCouplingAxis] = feasible;
    Candidate best = evaluate(probe);
    if (!(best.max_w <= 0.0)) return kInf;
    for (int i = 0; i < options_.repair_steps; ++i) {
      probe[kCouplingAxis] = 0.5 * (feasible + infeasible);
      const Candidate c = evaluate(probe);
      if (c.max_w <= 0.0) {
        feasible = probe[kCouplingAxis];
        if (c.TS < best.TS) best = c;
      } else {
        infeasible = probe[kCouplingAxis];
      }
    }
    return best.TS;
  }

  void boundary_bisection() {
    if (!best_feasible_ || !best_infeasible_) return;
    if (!(best_infeasible_->TS < best_feasible_->TS)) return;
    const Point a = best_feasible_->v;
    const Point b = best_infeasible_->v;
    double t_feasible = 0.0;
    double t_infeasible = 1.0;
    for (int i = 0; i < 50; ++i) {
      const double t = 0.5 * (t_feasible + t_infeasible);
      Point p;
      for (int k = 0; k < kFree; ++k) p[k] = (1.0 - t) * a[k] + t * b[k];
      if (evaluate(p).max_w <= 0.0) {
        t_feasible = t;
      } else {
        t_infeasible = t;
      }
    }
  }

  const std::optional<Candidate>& best() const {
    return problem_.constrained ? best_feasible_ : best_any_;
  }
  long evaluations() const { return evaluations_; }
  long feasible() const { return feasible_; }
  long failures() const { return failures_; }

 private:
  const OptimizationProblem& problem_;
  long budget_;
  SearchOptions options_;
  Point lo_{};
  Point hi_{};
  long evaluations_ = 0;
  long feasible_ = 0;
  long failures_ = 0;
  std::optional<Candidate> best_any_;
  std::optional<Candidate> best_feasible_;
  std::optional<Candidate> best_infeasible_;
};

// Nelder-Mead with every vertex projected into the box.
template <typename F>
std::pair<Point, double> nelder_mead(Search& search, const Point& start, const Point& step, F&& f) {
  constexpr int n = kFree;
  std::array<Point, n + 1> x{};
  std::array<double, n + 1> fx{};
  x[0] = search.clamp(start);
  fx[0] = f(x[0]);
  for (int i = 0; i < n; ++i) {
    Point v = x[0];
    v[i] += step[i];
    if (v[i] > search.upper()[i]) v[i] = x[0][i] - step[i];
    x[i + 1] = search.clamp(v);
    fx[i + 1] = f(x[i + 1]);
  }

  for (int iter = 0; iter < 4000; ++iter) {
    std::array<int, n + 1> order{};
    for (int i = 0; i <= n; ++i) order[i] = i;
    std::sort(order.begin(), order.end(), [&](int a, int b) { return fx[a] < fx[b]; });
    const int best = order[0];
    const int worst = order[n];
    const int second = order[n - 1];

    double diameter = 0.0;
    for (int i = 0; i <= n; ++i) {
      for (int k = 0; k < n; ++k) diameter = std::max(diameter, std::abs(x[i][k] - x[best][k]));
    }
    const double spread = fx[worst] - fx[best];
    if (diameter < 1e-11 || (std::isfinite(spread) && spread <= 1e-16 * std::abs(fx[best]) &&
                             diameter < 1e-7)) {
      break;
    }

    Point centroid{};
    for (int i = 0; i <= n; ++i) {
      if (i == worst) continue;
      for (int k = 0; k < n; ++k) centroid[k] += x[i][k] / n;
    }
    const auto along = [&](double coeff) {
      Point p;
      for (int k = 0; k < n; ++k) p[k] = centroid[k] + coeff * (x[worst][k] - centroid[k]);
      return search.clamp(p);
    };

    const Point reflected = along(-1.0);
    const double f_reflected = f(reflected);
    if (f_reflected < fx[best]) {
      const Point expanded = along(-2.0);
      const double f_expanded = f(expanded);
      if (f_expanded < f_reflected) {
        x[worst] = expanded;
        fx[worst] = f_expanded;
      } else {
        x[worst] = reflected;
        fx[worst] = f_reflected;
      }
      continue;
    }
    if (f_reflected < fx[second]) {
      x[worst] = reflected;
      fx[worst] = f_reflected;
      continue;
    }
    const bool outside = f_reflected < fx[worst];
    const Point contracted = along(outside ? -0.5 : 0.5);
    const double f_contracted = f(contracted);
    if (f_contracted < (outside ? f_reflected : fx[worst])) {
      x[worst] = contracted;
      fx[worst] = f_contracted;
      continue;
    }
    for (int i = 0; i <= n; ++i) {
      if (i == best) continue;
      for (int k = 0; k < n; ++k) x[i][k] = x[best][k] + 0.5 * (x[i][k] - x[best][k]);
      x[i] = search.clamp(x[i]);
      fx[i] = f(x[i]);
    }
  }
  int best = 0;
  for (int i = 1; i <= n; ++i) {
    if (fx[i] < fx[best]) best = i;
  }
  return {x[best], fx[best]};
}

}  // namespace

OptimizationProblem OptimizationProblem::standard(double TR, double TH, double TC, double E1,
                                                  double p1) {
  OptimizationProblem problem;
  problem.E1 = E1;
  problem.p1 = p1;
  problem.TC = TC;
  problem.TR = TR;
  problem.TH = TH;
  problem.bounds.E3_min = E1 + 1e-3;
  // Keep the reversible point inside the window where 0.5 TH would cut it off.
  problem.bounds.E3_max = std::max(0.5 * TH, 4.0 * carnot_E3(E1, TC, TR, TH));
  return problem;
}

void OptimizationProblem::validate() const {
  const SearchBounds& b = bounds;
  for (double v : {E1, p1, TC, TR, TH, b.p2_max, b.p3_max, b.g_max, b.E3_min, b.E3_max,
                   b.lower_ratio}) {
    if (!(v > 0.0) || !std::isfinite(v)) {
      throw ValidationError("optimization problem values and bounds must be finite and positive");
    }
  }
  if (!(TC < TR && TR < TH)) throw ValidationError("bath temperatures must satisfy TC < TR < TH");
  if (!(b.E3_min < b.E3_max)) throw ValidationError("E3 window is empty");
  if (!(b.lower_ratio < 1.0)) throw ValidationError("lower_ratio must be below 1");
  if (b.E3_min <= E1 && b.E3_max >= E1) {
    throw ValidationError("E3 window must exclude E1 (degenerate spectrum)");
  }
}

FridgeParams OptimizationProblem::params(double E3, double p2, double p3, double g) const {
  FridgeParams p;
  p.E1 = E1;
  p.E3 = E3;
  p.g = g;
  p.p1 = p1;
  p.p2 = p2;
  p.p3 = p3;
  p.TC = TC;
  p.TR = TR;
  p.TH = TH;
  return p;
}

CoolingResult optimize(const OptimizationProblem& problem, long budget, std::uint64_t seed,
                       const SearchOptions& options) {
  problem.validate();
  if (budget < 1) throw ValidationError("optimization budget must be positive");
  if (options.grid_E3 < 1 || options.grid_rates < 1) {
    throw ValidationError("grid resolution must be positive");
  }

  Search search(problem, budget, options);
  std::mt19937_64 rng(seed);
  const SearchBounds& b = problem.bounds;
  const auto E3_grid = log_space(b.E3_min, b.E3_max, options.grid_E3);
  const auto p2_grid = log_space(b.p2_max * 1e-3, b.p2_max, options.grid_rates);
  const auto p3_grid = log_space(b.p3_max * 1e-3, b.p3_max, options.grid_rates);
  const auto g_grid = log_space(b.g_max * 1e-3, b.g_max, options.grid_rates);

  Point step{};
  step[0] = options.grid_E3 > 1 ? std::log(b.E3_max / b.E3_min) / (options.grid_E3 - 1) : 0.1;
  for (int k = 1; k < kFree; ++k) {
    step[k] = options.grid_rates > 1 ? std::log(1e3) / (options.grid_rates - 1) : 0.5;
  }

  try {
    // Visit the grid with a golden-ratio stride so that a truncated scan
    // still spans the whole window.
    const long nr = options.grid_rates;
    const long total = static_cast<long>(options.grid_E3) * nr * nr * nr;
    long stride = std::max(1L, std::lround(0.6180339887498949 * static_cast<double>(total)));
    while (std::gcd(stride, total) != 1) ++stride;
    for (long k = 0; k < total; ++k) {
      long idx = static_cast<long>((static_cast<unsigned long long>(k) * stride) % total);
      const long ig = idx % nr;
      idx /= nr;
      const long i3 = idx % nr;
      idx /= nr;
      const long i2 = idx % nr;
      const long ie = idx / nr;
      search.evaluate({std::log(E3_grid[ie]), std::log(p2_grid[i2]), std::log(p3_grid[i3]),
                       std::log(g_grid[ig])});
    }

    if (search.best()) {
      const auto f = [&](const Point& v) { return search.objective(v); };
      Point start = search.best()->v;
      double current = search.best()->TS;
      std::bernoulli_distribution flip(0.5);
      for (int restart = 0; restart < 12; ++restart) {
        Point oriented = step;
        if (restart > 0) {
          for (double& s : oriented) s *= flip(rng) ? -0.5 : 0.5;
        }
        nelder_mead(search, start, oriented, f);
        const double improved = search.best()->TS;
        start = search.best()->v;
        if (!(improved < current - 1e-14 * std::abs(current)) && restart > 0) break;
        current = improved;
      }
    }
    if (problem.constrained) search.boundary_bisection();
  } catch (const BudgetExhausted&) {
  }

  if (!search.best()) {
    throw SolverError(problem.constrained ? "no separable candidate found within budget"
                                          : "no cooling candidate found within budget");
  }

  if (search.best()->TS > problem.TC + kCoolingSlack) {
    throw SolverError("no candidate cools below TC within the search window");
  }

  const Point& v = search.best()->v;
  CoolingResult result;
  result.params_star = search.params_at(v);
  result.TS = search.best()->TS;
  result.evaluations = search.evaluations();
  result.feasible_evaluations = search.feasible();
  result.failures = search.failures();

  const SteadyStateResult full = steady_state(result.params_star);
  result.verified_TS = full.TS;
  result.verified_residual = full.residual;
  result.report = entanglement_report(full.rho);
  result.feasible =
      !problem.constrained || result.report.max_bipartite_witness() <= kPostHocSlack;
  return result;
}

double zeta(double TC, double TS, double TS_star) {
  if (TS > TC || TS_star > TC) {
    throw ValidationError("zeta requires TS <= TC and TS_star <= TC");
  }
  if (!(TS_star < TC)) {
    throw SolverError("zeta undefined: the separable optimum does not cool (TS_star == TC)");
  }
  return (TC - TS) / (TC - TS_star);
}

}  // namespace qfridge
