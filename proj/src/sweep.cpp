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

#include "qfridge/sweep.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <limits>
#include <map>
#include <numeric>
#include <ostream>
#include <thread>

namespace qfridge {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

struct CellSpec {
  int i_TR;
  int i_TH;
  double TR;
  double TH;
};

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

double linear_at(double lo, double hi, int i, int n) {
  return n == 1 ? lo : lo + (hi - lo) * i / (n - 1);
}

double log_at(double lo, double hi, int i, int n) {
  if (n == 1 || i == 0) return lo;
  if (i == n - 1) return hi;
  return std::exp(std::log(lo) + (std::log(hi) - std::log(lo)) * i / (n - 1));
}

SweepRow run_cell(const SweepConfig& config, const CellSpec& cell, std::uint64_t seed) {
  SweepRow row;
  row.i_TR = cell.i_TR;
  row.i_TH = cell.i_TH;
  row.TR = cell.TR;
  row.TH = cell.TH;
  try {
    CoolingResult free = optimize(config.problem(cell.TR, cell.TH, false), config.budget, seed,
                                  config.search);
    const CoolingResult bound = optimize(config.problem(cell.TR, cell.TH, true), config.budget,
                                         seed, config.search);
    // Every separable candidate is also an unconstrained one.
    if (bound.TS < free.TS) {
      free.TS = bound.TS;
      free.report = bound.report;
      row.adopted_constrained = true;
    }
    row.TS = free.TS;
    row.TS_star = bound.TS;
    row.C_C_RH = free.report.C_C_RH;
    row.C_R_CH = free.report.C_R_CH;
    row.C_CR_H = free.report.C_CR_H;
    row.C_GME = free.report.C_GME;
    row.feasible_evals = bound.feasible_evaluations;
    row.evaluations = free.evaluations + bound.evaluations;
    if (!bound.feasible) throw SolverError("constrained optimum fails the post-hoc witness check");
    row.zeta = zeta(config.TC, row.TS, row.TS_star);
  } catch (const Error& e) {
    row.failed = true;
    row.error = e.what();
    row.zeta = kNaN;
  }
  return row;
}

SweepResult run_cells(const SweepConfig& config, const std::vector<CellSpec>& cells, int n_TR,
                      int n_TH) {
  SweepResult result;
  result.n_TR = n_TR;
  result.n_TH = n_TH;
  result.grid.resize(cells.size());

  unsigned threads = config.threads > 0 ? static_cast<unsigned>(config.threads)
                                        : std::max(1U, std::thread::hardware_concurrency());
  threads = std::min<unsigned>(threads, static_cast<unsigned>(std::max<std::size_t>(1, cells.size())));

  std::atomic<std::size_t> next{0};
  const auto worker = [&]() {
    for (std::size_t k = next++; k < cells.size(); k = next++) {
      result.grid[k] = run_cell(config, cells[k], splitmix64(config.seed ^ splitmix64(k)));
    }
  };
  if (threads == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    pool.reserve(threads);
    for (unsigned t = 0; t < threads; ++t) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
  }
  result.boundary = entanglement_boundary(result);
  return result;
}

std::string fmt12(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

void write_row(std::ostream& out, const SweepRow& r) {
  const auto value = [&](double v) { return r.failed ? std::string("nan") : fmt12(v); };
  out << fmt12(r.TR) << ',' << fmt12(r.TH) << ',' << value(r.TS) << ',' << value(r.TS_star) << ','
      << value(r.zeta) << ',' << value(r.C_C_RH) << ',' << value(r.C_R_CH) << ','
      << value(r.C_CR_H) << ',' << value(r.C_GME) << ',' << r.feasible_evals << '\n';
}

std::vector<double> average_ranks(const std::vector<double>& v) {
  std::vector<std::size_t> order(v.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return v[a] < v[b]; });
  std::vector<double> ranks(v.size());
  for (std::size_t i = 0; i < order.size();) {
    std::size_t j = i;
    while (j + 1 < order.size() && v[order[j + 1]] == v[order[i]]) ++j;
    const double rank = 0.5 * static_cast<double>(i + j) + 1.0;
    for (std::size_t k = i; k <= j; ++k) ranks[order[k]] = rank;
    i = j + 1;
  }
  return ranks;
}

}  // namespace

void SweepConfig::validate() const {
  for (double v : {TR_min, TR_max, TH_min, TH_max, TC, E1, p1, p2_max, p3_max, g_max}) {
    if (!(v > 0.0) || !std::isfinite(v)) {
      throw ValidationError("sweep ranges, energies and bounds must be finite and positive");
    }
  }
  if (resolution < 1) throw ValidationError("sweep resolution must be at least 1");
  if (budget < 1) throw ValidationError("optimization budget must be positive");
  if (threads < 0) throw ValidationError("thread count must be non-negative");
  if (TR_min > TR_max || TH_min > TH_max) throw ValidationError("sweep range bounds are reversed");
  if (!(TR_min > TC)) throw ValidationError("TR range must start above TC");
  for (double TH : slices) {
    if (!(TH > TR_max) || !std::isfinite(TH)) {
      throw ValidationError("every TH slice must exceed TR_max");
    }
  }
}

OptimizationProblem SweepConfig::problem(double TR, double TH, bool constrained) const {
  OptimizationProblem problem = OptimizationProblem::standard(TR, TH, TC, E1, p1);
  problem.bounds.p2_max = p2_max;
  problem.bounds.p3_max = p3_max;
  problem.bounds.g_max = g_max;
  problem.constrained = constrained;
  return problem;
}

double SweepRow::max_bipartite_concurrence() const { return std::max({C_C_RH, C_R_CH, C_CR_H}); }

long SweepResult::failures() const {
  return std::count_if(grid.begin(), grid.end(), [](const SweepRow& r) { return r.failed; });
}

double SweepResult::max_zeta() const {
  double best = kNaN;
  for (const auto& r : grid) {
    if (!r.failed && !(r.zeta <= best)) best = r.zeta;
  }
  return best;
}

const SweepRow& SweepResult::at(int i_TR, int i_TH) const {
  if (i_TR < 0 || i_TR >= n_TR || i_TH < 0 || i_TH >= n_TH) {
    throw ValidationError("sweep cell index out of range");
  }
  return grid[static_cast<std::size_t>(i_TH) * static_cast<std::size_t>(n_TR) +
              static_cast<std::size_t>(i_TR)];
}

SweepResult sweep_fig2(const SweepConfig& config) {
  config.validate();
  if (!(config.TH_min > config.TR_max)) {
    throw ValidationError("TH must exceed TR everywhere on the grid");
  }
  const int n = config.resolution;
  std::vector<CellSpec> cells;
  cells.reserve(static_cast<std::size_t>(n) * static_cast<std::size_t>(n));
  for (int j = 0; j < n; ++j) {
    for (int i = 0; i < n; ++i) {
      cells.push_back({i, j, linear_at(config.TR_min, config.TR_max, i, n),
                       log_at(config.TH_min, config.TH_max, j, n)});
    }
  }
  return run_cells(config, cells, n, n);
}

SweepResult sweep_slices(const SweepConfig& config) {
  config.validate();
  if (config.slices.empty()) throw ValidationError("no TH slices given");
  const int n = config.resolution;
  const int m = static_cast<int>(config.slices.size());
  std::vector<CellSpec> cells;
  for (int j = 0; j < m; ++j) {
    for (int i = 0; i < n; ++i) {
      cells.push_back({i, j, linear_at(config.TR_min, config.TR_max, i, n),
                       config.slices[static_cast<std::size_t>(j)]});
    }
  }
  return run_cells(config, cells, n, m);
}

std::vector<BoundaryPoint> entanglement_boundary(const SweepResult& result) {
  std::vector<BoundaryPoint> out;
  for (int j = 0; j < result.n_TH; ++j) {
    for (int i = 0; i + 1 < result.n_TR; ++i) {
      const SweepRow& a = result.at(i, j);
      const SweepRow& b = result.at(i + 1, j);
      if (a.failed || b.failed) continue;
      const double ca = a.max_bipartite_concurrence() - kEntanglementThreshold;
      const double cb = b.max_bipartite_concurrence() - kEntanglementThreshold;
      if ((ca >= 0.0) == (cb >= 0.0)) continue;
      const double t = ca / (ca - cb);
      out.push_back({a.TH, a.TR + t * (b.TR - a.TR)});
    }
  }
  return out;
}

double spearman(const std::vector<double>& x, const std::vector<double>& y) {
  if (x.size() != y.size() || x.size() < 2) {
    throw ValidationError("rank correlation needs two equal-length samples of size >= 2");
  }
  const auto rx = average_ranks(x);
  const auto ry = average_ranks(y);
  const double n = static_cast<double>(x.size());
  const double mean = (n + 1.0) / 2.0;
  double sxy = 0.0;
  double sxx = 0.0;
  double syy = 0.0;
  for (std::size_t i = 0; i < rx.size(); ++i) {
    sxy += (rx[i] - mean) * (ry[i] - mean);
    sxx += (rx[i] - mean) * (rx[i] - mean);
    syy += (ry[i] - mean) * (ry[i] - mean);
  }
  if (sxx == 0.0 || syy == 0.0) return kNaN;
  return sxy / std::sqrt(sxx * syy);
}

CollapseReport curve_fig3(const SweepResult& result, int bins) {
  std::map<double, std::vector<CollapsePoint>> by_slice;
  for (const auto& r : result.grid) {
    if (!r.failed) by_slice[r.TH].push_back({r.TH, r.TR, r.C_R_CH, r.zeta});
  }
  if (by_slice.size() < 2) throw ValidationError("collapse needs at least two TH slices");
  if (bins < 1) throw ValidationError("collapse needs at least one bin");

  CollapseReport report;
  std::vector<std::vector<CollapsePoint>> curves;
  std::vector<double> curve_TH;
  for (auto& [TH, pts] : by_slice) {
    SliceSummary s;
    s.TH = TH;
    s.points = static_cast<int>(pts.size());
    std::vector<CollapsePoint> entangled;
    for (const auto& p : pts) {
      report.points.push_back(p);
      if (p.C > kEntanglementThreshold) {
        entangled.push_back(p);
      } else {
        s.separable_zeta_deviation = std::max(s.separable_zeta_deviation, std::abs(p.zeta - 1.0));
      }
    }
    s.entangled = static_cast<int>(entangled.size());
    s.rank_correlation = kNaN;
    if (entangled.size() >= 3) {
      std::vector<double> c;
      std::vector<double> z;
      for (const auto& p : entangled) {
        c.push_back(p.C);
        z.push_back(p.zeta);
      }
      s.rank_correlation = spearman(c, z);
      std::sort(entangled.begin(), entangled.end(),
                [](const CollapsePoint& a, const CollapsePoint& b) { return a.C < b.C; });
      curves.push_back(entangled);
      curve_TH.push_back(TH);
    }
    report.slices.push_back(s);
  }
  std::sort(report.points.begin(), report.points.end(),
            [](const CollapsePoint& a, const CollapsePoint& b) {
              if (a.C != b.C) return a.C < b.C;
              if (a.TH != b.TH) return a.TH < b.TH;
              return a.TR < b.TR;
            });

  if (curves.size() < 2) return report;
  double lo = -INFINITY;
  double hi = INFINITY;
  for (const auto& c : curves) {
    lo = std::max(lo, c.front().C);
    hi = std::min(hi, c.back().C);
  }
  if (!(lo < hi)) return report;
  for (int b = 0; b < bins; ++b) {
    CollapseBin bin;
    bin.C = lo + (hi - lo) * (b + 0.5) / bins;
    for (std::size_t k = 0; k < curves.size(); ++k) {
      const auto& c = curves[k];
      const auto it = std::lower_bound(c.begin(), c.end(), bin.C,
                                       [](const CollapsePoint& p, double v) { return p.C < v; });
      const auto& right = *it;
      const auto& left = *(it == c.begin() ? it : it - 1);
      const double t = right.C == left.C ? 0.0 : (bin.C - left.C) / (right.C - left.C);
      bin.TH.push_back(curve_TH[k]);
      bin.zeta.push_back(left.zeta + t * (right.zeta - left.zeta));
    }
    const auto [zmin, zmax] = std::minmax_element(bin.zeta.begin(), bin.zeta.end());
    bin.relative_spread = (*zmax - *zmin) / *zmin;
    bin.relative_excess_spread = *zmax > 1.0 ? (*zmax - *zmin) / (*zmax - 1.0) : 0.0;
    report.max_relative_spread = std::max(report.max_relative_spread, bin.relative_spread);
    report.max_relative_excess_spread =
        std::max(report.max_relative_excess_spread, bin.relative_excess_spread);
    report.bins.push_back(bin);
  }
  return report;
}

void write_sweep_csv(std::ostream& out, const SweepResult& result) {
  out << "TR,TH,TS,TS_star,zeta,C_C_RH,C_R_CH,C_CR_H,C_GME,feasible_evals\n";
  for (const auto& r : result.grid) write_row(out, r);
}

void write_collapse_csv(std::ostream& out, const SweepResult& result) {
  std::vector<const SweepRow*> rows;
  for (const auto& r : result.grid) rows.push_back(&r);
  std::stable_sort(rows.begin(), rows.end(), [](const SweepRow* a, const SweepRow* b) {
    if (a->i_TH != b->i_TH) return a->i_TH < b->i_TH;
    if (a->failed != b->failed) return b->failed;
    return a->C_R_CH < b->C_R_CH;
  });
  out << "slice,TR,TH,TS,TS_star,zeta,C_C_RH,C_R_CH,C_CR_H,C_GME,feasible_evals\n";
  for (const SweepRow* r : rows) {
    out << r->i_TH << ',';
    write_row(out, *r);
  }
}

}  // namespace qfridge
