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

#include "qfridge/entanglement.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <string>

#include <Eigen/Eigenvalues>

namespace qfridge {

namespace {

constexpr int kCoherenceRow = 3;  // 1-based |010>
constexpr int kCoherenceCol = 6;  // 1-based |101>

double max_bipartite(const DensityMatrix& rho) {
  return std::max({witness_value(rho, WitnessSet::r_ch()), witness_value(rho, WitnessSet::c_rh()),
                   witness_value(rho, WitnessSet::cr_h())});
}

// Clip negative eigenvalues and renormalize.
ComplexMatrix project_psd(const ComplexMatrix& m) {
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(m);
  Eigen::VectorXd vals = es.eigenvalues().cwiseMax(0.0);
  ComplexMatrix out = es.eigenvectors() * vals.cast<Complex>().asDiagonal() *
                      es.eigenvectors().adjoint();
  out = hermitian_part(out);
  return out / out.trace().real();
}

}  // namespace

WitnessSet::WitnessSet(std::initializer_list<int> members) {
  for (int k : members) add(k);
  if (mask_ == 0) throw ValidationError("witness set must be nonempty");
}

WitnessSet::WitnessSet(const std::vector<int>& members) {
  for (int k : members) add(k);
  if (mask_ == 0) throw ValidationError("witness set must be nonempty");
}

void WitnessSet::add(int k) {
  if (k < 1 || k > 3) {
    throw ValidationError("witness set elements must be in {1,2,3}, got " + std::to_string(k));
  }
  mask_ |= static_cast<std::uint8_t>(1U << k);
}

std::vector<int> WitnessSet::members() const {
  std::vector<int> out;
  for (int k = 1; k <= 3; ++k) {
    if (contains(k)) out.push_back(k);
  }
  return out;
}

std::pair<int, int> WitnessSet::population_pair(int k) {
  switch (k) {
    case 1:
      return {1, 8};
    case 2:
      return {2, 7};
    case 3:
      return {4, 5};
    default:
      throw ValidationError("witness set elements must be in {1,2,3}, got " + std::to_string(k));
  }
}

double witness_value(const DensityMatrix& rho, const WitnessSet& S) {
  double value = std::abs(rho.element(kCoherenceRow, kCoherenceCol));
  for (int k = 1; k <= 3; ++k) {
    if (!S.contains(k)) continue;
    const auto [a, b] = WitnessSet::population_pair(k);
    value -= std::sqrt(std::max(0.0, rho.population(a) * rho.population(b)));
  }
  return 2.0 * value;
}

double EntanglementReport::max_bipartite_witness() const { return std::max({W1, W2, W3}); }

double EntanglementReport::max_bipartite_concurrence() const {
  return std::max({C_C_RH, C_R_CH, C_CR_H});
}

EntanglementReport entanglement_report(const DensityMatrix& rho, const Tolerances& tol) {
  EntanglementReport r;
  r.W1 = witness_value(rho, WitnessSet::r_ch());
  r.W2 = witness_value(rho, WitnessSet::c_rh());
  r.W3 = witness_value(rho, WitnessSet::cr_h());
  r.W123 = witness_value(rho, WitnessSet::genuine());
  r.C_R_CH = std::max(0.0, r.W1);
  r.C_C_RH = std::max(0.0, r.W2);
  r.C_CR_H = std::max(0.0, r.W3);
  r.C_GME = std::max(0.0, r.W123);
  r.x_form = x_form_deviation(rho.matrix()) < tol.physical;
  return r;
}

ComplexVector ghz_state() {
  ComplexVector psi = ComplexVector::Zero(kDim);
  const double amp = 1.0 / std::sqrt(2.0);
  psi(kCoherenceRow - 1) = amp;
  psi(kCoherenceCol - 1) = Complex(0.0, amp);
  return psi;
}

ComplexMatrix ghz_projector() {
  const ComplexVector psi = ghz_state();
  return psi * psi.adjoint();
}

DensityMatrix ghz_noise_state(double p) {
  if (!(p >= 0.0 && p <= 1.0)) {
    throw ValidationError("GHZ mixing weight must lie in [0, 1]");
  }
  const ComplexMatrix m =
      p * ghz_projector() + (1.0 - p) / kDim * ComplexMatrix::Identity(kDim, kDim);
  return DensityMatrix::unchecked(m);
}

GhzDecomposition ghz_decomposition(const DensityMatrix& rho, const Tolerances& tol) {
  const Complex coherence = rho.element(kCoherenceRow, kCoherenceCol);
  GhzDecomposition out;
  out.w = 2.0 * std::abs(coherence);
  if (out.w >= 1.0 - tol.algebraic) {
    throw SolverError("GHZ weight w = " + std::to_string(out.w) + " >= 1; no decomposition");
  }
  // (|010> + e^{-i phi}|101>)/sqrt2 puts e^{i phi}/2 at (3,6).
  const double phase = std::arg(coherence);
  ComplexVector psi = ComplexVector::Zero(kDim);
  psi(kCoherenceRow - 1) = 1.0 / std::sqrt(2.0);
  psi(kCoherenceCol - 1) = std::polar(1.0 / std::sqrt(2.0), -phase);

  const ComplexMatrix m = rho.matrix();
  out.sigma_diag = (m - out.w * psi * psi.adjoint()) / (1.0 - out.w);

  double off_diagonal = 0.0;
  double min_diag = INFINITY;
  for (int i = 0; i < kDim; ++i) {
    min_diag = std::min(min_diag, out.sigma_diag(i, i).real());
    for (int j = 0; j < kDim; ++j) {
      if (i != j) off_diagonal = std::max(off_diagonal, std::abs(out.sigma_diag(i, j)));
    }
  }
  out.valid = off_diagonal < tol.physical && min_diag > -tol.physical;
  return out;
}

double gurvits_radius() { return std::sqrt(2.0 / 3.0); }

SeparabilityCertificate separability_certificate(const DensityMatrix& rho, const Tolerances& tol) {
  SeparabilityCertificate c;
  c.purity = rho.purity();
  c.purity_ball = c.purity < kPurityBallBound;
  c.frobenius_to_maximally_mixed = frobenius_distance(
      rho.matrix(), ComplexMatrix::Identity(kDim, kDim) / static_cast<double>(kDim));
  c.gurvits_ball = c.frobenius_to_maximally_mixed < gurvits_radius();
  c.biseparable_all = max_bipartite(rho) <= tol.algebraic;
  return c;
}

BallProbeResult biseparable_ball_probe(const DensityMatrix& rho_carnot, double epsilon, int trials,
                                       std::uint64_t seed) {
  if (!(epsilon >= 0.0)) throw ValidationError("probe radius must be non-negative");
  if (trials < 1) throw ValidationError("probe needs at least one trial");
  const ComplexMatrix center = rho_carnot.matrix();
  if (x_form_deviation(center) > 1e-12) {
    throw ValidationError("probe centre must be an X-form state with its coherence at (3,6)");
  }

  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal(0.0, 1.0);
  BallProbeResult result;
  result.min_margin = INFINITY;
  const int max_attempts = 100 * trials;
  int attempts = 0;
  int accepted = 0;
  while (accepted < trials) {
    if (++attempts > max_attempts) {
      throw SolverError("perturbations keep leaving the trace-norm ball after PSD projection; "
                        "epsilon too large");
    }
    ComplexMatrix delta = ComplexMatrix::Zero(kDim, kDim);
    double mean = 0.0;
    for (int i = 0; i < kDim; ++i) {
      delta(i, i) = normal(rng);
      mean += delta(i, i).real();
    }
    for (int i = 0; i < kDim; ++i) delta(i, i) -= mean / kDim;
    const Complex c(normal(rng), normal(rng));
    delta(kCoherenceRow - 1, kCoherenceCol - 1) = c;
    delta(kCoherenceCol - 1, kCoherenceRow - 1) = std::conj(c);
    // Perturbations sit on the sphere: the witnesses are convex, so the
    // worst case over the ball is on its boundary.
    const double norm = trace_norm(delta);
    delta *= norm > 0.0 ? epsilon / norm : 0.0;

    ComplexMatrix sample = center + delta;
    Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(sample, Eigen::EigenvaluesOnly);
    if (es.eigenvalues().minCoeff() < 0.0) {
      sample = project_psd(sample);
      ++result.projections;
      if (trace_norm(sample - center) > epsilon * (1.0 + 1e-12)) continue;
    }
    const double worst = max_bipartite(DensityMatrix::unchecked(sample));
    result.min_margin = std::min(result.min_margin, -worst);
    ++accepted;
  }
  result.all_biseparable = result.min_margin >= 0.0;
  return result;
}

double bisect_biseparable_radius(const DensityMatrix& rho_carnot, int trials, std::uint64_t seed,
                                 int iterations) {
  const auto passes = [&](double eps) {
    try {
      return biseparable_ball_probe(rho_carnot, eps, trials, seed).all_biseparable;
    } catch (const SolverError&) {
      return false;
    }
  };
  double fail = 1.0;
  if (passes(fail)) return fail;
  double pass = fail;
  do {
    pass *= 0.5;
    if (pass < 1e-12) return 0.0;
  } while (!passes(pass));
  fail = 2.0 * pass;
  for (int i = 0; i < iterations; ++i) {
    const double mid = std::sqrt(pass * fail);
    if (passes(mid)) {
      pass = mid;
    } else {
      fail = mid;
    }
  }
  return pass;
}

GhzNoiseThresholds ghz_noise_thresholds() {
  const auto zero_of = [](const WitnessSet& S) {
    double lo = 0.0;
    double hi = 1.0;
    for (int i = 0; i < 200 && hi - lo > 0.0; ++i) {
      const double mid = 0.5 * (lo + hi);
      if (mid == lo || mid == hi) break;
      if (witness_value(ghz_noise_state(mid), S) > 0.0) {
        hi = mid;
      } else {
        lo = mid;
      }
    }
    return 0.5 * (lo + hi);
  };
  GhzNoiseThresholds t;
  t.w2_zero = zero_of(WitnessSet::c_rh());
  t.w123_zero = zero_of(WitnessSet::genuine());
  t.tension = t.w2_zero < t.literature_separable_bound;
  return t;
}

}  // namespace qfridge
