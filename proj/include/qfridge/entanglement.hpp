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

#pragma once

#include <cstdint>
#include <initializer_list>
#include <utility>
#include <vector>

#include "qfridge/core.hpp"
#include "qfridge/state_algebra.hpp"

namespace qfridge {

/// Nonempty subset of {1, 2, 3} selecting the population terms of a witness.
///
/// Element k subtracts sqrt(rho_aa rho_bb) where (a, b) is the population
/// pair produced by swapping one qubit's bit between |010> and |101>:
///   k = 1 -> (1, 8) = |000>,|111>  (room qubit, bipartition R|CH)
///   k = 2 -> (2, 7) = |001>,|110>  (cold qubit, bipartition C|RH)
///   k = 3 -> (4, 5) = |011>,|100>  (hot qubit, bipartition CR|H)
class WitnessSet {
 public:
  WitnessSet(std::initializer_list<int> members);
  explicit WitnessSet(const std::vector<int>& members);

  static WitnessSet r_ch() { return WitnessSet{1}; }
  static WitnessSet c_rh() { return WitnessSet{2}; }
  static WitnessSet cr_h() { return WitnessSet{3}; }
  static WitnessSet genuine() { return WitnessSet{1, 2, 3}; }

  bool contains(int k) const { return (mask_ >> k) & 1U; }
  std::vector<int> members() const;

  /// 1-based population pair addressed by element k.
  static std::pair<int, int> population_pair(int k);

 private:
  void add(int k);
  std::uint8_t mask_ = 0;
};

/// W_S(rho) = 2 (|rho_{3,6}| - sum_{k in S} sqrt(rho_aa rho_bb)).
double witness_value(const DensityMatrix& rho, const WitnessSet& S);

struct EntanglementReport {
  double W1 = 0.0;  ///< S = {1}
  double W2 = 0.0;  ///< S = {2}
  double W3 = 0.0;  ///< S = {3}
  double W123 = 0.0;
  double C_C_RH = 0.0;  ///< max(0, W2)
  double C_R_CH = 0.0;  ///< max(0, W1)
  double C_CR_H = 0.0;  ///< max(0, W3)
  double C_GME = 0.0;   ///< max(0, W123)
  /// False when other coherences are present; the concurrences are then lower bounds only.
  bool x_form = true;

  double max_bipartite_witness() const;
  double max_bipartite_concurrence() const;
};

EntanglementReport entanglement_report(const DensityMatrix& rho, const Tolerances& tol = {});

/// (|010> + i|101>) / sqrt(2)
ComplexVector ghz_state();
ComplexMatrix ghz_projector();

/// p |GHZ><GHZ| + (1-p) I/8; throws ValidationError for p outside [0, 1].
DensityMatrix ghz_noise_state(double p);

struct GhzDecomposition {
  double w = 0.0;
  ComplexMatrix sigma_diag;
  bool valid = false;
};

/// rho = w |GHZ'><GHZ'| + (1-w) sigma_diag with w = 2|rho_{3,6}|, where GHZ'
/// carries the phase of rho_{3,6}. Throws SolverError when w >= 1.
GhzDecomposition ghz_decomposition(const DensityMatrix& rho, const Tolerances& tol = {});

struct SeparabilityCertificate {
  double purity = 0.0;
  bool purity_ball = false;  ///< Tr rho^2 < 19/24
  double frobenius_to_maximally_mixed = 0.0;
  bool gurvits_ball = false;  ///< ||rho - I/8||_2 < sqrt(2/3)
  bool biseparable_all = false;  ///< W1, W2, W3 <= tolerance
};

inline constexpr double kPurityBallBound = 19.0 / 24.0;
double gurvits_radius();  // sqrt(2/3)

SeparabilityCertificate separability_certificate(const DensityMatrix& rho,
                                                 const Tolerances& tol = {});

struct BallProbeResult {
  bool all_biseparable = false;
  /// min over samples of -max(W1, W2, W3); non-negative iff every sample is biseparable.
  double min_margin = 0.0;
  int projections = 0;  ///< samples that needed PSD projection
};

/// Samples `trials` random X-form perturbations of `rho_carnot` with trace
/// distance at most `epsilon` (random rho_{3,6} coherence plus traceless
/// diagonal jitter, PSD-projected and renormalized) and checks W1, W2, W3 <= 0
/// on each. Throws ValidationError if rho_carnot has coherences outside
/// (3,6), SolverError if samples keep leaving the epsilon ball after projection.
BallProbeResult biseparable_ball_probe(const DensityMatrix& rho_carnot, double epsilon, int trials,
                                       std::uint64_t seed);

/// Largest epsilon (by bisection on log scale) at which the probe still
/// reports every sample biseparable. Returns 0 if even the smallest tried
/// radius fails.
double bisect_biseparable_radius(const DensityMatrix& rho_carnot, int trials, std::uint64_t seed,
                                 int iterations = 30);

/// The noisy-GHZ thresholds: where W2 and W123 of ghz_noise_state(p) cross
/// zero (found by bisection on the actual states), next to the 3/11 full
/// separability bound quoted in the literature. The two are reported side by
/// side; neither is treated as ground truth.
struct GhzNoiseThresholds {
  double w2_zero = 0.0;
  double w123_zero = 0.0;
  double literature_separable_bound = 3.0 / 11.0;
  /// w2_zero < literature bound: the witness flags entanglement inside the
  /// quoted separable range.
  bool tension = false;
};

GhzNoiseThresholds ghz_noise_thresholds();

}  // namespace qfridge
