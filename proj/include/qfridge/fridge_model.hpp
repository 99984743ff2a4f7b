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

#include <array>
#include <optional>

#include "qfridge/core.hpp"
#include "qfridge/state_algebra.hpp"

namespace qfridge {

/// Physical configuration of the three-qubit absorption refrigerator.
///
/// Natural units (k_B = hbar = 1). Qubit 1 is the object being cooled (bath
/// TC), qubit 2 couples to the room bath TR and qubit 3 to the hot bath TH.
/// The energy of qubit 2 is always E1 + E3 so that |010> and |101> are
/// degenerate.
struct FridgeParams {
  double E1 = 1.0;
  double E3 = 2.0;
  double g = 0.0;
  double p1 = 1e-5;
  double p2 = 1e-4;
  double p3 = 1e-4;
  double TC = 1.0;
  double TR = 2.0;
  double TH = 4.0;

  double E2() const { return E1 + E3; }
  std::array<double, 3> energies() const { return {E1, E2(), E3}; }
  std::array<double, 3> rates() const { return {p1, p2, p3}; }
  std::array<double, 3> temperatures() const { return {TC, TR, TH}; }

  /// Throws ValidationError unless energies, rates and temperatures are
  /// positive, g >= 0, TC < TR < TH and E1 != E3.
  void validate() const;

  /// g / min(E_i)
  double coupling_ratio() const;
  /// max(p_j) / min(E_i)
  double rate_ratio() const;
  /// True when both ratios stay at or below `threshold`. Never enforced.
  bool weak_coupling(double threshold = 1e-2) const;
};

/// Linear generator of the master equation acting on column-stacked states.
class Liouvillian {
 public:
  explicit Liouvillian(ComplexMatrix matrix);

  const ComplexMatrix& matrix() const { return matrix_; }
  /// unvec(L vec(rho))
  ComplexMatrix apply(const ComplexMatrix& rho) const;

 private:
  ComplexMatrix matrix_;
};

struct HeatCurrents {
  double QC = 0.0;
  double QR = 0.0;
  double QH = 0.0;

  double total() const { return QC + QR + QH; }
};

struct SteadyStateResult {
  DensityMatrix rho;
  double residual = 0.0;          ///< ||L vec(rho)||_2
  double uniqueness_ratio = 0.0;  ///< second-smallest over smallest singular value
  double x_form_deviation = 0.0;  ///< largest off-diagonal outside (3,6)/(6,3)
  double TS = 0.0;
  double gamma_hat = 0.0;
  HeatCurrents currents;
  std::optional<double> efficiency;
  double carnot_cop = 0.0;
};

/// Populations and the single coherence of an X-form fridge state.
struct XBlockState {
  std::array<double, kDim> populations{};
  Complex coherence{};  ///< rho_{3,6}

  DensityMatrix to_density_matrix() const;
};

double thermal_population(double E, double T);

ComplexMatrix free_hamiltonian(const FridgeParams& params);
ComplexMatrix interaction_hamiltonian(const FridgeParams& params);
/// diag(r, 1-r) with r = 1/(1+exp(-E/T)); throws ValidationError for E <= 0 or T <= 0.
ComplexMatrix thermal_qubit(double E, double T);
/// tau_1 (x) tau_2 (x) tau_3
DensityMatrix thermal_product_state(const FridgeParams& params);

/// Right-hand side of the master equation evaluated directly on a matrix.
ComplexMatrix master_equation_rhs(const FridgeParams& params, const ComplexMatrix& rho);

Liouvillian build_liouvillian(const FridgeParams& params);

/// Exact stationary state from the null space of the 64x64 Liouvillian.
///
/// The kernel vector comes from an SVD, is polished by residual correction
/// with the residual accumulated in extended precision, then Hermitized and
/// normalized. Throws SolverError if the kernel is not one-dimensional (ratio
/// of the two smallest singular values below 100) or the result is not PSD.
SteadyStateResult steady_state(const FridgeParams& params, const Tolerances& tol = {});

/// Stationary state restricted to the invariant X-block.
///
/// The coherence obeys d c/dt = -i g (P6 - P3) - (p1+p2+p3) c, so at
/// stationarity it enslaves to the populations and the resonant pair
/// |010>,|101> exchanges population at the rate 2 g^2 / (p1+p2+p3). The
/// populations are the stationary distribution of the resulting 8-state rate
/// matrix. Cheap enough for inner optimization loops.
XBlockState solve_x_block(const FridgeParams& params);

/// TS = E1 / ln(rho00 / rho11) of the qubit-1 marginal.
/// Throws SolverError if the marginal is not diagonal to 1e-8 or rho11 >= rho00.
double qubit_temperature(const DensityMatrix& rho, double E1);

/// Qubit-1 ground population minus its bath-thermal value r1.
double gamma_hat(const DensityMatrix& rho, const FridgeParams& params);

/// The qubit-1 temperature written as a correction to TC driven by
/// gamma = gamma_hat. Returns TC exactly when gamma == 0, so the sign of
/// TC - TS always follows the sign of gamma. Throws SolverError when the
/// shifted populations admit no finite positive temperature.
double temperature_from_excess(double gamma, double E1, double TC);

/// Q_i = p_i Tr[H0 (tau_i (x) Tr_i(rho) - rho)]; positive means heat leaves bath i.
HeatCurrents heat_currents(const DensityMatrix& rho, const FridgeParams& params);

/// QC / QH, or nullopt when |QH| <= zero_tolerance.
std::optional<double> efficiency(const HeatCurrents& currents, double zero_tolerance = 0.0);

/// TC (TH - TR) / (TH (TR - TC))
double carnot_cop(double TC, double TR, double TH);

/// E3 at which the product of bath-thermal states is stationary:
/// E1 (1/TC - 1/TR) / (1/TR - 1/TH). Throws ValidationError unless
/// TC < TR < TH, and if the result coincides with E1.
double carnot_E3(double E1, double TC, double TR, double TH);

/// unvec(exp(L t) vec(rho0)) via the eigendecomposition of L.
/// Throws SolverError when the eigenvector basis is numerically singular.
DensityMatrix evolve(const DensityMatrix& rho0, const FridgeParams& params, double t,
                     const Tolerances& tol = {});

}  // namespace qfridge
