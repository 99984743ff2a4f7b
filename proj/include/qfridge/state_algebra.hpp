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
#include <random>

#include "qfridge/core.hpp"

namespace qfridge {

/// The three qubits of the fridge, labelled by the bath they touch.
enum class Qubit : int { Cold = 1, Room = 2, Hot = 3 };

/// Converts a 1-based label into a Qubit; throws ValidationError outside 1..3.
Qubit qubit_from_label(int label);

/// Position of a three-qubit product basis state.
///
/// Qubit 1 is the most significant bit, so the 1-based index is
/// 4*q1 + 2*q2 + q3 + 1. With this ordering |010> is index 3 and |101> is
/// index 6, and the fridge coherence sits at element (3,6).
struct BasisIndex {
  std::array<int, 3> bits{};

  static BasisIndex from_bits(int q1, int q2, int q3);
  /// From a 1-based index in 1..8.
  static BasisIndex from_index(int index);

  int index() const { return offset() + 1; }
  int offset() const { return 4 * bits[0] + 2 * bits[1] + bits[2]; }
  int bit(Qubit q) const { return bits[static_cast<int>(q) - 1]; }
};

/// Validity diagnostics of a candidate density matrix.
struct ValidityReport {
  double hermiticity_error = 0.0;  ///< max |m_jk - conj(m_kj)|
  double trace_error = 0.0;        ///< |Tr m - 1|
  double min_eigenvalue = 0.0;     ///< of the Hermitian part

  bool ok(const Tolerances& tol = {}) const {
    return hermiticity_error < tol.physical && trace_error < tol.physical &&
           min_eigenvalue > -tol.physical;
  }
};

ValidityReport check_density_matrix(const ComplexMatrix& m);

/// An 8x8 Hermitian, unit-trace, positive semidefinite matrix.
class DensityMatrix {
 public:
  DensityMatrix();  // |000><000|

  /// Validates `m` and throws ValidationError if it is not a three-qubit state.
  static DensityMatrix from_matrix(const ComplexMatrix& m, const Tolerances& tol = {});
  /// Wraps `m` without any check. Callers guarantee validity.
  static DensityMatrix unchecked(const Matrix8& m);

  const Matrix8& matrix() const { return m_; }
  /// 0-based element access.
  Complex operator()(int row, int col) const { return m_(row, col); }
  /// 1-based element access, matching the notation rho_{i,j}.
  Complex element(int i, int j) const { return m_(i - 1, j - 1); }
  double population(int index) const { return m_(index - 1, index - 1).real(); }

  double purity() const;

 private:
  explicit DensityMatrix(const Matrix8& m) : m_(m) {}
  Matrix8 m_;
};

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b);

/// Traces out one qubit of an 8x8 operator; the remaining two keep their order.
ComplexMatrix partial_trace(const ComplexMatrix& rho, Qubit discard);
ComplexMatrix partial_trace(const DensityMatrix& rho, Qubit discard);

/// Single-qubit marginal.
ComplexMatrix reduced_qubit(const ComplexMatrix& rho, Qubit keep);
ComplexMatrix reduced_qubit(const DensityMatrix& rho, Qubit keep);

/// Places a one-qubit operator at `position` next to a two-qubit operator of
/// the remaining qubits. insert_qubit(tau, partial_trace(rho, q), q) is the
/// reset image tau_q (x) Tr_q(rho).
ComplexMatrix insert_qubit(const ComplexMatrix& single, const ComplexMatrix& rest, Qubit position);

/// sqrt(Tr[(a-b)^dagger (a-b)]); throws ValidationError on shape mismatch.
double frobenius_distance(const ComplexMatrix& a, const ComplexMatrix& b);

/// Sum of absolute eigenvalues of a Hermitian matrix.
double trace_norm(const ComplexMatrix& hermitian);

ComplexMatrix hermitian_part(const ComplexMatrix& m);

/// Largest off-diagonal magnitude outside the (3,6)/(6,3) pair of an 8x8 matrix.
double x_form_deviation(const ComplexMatrix& rho);

/// Column-stacking vectorization: vec(m)[i + n*j] = m(i, j).
ComplexVector vectorize(const ComplexMatrix& m);
ComplexMatrix unvectorize(const ComplexVector& v);

/// Ginibre-distributed random state A A^dagger / Tr(A A^dagger).
DensityMatrix random_density_matrix(std::mt19937_64& rng);

}  // namespace qfridge
