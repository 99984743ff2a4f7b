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

#include "qfridge/state_algebra.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include <Eigen/Eigenvalues>

namespace qfridge {

namespace {

int qubit_position(Qubit q) {
  const int label = static_cast<int>(q);
  if (label < 1 || label > kQubits) {
    throw ValidationError("invalid qubit label " + std::to_string(label));
  }
  return label - 1;
}

// Builds a 3-bit offset from the two bits of the kept qubits (in order) and
// the bit of the qubit at `pos`.
int merge_bits(int pair, int bit, int pos) {
  const int hi = (pair >> 1) & 1;
  const int lo = pair & 1;
  switch (pos) {
    case 0:
      return 4 * bit + 2 * hi + lo;
    case 1:
      return 4 * hi + 2 * bit + lo;
    default:
      return 4 * hi + 2 * lo + bit;
  }
}

void require_dim(const ComplexMatrix& m, Eigen::Index dim, const char* what) {
  if (m.rows() != dim || m.cols() != dim) {
    throw ValidationError(std::string(what) + ": expected " + std::to_string(dim) + "x" +
                          std::to_string(dim) + " matrix, got " + std::to_string(m.rows()) +
                          "x" + std::to_string(m.cols()));
  }
}

}  // namespace

Qubit qubit_from_label(int label) {
  if (label < 1 || label > kQubits) {
    throw ValidationError("invalid qubit label " + std::to_string(label) + " (expected 1, 2 or 3)");
  }
  return static_cast<Qubit>(label);
}

BasisIndex BasisIndex::from_bits(int q1, int q2, int q3) {
  for (int b : {q1, q2, q3}) {
    if (b != 0 && b != 1) throw ValidationError("basis bits must be 0 or 1");
  }
  return BasisIndex{{q1, q2, q3}};
}

BasisIndex BasisIndex::from_index(int index) {
  if (index < 1 || index > kDim) {
    throw ValidationError("basis index " + std::to_string(index) + " outside 1..8");
  }
  const int off = index - 1;
  return BasisIndex{{(off >> 2) & 1, (off >> 1) & 1, off & 1}};
}

ValidityReport check_density_matrix(const ComplexMatrix& m) {
  ValidityReport report;
  if (m.rows() != m.cols() || m.rows() == 0) {
    report.hermiticity_error = INFINITY;
    report.trace_error = INFINITY;
    report.min_eigenvalue = -INFINITY;
    return report;
  }
  report.hermiticity_error = (m - m.adjoint()).cwiseAbs().maxCoeff();
  report.trace_error = std::abs(m.trace() - Complex(1.0, 0.0));
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(hermitian_part(m), Eigen::EigenvaluesOnly);
  report.min_eigenvalue = es.eigenvalues().minCoeff();
  return report;
}

DensityMatrix::DensityMatrix() : m_(Matrix8::Zero()) { m_(0, 0) = 1.0; }

DensityMatrix DensityMatrix::from_matrix(const ComplexMatrix& m, const Tolerances& tol) {
  require_dim(m, kDim, "density matrix");
  const ValidityReport report = check_density_matrix(m);
  if (report.hermiticity_error >= tol.physical) {
    throw ValidationError("density matrix is not Hermitian (max deviation " +
                          std::to_string(report.hermiticity_error) + ")");
  }
  if (report.trace_error >= tol.physical) {
    throw ValidationError("density matrix trace differs from 1 by " +
                          std::to_string(report.trace_error));
  }
  if (report.min_eigenvalue <= -tol.physical) {
    throw ValidationError("density matrix is not positive semidefinite (min eigenvalue " +
                          std::to_string(report.min_eigenvalue) + ")");
  }
  return DensityMatrix(Matrix8(m));
}

DensityMatrix DensityMatrix::unchecked(const Matrix8& m) { return DensityMatrix(m); }

double DensityMatrix::purity() const { return (m_ * m_).trace().real(); }

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b) {
  ComplexMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    for (Eigen::Index j = 0; j < a.cols(); ++j) {
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    }
  }
  return out;
}

ComplexMatrix partial_trace(const ComplexMatrix& rho, Qubit discard) {
  require_dim(rho, kDim, "partial_trace");
  const int pos = qubit_position(discard);
  ComplexMatrix out = ComplexMatrix::Zero(4, 4);
  for (int a = 0; a < 4; ++a) {
    for (int b = 0; b < 4; ++b) {
      for (int s = 0; s < 2; ++s) {
        out(a, b) += rho(merge_bits(a, s, pos), merge_bits(b, s, pos));
      }
    }
  }
  return out;
}

ComplexMatrix partial_trace(const DensityMatrix& rho, Qubit discard) {
  return partial_trace(ComplexMatrix(rho.matrix()), discard);
}

ComplexMatrix reduced_qubit(const ComplexMatrix& rho, Qubit keep) {
  require_dim(rho, kDim, "reduced_qubit");
  const int pos = qubit_position(keep);
  ComplexMatrix out = ComplexMatrix::Zero(2, 2);
  for (int x = 0; x < kDim; ++x) {
    for (int y = 0; y < kDim; ++y) {
      const int shift = 2 - pos;
      // The other two qubits must agree between row and column.
      const int mask = ~(1 << shift) & 7;
      if ((x & mask) != (y & mask)) continue;
      out((x >> shift) & 1, (y >> shift) & 1) += rho(x, y);
    }
  }
  return out;
}

ComplexMatrix reduced_qubit(const DensityMatrix& rho, Qubit keep) {
  return reduced_qubit(ComplexMatrix(rho.matrix()), keep);
}

ComplexMatrix insert_qubit(const ComplexMatrix& single, const ComplexMatrix& rest, Qubit position) {
  require_dim(single, 2, "insert_qubit (single)");
  require_dim(rest, 4, "insert_qubit (rest)");
  const int pos = qubit_position(position);
  ComplexMatrix out(kDim, kDim);
  for (int a = 0; a < 4; ++a) {
    for (int b = 0; b < 4; ++b) {
      for (int s = 0; s < 2; ++s) {
        for (int t = 0; t < 2; ++t) {
          out(merge_bits(a, s, pos), merge_bits(b, t, pos)) = single(s, t) * rest(a, b);
        }
      }
    }
  }
  return out;
}

double frobenius_distance(const ComplexMatrix& a, const ComplexMatrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) {
    throw ValidationError("frobenius_distance: dimension mismatch (" + std::to_string(a.rows()) +
                          "x" + std::to_string(a.cols()) + " vs " + std::to_string(b.rows()) +
                          "x" + std::to_string(b.cols()) + ")");
  }
  return (a - b).norm();
}

double trace_norm(const ComplexMatrix& hermitian) {
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(hermitian, Eigen::EigenvaluesOnly);
  return es.eigenvalues().cwiseAbs().sum();
}

ComplexMatrix hermitian_part(const ComplexMatrix& m) { return 0.5 * (m + m.adjoint()); }

double x_form_deviation(const ComplexMatrix& rho) {
  double worst = 0.0;
  for (int i = 0; i < rho.rows(); ++i) {
    for (int j = 0; j < rho.cols(); ++j) {
      if (i == j) continue;
      if ((i == 2 && j == 5) || (i == 5 && j == 2)) {
        continue;
      }
      worst = std::max(worst, std::abs(rho(i, j)));
    }
  }
  return worst;
}

ComplexVector vectorize(const ComplexMatrix& m) {
  return Eigen::Map<const ComplexVector>(m.data(), m.size());
}

ComplexMatrix unvectorize(const ComplexVector& v) {
  const auto n = static_cast<Eigen::Index>(std::lround(std::sqrt(static_cast<double>(v.size()))));
  if (n * n != v.size()) throw ValidationError("unvectorize: length is not a perfect square");
  return Eigen::Map<const ComplexMatrix>(v.data(), n, n);
}

DensityMatrix random_density_matrix(std::mt19937_64& rng) {
  std::normal_distribution<double> normal(0.0, 1.0);
  Matrix8 a;
  for (int i = 0; i < kDim; ++i) {
    for (int j = 0; j < kDim; ++j) a(i, j) = Complex(normal(rng), normal(rng));
  }
  Matrix8 rho = a * a.adjoint();
  rho = 0.5 * (rho + rho.adjoint()).eval();
  rho /= rho.trace().real();
  return DensityMatrix::unchecked(rho);
}

}  // namespace qfridge
