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

#include "qfridge/fridge_model.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <numeric>
#include <string>
#include <vector>

#include <Eigen/Eigenvalues>
#include <Eigen/LU>
#include <Eigen/SVD>

namespace qfridge {

namespace {

constexpr int kCoherenceRow = 2;  // |010>
constexpr int kCoherenceCol = 5;  // |101>
constexpr double kUniquenessRatio = 100.0;
constexpr int kRefinementSteps = 2;

using ExtendedComplex = std::complex<long double>;

std::string fmt_double(double x) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.6g", x);
  return buf;
}

// L x with the sums carried in long double.
ComplexVector residual_extended(const ComplexMatrix& L, const ComplexVector& x) {
  ComplexVector r(L.rows());
  for (Eigen::Index i = 0; i < L.rows(); ++i) {
    ExtendedComplex acc = 0.0L;
    for (Eigen::Index j = 0; j < L.cols(); ++j) {
      acc += ExtendedComplex(L(i, j).real(), L(i, j).imag()) *
             ExtendedComplex(x(j).real(), x(j).imag());
    }
    r(i) = Complex(static_cast<double>(acc.real()), static_cast<double>(acc.imag()));
  }
  return r;
}

Complex vec_trace(const ComplexVector& v) {
  Complex tr = 0.0;
  for (int i = 0; i < kDim; ++i) tr += v(i + kDim * i);
  return tr;
}

}  // namespace

void FridgeParams::validate() const {
  const auto positive = [](double v, const char* name) {
    if (!(v > 0.0) || !std::isfinite(v)) {
      throw ValidationError(std::string(name) + " must be finite and strictly positive, got " +
                            fmt_double(v));
    }
  };
  positive(E1, "E1");
  positive(E3, "E3");
  positive(p1, "p1");
  positive(p2, "p2");
  positive(p3, "p3");
  positive(TC, "TC");
  positive(TR, "TR");
  positive(TH, "TH");
  if (!(g >= 0.0) || !std::isfinite(g)) {
    throw ValidationError("g must be finite and non-negative, got " + fmt_double(g));
  }
  if (!(TC < TR && TR < TH)) {
    throw ValidationError("bath temperatures must satisfy TC < TR < TH");
  }
  if (E1 == E3) throw ValidationError("E1 and E3 must differ");
}

double FridgeParams::coupling_ratio() const {
  return g / std::min({E1, E2(), E3});
}

double FridgeParams::rate_ratio() const {
  return std::max({p1, p2, p3}) / std::min({E1, E2(), E3});
}

bool FridgeParams::weak_coupling(double threshold) const {
  return coupling_ratio() <= threshold && rate_ratio() <= threshold;
}

Liouvillian::Liouvillian(ComplexMatrix matrix) : matrix_(std::move(matrix)) {
  if (matrix_.rows() != kLiouvilleDim || matrix_.cols() != kLiouvilleDim) {
    throw ValidationError("Liouvillian must be 64x64");
  }
}

ComplexMatrix Liouvillian::apply(const ComplexMatrix& rho) const {
  return unvectorize(matrix_ * vectorize(rho));
}

DensityMatrix XBlockState::to_density_matrix() const {
  Matrix8 m = Matrix8::Zero();
  for (int i = 0; i < kDim; ++i) m(i, i) = populations[i];
  m(kCoherenceRow, kCoherenceCol) = coherence;
  m(kCoherenceCol, kCoherenceRow) = std::conj(coherence);
  return DensityMatrix::unchecked(m);
}

double thermal_population(double E, double T) { return 1.0 / (1.0 + std::exp(-E / T)); }

ComplexMatrix free_hamiltonian(const FridgeParams& params) {
  const auto E = params.energies();
  ComplexMatrix h = ComplexMatrix::Zero(kDim, kDim);
  for (int index = 1; index <= kDim; ++index) {
    const BasisIndex b = BasisIndex::from_index(index);
    double energy = 0.0;
    for (int q = 0; q < kQubits; ++q) {
      if (b.bits[q] == 1) energy += E[q];
    }
    h(b.offset(), b.offset()) = energy;
  }
  return h;
}

ComplexMatrix interaction_hamiltonian(const FridgeParams& params) {
  ComplexMatrix h = ComplexMatrix::Zero(kDim, kDim);
  h(kCoherenceRow, kCoherenceCol) = params.g;
  h(kCoherenceCol, kCoherenceRow) = params.g;
  return h;
}

ComplexMatrix thermal_qubit(double E, double T) {
  if (!(E > 0.0) || !(T > 0.0)) {
    throw ValidationError("thermal_qubit requires E > 0 and T > 0");
  }
  const double r = thermal_population(E, T);
  ComplexMatrix tau = ComplexMatrix::Zero(2, 2);
  tau(0, 0) = r;
  tau(1, 1) = 1.0 - r;
  return tau;
}

DensityMatrix thermal_product_state(const FridgeParams& params) {
  const ComplexMatrix rho = kron(kron(thermal_qubit(params.E1, params.TC),
                                      thermal_qubit(params.E2(), params.TR)),
                                 thermal_qubit(params.E3, params.TH));
  return DensityMatrix::unchecked(rho);
}

ComplexMatrix master_equation_rhs(const FridgeParams& params, const ComplexMatrix& rho) {
  const ComplexMatrix h = free_hamiltonian(params) + interaction_hamiltonian(params);
  const Complex minus_i(0.0, -1.0);
  ComplexMatrix out = minus_i * (h * rho - rho * h);
  const auto E = params.energies();
  const auto T = params.temperatures();
  const auto p = params.rates();
  for (int q = 1; q <= kQubits; ++q) {
    const Qubit qubit = qubit_from_label(q);
    const ComplexMatrix tau = thermal_qubit(E[q - 1], T[q - 1]);
    out += p[q - 1] * (insert_qubit(tau, partial_trace(rho, qubit), qubit) - rho);
  }
  return out;
}

Liouvillian build_liouvillian(const FridgeParams& params) {
  const ComplexMatrix h = free_hamiltonian(params) + interaction_hamiltonian(params);
  const ComplexMatrix id = ComplexMatrix::Identity(kDim, kDim);
  const Complex i_unit(0.0, 1.0);
  // vec(A X B) = (B^T (x) A) vec(X)
  ComplexMatrix L = -i_unit * (kron(id, h) - kron(h.transpose(), id));

  const auto E = params.energies();
  const auto T = params.temperatures();
  const auto p = params.rates();
  for (int q = 0; q < kQubits; ++q) {
    const double r = thermal_population(E[q], T[q]);
    const double tau[2] = {r, 1.0 - r};
    const int shift = 2 - q;
    const int clear = ~(1 << shift) & 7;
    for (int a = 0; a < kDim; ++a) {
      for (int b = 0; b < kDim; ++b) {
        const int row = a + kDim * b;
        L(row, row) -= p[q];
        const int bit_a = (a >> shift) & 1;
        const int bit_b = (b >> shift) & 1;
        // tau is diagonal, so only rows with equal bits on qubit q are fed.
        if (bit_a != bit_b) continue;
        for (int s = 0; s < 2; ++s) {
          const int src_a = (a & clear) | (s << shift);
          const int src_b = (b & clear) | (s << shift);
          L(row, src_a + kDim * src_b) += p[q] * tau[bit_a];
        }
      }
    }
  }
  return Liouvillian(std::move(L));
}

SteadyStateResult steady_state(const FridgeParams& params, const Tolerances& tol) {
  params.validate();
  const Liouvillian liouvillian = build_liouvillian(params);
  const ComplexMatrix& L = liouvillian.matrix();

  Eigen::JacobiSVD<ComplexMatrix> svd(L, Eigen::ComputeFullU | Eigen::ComputeFullV);
  const Eigen::VectorXd& s = svd.singularValues();
  const ComplexMatrix& U = svd.matrixU();
  const ComplexMatrix& V = svd.matrixV();
  const int last = kLiouvilleDim - 1;

  SteadyStateResult result;
  result.uniqueness_ratio =
      s(last) > 0.0 ? s(last - 1) / s(last) : std::numeric_limits<double>::infinity();
  if (!(result.uniqueness_ratio > kUniquenessRatio)) {
    throw SolverError("degenerate Liouvillian kernel: singular value ratio " +
                      fmt_double(result.uniqueness_ratio) + " <= 100");
  }

  ComplexVector x = V.col(last);
  x /= vec_trace(x);
  for (int step = 0; step < kRefinementSteps; ++step) {
    const ComplexVector r = residual_extended(L, x);
    const ComplexVector coeffs = U.leftCols(last).adjoint() * r;
    ComplexVector correction = ComplexVector::Zero(kLiouvilleDim);
    for (int k = 0; k < last; ++k) correction += V.col(k) * (coeffs(k) / s(k));
    x -= correction;
    x /= vec_trace(x);
  }

  ComplexMatrix rho = hermitian_part(unvectorize(x));
  rho /= rho.trace().real();
  const ValidityReport validity = check_density_matrix(rho);
  if (validity.min_eigenvalue <= -tol.physical) {
    throw SolverError("stationary state is not positive semidefinite (min eigenvalue " +
                      fmt_double(validity.min_eigenvalue) + ")");
  }
  result.rho = DensityMatrix::unchecked(rho);
  result.residual = (L * vectorize(rho)).norm();
  result.x_form_deviation = x_form_deviation(rho);
  if (std::abs(reduced_qubit(result.rho, Qubit::Cold)(0, 1)) > 1e-8) {
    throw SolverError("qubit-1 marginal is not diagonal; temperature undefined");
  }
  result.gamma_hat = gamma_hat(result.rho, params);
  result.TS = temperature_from_excess(result.gamma_hat, params.E1, params.TC);
  result.currents = heat_currents(result.rho, params);
  result.carnot_cop = carnot_cop(params.TC, params.TR, params.TH);

  const auto E = params.energies();
  const auto p = params.rates();
  double scale = 0.0;
  for (int q = 0; q < kQubits; ++q) scale = std::max(scale, p[q] * E[q]);
  const auto eta = efficiency(result.currents, tol.algebraic * scale);
  if (eta && *eta >= 0.0) result.efficiency = eta;
  return result;
}

XBlockState solve_x_block(const FridgeParams& params) {
  const auto E = params.energies();
  const auto T = params.temperatures();
  const auto p = params.rates();
  const double decay = p[0] + p[1] + p[2];

  Eigen::Matrix<double, kDim, kDim> Q = Eigen::Matrix<double, kDim, kDim>::Zero();
  for (int q = 0; q < kQubits; ++q) {
    const double r = thermal_population(E[q], T[q]);
    const int shift = 2 - q;
    for (int x = 0; x < kDim; ++x) {
      const int flipped = x ^ (1 << shift);
      // Reset lands on the opposite level with probability tau(opposite).
      const int target_bit = (flipped >> shift) & 1;
      const double w = p[q] * (target_bit == 0 ? r : 1.0 - r);
      Q(flipped, x) += w;
      Q(x, x) -= w;
    }
  }
  const double exchange = 2.0 * params.g * params.g / decay;
  Q(kCoherenceCol, kCoherenceRow) += exchange;
  Q(kCoherenceRow, kCoherenceRow) -= exchange;
  Q(kCoherenceRow, kCoherenceCol) += exchange;
  Q(kCoherenceCol, kCoherenceCol) -= exchange;

  Q.row(0).setOnes();
  Eigen::Matrix<double, kDim, 1> rhs = Eigen::Matrix<double, kDim, 1>::Zero();
  rhs(0) = 1.0;
  const Eigen::Matrix<double, kDim, 1> pop = Q.partialPivLu().solve(rhs);

  XBlockState state;
  for (int i = 0; i < kDim; ++i) state.populations[i] = pop(i);
  state.coherence =
      Complex(0.0, -params.g * (pop(kCoherenceCol) - pop(kCoherenceRow)) / decay);
  return state;
}

double qubit_temperature(const DensityMatrix& rho, double E1) {
  const ComplexMatrix marginal = reduced_qubit(rho, Qubit::Cold);
  if (std::abs(marginal(0, 1)) > 1e-8) {
    throw SolverError("qubit-1 marginal is not diagonal; temperature undefined");
  }
  const double ground = marginal(0, 0).real();
  const double excited = marginal(1, 1).real();
  if (!(excited < ground) || !(excited > 0.0)) {
    throw SolverError("qubit-1 populations give no finite positive temperature (ground " +
                      fmt_double(ground) + ", excited " + fmt_double(excited) + ")");
  }
  return E1 / std::log(ground / excited);
}

double gamma_hat(const DensityMatrix& rho, const FridgeParams& params) {
  const ComplexMatrix marginal = reduced_qubit(rho, Qubit::Cold);
  return marginal(0, 0).real() - thermal_population(params.E1, params.TC);
}

double temperature_from_excess(double gamma, double E1, double TC) {
  const double ground = thermal_population(E1, TC);
  const double excited = 1.0 - ground;
  if (!(excited - gamma > 0.0) || !(ground + gamma > excited - gamma)) {
    throw SolverError("qubit-1 populations give no finite positive temperature (excess " +
                      fmt_double(gamma) + ")");
  }
  // ln(rho00 / rho11) = E1 / TC + shift.
  const double shift = std::log1p(gamma / ground) - std::log1p(-gamma / excited);
  return TC / (1.0 + TC * shift / E1);
}

HeatCurrents heat_currents(const DensityMatrix& rho, const FridgeParams& params) {
  const ComplexMatrix h0 = free_hamiltonian(params);
  const ComplexMatrix m = rho.matrix();
  const auto E = params.energies();
  const auto T = params.temperatures();
  const auto p = params.rates();
  std::array<double, 3> q{};
  for (int k = 1; k <= kQubits; ++k) {
    const Qubit qubit = qubit_from_label(k);
    const ComplexMatrix reset =
        insert_qubit(thermal_qubit(E[k - 1], T[k - 1]), partial_trace(m, qubit), qubit) - m;
    q[k - 1] = p[k - 1] * (h0 * reset).trace().real();
  }
  return HeatCurrents{q[0], q[1], q[2]};
}

std::optional<double> efficiency(const HeatCurrents& currents, double zero_tolerance) {
  if (std::abs(currents.QH) <= zero_tolerance) return std::nullopt;
  return currents.QC / currents.QH;
}

double carnot_cop(double TC, double TR, double TH) {
  return TC * (TH - TR) / (TH * (TR - TC));
}

double carnot_E3(double E1, double TC, double TR, double TH) {
  if (!(E1 > 0.0) || !(TC > 0.0) || !(TC < TR && TR < TH)) {
    throw ValidationError("carnot_E3 requires E1 > 0 and 0 < TC < TR < TH");
  }
  const double E3 = E1 * (1.0 / TC - 1.0 / TR) / (1.0 / TR - 1.0 / TH);
  if (std::abs(E3 - E1) <= 1e-12 * E1) {
    throw ValidationError("Carnot E3 coincides with E1 (degenerate spectrum); perturb the inputs");
  }
  return E3;
}

DensityMatrix evolve(const DensityMatrix& rho0, const FridgeParams& params, double t,
                     const Tolerances& tol) {
  if (!(t >= 0.0) || !std::isfinite(t)) throw ValidationError("evolve requires finite t >= 0");
  params.validate();
  const Liouvillian liouvillian = build_liouvillian(params);
  const ComplexMatrix& L = liouvillian.matrix();
  const int n = static_cast<int>(L.rows());

  // Split L into its invariant blocks (connected components of the sparsity
  // pattern). Each block is shifted by its mean diagonal before the
  // eigendecomposition, so level spacings of order p are resolved against
  // the block's own scale rather than the full Bohr frequencies.
  std::vector<int> root(static_cast<std::size_t>(n));
  std::iota(root.begin(), root.end(), 0);
  const auto find = [&](int i) {
    while (root[static_cast<std::size_t>(i)] != i) i = root[static_cast<std::size_t>(i)];
    return i;
  };
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      if (L(i, j) != Complex(0.0)) root[static_cast<std::size_t>(find(i))] = find(j);
    }
  }
  std::vector<std::vector<int>> blocks;
  std::vector<int> block_of(static_cast<std::size_t>(n), -1);
  for (int i = 0; i < n; ++i) {
    const int r = find(i);
    if (block_of[static_cast<std::size_t>(r)] < 0) {
      block_of[static_cast<std::size_t>(r)] = static_cast<int>(blocks.size());
      blocks.emplace_back();
    }
    blocks[static_cast<std::size_t>(block_of[static_cast<std::size_t>(r)])].push_back(i);
  }

  struct Mode {
    std::size_t block;
    Eigen::Index index;
  };
  std::vector<ComplexMatrix> vectors;
  std::vector<ComplexVector> values;
  std::vector<ComplexVector> coeffs;
  const ComplexVector x0 = vectorize(ComplexMatrix(rho0.matrix()));
  Mode stationary{0, 0};
  double smallest = std::numeric_limits<double>::infinity();
  for (std::size_t b = 0; b < blocks.size(); ++b) {
    const auto& idx = blocks[b];
    const Eigen::Index m = static_cast<Eigen::Index>(idx.size());
    ComplexMatrix B(m, m);
    ComplexVector x(m);
    for (Eigen::Index i = 0; i < m; ++i) {
      x(i) = x0(idx[static_cast<std::size_t>(i)]);
      for (Eigen::Index j = 0; j < m; ++j) {
        B(i, j) = L(idx[static_cast<std::size_t>(i)], idx[static_cast<std::size_t>(j)]);
      }
    }
    const Complex shift = B.trace() / static_cast<double>(m);
    B.diagonal().array() -= shift;
    Eigen::ComplexEigenSolver<ComplexMatrix> es(B);
    if (es.info() != Eigen::Success) throw SolverError("Liouvillian eigendecomposition failed");
    const Eigen::PartialPivLU<ComplexMatrix> lu(es.eigenvectors());
    const double rcond = lu.rcond();
    if (!(rcond > 1e-13)) {
      throw SolverError("Liouvillian eigenbasis is ill-conditioned (rcond " + fmt_double(rcond) +
                        "); spectral propagation unreliable");
    }
    ComplexVector lambda = es.eigenvalues().array() + shift;
    for (Eigen::Index k = 0; k < m; ++k) {
      lambda(k) = Complex(std::min(lambda(k).real(), 0.0), lambda(k).imag());
      if (std::abs(lambda(k)) < smallest) {
        smallest = std::abs(lambda(k));
        stationary = {b, k};
      }
    }
    vectors.push_back(es.eigenvectors());
    values.push_back(lambda);
    coeffs.push_back(lu.solve(x));
  }
  // The generator is trace preserving: its stationary eigenvalue is exactly 0,
  // and rounding there would otherwise leak into the trace as lambda * t.
  values[stationary.block](stationary.index) = 0.0;

  ComplexVector xt = ComplexVector::Zero(n);
  for (std::size_t b = 0; b < blocks.size(); ++b) {
    const ComplexVector c = coeffs[b].array() * (values[b].array() * t).exp();
    const ComplexVector y = vectors[b] * c;
    for (std::size_t i = 0; i < blocks[b].size(); ++i) {
      xt(blocks[b][i]) = y(static_cast<Eigen::Index>(i));
    }
  }
  const ComplexMatrix rho = hermitian_part(unvectorize(xt));
  try {
    return DensityMatrix::from_matrix(rho, tol);
  } catch (const ValidationError& e) {
    throw SolverError(std::string("propagated state is not a valid density matrix: ") + e.what());
  }
}

}  // namespace qfridge
