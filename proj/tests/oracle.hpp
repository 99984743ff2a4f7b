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

// Reference computations for the tests, written without the library's
// helpers: explicit bit loops for the master equation and an extended
// precision linear solve for the steady state.

#pragma once

#include <cmath>
#include <complex>
#include <random>

#include <Eigen/Dense>

#include "qfridge/fridge_model.hpp"

namespace oracle {

using qfridge::Complex;
using qfridge::ComplexMatrix;
using qfridge::FridgeParams;

inline int bit_of(int offset, int qubit) { return (offset >> (2 - qubit)) & 1; }
inline int with_bit(int offset, int qubit, int b) {
  const int mask = 1 << (2 - qubit);
  return b ? (offset | mask) : (offset & ~mask);
}

inline double excited_population(double E, double T) { return std::exp(-E / T) / (1.0 + std::exp(-E / T)); }

inline ComplexMatrix hamiltonian(const FridgeParams& p) {
  const double E[3] = {p.E1, p.E1 + p.E3, p.E3};
  ComplexMatrix H = ComplexMatrix::Zero(8, 8);
  for (int x = 0; x < 8; ++x) {
    for (int q = 0; q < 3; ++q) H(x, x) += E[q] * bit_of(x, q);
  }
  H(2, 5) = p.g;  // |010><101|
  H(5, 2) = p.g;
  return H;
}

/// d rho / dt by direct index manipulation.
inline ComplexMatrix rhs(const FridgeParams& p, const ComplexMatrix& rho) {
  const ComplexMatrix H = hamiltonian(p);
  ComplexMatrix out = Complex(0.0, -1.0) * (H * rho - rho * H);
  const double E[3] = {p.E1, p.E1 + p.E3, p.E3};
  const double T[3] = {p.TC, p.TR, p.TH};
  const double rate[3] = {p.p1, p.p2, p.p3};
  for (int q = 0; q < 3; ++q) {
    const double e = excited_population(E[q], T[q]);
    const double tau[2] = {1.0 - e, e};
    for (int x = 0; x < 8; ++x) {
      for (int y = 0; y < 8; ++y) {
        Complex reset = 0.0;
        if (bit_of(x, q) == bit_of(y, q)) {
          Complex traced = 0.0;
          for (int s = 0; s < 2; ++s) traced += rho(with_bit(x, q, s), with_bit(y, q, s));
          reset = tau[bit_of(x, q)] * traced;
        }
        out(x, y) += rate[q] * (reset - rho(x, y));
      }
    }
  }
  return out;
}

/// Steady state from L with one row replaced by the trace condition, solved
/// in long double with two refinement sweeps.
inline ComplexMatrix steady_state(const FridgeParams& p) {
  using LComplex = std::complex<long double>;
  using LMatrix = Eigen::Matrix<LComplex, Eigen::Dynamic, Eigen::Dynamic>;
  using LVector = Eigen::Matrix<LComplex, Eigen::Dynamic, 1>;
  LMatrix L(64, 64);
  for (int col = 0; col < 64; ++col) {
    ComplexMatrix basis = ComplexMatrix::Zero(8, 8);
    basis(col % 8, col / 8) = 1.0;
    const ComplexMatrix image = rhs(p, basis);
    for (int row = 0; row < 64; ++row) L(row, col) = LComplex(image(row % 8, row / 8));
  }
  for (int col = 0; col < 64; ++col) L(0, col) = (col % 8 == col / 8) ? 1.0L : 0.0L;
  LVector b = LVector::Zero(64);
  b(0) = 1.0L;
  Eigen::PartialPivLU<LMatrix> lu(L);
  LVector x = lu.solve(b);
  for (int i = 0; i < 2; ++i) x += lu.solve(LVector(b - L * x));
  ComplexMatrix rho(8, 8);
  for (int k = 0; k < 64; ++k) {
    rho(k % 8, k / 8) = Complex(static_cast<double>(x(k).real()), static_cast<double>(x(k).imag()));
  }
  return 0.5 * (rho + rho.adjoint());
}

inline ComplexMatrix product_thermal(const FridgeParams& p) {
  const double E[3] = {p.E1, p.E1 + p.E3, p.E3};
  const double T[3] = {p.TC, p.TR, p.TH};
  ComplexMatrix rho = ComplexMatrix::Zero(8, 8);
  for (int x = 0; x < 8; ++x) {
    double v = 1.0;
    for (int q = 0; q < 3; ++q) {
      const double e = excited_population(E[q], T[q]);
      v *= bit_of(x, q) ? e : 1.0 - e;
    }
    rho(x, x) = v;
  }
  return rho;
}

/// Random parameter set inside the weak-coupling regime used by the tests.
inline FridgeParams random_params(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  const auto log_uniform = [&](double lo, double hi) {
    return std::exp(std::log(lo) + (std::log(hi) - std::log(lo)) * u(rng));
  };
  FridgeParams p;
  p.E1 = log_uniform(0.5, 5.0);
  do {
    p.E3 = log_uniform(0.5, 500.0);
  } while (std::abs(p.E3 - p.E1) < 1e-3);
  p.g = log_uniform(1e-6, 1e-3);
  p.p1 = log_uniform(1e-6, 1e-3);
  p.p2 = log_uniform(1e-6, 1e-3);
  p.p3 = log_uniform(1e-6, 1e-3);
  p.TC = log_uniform(0.5, 2.0);
  p.TR = p.TC * log_uniform(1.05, 50.0);
  p.TH = p.TR * log_uniform(1.05, 1e3);
  return p;
}

}  // namespace oracle
