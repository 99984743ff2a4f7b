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

#include <complex>
#include <stdexcept>
#include <string>

#include <Eigen/Dense>

namespace qfridge {

using Complex = std::complex<double>;

/// Square complex matrix. Only dimensions 2, 4, 8 and 64 occur in this library.
using ComplexMatrix = Eigen::MatrixXcd;
using ComplexVector = Eigen::VectorXcd;
using Matrix2 = Eigen::Matrix<Complex, 2, 2>;
using Matrix8 = Eigen::Matrix<Complex, 8, 8>;

inline constexpr int kQubits = 3;
inline constexpr int kDim = 8;
inline constexpr int kLiouvilleDim = kDim * kDim;

/// Numerical tolerances shared by every module.
struct Tolerances {
  /// Physical validity of states: Hermiticity, trace, PSD, X-form.
  double physical = 1e-10;
  /// Pure algebraic identities.
  double algebraic = 1e-12;
};

/// Base of all errors raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Invalid input: bad parameters, malformed configuration, wrong dimensions.
class ValidationError : public Error {
 public:
  using Error::Error;
};

/// A numerical procedure failed or the quantity it computes is undefined.
class SolverError : public Error {
 public:
  using Error::Error;
};

/// Reading or writing a file failed.
class IoError : public Error {
 public:
  using Error::Error;
};

}  // namespace qfridge
