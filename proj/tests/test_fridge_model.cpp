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

#include <cmath>
#include <random>

#include <Eigen/Eigenvalues>

#include "doctest.h"
#include "oracle.hpp"
#include "qfridge/fridge_model.hpp"

using namespace qfridge;

namespace {

double max_abs(const ComplexMatrix& m) { return m.cwiseAbs().maxCoeff(); }

FridgeParams row1() {
  FridgeParams p;
  p.E1 = 2.0;
  p.E3 = 300.0;
  p.g = 1e-4;
  p.p1 = 1e-5;
  p.p2 = 1e-3;
  p.p3 = 1e-5;
  p.TC = 1.0;
  p.TR = 1.1;
  p.TH = 1e4;
  return p;
}

FridgeParams carnot_point() {
  FridgeParams p;
  p.E1 = 1.0;
  p.TC = 1.0;
  p.TR = 2.0;
  p.TH = 4.0;
  p.E3 = carnot_E3(p.E1, p.TC, p.TR, p.TH);
  p.g = 1e-4;
  p.p1 = 1e-5;
  p.p2 = 1e-4;
  p.p3 = 1e-4;
  return p;
}

}  // namespace

TEST_CASE("parameter validation") {
  FridgeParams p = row1();
  CHECK_NOTHROW(p.validate());
  p.E3 = p.E1;
  CHECK_THROWS_AS(p.validate(), ValidationError);
  p = row1();
  p.TR = 0.5;
  CHECK_THROWS_AS(p.validate(), ValidationError);
  p = row1();
  p.p2 = 0.0;
  CHECK_THROWS_AS(p.validate(), ValidationError);
  p = row1();
  p.g = -1e-4;
  CHECK_THROWS_AS(p.validate(), ValidationError);
  p = row1();
  CHECK(p.E2() == 302.0);
  CHECK(p.coupling_ratio() == doctest::Approx(5e-5));
  CHECK(p.rate_ratio() == doctest::Approx(5e-4));
  CHECK(p.weak_coupling());
  p.p2 = 0.1;
  CHECK_FALSE(p.weak_coupling());
}

TEST_CASE("Hamiltonians") {
  FridgeParams p;
  p.E1 = 1.0;
  p.E3 = 2.0;
  p.g = 1e-4;
  const ComplexMatrix H0 = free_hamiltonian(p);
  CHECK(H0(0, 0) == Complex(0.0));
  CHECK(H0(2, 2) == H0(5, 5));
  CHECK(H0(2, 2).real() == 3.0);
  CHECK(H0(7, 7).real() == 6.0);
  CHECK(max_abs(H0 - ComplexMatrix(H0.diagonal().asDiagonal())) == 0.0);
  const ComplexMatrix Hint = interaction_hamiltonian(p);
  CHECK(Hint(2, 5) == Complex(1e-4));
  CHECK(Hint(5, 2) == Complex(1e-4));
  ComplexMatrix rest = Hint;
  rest(2, 5) = rest(5, 2) = 0.0;
  CHECK(max_abs(rest) == 0.0);
  CHECK(max_abs(Hint - Hint.adjoint()) == 0.0);
  p.g = 0.0;
  CHECK(max_abs(interaction_hamiltonian(p)) == 0.0);
  CHECK(max_abs(free_hamiltonian(row1()) + interaction_hamiltonian(row1()) -
                oracle::hamiltonian(row1())) < 1e-12);
}

TEST_CASE("thermal qubit") {
  const ComplexMatrix hot = thermal_qubit(1.0, 1e12);
  CHECK(std::abs(hot(0, 0).real() - 0.5) < 1e-10);
  CHECK(std::abs(hot(1, 1).real() - 0.5) < 1e-10);
  CHECK(thermal_qubit(1.0, 1.0)(0, 0).real() == doctest::Approx(0.731059).epsilon(1e-6));
  double previous = 1.0;
  for (double T = 0.1; T < 100.0; T *= 1.3) {
    const double r = thermal_qubit(1.0, T)(0, 0).real();
    CHECK(r < previous);
    previous = r;
  }
  CHECK_THROWS_AS(thermal_qubit(1.0, 0.0), ValidationError);
  CHECK_THROWS_AS(thermal_qubit(-1.0, 1.0), ValidationError);
}

TEST_CASE("Liouvillian against the index-loop master equation") {
  std::mt19937_64 rng(10);
  for (int trial = 0; trial < 20; ++trial) {
    const FridgeParams p = oracle::random_params(rng);
    const Liouvillian L = build_liouvillian(p);
    const ComplexMatrix rho = random_density_matrix(rng).matrix();
    const ComplexMatrix expected = oracle::rhs(p, rho);
    const double scale = free_hamiltonian(p).cwiseAbs().maxCoeff();
    CHECK(max_abs(L.apply(rho) - expected) < 1e-13 * scale);
    CHECK(max_abs(master_equation_rhs(p, rho) - expected) < 1e-13 * scale);
    CHECK(std::abs(L.apply(rho).trace()) < 1e-12 * scale);

    const ComplexMatrix sigma = random_density_matrix(rng).matrix();
    const Complex a(0.3, -0.2);
    const Complex b(-1.1, 0.4);
    CHECK(max_abs(L.apply(a * rho + b * sigma) - a * L.apply(rho) - b * L.apply(sigma)) <
          1e-12 * scale);
  }
}

TEST_CASE("Liouvillian spectrum has no growing modes") {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 50; ++trial) {
    const FridgeParams p = oracle::random_params(rng);
    Eigen::ComplexEigenSolver<ComplexMatrix> es(build_liouvillian(p).matrix(), false);
    const auto& values = es.eigenvalues();
    double largest = -INFINITY;
    for (int i = 0; i < values.size(); ++i) largest = std::max(largest, values(i).real());
    CHECK(largest <= 1e-10);
    CHECK(std::abs(largest) < 1e-10);
  }
}

TEST_CASE("fixed points: uncoupled and Carnot") {
  FridgeParams p = row1();
  p.g = 0.0;
  const ComplexMatrix product = oracle::product_thermal(p);
  CHECK(max_abs(build_liouvillian(p).apply(product)) < 1e-15);
  SteadyStateResult r = steady_state(p);
  CHECK(max_abs(r.rho.matrix() - product) < 1e-10);
  CHECK(std::abs(r.TS - p.TC) < 1e-10);
  CHECK(r.gamma_hat == doctest::Approx(0.0).epsilon(1e-12));
  CHECK(std::abs(r.currents.QC) < 1e-12);
  CHECK(std::abs(r.currents.QR) < 1e-12);
  CHECK(std::abs(r.currents.QH) < 1e-12);

  p = carnot_point();
  CHECK(p.E3 == doctest::Approx(2.0));
  const ComplexMatrix product_c = oracle::product_thermal(p);
  CHECK(max_abs(build_liouvillian(p).apply(product_c)) < 1e-15);
  r = steady_state(p);
  CHECK(max_abs(r.rho.matrix() - product_c) < 1e-10);
  CHECK(std::abs(r.TS - p.TC) < 1e-10);
  CHECK(std::abs(r.gamma_hat) < 1e-12);
  CHECK(std::abs(r.currents.QC) < 1e-12);
  CHECK(std::abs(r.currents.QH) < 1e-12);

  for (double shift : {0.99, 1.01}) {
    FridgeParams q = p;
    q.E3 *= shift;
    CHECK(max_abs(build_liouvillian(q).apply(oracle::product_thermal(q))) > 1e-12);
  }
}

TEST_CASE("steady state agrees with the extended-precision oracle") {
  std::mt19937_64 rng(12);
  for (int trial = 0; trial < 30; ++trial) {
    const FridgeParams p = oracle::random_params(rng);
    const SteadyStateResult r = steady_state(p);
    const ComplexMatrix expected = oracle::steady_state(p);
    CHECK(max_abs(r.rho.matrix() - expected) < 1e-10);
    CHECK(r.residual < 1e-9);
    CHECK(r.uniqueness_ratio > 100.0);
    CHECK(r.x_form_deviation < 1e-10);
    CHECK(std::abs(r.currents.total()) < 1e-10);
    CHECK(std::abs(reduced_qubit(r.rho, Qubit::Cold)(0, 1)) < 1e-10);

    const DensityMatrix x = solve_x_block(p).to_density_matrix();
    CHECK(max_abs(x.matrix() - expected) < 1e-10);
  }
  const SteadyStateResult r = steady_state(row1());
  CHECK(max_abs(r.rho.matrix() - oracle::steady_state(row1())) < 1e-12);
}

TEST_CASE("qubit temperature and cooling proxy") {
  FridgeParams p = row1();
  p.g = 0.0;
  CHECK(qubit_temperature(thermal_product_state(p), p.E1) == doctest::Approx(p.TC).epsilon(1e-12));
  Matrix8 half = Matrix8::Zero();
  half(0, 0) = 0.5;
  half(4, 4) = 0.5;
  CHECK_THROWS_AS(qubit_temperature(DensityMatrix::unchecked(half), 1.0), SolverError);

  const SteadyStateResult r = steady_state(row1());
  CHECK(r.gamma_hat > 0.0);
  CHECK(r.TS < 1.0);
  CHECK(r.currents.QC > 0.0);
  CHECK(r.currents.QH > 0.0);
  CHECK(r.currents.QR < 0.0);
}

TEST_CASE("temperature from the ground-population excess") {
  CHECK(temperature_from_excess(0.0, 0.7, 1.2) == 1.2);
  const SteadyStateResult r = steady_state(row1());
  CHECK(temperature_from_excess(r.gamma_hat, 2.0, 1.0) ==
        doctest::Approx(qubit_temperature(r.rho, 2.0)).epsilon(1e-12));
  for (double gamma : {1e-16, -1e-16, 1e-3, -1e-3}) {
    const double TS = temperature_from_excess(gamma, 2.0, 1.0);
    CHECK((gamma > 0.0) == (TS < 1.0));
  }
  CHECK_THROWS_AS(temperature_from_excess(-0.5, 2.0, 1.0), SolverError);
}

TEST_CASE("efficiency, Carnot coefficient and Carnot energy") {
  CHECK(carnot_cop(1.0, 2.0, 4.0) == doctest::Approx(0.5));
  CHECK(carnot_E3(1.0, 1.0, 2.0, 4.0) == doctest::Approx(2.0));
  for (double TR : {1.1, 2.0, 5.0}) {
    for (double TH : {10.0, 100.0, 1e4}) {
      const double E3 = carnot_E3(1.0, 1.0, TR, TH);
      CHECK(std::abs(1.0 / E3 - carnot_cop(1.0, TR, TH)) < 1e-12);
    }
  }
  CHECK_THROWS_AS(carnot_E3(1.0, 2.0, 1.0, 4.0), ValidationError);
  HeatCurrents q;
  q.QC = 0.2;
  q.QH = 0.4;
  CHECK(efficiency(q).value() == doctest::Approx(0.5));
  q.QH = 0.0;
  CHECK_FALSE(efficiency(q).has_value());

  const SteadyStateResult r = steady_state(row1());
  REQUIRE(r.efficiency.has_value());
  CHECK(*r.efficiency < r.carnot_cop);
  CHECK(*r.efficiency == doctest::Approx(row1().E1 / row1().E3).epsilon(1e-9));
}

TEST_CASE("spectral evolution") {
  std::mt19937_64 rng(13);
  const FridgeParams p = oracle::random_params(rng);
  const DensityMatrix rho0 = random_density_matrix(rng);
  CHECK(max_abs(evolve(rho0, p, 0.0).matrix() - rho0.matrix()) < 1e-10);
  const double tmin = 1.0 / std::min({p.p1, p.p2, p.p3});
  for (double t : {0.1 * tmin, tmin, 3.0 * tmin}) {
    CHECK(std::abs(evolve(rho0, p, t).matrix().trace() - Complex(1.0)) < 1e-10);
  }
  const DensityMatrix late = evolve(rho0, p, 40.0 * tmin);
  CHECK(max_abs(late.matrix() - steady_state(p).rho.matrix()) < 1e-6);
  CHECK_THROWS_AS(evolve(rho0, p, -1.0), ValidationError);

  // Widely separated scales: Bohr frequencies in the hundreds, rates near 1e-6.
  std::mt19937_64 many(2026);
  for (int trial = 0; trial < 100; ++trial) {
    const FridgeParams q = oracle::random_params(many);
    const double t = 10.0 / std::min({q.p1, q.p2, q.p3});
    const DensityMatrix start = thermal_product_state(q);
    DensityMatrix out;
    REQUIRE_NOTHROW(out = evolve(start, q, t));
    CHECK(std::abs(out.matrix().trace() - Complex(1.0)) < 1e-10);
  }
}
