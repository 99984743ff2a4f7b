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
#include <limits>
#include <random>

#include "doctest.h"
#include "qfridge/serialization.hpp"

using namespace qfridge;

namespace {

FridgeParams sample() {
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

}  // namespace

TEST_CASE("parameters round trip exactly") {
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> u(0.1, 10.0);
  for (int i = 0; i < 20; ++i) {
    FridgeParams p = sample();
    p.E1 = u(rng);
    p.g = u(rng) * 1e-5;
    p.TR = 1.0 + u(rng) / 3.0;
    const Json j = parse_json(to_json(p).dump());
    const FridgeParams q = fridge_params_from_json(j);
    CHECK(q.E1 == p.E1);
    CHECK(q.E3 == p.E3);
    CHECK(q.g == p.g);
    CHECK(q.p1 == p.p1);
    CHECK(q.p2 == p.p2);
    CHECK(q.p3 == p.p3);
    CHECK(q.TC == p.TC);
    CHECK(q.TR == p.TR);
    CHECK(q.TH == p.TH);
  }
}

TEST_CASE("parameter parsing is strict") {
  Json j = to_json(sample());
  j["extra"] = 1;
  CHECK_THROWS_AS(fridge_params_from_json(j), ValidationError);
  j = to_json(sample());
  j.erase("g");
  CHECK_THROWS_AS(fridge_params_from_json(j), ValidationError);
  j = to_json(sample());
  j["p"] = Json::array({1e-5, 1e-5});
  CHECK_THROWS_AS(fridge_params_from_json(j), ValidationError);
  j = to_json(sample());
  j["E3"] = "300";
  CHECK_THROWS_AS(fridge_params_from_json(j), ValidationError);
  CHECK_THROWS_AS(fridge_params_from_json(Json::array()), ValidationError);
  CHECK_THROWS_AS(parse_json("{\"E1\": "), ValidationError);
}

TEST_CASE("density matrices round trip exactly") {
  std::mt19937_64 rng(11);
  const DensityMatrix rho = random_density_matrix(rng);
  const Json j = parse_json(to_json(rho).dump());
  CHECK(j.at("dim") == 8);
  const ComplexMatrix m = matrix_from_json(j);
  for (int r = 0; r < 8; ++r) {
    for (int c = 0; c < 8; ++c) CHECK(m(r, c) == rho(r, c));
  }
  Json bad = j;
  bad["dim"] = 4;
  CHECK_THROWS_AS(matrix_from_json(bad), ValidationError);
  bad = j;
  bad["re"][3] = Json::array({1, 2});
  CHECK_THROWS_AS(matrix_from_json(bad), ValidationError);
  bad = j;
  bad["im"][0][0] = nullptr;
  CHECK_THROWS_AS(matrix_from_json(bad), ValidationError);
  bad = j;
  bad["note"] = "x";
  CHECK_THROWS_AS(matrix_from_json(bad), ValidationError);
}

TEST_CASE("steady-state output structure") {
  const SteadyStateResult r = steady_state(sample());
  const Json j = to_json(r);
  for (const char* key : {"rho", "TS", "gamma_hat", "residual", "uniqueness_ratio",
                          "x_form_deviation", "currents", "efficiency", "carnot_cop"}) {
    CHECK_MESSAGE(j.contains(key), key);
  }
  CHECK(j.at("TS").get<double>() == r.TS);
  CHECK(j.at("currents").contains("QC"));
  const Json report = to_json(entanglement_report(r.rho));
  CHECK(report.at("W").size() == 4);
  CHECK(report.at("C").contains("R_CH"));
  CHECK(report.at("x_form") == true);
}

TEST_CASE("non-finite values are written as null") {
  HeatCurrents q;
  q.QC = std::numeric_limits<double>::quiet_NaN();
  q.QR = std::numeric_limits<double>::infinity();
  q.QH = 1.0;
  const Json j = to_json(q);
  CHECK(j.at("QC").is_null());
  CHECK(j.at("QR").is_null());
  CHECK(j.at("QH") == 1.0);
}

TEST_CASE("sweep summary") {
  SweepResult r;
  r.n_TR = 2;
  r.n_TH = 1;
  SweepRow ok;
  ok.TR = 1.5;
  ok.TH = 100.0;
  ok.zeta = 1.2;
  ok.adopted_constrained = true;
  SweepRow bad;
  bad.i_TR = 1;
  bad.TR = 2.0;
  bad.TH = 100.0;
  bad.failed = true;
  bad.error = "no convergence";
  r.grid = {ok, bad};
  const Json j = sweep_summary_json(r);
  CHECK(j.at("cells") == 2);
  CHECK(j.at("failures").size() == 1);
  CHECK(j.at("failures")[0].at("error") == "no convergence");
  CHECK(j.at("failure_fraction").get<double>() == 0.5);
  CHECK(j.at("max_zeta").get<double>() == 1.2);
  CHECK(j.at("adopted_constrained") == 1);
  CHECK(j.at("entanglement_threshold").get<double>() == kEntanglementThreshold);
}

TEST_CASE("key subset helper") {
  const Json j = {{"a", 1}, {"b", 2}};
  CHECK_NOTHROW(require_keys_subset(j, {"a", "b", "c"}, "x"));
  CHECK_THROWS_AS(require_keys_subset(j, {"a"}, "x"), ValidationError);
  CHECK(number_at(j, "a", "x") == 1.0);
  CHECK_THROWS_AS(number_at(j, "z", "x"), ValidationError);
}
