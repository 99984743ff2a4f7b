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

#include "qfridge/serialization.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstring>

namespace qfridge {

namespace {

Json number(double v) {
  if (!std::isfinite(v)) return nullptr;
  return v;
}

Json numbers(std::initializer_list<double> values) {
  Json out = Json::array();
  for (double v : values) out.push_back(number(v));
  return out;
}

std::array<double, 3> triple_at(const Json& j, const char* key, const std::string& what) {
  if (!j.contains(key)) throw ValidationError(what + ": missing key \"" + key + "\"");
  const Json& a = j.at(key);
  if (!a.is_array() || a.size() != 3) {
    throw ValidationError(what + ": \"" + key + "\" must be an array of 3 numbers");
  }
  std::array<double, 3> out{};
  for (std::size_t i = 0; i < 3; ++i) {
    if (!a[i].is_number()) {
      throw ValidationError(what + ": \"" + key + "\"[" + std::to_string(i) + "] is not a number");
    }
    out[i] = a[i].get<double>();
  }
  return out;
}

}  // namespace

Json parse_json(const std::string& text) {
  try {
    return Json::parse(text);
  } catch (const Json::parse_error& e) {
    throw ValidationError(std::string("malformed JSON: ") + e.what());
  }
}

void require_keys_subset(const Json& j, std::initializer_list<const char*> allowed,
                         const std::string& what) {
  if (!j.is_object()) throw ValidationError(what + ": expected a JSON object");
  for (const auto& item : j.items()) {
    const bool known = std::any_of(allowed.begin(), allowed.end(),
                                   [&](const char* k) { return item.key() == k; });
    if (!known) throw ValidationError(what + ": unknown key \"" + item.key() + "\"");
  }
}

double number_at(const Json& j, const char* key, const std::string& what) {
  if (!j.contains(key)) throw ValidationError(what + ": missing key \"" + key + "\"");
  if (!j.at(key).is_number()) {
    throw ValidationError(what + ": \"" + key + "\" must be a number");
  }
  return j.at(key).get<double>();
}

Json to_json(const DensityMatrix& rho) {
  Json re = Json::array();
  Json im = Json::array();
  for (int i = 0; i < kDim; ++i) {
    Json re_row = Json::array();
    Json im_row = Json::array();
    for (int j = 0; j < kDim; ++j) {
      re_row.push_back(number(rho(i, j).real()));
      im_row.push_back(number(rho(i, j).imag()));
    }
    re.push_back(re_row);
    im.push_back(im_row);
  }
  return Json{{"dim", kDim}, {"re", re}, {"im", im}};
}

ComplexMatrix matrix_from_json(const Json& j) {
  const std::string what = "density matrix";
  require_keys_subset(j, {"dim", "re", "im"}, what);
  if (!j.contains("dim") || !j.at("dim").is_number_integer() || j.at("dim").get<int>() != kDim) {
    throw ValidationError(what + ": \"dim\" must be the integer 8");
  }
  ComplexMatrix m(kDim, kDim);
  for (const char* part : {"re", "im"}) {
    if (!j.contains(part)) throw ValidationError(what + ": missing key \"" + part + "\"");
    const Json& rows = j.at(part);
    if (!rows.is_array() || rows.size() != static_cast<std::size_t>(kDim)) {
      throw ValidationError(what + ": \"" + part + "\" must be an 8x8 array");
    }
    for (int r = 0; r < kDim; ++r) {
      const Json& row = rows[static_cast<std::size_t>(r)];
      if (!row.is_array() || row.size() != static_cast<std::size_t>(kDim)) {
        throw ValidationError(what + ": \"" + part + "\" must be an 8x8 array");
      }
      for (int c = 0; c < kDim; ++c) {
        const Json& v = row[static_cast<std::size_t>(c)];
        if (!v.is_number()) {
          throw ValidationError(what + ": \"" + part + "\"[" + std::to_string(r) + "][" +
                                std::to_string(c) + "] is not a number");
        }
        if (std::strcmp(part, "re") == 0) {
          m(r, c).real(v.get<double>());
        } else {
          m(r, c).imag(v.get<double>());
        }
      }
    }
  }
  return m;
}

Json to_json(const FridgeParams& p) {
  return Json{{"E1", p.E1},
              {"E3", p.E3},
              {"g", p.g},
              {"p", numbers({p.p1, p.p2, p.p3})},
              {"T", numbers({p.TC, p.TR, p.TH})}};
}

FridgeParams fridge_params_from_json(const Json& j) {
  const std::string what = "fridge parameters";
  require_keys_subset(j, {"E1", "E3", "g", "p", "T"}, what);
  FridgeParams p;
  p.E1 = number_at(j, "E1", what);
  p.E3 = number_at(j, "E3", what);
  p.g = number_at(j, "g", what);
  const auto rates = triple_at(j, "p", what);
  const auto temps = triple_at(j, "T", what);
  p.p1 = rates[0];
  p.p2 = rates[1];
  p.p3 = rates[2];
  p.TC = temps[0];
  p.TR = temps[1];
  p.TH = temps[2];
  return p;
}

Json to_json(const HeatCurrents& q) {
  return Json{{"QC", number(q.QC)}, {"QR", number(q.QR)}, {"QH", number(q.QH)}};
}

Json to_json(const SteadyStateResult& r) {
  return Json{{"rho", to_json(r.rho)},
              {"TS", number(r.TS)},
              {"gamma_hat", number(r.gamma_hat)},
              {"residual", number(r.residual)},
              {"uniqueness_ratio", number(r.uniqueness_ratio)},
              {"x_form_deviation", number(r.x_form_deviation)},
              {"currents", to_json(r.currents)},
              {"efficiency", r.efficiency ? number(*r.efficiency) : Json(nullptr)},
              {"carnot_cop", number(r.carnot_cop)}};
}

Json to_json(const EntanglementReport& r) {
  return Json{{"W", numbers({r.W1, r.W2, r.W3, r.W123})},
              {"C",
               {{"C_RH", number(r.C_C_RH)},
                {"R_CH", number(r.C_R_CH)},
                {"CR_H", number(r.C_CR_H)},
                {"GME", number(r.C_GME)}}},
              {"x_form", r.x_form}};
}

Json to_json(const SeparabilityCertificate& c) {
  return Json{{"purity", number(c.purity)},
              {"purity_ball", c.purity_ball},
              {"frobenius_to_maximally_mixed", number(c.frobenius_to_maximally_mixed)},
              {"gurvits_ball", c.gurvits_ball},
              {"biseparable_all", c.biseparable_all}};
}

Json to_json(const GhzNoiseThresholds& t) {
  return Json{{"w2_zero", number(t.w2_zero)},
              {"w123_zero", number(t.w123_zero)},
              {"literature_separable_bound", number(t.literature_separable_bound)},
              {"tension", t.tension}};
}

Json to_json(const CoolingResult& r) {
  return Json{{"params_star", to_json(r.params_star)},
              {"TS", number(r.TS)},
              {"report", to_json(r.report)},
              {"feasible", r.feasible},
              {"evaluations", r.evaluations},
              {"feasible_evaluations", r.feasible_evaluations},
              {"failures", r.failures},
              {"verified_TS", number(r.verified_TS)},
              {"verified_residual", number(r.verified_residual)}};
}

Json to_json(const std::vector<RegimeOutcome>& rows) {
  Json list = Json::array();
  bool all = true;
  for (const auto& o : rows) {
    all = all && o.pass;
    list.push_back(Json{{"row", o.row.row},
                        {"label", o.row.label},
                        {"params", to_json(o.row.params)},
                        {"printed",
                         {{"C_RH", o.row.printed[0]},
                          {"R_CH", o.row.printed[1]},
                          {"CR_H", o.row.printed[2]},
                          {"GME", o.row.printed[3]}}},
                        {"report", to_json(o.report)},
                        {"TS", number(o.TS)},
                        {"rule", o.rule},
                        {"pass", o.pass}});
  }
  return Json{{"rows", list}, {"all_pass", all}};
}

Json to_json(const CollapseReport& r) {
  Json slices = Json::array();
  for (const auto& s : r.slices) {
    slices.push_back(Json{{"TH", number(s.TH)},
                          {"points", s.points},
                          {"entangled", s.entangled},
                          {"rank_correlation", number(s.rank_correlation)},
                          {"separable_zeta_deviation", number(s.separable_zeta_deviation)}});
  }
  Json bins = Json::array();
  for (const auto& b : r.bins) {
    Json zeta = Json::array();
    Json TH = Json::array();
    for (double z : b.zeta) zeta.push_back(number(z));
    for (double t : b.TH) TH.push_back(number(t));
    bins.push_back(Json{{"C", number(b.C)},
                        {"TH", TH},
                        {"zeta", zeta},
                        {"relative_spread", number(b.relative_spread)},
                        {"relative_excess_spread", number(b.relative_excess_spread)}});
  }
  return Json{{"slices", slices},
              {"bins", bins},
              {"max_relative_spread", number(r.max_relative_spread)},
              {"max_relative_excess_spread", number(r.max_relative_excess_spread)}};
}

Json sweep_summary_json(const SweepResult& result) {
  Json failures = Json::array();
  long adopted = 0;
  for (const auto& r : result.grid) {
    if (r.adopted_constrained) ++adopted;
    if (!r.failed) continue;
    failures.push_back(Json{{"TR", number(r.TR)}, {"TH", number(r.TH)}, {"error", r.error}});
  }
  Json boundary = Json::array();
  for (const auto& b : result.boundary) {
    boundary.push_back(Json{{"TH", number(b.TH)}, {"TR", number(b.TR)}});
  }
  const double cells = static_cast<double>(result.grid.size());
  return Json{{"cells", result.grid.size()},
              {"n_TR", result.n_TR},
              {"n_TH", result.n_TH},
              {"failures", failures},
              {"failure_fraction", cells > 0 ? number(static_cast<double>(failures.size()) / cells)
                                             : Json(0.0)},
              {"max_zeta", number(result.max_zeta())},
              {"adopted_constrained", adopted},
              {"entanglement_threshold", kEntanglementThreshold},
              {"boundary", boundary}};
}

}  // namespace qfridge
