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

#include <initializer_list>
#include <string>
#include <vector>

#include "json.hpp"
#include "qfridge/entanglement.hpp"
#include "qfridge/fridge_model.hpp"
#include "qfridge/optimizer.hpp"
#include "qfridge/sweep.hpp"
#include "qfridge/table1.hpp"

namespace qfridge {

using Json = nlohmann::json;

// Doubles are written in shortest round-trip form; non-finite values become null.

/// {"dim": 8, "re": [[...]], "im": [[...]]}, row-major.
Json to_json(const DensityMatrix& rho);
/// Checks the schema only; physical validity is left to the caller.
/// Throws ValidationError on schema violations.
ComplexMatrix matrix_from_json(const Json& j);

/// {"E1", "E3", "g", "p": [p1, p2, p3], "T": [TC, TR, TH]}.
Json to_json(const FridgeParams& p);
/// Strict: every key required, unknown keys rejected. Does not call validate().
FridgeParams fridge_params_from_json(const Json& j);

Json to_json(const HeatCurrents& q);
Json to_json(const SteadyStateResult& r);
/// {"W": [W1, W2, W3, W123], "C": {"C_RH", "R_CH", "CR_H", "GME"}, "x_form"}.
Json to_json(const EntanglementReport& r);
Json to_json(const SeparabilityCertificate& c);
Json to_json(const GhzNoiseThresholds& t);
Json to_json(const CoolingResult& r);
Json to_json(const std::vector<RegimeOutcome>& rows);
Json to_json(const CollapseReport& r);
/// Cell count, failures with messages, boundary points and the largest zeta.
Json sweep_summary_json(const SweepResult& result);

/// Parses text; syntax errors become ValidationError.
Json parse_json(const std::string& text);
/// Throws ValidationError naming the first key of `j` outside `allowed`,
/// or if `j` is not an object.
void require_keys_subset(const Json& j, std::initializer_list<const char*> allowed,
                         const std::string& what);
/// Number at `key`; ValidationError if missing or not numeric.
double number_at(const Json& j, const char* key, const std::string& what);

}  // namespace qfridge
