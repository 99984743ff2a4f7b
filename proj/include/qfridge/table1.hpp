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
#include <string>
#include <vector>

#include "qfridge/entanglement.hpp"
#include "qfridge/fridge_model.hpp"

namespace qfridge {

/// Concurrences listed as zero are taken to mean below this value.
inline constexpr double kPrintedZero = 1e-6;

/// One of the four reference entanglement regimes.
struct RegimeRow {
  int row = 0;
  std::string label;
  FridgeParams params;
  /// Printed (C_C_RH, C_R_CH, C_CR_H, C_GME).
  std::array<double, 4> printed{};
};

struct RegimeOutcome {
  RegimeRow row;
  EntanglementReport report;
  double TS = 0.0;
  bool pass = false;
  std::string rule;
};

std::vector<RegimeRow> table1_rows();

/// Solves every row and grades it:
///   row 1: all four concurrences within 0.001 of the printed values;
///   row 2: only C_CR_H positive, within 1e-5 of 2e-5;
///   row 3: only C_R_CH positive, within 2.5e-5 of 5e-5;
///   row 4: the three bipartite concurrences positive, C_GME below kPrintedZero.
/// Throws SolverError if a row cannot be solved.
std::vector<RegimeOutcome> table1_reproduce();

}  // namespace qfridge
