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

#include <cstdint>

#include "qfridge/entanglement.hpp"
#include "qfridge/fridge_model.hpp"

namespace qfridge {

/// Box for the free parameters (E3, p2, p3, g). The rates and the coupling
/// are searched on [max * lower_ratio, max] in log space.
struct SearchBounds {
  double p2_max = 1e-4;
  double p3_max = 1e-4;
  double g_max = 1e-4;
  double E3_min = 1.001;
  double E3_max = 5e3;
  double lower_ratio = 1e-6;
};

/// Best cooling of qubit 1 at fixed (E1, p1, TC, TR, TH).
struct OptimizationProblem {
  double E1 = 1.0;
  double p1 = 1e-5;
  double TC = 1.0;
  double TR = 1.1;
  double TH = 1e4;
  SearchBounds bounds;
  /// Impose W1, W2, W3 <= 0 on every accepted point.
  bool constrained = false;

  /// Rate bounds 1e-4, E3 window [E1 + 1e-3, max(0.5 TH, 4 E3_carnot)].
  static OptimizationProblem standard(double TR, double TH, double TC = 1.0, double E1 = 1.0,
                                      double p1 = 1e-5);
  void validate() const;
  FridgeParams params(double E3, double p2, double p3, double g) const;
};

/// Grid resolution of the first search stage.
struct SearchOptions {
  int grid_E3 = 24;
  int grid_rates = 6;
  /// Bisection steps used to pull an entangled candidate back onto the separable boundary.
  int repair_steps = 40;
};

struct CoolingResult {
  FridgeParams params_star;
  double TS = 0.0;
  EntanglementReport report;
  /// Constrained runs: the optimum re-validates W1, W2, W3 <= 1e-9 on the full solve.
  bool feasible = false;
  long evaluations = 0;
  long feasible_evaluations = 0;
  long failures = 0;  ///< candidate solves skipped after a solver error
  /// TS of params_star from the full 64x64 steady-state solve.
  double verified_TS = 0.0;
  double verified_residual = 0.0;
};

/// Minimizes TS over (E3, p2, p3, g).
///
/// Stage one scans a log-spaced grid; stage two runs Nelder-Mead from the best
/// grid point with box projection and seeded restarts until it stops
/// improving. Constrained runs accept only candidates with every bipartite
/// witness <= 0; an entangled candidate is moved to the separable boundary by
/// bisecting log g towards the box floor, and a final bisection between the
/// best feasible and best infeasible points sharpens the result. Every solve
/// counts against `budget`; the search is a fixed sequence truncated by the
/// budget, so a larger budget never yields a worse optimum.
///
/// Throws SolverError if no feasible point is found or nothing cools below TC.
CoolingResult optimize(const OptimizationProblem& problem, long budget, std::uint64_t seed,
                       const SearchOptions& options = {});

/// (TC - TS) / (TC - TS_star).
/// Throws ValidationError if TS or TS_star exceed TC, SolverError if TS_star == TC.
double zeta(double TC, double TS, double TS_star);

}  // namespace qfridge
