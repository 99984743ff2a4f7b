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
#include <iosfwd>
#include <string>
#include <vector>

#include "qfridge/optimizer.hpp"

namespace qfridge {

/// Concurrence below which a cell counts as separable.
inline constexpr double kEntanglementThreshold = 1e-6;

struct SweepConfig {
  double TR_min = 1.01;
  double TR_max = 5.0;
  double TH_min = 10.0;
  double TH_max = 1e4;
  int resolution = 20;
  std::vector<double> slices = {1e2, 1e3, 1e4};

  double TC = 1.0;
  double E1 = 1.0;
  double p1 = 1e-5;
  double p2_max = 1e-4;
  double p3_max = 1e-4;
  double g_max = 1e-4;

  long budget = 40000;
  std::uint64_t seed = 0;
  /// 0 selects std::thread::hardware_concurrency().
  int threads = 0;
  SearchOptions search;

  void validate() const;
  OptimizationProblem problem(double TR, double TH, bool constrained) const;
};

/// One grid cell. TR and TH come from the grid; everything else from the
/// two optimizations at that cell. The entanglement columns describe the
/// unconstrained optimum.
struct SweepRow {
  int i_TR = 0;
  int i_TH = 0;
  double TR = 0.0;
  double TH = 0.0;
  double TS = 0.0;
  double TS_star = 0.0;
  double zeta = 0.0;
  double C_C_RH = 0.0;
  double C_R_CH = 0.0;
  double C_CR_H = 0.0;
  double C_GME = 0.0;
  long feasible_evals = 0;
  long evaluations = 0;
  /// The constrained run beat the unconstrained one and its optimum was adopted for TS.
  bool adopted_constrained = false;
  bool failed = false;
  std::string error;

  double max_bipartite_concurrence() const;
};

/// Point on the separable/entangled boundary of the unconstrained optimum.
struct BoundaryPoint {
  double TH = 0.0;
  double TR = 0.0;
};

struct SweepResult {
  std::vector<SweepRow> grid;  ///< ordered by (i_TH, i_TR)
  int n_TR = 0;
  int n_TH = 0;
  std::vector<BoundaryPoint> boundary;

  long failures() const;
  double max_zeta() const;
  const SweepRow& at(int i_TR, int i_TH) const;
};

/// res x res grid, TR linear on [TR_min, TR_max], TH logarithmic on [TH_min, TH_max].
SweepResult sweep_fig2(const SweepConfig& config);

/// For each TH in `config.slices`, `resolution` TR values on [TR_min, TR_max].
SweepResult sweep_slices(const SweepConfig& config);

/// Interpolated crossings of max bipartite concurrence through
/// kEntanglementThreshold along TR at fixed TH.
std::vector<BoundaryPoint> entanglement_boundary(const SweepResult& result);

/// Spearman rank correlation with average ranks for ties. Needs >= 2 points.
double spearman(const std::vector<double>& x, const std::vector<double>& y);

struct CollapsePoint {
  double TH = 0.0;
  double TR = 0.0;
  double C = 0.0;
  double zeta = 0.0;
};

struct SliceSummary {
  double TH = 0.0;
  int points = 0;
  int entangled = 0;
  /// Over entangled points; NaN with fewer than three.
  double rank_correlation = 0.0;
  /// Largest |zeta - 1| over separable points.
  double separable_zeta_deviation = 0.0;
};

struct CollapseBin {
  double C = 0.0;
  std::vector<double> TH;
  std::vector<double> zeta;
  double relative_spread = 0.0;         ///< (max - min) / min of zeta
  double relative_excess_spread = 0.0;  ///< (max - min) / max of (zeta - 1)
};

struct CollapseReport {
  std::vector<CollapsePoint> points;  ///< sorted by C, then TH, then TR
  std::vector<SliceSummary> slices;
  std::vector<CollapseBin> bins;
  double max_relative_spread = 0.0;
  double max_relative_excess_spread = 0.0;
};

/// zeta against C_R_CH per slice. Bins are equal-width in C over the range
/// shared by every slice with >= 3 entangled points; each slice contributes
/// its zeta interpolated linearly at the bin centre.
/// Throws ValidationError with fewer than two slices.
CollapseReport curve_fig3(const SweepResult& result, int bins = 8);

/// Header TR,TH,TS,TS_star,zeta,C_C_RH,C_R_CH,C_CR_H,C_GME,feasible_evals.
/// Failed cells print nan.
void write_sweep_csv(std::ostream& out, const SweepResult& result);

/// Same columns with a leading slice index, sorted by slice then C_R_CH.
void write_collapse_csv(std::ostream& out, const SweepResult& result);

}  // namespace qfridge
