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

#include "qfridge/cli.hpp"

#include <algorithm>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <optional>
#include <ostream>
#include <sstream>

#include "CLI11.hpp"
#include "qfridge/serialization.hpp"

namespace qfridge::cli {

namespace {

constexpr double kFailureFractionLimit = 0.01;

struct ParamFlags {
  std::optional<double> E1, E3, g, p1, p2, p3, TC, TR, TH;

  void attach(CLI::App* app) {
    app->add_option("--E1", E1, "energy of the cold qubit");
    app->add_option("--E3", E3, "energy of the hot qubit");
    app->add_option("--g", g, "interaction strength");
    app->add_option("--p1", p1, "thermalization rate of qubit 1");
    app->add_option("--p2", p2, "thermalization rate of qubit 2");
    app->add_option("--p3", p3, "thermalization rate of qubit 3");
    app->add_option("--TC", TC, "cold bath temperature");
    app->add_option("--TR", TR, "room bath temperature");
    app->add_option("--TH", TH, "hot bath temperature");
  }

  bool any() const { return E1 || E3 || g || p1 || p2 || p3 || TC || TR || TH; }
};

struct Options {
  std::string params;
  std::string rho;
  std::string out;
  std::optional<std::uint64_t> seed;
  std::optional<int> threads;
  std::optional<long> budget;
  std::optional<int> res;
  std::string slices;
  std::optional<double> tol_physical;
  std::optional<double> tol_algebraic;
  ParamFlags fridge;
  int probe_trials = 0;
  bool fig2 = false;
  bool fig3 = false;
  bool table1 = false;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot read " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  if (in.bad()) throw IoError("error while reading " + path);
  return buf.str();
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot write " + path);
  out << content;
  out.flush();
  if (!out) throw IoError("error while writing " + path);
}

void emit(const Options& o, std::ostream& out, const Json& j) {
  const std::string text = j.dump(2) + "\n";
  if (o.out.empty()) {
    out << text;
  } else {
    write_file(o.out, text);
  }
}

Tolerances tolerances(const Options& o) {
  Tolerances tol;
  if (o.tol_physical) tol.physical = *o.tol_physical;
  if (o.tol_algebraic) tol.algebraic = *o.tol_algebraic;
  if (!(tol.physical > 0.0) || !(tol.algebraic > 0.0)) {
    throw ValidationError("tolerances must be positive");
  }
  return tol;
}

// File first, flags on top, then strict parsing.
FridgeParams resolve_params(const Options& o) {
  Json j = o.params.empty() ? Json::object() : parse_json(read_file(o.params));
  if (!j.is_object()) throw ValidationError("fridge parameters: expected a JSON object");
  const ParamFlags& f = o.fridge;
  const auto set = [&](const char* key, const std::optional<double>& v) {
    if (v) j[key] = *v;
  };
  const auto set_element = [&](const char* key, std::size_t i, const std::optional<double>& v) {
    if (!v) return;
    if (!j.contains(key) || !j[key].is_array() || j[key].size() != 3) {
      j[key] = Json::array({nullptr, nullptr, nullptr});
    }
    j[key][i] = *v;
  };
  set("E1", f.E1);
  set("E3", f.E3);
  set("g", f.g);
  set_element("p", 0, f.p1);
  set_element("p", 1, f.p2);
  set_element("p", 2, f.p3);
  set_element("T", 0, f.TC);
  set_element("T", 1, f.TR);
  set_element("T", 2, f.TH);
  FridgeParams p = fridge_params_from_json(j);
  p.validate();
  return p;
}

std::vector<double> parse_list(const std::string& text) {
  std::vector<double> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      std::size_t used = 0;
      out.push_back(std::stod(item, &used));
      if (used != item.size()) throw std::invalid_argument(item);
    } catch (const std::exception&) {
      throw ValidationError("--slices: cannot parse \"" + item + "\" as a number");
    }
  }
  if (out.empty()) throw ValidationError("--slices: empty list");
  return out;
}

int cmd_steady(const Options& o, std::ostream& out) {
  const FridgeParams p = resolve_params(o);
  const SteadyStateResult r = steady_state(p, tolerances(o));
  Json j = to_json(r);
  j["params"] = to_json(p);
  emit(o, out, j);
  return kSuccess;
}

int cmd_witness(const Options& o, std::ostream& out) {
  const Tolerances tol = tolerances(o);
  DensityMatrix rho;
  Json j;
  if (!o.rho.empty()) {
    if (!o.params.empty() || o.fridge.any()) {
      throw ValidationError("witness takes either --rho or fridge parameters, not both");
    }
    const ComplexMatrix m = matrix_from_json(parse_json(read_file(o.rho)));
    try {
      rho = DensityMatrix::from_matrix(m, tol);
    } catch (const ValidationError& e) {
      throw SolverError(std::string("input is not a density matrix: ") + e.what());
    }
  } else {
    const FridgeParams p = resolve_params(o);
    rho = steady_state(p, tol).rho;
    j["params"] = to_json(p);
  }
  j["report"] = to_json(entanglement_report(rho, tol));
  j["certificate"] = to_json(separability_certificate(rho, tol));
  if (o.probe_trials > 0) {
    j["biseparable_radius"] = bisect_biseparable_radius(rho, o.probe_trials, o.seed.value_or(0));
  }
  emit(o, out, j);
  return kSuccess;
}

OptimizationProblem resolve_problem(const Options& o, long& budget, std::uint64_t& seed) {
  const std::string what = "optimization config";
  Json j = o.params.empty() ? Json::object() : parse_json(read_file(o.params));
  require_keys_subset(j, {"TR", "TH", "TC", "E1", "p1", "p2_max", "p3_max", "g_max", "E3_min",
                          "E3_max", "budget", "seed"},
                      what);
  const ParamFlags& f = o.fridge;
  if (f.E3 || f.g || f.p2 || f.p3) {
    throw ValidationError("optimize: E3, g, p2 and p3 are searched, not set");
  }
  const auto pick = [&](const std::optional<double>& flag, const char* key, double fallback) {
    if (flag) return *flag;
    return j.contains(key) ? number_at(j, key, what) : fallback;
  };
  const double TR = pick(f.TR, "TR", 1.1);
  const double TH = pick(f.TH, "TH", 1e4);
  const double TC = pick(f.TC, "TC", 1.0);
  const double E1 = pick(f.E1, "E1", 1.0);
  const double p1 = pick(f.p1, "p1", 1e-5);
  if (!(TC < TR && TR < TH)) throw ValidationError("bath temperatures must satisfy TC < TR < TH");
  OptimizationProblem problem = OptimizationProblem::standard(TR, TH, TC, E1, p1);
  const std::optional<double> none;
  problem.bounds.p2_max = pick(none, "p2_max", problem.bounds.p2_max);
  problem.bounds.p3_max = pick(none, "p3_max", problem.bounds.p3_max);
  problem.bounds.g_max = pick(none, "g_max", problem.bounds.g_max);
  problem.bounds.E3_min = pick(none, "E3_min", problem.bounds.E3_min);
  problem.bounds.E3_max = pick(none, "E3_max", problem.bounds.E3_max);
  budget = o.budget ? *o.budget
                    : (j.contains("budget") ? static_cast<long>(number_at(j, "budget", what))
                                            : 40000L);
  seed = j.contains("seed") ? static_cast<std::uint64_t>(number_at(j, "seed", what)) : 0;
  if (o.seed) seed = *o.seed;
  problem.validate();
  return problem;
}

int cmd_optimize(const Options& o, std::ostream& out) {
  long budget = 0;
  std::uint64_t seed = 0;
  OptimizationProblem problem = resolve_problem(o, budget, seed);
  problem.constrained = false;
  const CoolingResult free = optimize(problem, budget, seed);
  problem.constrained = true;
  const CoolingResult bound = optimize(problem, budget, seed);
  const double TS = std::min(free.TS, bound.TS);
  Json j{{"unconstrained", to_json(free)},
         {"constrained", to_json(bound)},
         {"TS", TS},
         {"TS_star", bound.TS},
         {"zeta", zeta(problem.TC, TS, bound.TS)},
         {"budget", budget},
         {"seed", seed}};
  emit(o, out, j);
  return kSuccess;
}

SweepConfig resolve_sweep(const Options& o) {
  const std::string what = "sweep config";
  SweepConfig c;
  if (o.fig3) {
    c.TR_max = 40.0;
    c.resolution = 40;
  }
  Json j = o.params.empty() ? Json::object() : parse_json(read_file(o.params));
  require_keys_subset(j, {"TR", "TH", "res", "slices", "TC", "E1", "p1", "p2_max", "p3_max",
                          "g_max", "budget", "seed", "threads"},
                      what);
  const auto range = [&](const char* key, double& lo, double& hi) {
    if (!j.contains(key)) return;
    const Json& a = j.at(key);
    if (!a.is_array() || a.size() != 2 || !a[0].is_number() || !a[1].is_number()) {
      throw ValidationError(what + ": \"" + key + "\" must be [min, max]");
    }
    lo = a[0].get<double>();
    hi = a[1].get<double>();
  };
  range("TR", c.TR_min, c.TR_max);
  range("TH", c.TH_min, c.TH_max);
  const auto scalar = [&](const char* key, double& v) {
    if (j.contains(key)) v = number_at(j, key, what);
  };
  scalar("TC", c.TC);
  scalar("E1", c.E1);
  scalar("p1", c.p1);
  scalar("p2_max", c.p2_max);
  scalar("p3_max", c.p3_max);
  scalar("g_max", c.g_max);
  if (j.contains("res")) c.resolution = static_cast<int>(number_at(j, "res", what));
  if (j.contains("budget")) c.budget = static_cast<long>(number_at(j, "budget", what));
  if (j.contains("seed")) c.seed = static_cast<std::uint64_t>(number_at(j, "seed", what));
  if (j.contains("threads")) c.threads = static_cast<int>(number_at(j, "threads", what));
  if (j.contains("slices")) {
    const Json& s = j.at("slices");
    if (!s.is_array()) throw ValidationError(what + ": \"slices\" must be an array of numbers");
    c.slices.clear();
    for (const auto& v : s) {
      if (!v.is_number()) throw ValidationError(what + ": \"slices\" must be an array of numbers");
      c.slices.push_back(v.get<double>());
    }
  }
  if (o.fridge.E3 || o.fridge.g || o.fridge.p2 || o.fridge.p3 || o.fridge.TR || o.fridge.TH) {
    throw ValidationError("sweep: only --TC, --E1 and --p1 are fixed; ranges go in --params");
  }
  if (o.fridge.TC) c.TC = *o.fridge.TC;
  if (o.fridge.E1) c.E1 = *o.fridge.E1;
  if (o.fridge.p1) c.p1 = *o.fridge.p1;
  if (o.res) c.resolution = *o.res;
  if (o.budget) c.budget = *o.budget;
  if (o.threads) c.threads = *o.threads;
  if (o.seed) c.seed = *o.seed;
  if (!o.slices.empty()) c.slices = parse_list(o.slices);
  c.validate();
  return c;
}

std::filesystem::path output_dir(const Options& o) {
  const std::filesystem::path dir = std::filesystem::path(o.out.empty() ? std::string(".") : o.out);
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) throw IoError("cannot create output directory " + dir.string() + ": " + ec.message());
  return dir;
}

int sweep_status(const SweepResult& r, std::ostream& err) {
  const double fraction =
      r.grid.empty() ? 0.0 : static_cast<double>(r.failures()) / static_cast<double>(r.grid.size());
  if (fraction >= kFailureFractionLimit) {
    err << "qfridge: " << r.failures() << " of " << r.grid.size() << " cells failed\n";
    return kSolverFailure;
  }
  return kSuccess;
}

int cmd_sweep(const Options& o, std::ostream& out, std::ostream& err) {
  if (o.fig2 + o.fig3 + o.table1 != 1) {
    throw ValidationError("sweep needs exactly one of --fig2, --fig3, --table1");
  }
  if (o.table1) {
    const Json j = to_json(table1_reproduce());
    if (o.out.empty()) {
      out << j.dump(2) << "\n";
    } else {
      write_file((output_dir(o) / "table1.json").string(), j.dump(2) + "\n");
    }
    return kSuccess;
  }
  const SweepConfig config = resolve_sweep(o);
  const std::filesystem::path dir = output_dir(o);
  if (o.fig2) {
    const SweepResult r = sweep_fig2(config);
    std::ostringstream csv;
    write_sweep_csv(csv, r);
    write_file((dir / "fig2.csv").string(), csv.str());
    write_file((dir / "fig2_summary.json").string(), sweep_summary_json(r).dump(2) + "\n");
    return sweep_status(r, err);
  }
  const SweepResult r = sweep_slices(config);
  std::ostringstream csv;
  write_collapse_csv(csv, r);
  write_file((dir / "fig3.csv").string(), csv.str());
  Json summary = sweep_summary_json(r);
  Json slices = Json::array();
  for (double TH : config.slices) slices.push_back(TH);
  summary["slices"] = slices;
  summary["collapse"] = to_json(curve_fig3(r));
  write_file((dir / "fig3_summary.json").string(), summary.dump(2) + "\n");
  return sweep_status(r, err);
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Quantum absorption refrigerator simulator and optimizer", "qfridge"};
  app.require_subcommand(1);
  Options o;

  const auto common = [&](CLI::App* sub) {
    sub->add_option("--params", o.params, "JSON config file; flags override its values");
    sub->add_option("--out", o.out, "output path");
    sub->add_option("--seed", o.seed, "seed for all randomness (default 0)");
    sub->add_option("--tol-physical", o.tol_physical, "state validity tolerance");
    sub->add_option("--tol-algebraic", o.tol_algebraic, "algebraic identity tolerance");
  };

  CLI::App* steady = app.add_subcommand("steady", "solve the steady state");
  common(steady);
  o.fridge.attach(steady);

  CLI::App* witness = app.add_subcommand("witness", "entanglement witnesses and certificates");
  common(witness);
  o.fridge.attach(witness);
  witness->add_option("--rho", o.rho, "density matrix JSON file");
  witness->add_option("--probe-trials", o.probe_trials,
                      "trials per radius for the biseparable ball probe (0 disables)");

  CLI::App* optimize_cmd = app.add_subcommand("optimize", "best cooling with and without entanglement");
  common(optimize_cmd);
  o.fridge.attach(optimize_cmd);
  optimize_cmd->add_option("--budget", o.budget, "steady-state evaluations per search");

  CLI::App* sweep = app.add_subcommand("sweep", "parameter sweeps and the regime table");
  common(sweep);
  o.fridge.attach(sweep);
  sweep->add_flag("--fig2", o.fig2, "TR x TH grid");
  sweep->add_flag("--fig3", o.fig3, "TR slices at fixed TH");
  sweep->add_flag("--table1", o.table1, "entanglement regime table");
  sweep->add_option("--budget", o.budget, "steady-state evaluations per search");
  sweep->add_option("--res", o.res, "grid resolution");
  sweep->add_option("--slices", o.slices, "comma-separated TH values");
  sweep->add_option("--threads", o.threads, "worker threads (default: available cores)");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    std::ostringstream o_out;
    std::ostringstream o_err;
    const int code = app.exit(e, o_out, o_err);
    out << o_out.str();
    err << o_err.str();
    return code == 0 ? kSuccess : kValidationFailure;
  }

  try {
    if (steady->parsed()) return cmd_steady(o, out);
    if (witness->parsed()) return cmd_witness(o, out);
    if (optimize_cmd->parsed()) return cmd_optimize(o, out);
    return cmd_sweep(o, out, err);
  } catch (const ValidationError& e) {
    err << "qfridge: invalid input: " << e.what() << "\n";
    return kValidationFailure;
  } catch (const SolverError& e) {
    err << "qfridge: solver failure: " << e.what() << "\n";
    return kSolverFailure;
  } catch (const IoError& e) {
    err << "qfridge: I/O failure: " << e.what() << "\n";
    return kIoFailure;
  } catch (const Error& e) {
    err << "qfridge: " << e.what() << "\n";
    return kSolverFailure;
  }
}

}  // namespace qfridge::cli
