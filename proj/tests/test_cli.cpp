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

#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "doctest.h"
#include "qfridge/cli.hpp"
#include "qfridge/serialization.hpp"

using namespace qfridge;
namespace fs = std::filesystem;

namespace {

struct Run {
  int code = -1;
  std::string out;
  std::string err;
};

Run run(const std::vector<std::string>& args) {
  std::ostringstream out;
  std::ostringstream err;
  Run r;
  r.code = cli::run(args, out, err);
  r.out = out.str();
  r.err = err.str();
  return r;
}

fs::path scratch_dir() {
  const fs::path dir = fs::temp_directory_path() / "qfridge_cli_test";
  fs::create_directories(dir);
  return dir;
}

std::string write(const std::string& name, const std::string& text) {
  const fs::path path = scratch_dir() / name;
  std::ofstream(path) << text;
  return path.string();
}

std::string slurp(const fs::path& path) {
  std::ifstream in(path);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

const std::vector<std::string> kRow1 = {"--E1", "2",    "--E3", "300", "--g",  "1e-4",
                                        "--p1", "1e-5", "--p2", "1e-3", "--p3", "1e-5",
                                        "--TC", "1",    "--TR", "1.1",  "--TH", "1e4"};

std::vector<std::string> with(std::vector<std::string> head, const std::vector<std::string>& tail) {
  head.insert(head.end(), tail.begin(), tail.end());
  return head;
}

}  // namespace

TEST_CASE("steady from flags") {
  const Run r = run(with({"steady"}, kRow1));
  REQUIRE(r.code == cli::kSuccess);
  const Json j = parse_json(r.out);
  CHECK(j.at("TS").get<double>() < 1.0);
  CHECK(j.at("params").at("E3") == 300.0);
  CHECK(j.at("residual").get<double>() < 1e-10);
}

TEST_CASE("flags override the params file") {
  const std::string file = write("row1.json", to_json(FridgeParams{}).dump());
  Json base = parse_json(slurp(file));
  base["E1"] = 2.0;
  base["E3"] = 300.0;
  base["g"] = 1e-4;
  base["p"] = Json::array({1e-5, 1e-3, 1e-5});
  base["T"] = Json::array({1.0, 1.1, 1e4});
  const std::string path = write("row1.json", base.dump());
  const Run a = run({"steady", "--params", path});
  const Run b = run(with({"steady"}, kRow1));
  REQUIRE(a.code == 0);
  CHECK(parse_json(a.out).at("TS") == parse_json(b.out).at("TS"));
  const Run c = run({"steady", "--params", path, "--TR", "1.2"});
  REQUIRE(c.code == 0);
  CHECK(parse_json(c.out).at("params").at("T")[1] == 1.2);
}

TEST_CASE("exit codes") {
  CHECK(run({}).code == cli::kValidationFailure);
  CHECK(run({"nonsense"}).code == cli::kValidationFailure);
  CHECK(run({"--help"}).code == cli::kSuccess);
  CHECK(run({"steady", "--E1", "abc"}).code == cli::kValidationFailure);
  CHECK(run({"steady"}).code == cli::kValidationFailure);  // missing parameters
  CHECK(run(with({"steady", "--g", "-1"}, std::vector<std::string>(kRow1.begin() + 6, kRow1.end())))
            .code == cli::kValidationFailure);
  const std::string unknown = write("unknown.json", "{\"E1\": 1, \"E2\": 2}");
  CHECK(run({"steady", "--params", unknown}).code == cli::kValidationFailure);
  const std::string broken = write("broken.json", "{\"E1\": ");
  CHECK(run({"steady", "--params", broken}).code == cli::kValidationFailure);
  CHECK(run({"steady", "--params", (scratch_dir() / "absent.json").string()}).code ==
        cli::kIoFailure);
  const std::string blocker = write("blocker", "x");
  CHECK(run(with({"steady", "--out", blocker + "/out.json"}, kRow1)).code == cli::kIoFailure);
  CHECK(run({"sweep", "--fig2", "--fig3"}).code == cli::kValidationFailure);
  CHECK(run({"optimize", "--E3", "10"}).code == cli::kValidationFailure);
  CHECK(run({"sweep", "--fig2", "--slices", "1e3,x"}).code == cli::kValidationFailure);
  CHECK(run(with({"steady", "--tol-physical", "0"}, kRow1)).code == cli::kValidationFailure);
}

TEST_CASE("witness on density matrix files") {
  const std::string ghz_file = write("ghz.json", to_json(DensityMatrix::from_matrix(ghz_projector())).dump());
  Run r = run({"witness", "--rho", ghz_file});
  REQUIRE(r.code == 0);
  Json j = parse_json(r.out);
  CHECK(j.at("report").at("C").at("GME").get<double>() == doctest::Approx(1.0));
  CHECK(j.at("certificate").at("purity_ball") == false);

  const ComplexMatrix mixed = ComplexMatrix::Identity(8, 8) / 8.0;
  const std::string mixed_file = write("mixed.json", to_json(DensityMatrix::from_matrix(mixed)).dump());
  r = run({"witness", "--rho", mixed_file});
  REQUIRE(r.code == 0);
  j = parse_json(r.out);
  CHECK(j.at("certificate").at("purity_ball") == true);
  CHECK(j.at("certificate").at("gurvits_ball") == true);
  CHECK(j.at("report").at("C").at("GME").get<double>() == 0.0);

  ComplexMatrix negative = mixed;
  negative(0, 0) = -0.1;
  negative(1, 1) += 0.1 + 0.125;
  const std::string negative_file =
      write("negative.json", Json{{"dim", 8},
                                  {"re", parse_json(to_json(DensityMatrix::from_matrix(mixed)).dump())["re"]},
                                  {"im", parse_json(to_json(DensityMatrix::from_matrix(mixed)).dump())["im"]}}
                                 .dump());
  Json neg = parse_json(slurp(negative_file));
  neg["re"][0][0] = -0.1;
  neg["re"][1][1] = 0.35;
  const std::string neg_file = write("negative.json", neg.dump());
  CHECK(run({"witness", "--rho", neg_file}).code == cli::kSolverFailure);
  CHECK(run(with({"witness", "--rho", mixed_file}, kRow1)).code == cli::kValidationFailure);
}

TEST_CASE("witness on a fridge steady state") {
  std::vector<std::string> row4 = kRow1;
  row4[9] = "2e-4";  // p2
  const Run r = run(with({"witness"}, row4));
  REQUIRE(r.code == 0);
  const Json c = parse_json(r.out).at("report").at("C");
  CHECK(c.at("C_RH").get<double>() > 1e-6);
  CHECK(c.at("R_CH").get<double>() > 1e-6);
  CHECK(c.at("CR_H").get<double>() > 1e-6);
  CHECK(c.at("GME").get<double>() < 1e-6);
}

TEST_CASE("output is byte-identical across runs") {
  CHECK(run(with({"steady"}, kRow1)).out == run(with({"steady"}, kRow1)).out);
  const std::vector<std::string> opt = {"optimize", "--TR", "1.5", "--TH", "1000", "--budget", "2000",
                                        "--seed", "7"};
  const Run a = run(opt);
  const Run b = run(opt);
  REQUIRE(a.code == 0);
  CHECK(a.out == b.out);
  const Json j = parse_json(a.out);
  CHECK(j.at("zeta").get<double>() >= 1.0 - 1e-6);
  CHECK(j.at("seed") == 7);
  CHECK(j.at("budget") == 2000);
}

TEST_CASE("regime table") {
  const Run r = run({"sweep", "--table1"});
  REQUIRE(r.code == 0);
  const Json j = parse_json(r.out);
  CHECK(j.at("rows").size() == 4);
  CHECK(j.contains("all_pass"));
  const fs::path dir = scratch_dir() / "table";
  CHECK(run({"sweep", "--table1", "--out", dir.string()}).code == 0);
  CHECK(fs::exists(dir / "table1.json"));
}

TEST_CASE("small grid and slice sweeps write their files") {
  const std::string config = write("grid.json", "{\"TH\": [100, 10000], \"budget\": 3000}");
  const fs::path dir = scratch_dir() / "fig2";
  fs::remove_all(dir);
  REQUIRE(run({"sweep", "--fig2", "--params", config, "--res", "2", "--threads", "2", "--out",
               dir.string()})
              .code == 0);
  const std::string csv = slurp(dir / "fig2.csv");
  CHECK(csv.rfind("TR,TH,TS,TS_star,zeta,", 0) == 0);
  CHECK(std::count(csv.begin(), csv.end(), '\n') == 5);
  const Json summary = parse_json(slurp(dir / "fig2_summary.json"));
  CHECK(summary.at("cells") == 4);
  CHECK(summary.at("failures").empty());

  const fs::path dir3 = scratch_dir() / "fig3";
  fs::remove_all(dir3);
  REQUIRE(run({"sweep", "--fig3", "--res", "3", "--budget", "400", "--TR", "1.5", "--out",
               dir3.string()})
              .code == cli::kValidationFailure);  // TR is swept, not fixed
  const std::string slice_config =
      write("slices.json", "{\"TR\": [1.01, 5], \"slices\": [100, 1000], \"budget\": 3000}");
  REQUIRE(run({"sweep", "--fig3", "--params", slice_config, "--res", "3", "--out", dir3.string()})
              .code == 0);
  const std::string csv3 = slurp(dir3 / "fig3.csv");
  CHECK(csv3.rfind("slice,TR,TH,", 0) == 0);
  CHECK(std::count(csv3.begin(), csv3.end(), '\n') == 7);
  const Json s3 = parse_json(slurp(dir3 / "fig3_summary.json"));
  CHECK(s3.at("collapse").at("slices").size() == 2);
  CHECK(s3.at("slices").size() == 2);
}
