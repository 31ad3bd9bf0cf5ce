// Copyright 2026 The Cubist Authors
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
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "cubist/cli.hpp"
#include "cubist/io.hpp"
#include "doctest.h"

using namespace cubist;
namespace fs = std::filesystem;

namespace {

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result run(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

struct TempDir {
  fs::path path;
  TempDir() : path(fs::temp_directory_path() / ("cubist_cli_" + std::to_string(std::random_device{}()))) {
    fs::create_directories(path);
  }
  ~TempDir() { fs::remove_all(path); }
  std::string operator/(const std::string& name) const { return (path / name).string(); }
};

}  // namespace

TEST_CASE("Usage errors exit with code 2") {
  CHECK(run({"--help"}).code == cli::kExitOk);
  CHECK(run({"--version"}).out.find(cli::kToolVersion) != std::string::npos);
  CHECK(run({}).code == cli::kExitUsage);
  CHECK(run({"frobnicate"}).code == cli::kExitUsage);
  CHECK(run({"gate", "run", "--no-such-flag"}).code == cli::kExitUsage);
  CHECK(run({"ancilla", "optimize", "--n", "13"}).code == cli::kExitUsage);
  CHECK(run({"ancilla", "map", "--resolution", "3000,3000"}).code == cli::kExitUsage);
  CHECK(run({"ancilla", "map", "--unit", "kelvin"}).code == cli::kExitUsage);
  CHECK(run({"wigner", "--axes", "1,2,3"}).code == cli::kExitUsage);
  CHECK(run({"wigner", "--state", "nonsense"}).code == cli::kExitUsage);
  CHECK(run({"gate", "run", "--ancilla", "squeezed"}).code == cli::kExitUsage);
  CHECK(run({"gate", "run", "--t1", "1.5"}).code == cli::kExitUsage);
  CHECK(run({"validate", "--suite", "everything"}).code == cli::kExitUsage);
}

TEST_CASE("ancilla optimize writes the optimum and a manifest") {
  TempDir dir;
  const Result r = run({"ancilla", "optimize", "--n", "3", "--out", dir / "a.json"});
  REQUIRE(r.code == cli::kExitOk);
  CHECK(r.out.find("ratio to Gaussian limit") != std::string::npos);
  const Json a = read_json_file(dir / "a.json");
  CHECK(a["N"] == 3);
  CHECK(a["coefficients"].size() == 4);
  const Json m = read_json_file(dir / "a.json.manifest.json");
  CHECK(m["command"] == "ancilla optimize");
  CHECK(m["tool_version"] == cli::kToolVersion);
  CHECK(m["config"]["n"] == 3);
  CHECK(m["outputs"][0] == dir / "a.json");
  CHECK(m["wall_time_s"].get<double>() >= 0.0);
}

TEST_CASE("ancilla map honours the unit flag") {
  TempDir dir;
  const Result r = run({"ancilla", "map", "--n", "2", "--resolution", "20,10", "--unit", "raw", "--out",
                        dir / "m.csv"});
  REQUIRE(r.code == cli::kExitOk);
  MapUnit unit = MapUnit::dB;
  const WignerGrid g = search_map_from_csv(read_text_file(dir / "m.csv"), &unit);
  CHECK(unit == MapUnit::raw);
  CHECK(g.x.count == 20);
  CHECK(g.p.count == 10);
  CHECK(g.values.minCoeff() > 0.0);
}

TEST_CASE("wigner writes CSV and JSON grids") {
  TempDir dir;
  REQUIRE(run({"wigner", "--state", "fock-1", "--axes", "-5,5,51,-5,5,41", "--out", dir / "w.csv"}).code ==
          cli::kExitOk);
  const WignerGrid w = wigner_from_csv(read_text_file(dir / "w.csv"));
  CHECK(w.x.count == 51);
  CHECK(w.p.count == 41);
  CHECK(w.integral() == doctest::Approx(1.0).epsilon(1e-6));
  REQUIRE(run({"wigner", "--state", "optimized-2", "--format", "json", "--out", dir / "w.json"}).code ==
          cli::kExitOk);
  const Json m = read_json_file(dir / "w.json.manifest.json");
  CHECK(m["notes"].contains("p0"));
  CHECK(wigner_from_json(read_json_file(dir / "w.json")).x.count == 301);
}

TEST_CASE("gate run: flags override the config file, manifests replay") {
  TempDir dir;
  write_json_file(dir / "cfg.json", {{"gamma", 0.2}, {"shots", 4}, {"ancilla", "optimized-2"}, {"seed", 3}});
  const Result r = run({"gate", "run", "--config", dir / "cfg.json", "--gamma", "0.15", "--out", dir / "g.json",
                        "--shots-csv", dir / "s.csv"});
  REQUIRE(r.code == cli::kExitOk);
  const Json m = read_json_file(dir / "g.json.manifest.json");
  CHECK(m["config"]["gamma"] == 0.15);
  CHECK(m["config"]["shots"] == 4);
  CHECK(m["config"]["ancilla"] == "optimized-2");
  CHECK(m["seed"] == 3);
  CHECK(m["outputs"].size() == 2);
  const Json g = read_json_file(dir / "g.json");
  CHECK(g["n_shots"] == 4);
  CHECK(g["gamma_tilde"] == 0.15);

  REQUIRE(run({"gate", "run", "--config", dir / "g.json.manifest.json", "--out", dir / "replay.json"}).code ==
          cli::kExitOk);
  CHECK(read_json_file(dir / "replay.json") == g);

  write_json_file(dir / "bad.json", {{"gama", 0.2}});
  CHECK(run({"gate", "run", "--config", dir / "bad.json"}).code == cli::kExitUsage);
}

TEST_CASE("gate run reports numerical failure when shots fail") {
  TempDir dir;
  // Without feedforward the output drifts far outside an 8-level output space.
  write_json_file(dir / "cfg.json", {{"dims", {8, 24, 24}}, {"shots", 5}, {"ancilla", "vacuum"}});
  const Result r = run({"gate", "run", "--config", dir / "cfg.json", "--no-feedforward", "--gamma", "0.5",
                        "--out", dir / "g.json"});
  CHECK(r.code == cli::kExitNumerical);
  CHECK(r.err.find("failed") != std::string::npos);
}

TEST_CASE("validate suites") {
  TempDir dir;
  const Result r = run({"validate", "--suite", "identities", "--out", dir / "v.json"});
  CHECK(r.code == cli::kExitOk);
  CHECK(r.out.find("PASS heisenberg_balanced") != std::string::npos);
  CHECK(r.out.find("FAIL") == std::string::npos);
  const Json v = read_json_file(dir / "v.json");
  CHECK(v["pass"] == true);
  CHECK(v["checks"].size() >= 6);
}
