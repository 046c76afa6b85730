// Copyright 2026 The sfqgate Authors
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

#include <doctest.h>

#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "sfq/experiment.hpp"

using namespace sfq;
namespace fs = std::filesystem;

namespace {

const fs::path kSource = SFQ_SOURCE_DIR;

fs::path scratch(const std::string& name) {
  const fs::path dir = fs::temp_directory_path() / ("sfqgate_test_" + std::to_string(::getpid())) / name;
  fs::remove_all(dir);
  fs::create_directories(dir.parent_path());
  return dir;
}

int run_cli(const std::string& args) {
  const std::string cmd = std::string(SFQ_CLI_PATH) + " " + args + " > /dev/null 2>&1";
  const int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

nlohmann::json read_json(const fs::path& path) {
  std::ifstream is(path);
  return nlohmann::json::parse(is);
}

std::string config_path(const std::string& name) { return (kSource / "configs" / name).string(); }

}  // namespace

TEST_CASE("trivial learn succeeds") {
  const fs::path out = scratch("identity");
  CHECK(run_cli("learn --config " + config_path("identity_trivial.ini") + " --out-dir " + out.string()) == 0);
  const auto report = read_json(out / "report.json");
  CHECK(report["learned"]["f1"].get<double>() == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(report["target_reached"].get<bool>());
  CHECK(report["schema"] == kReportSchema);
  CHECK(report["engine_version"] == kEngineVersion);
  CHECK(fs::exists(out / "bitstream.txt"));
}

TEST_CASE("usage and config errors exit with 2 and write nothing") {
  const fs::path out = scratch("malformed");
  fs::create_directories(out.parent_path());
  const fs::path bad = out.parent_path() / "bad.ini";
  std::ofstream(bad) << "[system]\nnum_qubits = 2\nbogus_key = 1\n";
  CHECK(run_cli("learn --config " + bad.string() + " --out-dir " + out.string()) == 2);
  CHECK_FALSE(fs::exists(out));
  CHECK(run_cli("learn --config /nonexistent.ini") == 2);
  CHECK(run_cli("") == 2);
  CHECK(run_cli("learn --config " + config_path("identity_trivial.ini") + " --metric f7") == 2);
  CHECK(run_cli("sweep --config " + config_path("identity_trivial.ini") + " --axis j_coupling") == 2);
}

TEST_CASE("non-convergence exits with 3 and still reports") {
  const fs::path out = scratch("short");
  CHECK(run_cli("learn --quiet --config " + config_path("cz_z_10ns.ini") + " --max-iters 2 --out-dir " +
                out.string()) == 3);
  const auto report = read_json(out / "report.json");
  CHECK(report["iterations"].get<long>() == 2);
  CHECK_FALSE(report["target_reached"].get<bool>());
  REQUIRE(report["full"].size() == 2);
  CHECK(report["full"][0]["sim_levels"] == 7);
  CHECK(report["full"][1]["sim_levels"] == 9);
}

TEST_CASE("evaluate reproduces learn") {
  const fs::path out = scratch("roundtrip");
  const std::string cfg = config_path("cz_z_10ns.ini");
  run_cli("learn --quiet --config " + cfg + " --max-iters 3 --seed 5 --out-dir " + out.string());
  const auto learned = read_json(out / "report.json");
  CHECK(run_cli("evaluate --config " + cfg + " --seed 5 --bitstream " + (out / "bitstream.txt").string() +
                " --levels 8 --out-dir " + out.string()) == 0);
  const auto evaluated = read_json(out / "evaluation.json");
  for (const char* key : {"f1", "f2", "leakage", "error", "norm_loss"}) {
    CHECK(evaluated["learned"][key].get<double>() ==
          doctest::Approx(learned["learned"][key].get<double>()).epsilon(1e-12));
  }
  for (int i = 0; i < 2; ++i) {
    CHECK(evaluated["full"][i]["f2"].get<double>() ==
          doctest::Approx(learned["full"][i]["f2"].get<double>()).epsilon(1e-12));
  }
  CHECK(evaluated["full"].size() == 3);
  CHECK(evaluated["bitstream"] == learned["bitstream"]);
}

TEST_CASE("evaluate rejects mismatched bitstreams") {
  const ExperimentConfig cfg = load_config(config_path("cz_z_10ns.ini"));
  BitstreamFile bits;
  bits.channels = cfg.channels;
  bits.schedule = PulseSchedule(1, cfg.num_cycles() - 1);
  CHECK_THROWS_AS(evaluate_bitstream(cfg, bits), ConfigError);
  bits.schedule = PulseSchedule(1, cfg.num_cycles());
  bits.channels[0].axis = Axis::X;
  CHECK_THROWS_AS(evaluate_bitstream(cfg, bits), ConfigError);
  bits.channels = cfg.channels;
  CHECK_NOTHROW(evaluate_bitstream(cfg, bits));
}

TEST_CASE("stored regression bitstream re-evaluates to its recorded metrics") {
  // Learned with configs/cz_z_10ns.ini, seed 1; metrics recorded at learn time.
  const ExperimentConfig cfg = load_config(config_path("cz_z_10ns.ini"));
  const BitstreamFile bits = read_bitstream(kSource / "tests" / "data" / "cz_z_10ns_seed1.txt");
  const GateReport r = evaluate_bitstream(cfg, bits);
  CHECK(r.learned.f2 == doctest::Approx(0.9990001634236725).epsilon(1e-9));
  CHECK(r.learned.f1 == doctest::Approx(0.5732803314761267).epsilon(1e-9));
  CHECK(r.full[0].leakage == doctest::Approx(0.0003968283953459384).epsilon(1e-9));
  CHECK(r.full[1].f2 == doctest::Approx(0.9990001915237858).epsilon(1e-9));
  CHECK(r.error < 1e-3);
  CHECK(r.full[0].leakage < 1e-3);
}

TEST_CASE("learn is deterministic for a fixed seed") {
  ExperimentConfig cfg = load_config(config_path("cz_z_5ns.ini"));
  cfg.ga.max_iterations = 15;
  const GateReport a = learn(cfg);
  const GateReport b = learn(cfg);
  CHECK(a.bitstream == b.bitstream);
  CHECK(a.learned.f2 == b.learned.f2);
  cfg.ga.rng_seed += 1;
  CHECK_FALSE(learn(cfg).bitstream == a.bitstream);
}

TEST_CASE("sweep emits one row per value") {
  const fs::path out = scratch("sweep");
  CHECK(run_cli("sweep --config " + config_path("cz_z_5ns.ini") +
                " --axis j_coupling --values 25,50,100 --max-iters 2 --out-dir " + out.string()) == 0);
  std::ifstream is(out / "sweep_j_coupling.csv");
  std::string line;
  std::vector<std::string> lines;
  while (std::getline(is, line)) lines.push_back(line);
  REQUIRE(lines.size() == 4);
  CHECK(lines[0] == "value,error_f1,error_f2,leakage,iterations,seconds,status");
  CHECK(lines[1].rfind("25,", 0) == 0);
  CHECK(lines[3].rfind("100,", 0) == 0);
  CHECK(run_cli("sweep --config " + config_path("cz_z_5ns.ini") + " --axis j_coupling --values \"\"") == 2);
}

TEST_CASE("single-value sweep matches learn") {
  ExperimentConfig cfg = load_config(config_path("cz_z_5ns.ini"));
  cfg.ga.max_iterations = 5;
  const auto rows = sweep(cfg, SweepAxis::GateTime, {5.0});
  const GateReport r = learn(cfg);
  REQUIRE(rows.size() == 1);
  CHECK(rows[0].error_f2 == doctest::Approx(1.0 - r.learned.f2).epsilon(1e-12));
  CHECK(rows[0].iterations == r.iterations);
}

TEST_CASE("sweep records per-point failures and continues") {
  ExperimentConfig cfg = load_config(config_path("cz_z_5ns.ini"));
  cfg.ga.max_iterations = 1;
  const auto rows = sweep(cfg, SweepAxis::GateTime, {-1.0, 5.0});
  REQUIRE(rows.size() == 2);
  CHECK(rows[0].status.rfind("error", 0) == 0);
  CHECK(rows[1].status == "not_converged");
  CHECK_THROWS_AS(sweep(cfg, SweepAxis::GateTime, {}), ConfigError);
}

TEST_CASE("spectrum and checkpointed learn") {
  CHECK(run_cli("spectrum --config " + config_path("fluxonium_cz_20ns.ini")) == 0);
  const fs::path out = scratch("checkpoint");
  const fs::path ckpt = out.parent_path() / "ckpt.json";
  const std::string base = "learn --quiet --config " + config_path("cz_z_5ns.ini") + " --out-dir " + out.string() +
                           " --checkpoint " + ckpt.string();
  CHECK(run_cli(base + " --max-iters 4") == 3);
  REQUIRE(fs::exists(ckpt));
  CHECK(read_json(ckpt)["iteration"] == 4);
  CHECK(run_cli(base + " --max-iters 8 --resume") == 3);
  const auto resumed = read_json(out / "report.json");
  const fs::path straight = scratch("straight");
  run_cli("learn --quiet --config " + config_path("cz_z_5ns.ini") + " --max-iters 8 --out-dir " + straight.string());
  CHECK(read_json(straight / "report.json")["bitstream"] == resumed["bitstream"]);
  CHECK(resumed["iterations"] == 8);
}
