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

#pragma once

#include <filesystem>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "sfq/bitstream_io.hpp"
#include "sfq/config.hpp"
#include "sfq/kernels.hpp"
#include "sfq/search.hpp"

namespace sfq {

inline constexpr const char* kEngineVersion = "sfqgate 1.0.0";
inline constexpr const char* kReportSchema = "sfqgate.report/1";

/// Qubit models from the config with `levels` levels each.
std::vector<QubitModel> build_qubits(const ExperimentConfig& config, int levels);

/// Coupled system with the config's learning levels and the given
/// simulation truncation.
CoupledSystem build_system(const ExperimentConfig& config, int n_sim_levels);

/// Metrics of the unprojected evolution at one truncation.
struct TruncationMetrics {
  int sim_levels = 0;
  double f1 = 0.0;
  double f2 = 0.0;
  double leakage = 0.0;
};

struct GateReport {
  ExperimentConfig config;
  BitstreamFile bitstream;
  Metric metric = Metric::F2;
  FidelityBreakdown learned;  ///< projected evolution on the learning model
  double error = 1.0;         ///< 1 - learned value of the configured metric
  double norm_loss = 0.0;
  std::vector<TruncationMetrics> full;
  long iterations = 0;
  long evaluations = 0;
  double wall_time = 0.0;
  std::string terminated_by = "evaluated";
  bool target_reached = false;
};

nlohmann::json report_to_json(const GateReport& report);
void write_report(const std::filesystem::path& path, const GateReport& report);

struct LearnOptions {
  std::optional<std::filesystem::path> checkpoint_path;
  bool resume = false;
  /// Progress lines (may be empty).
  std::function<void(const std::string&)> log;
};

/// Runs the search and re-simulates the winner. Does not write files.
GateReport learn(const ExperimentConfig& config, const LearnOptions& options = {});

/// Re-simulates a bitstream at n_sim_levels, n_sim_levels + 2 and any
/// `extra_levels`.
GateReport evaluate_bitstream(const ExperimentConfig& config, const BitstreamFile& bitstream,
                              const std::vector<int>& extra_levels = {});

/// Writes report.json and bitstream.txt into `dir`.
void persist(const std::filesystem::path& dir, const GateReport& report);

enum class SweepAxis { TipAngle, GateTime, JCoupling };
SweepAxis parse_sweep_axis(std::string_view text);

/// Config with one swept parameter replaced. Units: tip angle in rad,
/// gate time in ns, J in MHz.
ExperimentConfig with_sweep_value(const ExperimentConfig& base, SweepAxis axis, double value);

struct SweepRow {
  double value = 0.0;
  double error_f1 = 1.0;
  double error_f2 = 1.0;
  double leakage = 1.0;
  long iterations = 0;
  double seconds = 0.0;
  std::string status = "ok";
};

/// One learn per value; point i uses seed + i. Failures are recorded in the
/// row's status and the sweep continues.
std::vector<SweepRow> sweep(const ExperimentConfig& base, SweepAxis axis, const std::vector<double>& values,
                            const std::function<void(const std::string&)>& log = {});

std::string format_sweep_csv(const std::vector<SweepRow>& rows);

}  // namespace sfq
