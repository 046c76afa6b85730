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
#include <string>
#include <vector>

#include <json.hpp>

#include "sfq/qubit_models.hpp"
#include "sfq/search.hpp"
#include "sfq/system.hpp"

namespace sfq {

/// Desk-scale iteration budget used when a config omits max_iterations.
inline constexpr long kDeskIterations = 20000;

enum class DeviceKind { Transmon, SplitTransmon, Fluxonium };

std::string_view to_string(DeviceKind kind);

/// Device parameters as written in a config file (GHz, ordinary frequency).
struct QubitSpec {
  DeviceKind kind = DeviceKind::Transmon;
  double freq_ghz = 0.0;           // transmon
  double anharmonicity_ghz = 0.0;  // transmon
  double ej1_ghz = 0.0;            // split transmon
  double ej2_ghz = 0.0;            // split transmon
  double ej_ghz = 0.0;             // fluxonium
  double ec_ghz = 0.0;             // split transmon, fluxonium
  double el_ghz = 0.0;             // fluxonium
  double flux_bias = 0.0;          // Phi0/pi units (split) or radians (fluxonium)
  int basis_size = 60;             // fluxonium

  /// Builds the model with `levels` levels (energies in rad/s).
  QubitModel build(int levels) const;
};

struct ExperimentConfig {
  int num_qubits = 2;
  double clock_ps = 8.0;
  double j_ghz = 0.0;
  std::vector<QubitSpec> qubits;
  std::vector<ControlChannel> channels;
  std::string target = "CZ";
  double gate_time_ns = 10.0;
  int n_levels = 2;
  int n_sim_levels = 4;
  GaConfig ga;
  long checkpoint_every = 0;
  std::string out_dir = "out";

  int num_cycles() const;
  double clock_period() const { return clock_ps * 1e-12; }
  void validate() const;
};

/// Parses the INI-style config. Unknown sections or keys are rejected.
ExperimentConfig parse_config(const std::string& text);
ExperimentConfig load_config(const std::filesystem::path& path);

/// Writes a config back in the same format (parse_config round-trips it).
std::string format_config(const ExperimentConfig& config);

nlohmann::json config_to_json(const ExperimentConfig& config);

}  // namespace sfq
