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

#include "sfq/experiment.hpp"

#include <algorithm>
#include <chrono>
#include <fstream>
#include <sstream>

namespace sfq {

namespace {

std::string read_file(const std::filesystem::path& path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) throw Error("cannot read " + path.string());
  std::stringstream ss;
  ss << is.rdbuf();
  return ss.str();
}

void write_file(const std::filesystem::path& path, const std::string& text) {
  std::ofstream os(path, std::ios::binary);
  if (!os) throw Error("cannot write " + path.string());
  os << text;
}

TruncationMetrics full_metrics(const ExperimentConfig& config, const PulseSchedule& schedule,
                               int levels, const GateTarget& target) {
  const CycleUnitarySet cycles = precompute(build_system(config, levels));
  const Matrix u = evolve_full(cycles, schedule);
  const MetricInput in{u, target, config.num_qubits, levels};
  TruncationMetrics m;
  m.sim_levels = levels;
  m.f1 = avg_fidelity_f1(in);
  m.f2 = rz_fidelity_f2(in).value;
  m.leakage = avg_leakage(u, config.num_qubits, levels);
  return m;
}

void fill_evaluation(const ExperimentConfig& config, const FitnessKernel& kernel,
                     const PulseSchedule& schedule, std::vector<int> levels, GateReport& report) {
  report.config = config;
  report.metric = config.ga.metric;
  report.bitstream.channels = config.channels;
  for (auto& c : report.bitstream.channels) c.tip_angle = 0.0;
  report.bitstream.clock_ps = config.clock_ps;
  report.bitstream.schedule = schedule;
  report.learned = kernel.evaluate(schedule);
  report.error = 1.0 - report.learned.value(config.ga.metric);
  report.norm_loss = evolve_projected(kernel.cycles(), schedule).norm_loss;
  std::sort(levels.begin(), levels.end());
  levels.erase(std::unique(levels.begin(), levels.end()), levels.end());
  for (int l : levels) report.full.push_back(full_metrics(config, schedule, l, kernel.target()));
}

}  // namespace

std::vector<QubitModel> build_qubits(const ExperimentConfig& config, int levels) {
  std::vector<QubitModel> out;
  for (const auto& q : config.qubits) out.push_back(q.build(levels));
  return out;
}

CoupledSystem build_system(const ExperimentConfig& config, int n_sim_levels) {
  return assemble(build_qubits(config, n_sim_levels), ghz_to_angular(config.j_ghz), config.channels,
                  config.n_levels, n_sim_levels, config.clock_period());
}

nlohmann::json report_to_json(const GateReport& r) {
  nlohmann::json full = nlohmann::json::array();
  for (const auto& m : r.full) {
    full.push_back({{"sim_levels", m.sim_levels}, {"f1", m.f1}, {"f2", m.f2}, {"leakage", m.leakage}});
  }
  nlohmann::json bits = nlohmann::json::array();
  for (int c = 0; c < r.bitstream.schedule.num_channels(); ++c) {
    std::string s;
    for (auto b : r.bitstream.schedule.channel(c)) s.push_back(static_cast<char>('0' + b));
    bits.push_back({{"qubit", r.bitstream.channels[c].qubit},
                    {"axis", std::string(to_string(r.bitstream.channels[c].axis))},
                    {"bits", s}});
  }
  return {{"schema", kReportSchema},
          {"engine_version", kEngineVersion},
          {"config", config_to_json(r.config)},
          {"seed", r.config.ga.rng_seed},
          {"metric", std::string(to_string(r.metric))},
          {"bitstream", bits},
          {"learned",
           {{"f1", r.learned.f1},
            {"f2", r.learned.f2},
            {"leakage", r.learned.leakage},
            {"z_angles", r.learned.best_z_angles},
            {"error", r.error},
            {"norm_loss", r.norm_loss}}},
          {"full", full},
          {"iterations", r.iterations},
          {"evaluations", r.evaluations},
          {"wall_time_s", r.wall_time},
          {"terminated_by", r.terminated_by},
          {"target_reached", r.target_reached}};
}

void write_report(const std::filesystem::path& path, const GateReport& report) {
  write_file(path, report_to_json(report).dump(2) + "\n");
}

void persist(const std::filesystem::path& dir, const GateReport& report) {
  std::filesystem::create_directories(dir);
  write_bitstream(dir / "bitstream.txt", report.bitstream);
  write_report(dir / "report.json", report);
}

GateReport learn(const ExperimentConfig& config, const LearnOptions& options) {
  config.validate();
  const auto t0 = std::chrono::steady_clock::now();
  const CycleUnitarySet cycles = precompute(build_system(config, config.n_sim_levels));
  const FitnessKernel kernel(cycles, target_library(config.target));

  RunOptions run;
  if (options.checkpoint_path) {
    if (options.resume && std::filesystem::exists(*options.checkpoint_path)) {
      run.resume = deserialize_state(read_file(*options.checkpoint_path));
    }
    const std::filesystem::path path = *options.checkpoint_path;
    const GaConfig ga = config.ga;
    run.checkpoint_every = config.checkpoint_every > 0 ? config.checkpoint_every : 1000;
    run.on_checkpoint = [path, ga, log = options.log](const GaState& state) {
      write_file(path, serialize_state(state, ga));
      if (log) {
        log("iteration " + std::to_string(state.iteration) + " best " +
            format_double(state.population.front().fitness));
      }
    };
  } else if (options.log && config.checkpoint_every > 0) {
    run.checkpoint_every = config.checkpoint_every;
    run.on_checkpoint = [log = options.log](const GaState& state) {
      log("iteration " + std::to_string(state.iteration) + " best " +
          format_double(state.population.front().fitness));
    };
  }

  const SearchResult result = run_ga(kernel, config.num_cycles(), config.ga, run);

  GateReport report;
  fill_evaluation(config, kernel, result.best.schedule, {config.n_sim_levels, config.n_sim_levels + 2},
                  report);
  report.iterations = result.iterations_used;
  report.evaluations = result.evaluations;
  report.terminated_by = std::string(to_string(result.terminated_by));
  report.target_reached = result.terminated_by == Termination::TargetReached;
  report.wall_time = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return report;
}

GateReport evaluate_bitstream(const ExperimentConfig& config, const BitstreamFile& bitstream,
                              const std::vector<int>& extra_levels) {
  config.validate();
  if (bitstream.schedule.num_cycles() != config.num_cycles()) {
    throw ConfigError("evaluate: bitstream has " + std::to_string(bitstream.schedule.num_cycles()) +
                      " cycles, config implies " + std::to_string(config.num_cycles()));
  }
  if (bitstream.channels.size() != config.channels.size()) {
    throw ConfigError("evaluate: bitstream channel count does not match config");
  }
  for (std::size_t i = 0; i < bitstream.channels.size(); ++i) {
    if (bitstream.channels[i].qubit != config.channels[i].qubit ||
        bitstream.channels[i].axis != config.channels[i].axis) {
      throw ConfigError("evaluate: bitstream channels do not match config channels");
    }
  }
  if (bitstream.clock_ps != config.clock_ps) throw ConfigError("evaluate: clock mismatch");

  const auto t0 = std::chrono::steady_clock::now();
  const CycleUnitarySet cycles = precompute(build_system(config, config.n_sim_levels));
  const FitnessKernel kernel(cycles, target_library(config.target));
  std::vector<int> levels{config.n_sim_levels, config.n_sim_levels + 2};
  levels.insert(levels.end(), extra_levels.begin(), extra_levels.end());
  GateReport report;
  fill_evaluation(config, kernel, bitstream.schedule, levels, report);
  report.target_reached = report.learned.value(config.ga.metric) >= config.ga.target_fidelity;
  report.wall_time = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return report;
}

SweepAxis parse_sweep_axis(std::string_view text) {
  if (text == "tip_angle") return SweepAxis::TipAngle;
  if (text == "gate_time") return SweepAxis::GateTime;
  if (text == "j_coupling") return SweepAxis::JCoupling;
  throw ConfigError("unknown sweep axis '" + std::string(text) + "'");
}

ExperimentConfig with_sweep_value(const ExperimentConfig& base, SweepAxis axis, double value) {
  ExperimentConfig cfg = base;
  switch (axis) {
    case SweepAxis::TipAngle:
      for (auto& c : cfg.channels) c.tip_angle = value;
      break;
    case SweepAxis::GateTime:
      cfg.gate_time_ns = value;
      break;
    case SweepAxis::JCoupling:
      cfg.j_ghz = value * 1e-3;
      break;
  }
  return cfg;
}

std::vector<SweepRow> sweep(const ExperimentConfig& base, SweepAxis axis, const std::vector<double>& values,
                            const std::function<void(const std::string&)>& log) {
  if (values.empty()) throw ConfigError("sweep: empty value list");
  std::vector<SweepRow> rows;
  for (std::size_t i = 0; i < values.size(); ++i) {
    SweepRow row;
    row.value = values[i];
    const auto t0 = std::chrono::steady_clock::now();
    try {
      ExperimentConfig cfg = with_sweep_value(base, axis, values[i]);
      cfg.ga.rng_seed = base.ga.rng_seed + i;
      cfg.validate();
      const GateReport r = learn(cfg);
      row.error_f1 = 1.0 - r.learned.f1;
      row.error_f2 = 1.0 - r.learned.f2;
      row.leakage = r.full.front().leakage;
      row.iterations = r.iterations;
      row.status = r.target_reached ? "ok" : "not_converged";
    } catch (const std::exception& e) {
      row.status = std::string("error: ") + e.what();
    }
    row.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (log) log("value " + format_double(row.value) + " -> " + row.status);
    rows.push_back(row);
  }
  return rows;
}

std::string format_sweep_csv(const std::vector<SweepRow>& rows) {
  std::ostringstream os;
  os << "value,error_f1,error_f2,leakage,iterations,seconds,status\n";
  for (const auto& r : rows) {
    std::string status = r.status;
    std::replace(status.begin(), status.end(), ',', ';');
    std::replace(status.begin(), status.end(), '\n', ' ');
    os << format_double(r.value) << ',' << format_double(r.error_f1) << ',' << format_double(r.error_f2)
       << ',' << format_double(r.leakage) << ',' << r.iterations << ',' << format_double(r.seconds) << ','
       << status << '\n';
  }
  return os.str();
}

}  // namespace sfq
