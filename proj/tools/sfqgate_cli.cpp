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

// sfqgate: learn, evaluate and sweep SFQ pulse-train gates.
//
// Exit codes: 0 success, 1 runtime failure, 2 invalid config or usage,
// 3 search finished without reaching the target fidelity.

#include <cstdio>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "sfq/experiment.hpp"
#include "sfq/linalg.hpp"

namespace {

constexpr int kExitRuntime = 1;
constexpr int kExitConfig = 2;
constexpr int kExitNotConverged = 3;

struct Overrides {
  std::optional<long> seed;
  std::optional<long> max_iters;
  std::optional<std::string> out_dir;
  std::optional<std::string> metric;
  bool full_budget = false;
};

void add_overrides(CLI::App* cmd, Overrides& o) {
  cmd->add_option("--seed", o.seed, "RNG seed");
  cmd->add_option("--max-iters", o.max_iters, "GA iteration budget");
  cmd->add_option("--out-dir", o.out_dir, "output directory");
  cmd->add_option("--metric", o.metric, "fitness metric")->check(CLI::IsMember({"f1", "f2"}));
  cmd->add_flag("--full-budget", o.full_budget, "use the 200000-iteration budget");
}

sfq::ExperimentConfig load_with_overrides(const std::string& path, const Overrides& o) {
  sfq::ExperimentConfig cfg = sfq::load_config(path);
  if (o.full_budget) cfg.ga.max_iterations = 200000;
  if (o.max_iters) cfg.ga.max_iterations = *o.max_iters;
  if (o.seed) {
    if (*o.seed < 0) throw sfq::ConfigError("--seed must be non-negative");
    cfg.ga.rng_seed = static_cast<std::uint64_t>(*o.seed);
  }
  if (o.metric) cfg.ga.metric = sfq::parse_metric(*o.metric);
  if (o.out_dir) cfg.out_dir = *o.out_dir;
  cfg.validate();
  return cfg;
}

void print_summary(const sfq::GateReport& r) {
  std::cout << std::setprecision(6);
  std::cout << "target " << r.config.target << "  metric " << sfq::to_string(r.metric) << "  cycles "
            << r.bitstream.schedule.num_cycles() << "\n";
  std::cout << "learned: f1 " << r.learned.f1 << "  f2 " << r.learned.f2 << "  error " << r.error
            << "  norm_loss " << r.norm_loss << "\n";
  for (const auto& m : r.full) {
    std::cout << "full n_sim=" << m.sim_levels << ": f1 " << m.f1 << "  f2 " << m.f2 << "  leakage "
              << m.leakage << "\n";
  }
  if (r.iterations > 0) {
    std::cout << "iterations " << r.iterations << "  evaluations " << r.evaluations << "  "
              << r.terminated_by << "  " << r.wall_time << " s\n";
  }
}

int cmd_learn(const std::string& config_path, const Overrides& o, const std::string& checkpoint,
              bool resume, bool quiet) {
  const sfq::ExperimentConfig cfg = load_with_overrides(config_path, o);
  sfq::LearnOptions opts;
  if (!checkpoint.empty()) opts.checkpoint_path = checkpoint;
  opts.resume = resume;
  if (!quiet) opts.log = [](const std::string& line) { std::cerr << line << "\n"; };
  const sfq::GateReport report = sfq::learn(cfg, opts);
  sfq::persist(cfg.out_dir, report);
  print_summary(report);
  return report.target_reached ? 0 : kExitNotConverged;
}

int cmd_evaluate(const std::string& config_path, const std::string& bitstream_path, const Overrides& o,
                 const std::vector<int>& levels) {
  const sfq::ExperimentConfig cfg = load_with_overrides(config_path, o);
  const sfq::BitstreamFile bits = sfq::read_bitstream(bitstream_path);
  const sfq::GateReport report = sfq::evaluate_bitstream(cfg, bits, levels);
  std::filesystem::create_directories(cfg.out_dir);
  sfq::write_report(std::filesystem::path(cfg.out_dir) / "evaluation.json", report);
  print_summary(report);
  return 0;
}

std::vector<double> parse_values(const std::vector<std::string>& items) {
  std::vector<double> out;
  for (const auto& item : items) {
    std::size_t used = 0;
    double v = 0.0;
    try {
      v = std::stod(item, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (item.empty() || used != item.size()) throw sfq::ConfigError("sweep: bad value '" + item + "'");
    out.push_back(v);
  }
  if (out.empty()) throw sfq::ConfigError("sweep: --values is empty");
  return out;
}

int cmd_sweep(const std::string& config_path, const Overrides& o, const std::string& axis,
              const std::vector<std::string>& items) {
  const sfq::ExperimentConfig cfg = load_with_overrides(config_path, o);
  const sfq::SweepAxis ax = sfq::parse_sweep_axis(axis);
  const std::vector<double> values = parse_values(items);
  for (double v : values) sfq::with_sweep_value(cfg, ax, v).validate();
  const auto rows = sfq::sweep(cfg, ax, values, [](const std::string& l) { std::cerr << l << "\n"; });
  std::filesystem::create_directories(cfg.out_dir);
  const std::string csv = sfq::format_sweep_csv(rows);
  std::ofstream(std::filesystem::path(cfg.out_dir) / ("sweep_" + axis + ".csv")) << csv;
  std::cout << csv;
  return 0;
}

int cmd_spectrum(const std::string& config_path, int levels) {
  const sfq::ExperimentConfig cfg = sfq::load_config(config_path);
  const int n = levels > 0 ? levels : cfg.n_sim_levels;
  const auto qubits = sfq::build_qubits(cfg, n);
  std::cout << std::setprecision(9);
  for (std::size_t q = 0; q < qubits.size(); ++q) {
    const auto& m = qubits[q];
    std::cout << "qubit" << q << " (" << sfq::to_string(cfg.qubits[q].kind) << ")\n";
    std::cout << "  level  energy_ghz  transition_ghz  charge_element\n";
    for (int k = 0; k < m.levels(); ++k) {
      std::cout << "  " << k << "  " << sfq::angular_to_ghz(m.energies[k]) << "  "
                << (k > 0 ? sfq::angular_to_ghz(m.energies[k] - m.energies[k - 1]) : 0.0) << "  "
                << (k + 1 < m.levels() ? m.charge_elements[k] : 0.0) << "\n";
    }
    std::cout << "  raw_charge_scale " << m.raw_charge_scale << "\n";
    for (const auto& w : m.warnings) std::cout << "  warning: " << w << "\n";
  }
  return 0;
}

int cmd_oracle(const std::string& config_path, int cycles, long seed, int substeps, double width_ps) {
  const sfq::ExperimentConfig cfg = sfq::load_config(config_path);
  const sfq::CoupledSystem sys = sfq::build_system(cfg, cfg.n_sim_levels);
  const sfq::CycleUnitarySet set = sfq::precompute(sys);
  sfq::Rng rng(static_cast<std::uint64_t>(seed));
  sfq::PulseSchedule schedule(static_cast<int>(sys.channels.size()), cycles);
  for (int c = 0; c < schedule.num_channels(); ++c) {
    for (int t = 0; t < cycles; ++t) schedule.set(c, t, rng.bernoulli(0.5));
  }
  sfq::ReferenceOptions ro;
  ro.substeps = substeps;
  ro.pulse_width = width_ps * 1e-12;
  const auto ref = sfq::reference_integrate(sys, schedule, ro);
  const sfq::Matrix kick = sfq::evolve_full(set, schedule);
  // Average gate fidelity of the delta-kick propagator against the
  // reference one over the whole simulation space.
  const double d = static_cast<double>(kick.rows());
  const double f = (d + std::norm((ref.unitary.adjoint() * kick).trace())) / (d * d + d);
  std::cout << std::setprecision(12) << "cycles " << cycles << "  pulses " << schedule.pulse_count()
            << "\nfidelity(reference, delta-kick) " << f << "\nmax element difference "
            << (ref.unitary - kick).cwiseAbs().maxCoeff() << "\nsubstep halving change "
            << ref.step_change << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"SFQ pulse-train gate learning engine"};
  app.require_subcommand(1);

  std::string config_path;
  Overrides overrides;

  auto* learn = app.add_subcommand("learn", "search for a pulse train realizing the target gate");
  learn->add_option("--config", config_path, "experiment config")->required();
  add_overrides(learn, overrides);
  std::string checkpoint;
  bool resume = false;
  bool quiet = false;
  learn->add_option("--checkpoint", checkpoint, "checkpoint file written periodically");
  learn->add_flag("--resume", resume, "resume from --checkpoint if it exists");
  learn->add_flag("--quiet", quiet, "suppress progress output");

  auto* evaluate = app.add_subcommand("evaluate", "re-simulate a stored bitstream");
  std::string bitstream_path;
  std::vector<int> levels;
  evaluate->add_option("--config", config_path, "experiment config")->required();
  evaluate->add_option("--bitstream", bitstream_path, "bitstream file")->required();
  evaluate->add_option("--levels", levels, "additional simulation truncations")->delimiter(',');
  add_overrides(evaluate, overrides);

  auto* sweep = app.add_subcommand("sweep", "learn once per value of one parameter");
  std::string axis;
  std::vector<std::string> values;
  sweep->add_option("--config", config_path, "base experiment config")->required();
  sweep->add_option("--axis", axis, "tip_angle | gate_time (ns) | j_coupling (MHz)")
      ->required()
      ->check(CLI::IsMember({"tip_angle", "gate_time", "j_coupling"}));
  sweep->add_option("--values", values, "comma-separated values")->delimiter(',');
  add_overrides(sweep, overrides);

  auto* spectrum = app.add_subcommand("spectrum", "print qubit energies and charge elements");
  int spectrum_levels = 0;
  spectrum->add_option("--config", config_path, "experiment config")->required();
  spectrum->add_option("--levels", spectrum_levels, "levels per qubit");

  auto* oracle = app.add_subcommand("oracle", "compare delta-kick and finite-pulse propagators");
  int cycles = 100;
  long oracle_seed = 1;
  int substeps = 128;
  double width_ps = 0.25;
  oracle->add_option("--config", config_path, "experiment config")->required();
  oracle->add_option("--cycles", cycles, "random bitstream length");
  oracle->add_option("--seed", oracle_seed, "bitstream seed");
  oracle->add_option("--substeps", substeps, "integration steps per pulse window");
  oracle->add_option("--pulse-width-ps", width_ps, "Gaussian pulse sigma in ps");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitConfig;
  }

  try {
    if (*learn) return cmd_learn(config_path, overrides, checkpoint, resume, quiet);
    if (*evaluate) return cmd_evaluate(config_path, bitstream_path, overrides, levels);
    if (*sweep) return cmd_sweep(config_path, overrides, axis, values);
    if (*spectrum) return cmd_spectrum(config_path, spectrum_levels);
    if (*oracle) return cmd_oracle(config_path, cycles, oracle_seed, substeps, width_ps);
  } catch (const sfq::ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitRuntime;
  }
  return kExitRuntime;
}
