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

#include "sfq/config.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>

#include "sfq/bitstream_io.hpp"

namespace sfq {

namespace pt = boost::property_tree;

namespace {

std::string trim(std::string s) {
  const auto b = s.find_first_not_of(" \t");
  const auto e = s.find_last_not_of(" \t");
  return b == std::string::npos ? std::string() : s.substr(b, e - b + 1);
}

double parse_number(const std::string& key, std::string text) {
  text = trim(text);
  double scale = 1.0;
  // Accept "pi" multiples, e.g. "pi", "0.5pi".
  if (text.size() >= 2 && text.compare(text.size() - 2, 2, "pi") == 0) {
    scale = kPi;
    text = trim(text.substr(0, text.size() - 2));
    if (text.empty()) return kPi;
    if (text.back() == '*') text = trim(text.substr(0, text.size() - 1));
  }
  double v = 0.0;
  auto res = std::from_chars(text.data(), text.data() + text.size(), v);
  if (res.ec != std::errc() || res.ptr != text.data() + text.size() || !std::isfinite(v)) {
    throw ConfigError("config: '" + key + "' expects a number, got '" + text + "'");
  }
  return v * scale;
}

long parse_integer(const std::string& key, const std::string& raw) {
  const std::string text = trim(raw);
  long v = 0;
  auto res = std::from_chars(text.data(), text.data() + text.size(), v);
  if (res.ec != std::errc() || res.ptr != text.data() + text.size()) {
    throw ConfigError("config: '" + key + "' expects an integer, got '" + text + "'");
  }
  return v;
}

bool parse_bool(const std::string& key, const std::string& raw) {
  const std::string t = trim(raw);
  if (t == "true" || t == "1" || t == "yes") return true;
  if (t == "false" || t == "0" || t == "no") return false;
  throw ConfigError("config: '" + key + "' expects true/false, got '" + t + "'");
}

std::vector<std::string> split(const std::string& text, char sep) {
  std::vector<std::string> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, sep)) {
    item = trim(item);
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

class Section {
 public:
  Section(std::string name, const pt::ptree& tree, std::set<std::string> allowed)
      : name_(std::move(name)), tree_(tree) {
    for (const auto& [key, child] : tree_) {
      if (!child.empty()) throw ConfigError("config: nested keys are not supported in [" + name_ + "]");
      if (!allowed.count(key)) throw ConfigError("config: unknown key '" + key + "' in [" + name_ + "]");
    }
  }

  bool has(const std::string& key) const { return tree_.count(key) > 0; }
  std::string text(const std::string& key) const { return trim(tree_.get<std::string>(key)); }
  std::string qualified(const std::string& key) const { return name_ + "." + key; }

  double number(const std::string& key, double fallback) const {
    return has(key) ? parse_number(qualified(key), text(key)) : fallback;
  }
  double required_number(const std::string& key) const {
    if (!has(key)) throw ConfigError("config: missing '" + qualified(key) + "'");
    return parse_number(qualified(key), text(key));
  }
  long integer(const std::string& key, long fallback) const {
    return has(key) ? parse_integer(qualified(key), text(key)) : fallback;
  }

 private:
  std::string name_;
  const pt::ptree& tree_;
};

const pt::ptree kEmpty;

const pt::ptree& child_or_empty(const pt::ptree& root, const std::string& name) {
  auto it = root.find(name);
  return it == root.not_found() ? kEmpty : it->second;
}

QubitSpec parse_qubit(const std::string& name, const pt::ptree& tree) {
  QubitSpec q;
  const std::string type = tree.count("type") ? trim(tree.get<std::string>("type")) : "";
  std::set<std::string> allowed{"type"};
  if (type == "transmon") {
    q.kind = DeviceKind::Transmon;
    allowed.insert({"freq_ghz", "anharmonicity_ghz"});
  } else if (type == "split_transmon") {
    q.kind = DeviceKind::SplitTransmon;
    allowed.insert({"ej1_ghz", "ej2_ghz", "ec_ghz", "flux_bias"});
  } else if (type == "fluxonium") {
    q.kind = DeviceKind::Fluxonium;
    allowed.insert({"ej_ghz", "ec_ghz", "el_ghz", "flux_bias", "basis_size"});
  } else {
    throw ConfigError("config: [" + name + "] type must be transmon, split_transmon or fluxonium");
  }
  Section s(name, tree, allowed);
  switch (q.kind) {
    case DeviceKind::Transmon:
      q.freq_ghz = s.required_number("freq_ghz");
      q.anharmonicity_ghz = s.required_number("anharmonicity_ghz");
      break;
    case DeviceKind::SplitTransmon:
      q.ej1_ghz = s.required_number("ej1_ghz");
      q.ej2_ghz = s.required_number("ej2_ghz");
      q.ec_ghz = s.required_number("ec_ghz");
      q.flux_bias = s.number("flux_bias", 0.0);
      break;
    case DeviceKind::Fluxonium:
      q.ej_ghz = s.required_number("ej_ghz");
      q.ec_ghz = s.required_number("ec_ghz");
      q.el_ghz = s.required_number("el_ghz");
      q.flux_bias = s.number("flux_bias", kPi);
      q.basis_size = static_cast<int>(s.integer("basis_size", 60));
      break;
  }
  return q;
}

}  // namespace

std::string_view to_string(DeviceKind kind) {
  switch (kind) {
    case DeviceKind::Transmon: return "transmon";
    case DeviceKind::SplitTransmon: return "split_transmon";
    case DeviceKind::Fluxonium: return "fluxonium";
  }
  return "?";
}

QubitModel QubitSpec::build(int levels) const {
  switch (kind) {
    case DeviceKind::Transmon:
      return build_transmon({ghz_to_angular(freq_ghz), ghz_to_angular(anharmonicity_ghz), levels});
    case DeviceKind::SplitTransmon:
      return build_split_transmon({ghz_to_angular(ej1_ghz), ghz_to_angular(ej2_ghz),
                                   ghz_to_angular(ec_ghz), flux_bias, levels});
    case DeviceKind::Fluxonium: {
      FluxoniumParams p;
      p.ej = ghz_to_angular(ej_ghz);
      p.ec = ghz_to_angular(ec_ghz);
      p.el = ghz_to_angular(el_ghz);
      p.flux_bias = flux_bias;
      p.n_levels = levels;
      p.basis_size = std::max(basis_size, 4 * levels);
      return build_fluxonium(p);
    }
  }
  throw Error("unknown device kind");
}

int ExperimentConfig::num_cycles() const {
  return static_cast<int>(std::lround(gate_time_ns * 1e3 / clock_ps));
}

void ExperimentConfig::validate() const {
  if (num_qubits < 1 || num_qubits > 2) throw ConfigError("config: num_qubits must be 1 or 2");
  if (static_cast<int>(qubits.size()) != num_qubits) {
    throw ConfigError("config: expected " + std::to_string(num_qubits) + " [qubitN] sections");
  }
  if (!(clock_ps > 0.0)) throw ConfigError("config: clock_ps must be positive");
  if (!(gate_time_ns > 0.0)) throw ConfigError("config: gate_time_ns must be positive");
  if (num_cycles() < 1) throw ConfigError("config: gate time is shorter than one clock cycle");
  if (n_levels < 2) throw ConfigError("config: n_levels must be at least 2");
  if (n_sim_levels < n_levels) throw ConfigError("config: n_sim_levels must be >= n_levels");
  if (channels.empty()) throw ConfigError("config: at least one control channel is required");
  for (std::size_t i = 0; i < channels.size(); ++i) {
    const auto& c = channels[i];
    if (c.qubit < 0 || c.qubit >= num_qubits) throw ConfigError("config: channel qubit out of range");
    if (!(c.tip_angle > 0.0)) throw ConfigError("config: tip angles must be positive");
    for (std::size_t j = 0; j < i; ++j) {
      if (channels[j].qubit == c.qubit && channels[j].axis == c.axis) {
        throw ConfigError("config: duplicate channel");
      }
    }
  }
  if (target_library(target).num_qubits() != num_qubits) {
    throw ConfigError("config: target '" + target + "' acts on a different number of qubits");
  }
  for (const auto& q : qubits) {
    if (q.kind == DeviceKind::Transmon && !(q.anharmonicity_ghz < 0.0)) {
      throw ConfigError("config: transmon anharmonicity must be negative");
    }
  }
  ga.validate();
  if (checkpoint_every < 0) throw ConfigError("config: checkpoint_every must be non-negative");
}

ExperimentConfig parse_config(const std::string& text) {
  pt::ptree root;
  try {
    std::istringstream is(text);
    pt::read_ini(is, root);
  } catch (const pt::ini_parser_error& e) {
    throw ConfigError(std::string("config: ") + e.what());
  }

  static const std::set<std::string> sections{"system", "qubit0", "qubit1", "channels",
                                              "gate", "learning", "ga", "output"};
  for (const auto& [name, child] : root) {
    if (!sections.count(name)) throw ConfigError("config: unknown section [" + name + "]");
    if (child.empty() && !child.data().empty()) {
      throw ConfigError("config: key '" + name + "' outside of a section");
    }
  }

  ExperimentConfig cfg;
  Section sys("system", child_or_empty(root, "system"), {"num_qubits", "clock_ps", "j_ghz"});
  cfg.num_qubits = static_cast<int>(sys.integer("num_qubits", 2));
  cfg.clock_ps = sys.number("clock_ps", 8.0);
  cfg.j_ghz = sys.number("j_ghz", 0.0);

  for (int q = 0; q < 2; ++q) {
    const std::string name = "qubit" + std::to_string(q);
    if (root.count(name)) cfg.qubits.push_back(parse_qubit(name, root.get_child(name)));
  }

  Section ch("channels", child_or_empty(root, "channels"), {"list"});
  if (!ch.has("list")) throw ConfigError("config: missing 'channels.list'");
  for (const auto& item : split(ch.text("list"), ',')) {
    const auto parts = split(item, ':');
    if (parts.size() != 3) throw ConfigError("config: channel '" + item + "' must be qubit:axis:tip");
    ControlChannel c;
    c.qubit = static_cast<int>(parse_integer("channels.list", parts[0]));
    c.axis = parse_axis(parts[1]);
    c.tip_angle = parse_number("channels.list", parts[2]);
    cfg.channels.push_back(c);
  }

  Section gate("gate", child_or_empty(root, "gate"), {"target", "gate_time_ns"});
  if (gate.has("target")) cfg.target = gate.text("target");
  cfg.gate_time_ns = gate.required_number("gate_time_ns");

  Section learn("learning", child_or_empty(root, "learning"), {"n_levels", "n_sim_levels"});
  cfg.n_levels = static_cast<int>(learn.integer("n_levels", 2));
  cfg.n_sim_levels = static_cast<int>(learn.integer("n_sim_levels", cfg.n_levels + 2));

  Section ga("ga", child_or_empty(root, "ga"),
             {"population_size", "selection_size", "mutation_probability", "max_iterations",
              "target_fidelity", "metric", "seed", "elitism_count", "init_density",
              "checkpoint_every", "full_budget"});
  cfg.ga.population_size = static_cast<int>(ga.integer("population_size", 70));
  cfg.ga.selection_size = static_cast<int>(ga.integer("selection_size", 60));
  cfg.ga.mutation_probability = ga.number("mutation_probability", 0.001);
  const bool full_budget = ga.has("full_budget") && parse_bool("ga.full_budget", ga.text("full_budget"));
  cfg.ga.max_iterations = ga.integer("max_iterations", full_budget ? 200000 : kDeskIterations);
  cfg.ga.target_fidelity = ga.number("target_fidelity", 0.999);
  if (ga.has("metric")) cfg.ga.metric = parse_metric(ga.text("metric"));
  const long seed = ga.integer("seed", 1);
  if (seed < 0) throw ConfigError("config: ga.seed must be non-negative");
  cfg.ga.rng_seed = static_cast<std::uint64_t>(seed);
  cfg.ga.elitism_count = static_cast<int>(ga.integer("elitism_count", 2));
  cfg.ga.init_density = ga.number("init_density", 0.5);
  cfg.checkpoint_every = ga.integer("checkpoint_every", 0);

  Section out("output", child_or_empty(root, "output"), {"dir"});
  if (out.has("dir")) cfg.out_dir = out.text("dir");

  cfg.validate();
  return cfg;
}

ExperimentConfig load_config(const std::filesystem::path& path) {
  std::ifstream is(path);
  if (!is) throw ConfigError("config: cannot read " + path.string());
  std::stringstream ss;
  ss << is.rdbuf();
  return parse_config(ss.str());
}

std::string format_config(const ExperimentConfig& c) {
  std::ostringstream os;
  const auto num = [](double v) { return format_double(v); };
  os << "[system]\nnum_qubits = " << c.num_qubits << "\nclock_ps = " << num(c.clock_ps)
     << "\nj_ghz = " << num(c.j_ghz) << "\n";
  for (std::size_t i = 0; i < c.qubits.size(); ++i) {
    const auto& q = c.qubits[i];
    os << "\n[qubit" << i << "]\ntype = " << to_string(q.kind) << "\n";
    switch (q.kind) {
      case DeviceKind::Transmon:
        os << "freq_ghz = " << num(q.freq_ghz) << "\nanharmonicity_ghz = " << num(q.anharmonicity_ghz) << "\n";
        break;
      case DeviceKind::SplitTransmon:
        os << "ej1_ghz = " << num(q.ej1_ghz) << "\nej2_ghz = " << num(q.ej2_ghz) << "\nec_ghz = "
           << num(q.ec_ghz) << "\nflux_bias = " << num(q.flux_bias) << "\n";
        break;
      case DeviceKind::Fluxonium:
        os << "ej_ghz = " << num(q.ej_ghz) << "\nec_ghz = " << num(q.ec_ghz) << "\nel_ghz = "
           << num(q.el_ghz) << "\nflux_bias = " << num(q.flux_bias) << "\nbasis_size = "
           << q.basis_size << "\n";
        break;
    }
  }
  os << "\n[channels]\nlist = ";
  for (std::size_t i = 0; i < c.channels.size(); ++i) {
    if (i) os << ", ";
    os << c.channels[i].qubit << ':' << to_string(c.channels[i].axis) << ':' << num(c.channels[i].tip_angle);
  }
  os << "\n\n[gate]\ntarget = " << c.target << "\ngate_time_ns = " << num(c.gate_time_ns) << "\n";
  os << "\n[learning]\nn_levels = " << c.n_levels << "\nn_sim_levels = " << c.n_sim_levels << "\n";
  os << "\n[ga]\npopulation_size = " << c.ga.population_size << "\nselection_size = " << c.ga.selection_size
     << "\nmutation_probability = " << num(c.ga.mutation_probability)
     << "\nmax_iterations = " << c.ga.max_iterations << "\ntarget_fidelity = " << num(c.ga.target_fidelity)
     << "\nmetric = " << to_string(c.ga.metric) << "\nseed = " << c.ga.rng_seed
     << "\nelitism_count = " << c.ga.elitism_count << "\ninit_density = " << num(c.ga.init_density)
     << "\ncheckpoint_every = " << c.checkpoint_every << "\n";
  os << "\n[output]\ndir = " << c.out_dir << "\n";
  return os.str();
}

nlohmann::json config_to_json(const ExperimentConfig& c) {
  nlohmann::json qubits = nlohmann::json::array();
  for (const auto& q : c.qubits) {
    nlohmann::json j{{"type", std::string(to_string(q.kind))}};
    switch (q.kind) {
      case DeviceKind::Transmon:
        j["freq_ghz"] = q.freq_ghz;
        j["anharmonicity_ghz"] = q.anharmonicity_ghz;
        break;
      case DeviceKind::SplitTransmon:
        j["ej1_ghz"] = q.ej1_ghz;
        j["ej2_ghz"] = q.ej2_ghz;
        j["ec_ghz"] = q.ec_ghz;
        j["flux_bias"] = q.flux_bias;
        break;
      case DeviceKind::Fluxonium:
        j["ej_ghz"] = q.ej_ghz;
        j["ec_ghz"] = q.ec_ghz;
        j["el_ghz"] = q.el_ghz;
        j["flux_bias"] = q.flux_bias;
        j["basis_size"] = q.basis_size;
        break;
    }
    qubits.push_back(j);
  }
  nlohmann::json channels = nlohmann::json::array();
  for (const auto& ch : c.channels) {
    channels.push_back({{"qubit", ch.qubit}, {"axis", std::string(to_string(ch.axis))}, {"tip_angle", ch.tip_angle}});
  }
  return {{"num_qubits", c.num_qubits},
          {"clock_ps", c.clock_ps},
          {"j_ghz", c.j_ghz},
          {"qubits", qubits},
          {"channels", channels},
          {"target", c.target},
          {"gate_time_ns", c.gate_time_ns},
          {"num_cycles", c.num_cycles()},
          {"n_levels", c.n_levels},
          {"n_sim_levels", c.n_sim_levels},
          {"ga",
           {{"population_size", c.ga.population_size},
            {"selection_size", c.ga.selection_size},
            {"mutation_probability", c.ga.mutation_probability},
            {"max_iterations", c.ga.max_iterations},
            {"target_fidelity", c.ga.target_fidelity},
            {"metric", std::string(to_string(c.ga.metric))},
            {"seed", c.ga.rng_seed},
            {"elitism_count", c.ga.elitism_count},
            {"init_density", c.ga.init_density}}}};
}

}  // namespace sfq
