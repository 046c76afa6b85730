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

#include "sfq/system.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <map>

#include "sfq/linalg.hpp"

namespace sfq {

std::string_view to_string(Axis axis) { return axis == Axis::X ? "x" : "z"; }

Axis parse_axis(std::string_view text) {
  if (text == "x" || text == "X") return Axis::X;
  if (text == "z" || text == "Z") return Axis::Z;
  throw ConfigError("unknown control axis '" + std::string(text) + "'");
}

Matrix normalized_charge_operator(const QubitModel& qubit, int levels) {
  if (levels > qubit.levels()) throw Error("charge operator: model has too few levels");
  const double c0 = qubit.charge_elements.at(0);
  Matrix n = Matrix::Zero(levels, levels);
  for (int k = 0; k + 1 < levels; ++k) {
    n(k, k + 1) = n(k + 1, k) = qubit.charge_elements[k] / c0;
  }
  return n;
}

CoupledSystem assemble(const std::vector<QubitModel>& qubits, double j_coupling,
                       const std::vector<ControlChannel>& channels, int n_levels,
                       int n_sim_levels, double clock_period) {
  const int nq = static_cast<int>(qubits.size());
  if (nq < 1 || nq > 2) throw Error("assemble: only one or two qubits are supported");
  if (n_levels < 2) throw Error("assemble: n_levels must be at least 2");
  if (n_sim_levels < n_levels) throw Error("assemble: n_sim_levels must be >= n_levels");
  if (!(clock_period > 0.0)) throw Error("assemble: clock period must be positive");
  if (channels.size() > 16) throw Error("assemble: too many control channels");
  for (const auto& q : qubits) {
    if (q.levels() < n_sim_levels) {
      throw Error("assemble: qubit model has fewer levels than n_sim_levels");
    }
  }
  for (std::size_t i = 0; i < channels.size(); ++i) {
    const auto& ch = channels[i];
    if (ch.qubit < 0 || ch.qubit >= nq) throw Error("assemble: channel qubit index out of range");
    if (!(ch.tip_angle > 0.0)) throw Error("assemble: tip angle must be positive");
    for (std::size_t j = 0; j < i; ++j) {
      if (channels[j].qubit == ch.qubit && channels[j].axis == ch.axis) {
        throw Error("assemble: duplicate control channel");
      }
    }
  }

  CoupledSystem sys;
  for (const auto& q : qubits) sys.qubits.push_back(q.truncated(n_sim_levels));
  sys.j_coupling = j_coupling;
  sys.channels = channels;
  sys.n_levels = n_levels;
  sys.n_sim_levels = n_sim_levels;
  sys.clock_period = clock_period;

  const int levels = n_sim_levels;
  const int dim = ipow(levels, nq);
  sys.h_static = Matrix::Zero(dim, dim);
  for (int q = 0; q < nq; ++q) {
    Matrix diag = Matrix::Zero(levels, levels);
    for (int k = 0; k < levels; ++k) diag(k, k) = sys.qubits[q].energies[k];
    sys.h_static += embed(diag, q, nq, levels);
  }
  sys.bare_energies = sys.h_static.diagonal().real();
  if (nq == 2 && j_coupling != 0.0) {
    sys.h_static += j_coupling * kron(normalized_charge_operator(sys.qubits[0], levels),
                                      normalized_charge_operator(sys.qubits[1], levels));
  }

  for (const auto& ch : channels) {
    Matrix local = Matrix::Zero(levels, levels);
    if (ch.axis == Axis::X) {
      local = 0.5 * ch.tip_angle * normalized_charge_operator(sys.qubits[ch.qubit], levels);
    } else {
      for (int k = 0; k < levels; ++k) local(k, k) = ch.tip_angle * k;
    }
    sys.kick_generators.push_back(embed(local, ch.qubit, nq, levels));
  }

  // Index bookkeeping: enumerate composite indices with per-qubit digits.
  for (int idx = 0; idx < dim; ++idx) {
    int rest = idx;
    bool in_learn = true;
    bool in_comp = true;
    for (int q = nq - 1; q >= 0; --q) {
      const int digit = rest % levels;
      rest /= levels;
      in_learn = in_learn && digit < n_levels;
      in_comp = in_comp && digit < 2;
    }
    if (in_learn) {
      if (in_comp) sys.comp_in_learn.push_back(static_cast<int>(sys.learn_indices.size()));
      sys.learn_indices.push_back(idx);
    }
    if (in_comp) sys.comp_in_sim.push_back(idx);
  }
  return sys;
}

Matrix kick_unitary(const CoupledSystem& system, ChannelMask mask) {
  const int dim = system.sim_dim();
  if (mask == 0) return Matrix::Identity(dim, dim);
  if (mask >= system.num_masks()) throw Error("kick_unitary: mask selects unknown channels");
  Matrix gen = Matrix::Zero(dim, dim);
  for (std::size_t c = 0; c < system.channels.size(); ++c) {
    if (mask & (ChannelMask{1} << c)) gen += system.kick_generators[c];
  }
  return expm_hermitian(gen);
}

Vector rest_frame_phases(const CoupledSystem& system, double t, const std::vector<int>& indices) {
  Vector out(static_cast<Eigen::Index>(indices.size()));
  for (std::size_t i = 0; i < indices.size(); ++i) {
    // Reduce the phase before exponentiating; E*t reaches ~1e3 rad.
    const double phase = std::fmod(system.bare_energies(indices[i]) * t, kTwoPi);
    out(static_cast<Eigen::Index>(i)) = std::exp(kI * phase);
  }
  return out;
}

int GateTarget::num_qubits() const {
  return unitary.rows() == 2 ? 1 : unitary.rows() == 4 ? 2 : 0;
}

namespace {

Matrix mat2(Complex a, Complex b, Complex c, Complex d) {
  Matrix m(2, 2);
  m << a, b, c, d;
  return m;
}

const std::map<std::string, std::function<Matrix()>>& registry() {
  static const std::map<std::string, std::function<Matrix()>> table = [] {
    const double r = 1.0 / std::sqrt(2.0);
    const Matrix id = Matrix::Identity(2, 2);
    const Matrix ry90 = mat2(r, -r, r, r);                    // exp(-i pi/4 Y)
    const Matrix rx90 = mat2(r, -kI * r, -kI * r, r);         // exp(-i pi/4 X)
    std::map<std::string, std::function<Matrix()>> t;
    t["I"] = [id] { return id; };
    t["X"] = [] { return mat2(0, 1, 1, 0); };
    t["Y"] = [] { return mat2(0, -kI, kI, 0); };
    t["Z"] = [] { return mat2(1, 0, 0, -1); };
    t["H"] = [r] { return mat2(r, r, r, -r); };
    t["RY90"] = [ry90] { return ry90; };
    t["RX90"] = [rx90] { return rx90; };
    t["II"] = [] { return Matrix(Matrix::Identity(4, 4)); };
    t["CZ"] = [] {
      Matrix m = Matrix::Identity(4, 4);
      m(3, 3) = -1;
      return m;
    };
    t["CNOT"] = [] {
      Matrix m = Matrix::Zero(4, 4);
      m(0, 0) = m(1, 1) = m(2, 3) = m(3, 2) = 1;
      return m;
    };
    t["ISWAP"] = [] {
      Matrix m = Matrix::Zero(4, 4);
      m(0, 0) = m(3, 3) = 1;
      m(1, 2) = m(2, 1) = kI;
      return m;
    };
    t["SQRT_ISWAP"] = [r] {
      Matrix m = Matrix::Zero(4, 4);
      m(0, 0) = m(3, 3) = 1;
      m(1, 1) = m(2, 2) = r;
      m(1, 2) = m(2, 1) = kI * r;
      return m;
    };
    t["RY90_I"] = [ry90, id] { return kron(ry90, id); };
    t["I_RY90"] = [ry90, id] { return kron(id, ry90); };
    t["RX90_I"] = [rx90, id] { return kron(rx90, id); };
    t["I_RX90"] = [rx90, id] { return kron(id, rx90); };
    return t;
  }();
  return table;
}

}  // namespace

GateTarget target_library(std::string_view name) {
  const auto& table = registry();
  auto it = table.find(std::string(name));
  if (it == table.end()) throw ConfigError("unknown target gate '" + std::string(name) + "'");
  return GateTarget{it->first, it->second()};
}

std::vector<std::string> target_names() {
  std::vector<std::string> names;
  for (const auto& [k, v] : registry()) names.push_back(k);
  return names;
}

}  // namespace sfq
