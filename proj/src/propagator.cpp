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

#include "sfq/propagator.hpp"

#include "sfq/linalg.hpp"

namespace sfq {

PulseSchedule::PulseSchedule(int num_channels, int num_cycles) : num_cycles_(num_cycles) {
  if (num_channels < 0 || num_cycles < 0) throw Error("PulseSchedule: negative size");
  bits_.assign(num_channels, std::vector<std::uint8_t>(num_cycles, 0));
}

ChannelMask PulseSchedule::mask_at(int cycle) const {
  ChannelMask mask = 0;
  for (std::size_t c = 0; c < bits_.size(); ++c) {
    if (bits_[c][cycle]) mask |= ChannelMask{1} << c;
  }
  return mask;
}

int PulseSchedule::pulse_count() const {
  int n = 0;
  for (const auto& ch : bits_) {
    for (auto b : ch) n += b;
  }
  return n;
}

PulseSchedule PulseSchedule::slice(int begin, int end) const {
  if (begin < 0 || end > num_cycles_ || begin > end) throw Error("PulseSchedule::slice: bad range");
  PulseSchedule out(num_channels(), end - begin);
  for (int c = 0; c < num_channels(); ++c) {
    std::copy(bits_[c].begin() + begin, bits_[c].begin() + end, out.bits_[c].begin());
  }
  return out;
}

PulseSchedule PulseSchedule::then(const PulseSchedule& later) const {
  if (later.num_channels() != num_channels()) throw Error("PulseSchedule::then: channel mismatch");
  PulseSchedule out(num_channels(), num_cycles_ + later.num_cycles_);
  for (int c = 0; c < num_channels(); ++c) {
    auto it = std::copy(bits_[c].begin(), bits_[c].end(), out.bits_[c].begin());
    std::copy(later.bits_[c].begin(), later.bits_[c].end(), it);
  }
  return out;
}

void check_schedule(const CoupledSystem& system, const PulseSchedule& schedule) {
  if (schedule.num_channels() != static_cast<int>(system.channels.size())) {
    throw Error("schedule has " + std::to_string(schedule.num_channels()) +
                " channels, system has " + std::to_string(system.channels.size()));
  }
}

CycleUnitarySet precompute(const CoupledSystem& system) {
  CycleUnitarySet set;
  set.system = system;
  set.free = expm_hermitian(system.h_static, system.clock_period);
  const int ld = system.learn_dim();
  for (ChannelMask mask = 0; mask < system.num_masks(); ++mask) {
    Matrix combo = mask == 0 ? set.free : Matrix(set.free * kick_unitary(system, mask));
    Matrix block(ld, ld);
    for (int i = 0; i < ld; ++i) {
      for (int j = 0; j < ld; ++j) block(i, j) = combo(system.learn_indices[i], system.learn_indices[j]);
    }
    set.combos.push_back(std::move(combo));
    set.learn_blocks.push_back(std::move(block));
  }
  set.projector_learn = Matrix::Zero(system.sim_dim(), system.sim_dim());
  for (int idx : system.learn_indices) set.projector_learn(idx, idx) = 1.0;
  return set;
}

void to_rest_frame(const CoupledSystem& system, int num_cycles,
                   const std::vector<int>& row_indices, Matrix& m) {
  const double t = num_cycles * system.clock_period;
  m = rest_frame_phases(system, t, row_indices).asDiagonal() * m;
}

EvolutionResult evolve_projected(const CycleUnitarySet& cycles, const PulseSchedule& schedule) {
  const CoupledSystem& sys = cycles.system;
  check_schedule(sys, schedule);
  const int ld = sys.learn_dim();
  Matrix m = Matrix::Identity(ld, ld);
  for (int t = 0; t < schedule.num_cycles(); ++t) {
    m = cycles.learn_blocks[schedule.mask_at(t)] * m;
  }
  to_rest_frame(sys, schedule.num_cycles(), sys.learn_indices, m);
  EvolutionResult out;
  out.norm_loss = 1.0 - m.squaredNorm() / ld;
  if (out.norm_loss < 0.0 && out.norm_loss > -1e-12) out.norm_loss = 0.0;
  out.matrix = std::move(m);
  return out;
}

Matrix evolve_full_lab(const CycleUnitarySet& cycles, const PulseSchedule& schedule) {
  const CoupledSystem& sys = cycles.system;
  check_schedule(sys, schedule);
  Matrix u = Matrix::Identity(sys.sim_dim(), sys.sim_dim());
  for (int t = 0; t < schedule.num_cycles(); ++t) {
    u = cycles.combos[schedule.mask_at(t)] * u;
  }
  return u;
}

Matrix evolve_full(const CycleUnitarySet& cycles, const PulseSchedule& schedule) {
  Matrix u = evolve_full_lab(cycles, schedule);
  std::vector<int> all(cycles.system.sim_dim());
  for (int i = 0; i < cycles.system.sim_dim(); ++i) all[i] = i;
  to_rest_frame(cycles.system, schedule.num_cycles(), all, u);
  return u;
}

}  // namespace sfq
