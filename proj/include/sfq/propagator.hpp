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

#include <cstdint>
#include <vector>

#include "sfq/system.hpp"
#include "sfq/types.hpp"

namespace sfq {

/// Binary SFQ pulse pattern: one bit per clock cycle per control channel.
class PulseSchedule {
 public:
  PulseSchedule() = default;
  PulseSchedule(int num_channels, int num_cycles);

  int num_channels() const { return static_cast<int>(bits_.size()); }
  int num_cycles() const { return num_cycles_; }

  bool bit(int channel, int cycle) const { return bits_[channel][cycle] != 0; }
  void set(int channel, int cycle, bool on) { bits_[channel][cycle] = on ? 1 : 0; }
  void flip(int channel, int cycle) { bits_[channel][cycle] ^= 1; }

  std::vector<std::uint8_t>& channel(int c) { return bits_[c]; }
  const std::vector<std::uint8_t>& channel(int c) const { return bits_[c]; }

  ChannelMask mask_at(int cycle) const;
  int pulse_count() const;

  /// Cycles [begin, end) of every channel.
  PulseSchedule slice(int begin, int end) const;
  /// Concatenation in time.
  PulseSchedule then(const PulseSchedule& later) const;

  bool operator==(const PulseSchedule&) const = default;

 private:
  int num_cycles_ = 0;
  std::vector<std::vector<std::uint8_t>> bits_;
};

/// Single-cycle propagators for every combination of firing channels.
struct CycleUnitarySet {
  CoupledSystem system;
  Matrix free;                      ///< exp(-i h_static clock_period)
  std::vector<Matrix> combos;       ///< combos[mask] = free * kick(mask)
  std::vector<Matrix> learn_blocks; ///< combos restricted to the learning subspace
  Matrix projector_learn;           ///< diagonal projector in simulation space
};

CycleUnitarySet precompute(const CoupledSystem& system);

struct EvolutionResult {
  Matrix matrix;           ///< rest-frame, learning dimension, possibly non-unitary
  double norm_loss = 0.0;  ///< 1 - tr(M^dag M) / dim
};

/// Evolution with the projection onto the learning levels applied after
/// every cycle. Serial per-cycle reference path.
EvolutionResult evolve_projected(const CycleUnitarySet& cycles, const PulseSchedule& schedule);

/// Unprojected lab-frame propagator on the full simulation space.
Matrix evolve_full_lab(const CycleUnitarySet& cycles, const PulseSchedule& schedule);

/// evolve_full_lab transformed to the rest frame at t = num_cycles * clock.
Matrix evolve_full(const CycleUnitarySet& cycles, const PulseSchedule& schedule);

/// Applies the rest-frame transform for `num_cycles` to a lab-frame matrix
/// whose rows are indexed by simulation-space `row_indices`.
void to_rest_frame(const CoupledSystem& system, int num_cycles,
                   const std::vector<int>& row_indices, Matrix& m);

void check_schedule(const CoupledSystem& system, const PulseSchedule& schedule);

struct ReferenceOptions {
  double pulse_width = 0.25e-12;  ///< Gaussian sigma, seconds
  int substeps = 128;             ///< fourth-order steps across each pulse window
  double window_sigmas = 8.0;     ///< half-width of the integrated pulse window
  double tolerance = 1e-6;        ///< allowed change when substeps is halved
};

struct ReferenceResult {
  Matrix unitary;             ///< rest frame, full simulation space
  double step_change = 0.0;   ///< max element change vs. half the substeps
};

/// Integrates the Schrodinger equation with finite-width Gaussian pulses of
/// area equal to the kick generators. Pulses are centred on the cycle
/// boundaries used by the delta-kick model, so the result is directly
/// comparable with evolve_full.
ReferenceResult reference_integrate(const CoupledSystem& system, const PulseSchedule& schedule,
                                    const ReferenceOptions& options = {});

}  // namespace sfq
