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

#include <string>
#include <string_view>
#include <vector>

#include "sfq/qubit_models.hpp"
#include "sfq/types.hpp"

namespace sfq {

enum class Axis { X, Z };

std::string_view to_string(Axis axis);
Axis parse_axis(std::string_view text);

/// One SFQ control line. tip_angle is the rotation per pulse in radians.
struct ControlChannel {
  int qubit = 0;
  Axis axis = Axis::X;
  double tip_angle = 0.0;

  bool operator==(const ControlChannel&) const = default;
};

/// Bitmask over channel indices selecting which channels fire in a cycle.
using ChannelMask = unsigned;

/// Composite one- or two-qubit system in the lab frame.
///
/// Composite basis index is i0 * L + i1 for two qubits with L levels each.
/// h_static and kick_generators live in the simulation space of
/// n_sim_levels per qubit; learning happens in the n_levels sub-block.
struct CoupledSystem {
  std::vector<QubitModel> qubits;  // truncated to n_sim_levels
  double j_coupling = 0.0;
  std::vector<ControlChannel> channels;
  int n_levels = 2;
  int n_sim_levels = 3;
  double clock_period = 8e-12;

  Matrix h_static;
  /// kick(mask) = exp(-i * sum of generators of the selected channels).
  std::vector<Matrix> kick_generators;
  /// Diagonal of the bare (uncoupled) Hamiltonian; defines the rest frame.
  RealVector bare_energies;
  /// Simulation-space indices of the learning subspace, in learning order.
  std::vector<int> learn_indices;
  /// Learning-space indices of the 2^q computational states, in order.
  std::vector<int> comp_in_learn;
  /// Simulation-space indices of the computational states, in order.
  std::vector<int> comp_in_sim;

  int num_qubits() const { return static_cast<int>(qubits.size()); }
  int sim_dim() const { return static_cast<int>(h_static.rows()); }
  int learn_dim() const { return static_cast<int>(learn_indices.size()); }
  int comp_dim() const { return static_cast<int>(comp_in_sim.size()); }
  ChannelMask num_masks() const { return ChannelMask{1} << channels.size(); }
};

/// Tridiagonal charge operator on `levels` levels, scaled so that its 0-1
/// element is 1 (the charge elements divided by c[0]).
Matrix normalized_charge_operator(const QubitModel& qubit, int levels);

/// Builds h_static = sum_q diag(E_q) + J * nbar_0 (x) nbar_1 and the kick
/// generators. X kick: (tip/2) * nbar_q, a Bloch rotation by tip in the qubit
/// block. Z kick: tip * diag(0,1,2,...), i.e. exp(-i k tip) on level k.
CoupledSystem assemble(const std::vector<QubitModel>& qubits, double j_coupling,
                       const std::vector<ControlChannel>& channels, int n_levels,
                       int n_sim_levels, double clock_period);

/// exp(-i * sum of kick generators over the channels in `mask`).
Matrix kick_unitary(const CoupledSystem& system, ChannelMask mask);

/// Diagonal rest-frame transform exp(+i E_bare t) at the given simulation
/// indices.
Vector rest_frame_phases(const CoupledSystem& system, double t, const std::vector<int>& indices);

struct GateTarget {
  std::string name;
  Matrix unitary;
  int num_qubits() const;
};

/// Standard gates: I, X, Y, Z, H, RY90, RX90 (one qubit) and II, CZ, CNOT,
/// ISWAP, SQRT_ISWAP, RY90_I, I_RY90, RX90_I, I_RX90 (two qubits).
GateTarget target_library(std::string_view name);
std::vector<std::string> target_names();

}  // namespace sfq
