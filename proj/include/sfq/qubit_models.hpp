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
#include <vector>

#include "sfq/types.hpp"

namespace sfq {

// All energies are angular frequencies (rad/s) unless stated otherwise.

/// Fixed-frequency transmon in the Duffing (weak anharmonicity) expansion.
struct TransmonParams {
  double omega01 = 0.0;
  double alpha = 0.0;  ///< anharmonicity omega12 - omega01, must be negative
  int n_levels = 2;
};

/// Flux-tunable transmon with a dc-SQUID. flux_bias is in units of Phi0/pi.
struct SplitTransmonParams {
  double ej1 = 0.0;
  double ej2 = 0.0;
  double ec = 0.0;
  double flux_bias = 0.0;
  int n_levels = 2;
};

/// Fluxonium, H = 4 Ec n^2 + El phi^2 - Ej cos(phi + flux_bias).
struct FluxoniumParams {
  double ej = 0.0;
  double ec = 0.0;
  double el = 0.0;
  double flux_bias = 0.0;  ///< radians
  int n_levels = 2;
  int basis_size = 60;     ///< harmonic-oscillator states used for diagonalization
};

/// Truncated spectrum of a single qubit.
///
/// `charge_elements[k]` is |<k|n|k+1>| rescaled so that element 0 equals 1/2;
/// the unscaled |<0|n|1>| is kept in `raw_charge_scale`.
struct QubitModel {
  std::vector<double> energies;
  std::vector<double> charge_elements;
  double raw_charge_scale = 0.0;
  std::vector<std::string> warnings;

  int levels() const { return static_cast<int>(energies.size()); }
  double omega01() const { return energies.at(1) - energies.at(0); }
  /// Copy of this model keeping only the lowest `n` levels.
  QubitModel truncated(int n) const;
};

QubitModel build_transmon(const TransmonParams& params);

/// E_J' = sqrt((Ej1+Ej2)^2 cos^2(phi) + (Ej1-Ej2)^2 sin^2(phi)).
double effective_josephson_energy(const SplitTransmonParams& params);

QubitModel build_split_transmon(const SplitTransmonParams& params);

QubitModel build_fluxonium(const FluxoniumParams& params);

struct TransmonEnergies {
  double ej = 0.0;
  double ec = 0.0;
};

/// Inverts omega01 = sqrt(8 Ej Ec) - Ec with Ec = -alpha.
TransmonEnergies implied_transmon_energies(double omega01, double alpha);

}  // namespace sfq
