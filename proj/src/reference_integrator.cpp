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

// Finite-width pulse integrator used as an independent check of the
// delta-kick cycle propagators in propagator.cpp.

#include <cmath>
#include <map>

#include "sfq/linalg.hpp"
#include "sfq/propagator.hpp"

namespace sfq {

namespace {

// Fourth-order commutator-free Magnus coefficients (two exponentials,
// Gauss-Legendre nodes).
const double kNode1 = 0.5 - std::sqrt(3.0) / 6.0;
const double kNode2 = 0.5 + std::sqrt(3.0) / 6.0;
const double kWeightA = (3.0 - 2.0 * std::sqrt(3.0)) / 12.0;
const double kWeightB = (3.0 + 2.0 * std::sqrt(3.0)) / 12.0;

double gaussian(double t, double sigma) {
  return std::exp(-0.5 * t * t / (sigma * sigma)) / (std::sqrt(kTwoPi) * sigma);
}

// Propagator across [-half, +half] around a pulse centred at 0.
Matrix pulse_window(const Matrix& h_static, const Matrix& generator, double sigma, double half,
                    int steps) {
  const double h = 2.0 * half / steps;
  Matrix u = Matrix::Identity(h_static.rows(), h_static.cols());
  for (int s = 0; s < steps; ++s) {
    const double t0 = -half + s * h;
    const Matrix h1 = h_static + gaussian(t0 + kNode1 * h, sigma) * generator;
    const Matrix h2 = h_static + gaussian(t0 + kNode2 * h, sigma) * generator;
    const Matrix first = expm_hermitian(kWeightB * h1 + kWeightA * h2, h);
    const Matrix second = expm_hermitian(kWeightA * h1 + kWeightB * h2, h);
    u = second * first * u;
  }
  return u;
}

Matrix integrate(const CoupledSystem& sys, const PulseSchedule& schedule,
                 const ReferenceOptions& opt, int steps) {
  const double half = opt.window_sigmas * opt.pulse_width;
  const double clock = sys.clock_period;
  const int dim = sys.sim_dim();
  const Matrix gap = expm_hermitian(sys.h_static, clock - 2.0 * half);

  std::map<ChannelMask, Matrix> windows;
  auto window_for = [&](ChannelMask mask) -> const Matrix& {
    auto it = windows.find(mask);
    if (it != windows.end()) return it->second;
    Matrix gen = Matrix::Zero(dim, dim);
    for (std::size_t c = 0; c < sys.channels.size(); ++c) {
      if (mask & (ChannelMask{1} << c)) gen += sys.kick_generators[c];
    }
    Matrix w = mask == 0 ? expm_hermitian(sys.h_static, 2.0 * half)
                         : pulse_window(sys.h_static, gen, opt.pulse_width, half, steps);
    return windows.emplace(mask, std::move(w)).first->second;
  };

  // Integration runs over [-half, N*clock - half]; pulses sit at k*clock.
  Matrix u = Matrix::Identity(dim, dim);
  for (int k = 0; k < schedule.num_cycles(); ++k) {
    u = gap * window_for(schedule.mask_at(k)) * u;
  }
  // Shift the time origin back to 0 so the result matches the delta model.
  const Matrix shift_fwd = expm_hermitian(sys.h_static, half);
  const Matrix shift_back = expm_hermitian(sys.h_static, -half);
  Matrix lab = shift_fwd * u * shift_back;

  std::vector<int> all(dim);
  for (int i = 0; i < dim; ++i) all[i] = i;
  to_rest_frame(sys, schedule.num_cycles(), all, lab);
  return lab;
}

}  // namespace

ReferenceResult reference_integrate(const CoupledSystem& system, const PulseSchedule& schedule,
                                    const ReferenceOptions& options) {
  check_schedule(system, schedule);
  if (options.substeps < 64 || options.substeps % 2 != 0) {
    throw Error("reference_integrate: substeps must be even and at least 64");
  }
  if (!(options.pulse_width > 0.0)) throw Error("reference_integrate: pulse width must be positive");
  if (2.0 * options.window_sigmas * options.pulse_width >= system.clock_period) {
    throw Error("reference_integrate: pulse window exceeds the clock period");
  }
  ReferenceResult out;
  out.unitary = integrate(system, schedule, options, options.substeps);
  const Matrix coarse = integrate(system, schedule, options, options.substeps / 2);
  out.step_change = (out.unitary - coarse).cwiseAbs().maxCoeff();
  if (out.step_change > options.tolerance) {
    throw ConvergenceError("reference_integrate: result changes by " +
                           std::to_string(out.step_change) + " when substeps is halved");
  }
  return out;
}

}  // namespace sfq
