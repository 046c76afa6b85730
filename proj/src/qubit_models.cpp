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

#include "sfq/qubit_models.hpp"

#include <cmath>

#include <Eigen/Eigenvalues>

namespace sfq {

namespace {

// Extra oscillator states used when forming cos(phi) so that truncation
// artifacts stay out of the retained basis.
constexpr int kCosinePadding = 60;

// Relative energy shift on basis doubling above which diagonalization is
// declared unconverged.
constexpr double kBasisTolerance = 1e-3;

struct FluxoniumSpectrum {
  std::vector<double> energies;
  std::vector<double> charge;  // |<k|n|k+1>|, unnormalized
};

FluxoniumSpectrum diagonalize_fluxonium(const FluxoniumParams& p, int basis) {
  // Oscillator basis of 4 Ec n^2 + El phi^2.
  const double a_coef = 4.0 * p.ec;
  const double b_coef = p.el;
  const double omega = 2.0 * std::sqrt(a_coef * b_coef);
  const double phi_zpf = std::sqrt(0.5 * std::sqrt(a_coef / b_coef));
  const double n_zpf = 0.5 / phi_zpf;

  const int big = basis + kCosinePadding;
  RealMatrix lowering = RealMatrix::Zero(big, big);
  for (int k = 1; k < big; ++k) lowering(k - 1, k) = std::sqrt(static_cast<double>(k));
  const RealMatrix phi = phi_zpf * (lowering + lowering.transpose());

  Eigen::SelfAdjointEigenSolver<RealMatrix> phi_eig(phi);
  if (phi_eig.info() != Eigen::Success) {
    throw ConvergenceError("fluxonium: phase operator diagonalization failed");
  }
  RealVector cosines(big);
  for (int k = 0; k < big; ++k) cosines(k) = std::cos(phi_eig.eigenvalues()(k) + p.flux_bias);
  const RealMatrix cos_phi = phi_eig.eigenvectors() * cosines.asDiagonal() *
                             phi_eig.eigenvectors().transpose();

  RealMatrix h = -p.ej * cos_phi.topLeftCorner(basis, basis);
  for (int k = 0; k < basis; ++k) h(k, k) += omega * (k + 0.5);

  Eigen::SelfAdjointEigenSolver<RealMatrix> eig(h);
  if (eig.info() != Eigen::Success) {
    throw ConvergenceError("fluxonium: Hamiltonian diagonalization did not converge");
  }
  RealMatrix vecs = eig.eigenvectors().leftCols(p.n_levels);
  for (int k = 0; k < p.n_levels; ++k) {
    Eigen::Index idx = 0;
    vecs.col(k).cwiseAbs().maxCoeff(&idx);
    if (vecs(idx, k) < 0) vecs.col(k) *= -1.0;
  }

  // n = i n_zpf (a^dag - a); in a real eigenbasis its elements are purely
  // imaginary, so only magnitudes carry information.
  const RealMatrix lowering_small = lowering.topLeftCorner(basis, basis);
  const RealMatrix n_imag = n_zpf * (lowering_small.transpose() - lowering_small);

  FluxoniumSpectrum out;
  const double ground = eig.eigenvalues()(0);
  for (int k = 0; k < p.n_levels; ++k) out.energies.push_back(eig.eigenvalues()(k) - ground);
  for (int k = 0; k + 1 < p.n_levels; ++k) {
    out.charge.push_back(std::abs(vecs.col(k).dot(n_imag * vecs.col(k + 1))));
  }
  return out;
}

void check_monotone(const std::vector<double>& energies, const char* who) {
  for (std::size_t k = 1; k < energies.size(); ++k) {
    if (!(energies[k] > energies[k - 1])) {
      throw Error(std::string(who) + ": spectrum is not strictly increasing");
    }
  }
}

}  // namespace

QubitModel QubitModel::truncated(int n) const {
  if (n < 1 || n > levels()) throw Error("QubitModel::truncated: invalid level count");
  QubitModel out = *this;
  out.energies.resize(n);
  out.charge_elements.resize(n - 1);
  return out;
}

QubitModel build_transmon(const TransmonParams& params) {
  if (params.n_levels < 2) throw Error("transmon: n_levels must be at least 2");
  if (!(params.omega01 > 0.0)) throw Error("transmon: omega01 must be positive");
  if (!(params.alpha < 0.0)) throw Error("transmon: anharmonicity must be negative");

  QubitModel model;
  for (int k = 0; k < params.n_levels; ++k) {
    model.energies.push_back(k * params.omega01 + 0.5 * params.alpha * k * (k - 1));
  }
  check_monotone(model.energies, "transmon");
  for (int k = 0; k + 1 < params.n_levels; ++k) {
    model.charge_elements.push_back(0.5 * std::sqrt(static_cast<double>(k + 1)));
  }
  const TransmonEnergies e = implied_transmon_energies(params.omega01, params.alpha);
  model.raw_charge_scale = std::pow(e.ej / (32.0 * e.ec), 0.25);
  return model;
}

double effective_josephson_energy(const SplitTransmonParams& p) {
  const double c = std::cos(p.flux_bias);
  const double s = std::sin(p.flux_bias);
  const double sum = p.ej1 + p.ej2;
  const double diff = p.ej1 - p.ej2;
  return std::sqrt(sum * sum * c * c + diff * diff * s * s);
}

QubitModel build_split_transmon(const SplitTransmonParams& params) {
  if (!(params.ej1 > 0.0 && params.ej2 > 0.0 && params.ec > 0.0)) {
    throw Error("split transmon: ej1, ej2 and ec must be positive");
  }
  const double ej = effective_josephson_energy(params);
  if (!(ej > params.ec)) {
    throw Error("split transmon: effective Josephson energy does not exceed Ec");
  }
  TransmonParams t;
  t.omega01 = std::sqrt(8.0 * ej * params.ec) - params.ec;
  t.alpha = -params.ec;
  t.n_levels = params.n_levels;
  return build_transmon(t);
}

QubitModel build_fluxonium(const FluxoniumParams& params) {
  if (params.n_levels < 2) throw Error("fluxonium: n_levels must be at least 2");
  if (!(params.ej >= 0.0 && params.ec > 0.0 && params.el > 0.0)) {
    throw Error("fluxonium: require ej >= 0, ec > 0, el > 0");
  }
  if (params.basis_size < 4 * params.n_levels) {
    throw Error("fluxonium: basis_size must be at least 4 * n_levels");
  }

  const FluxoniumSpectrum spec = diagonalize_fluxonium(params, params.basis_size);
  const FluxoniumSpectrum check = diagonalize_fluxonium(params, 2 * params.basis_size);
  for (int k = 1; k < params.n_levels; ++k) {
    const double shift = std::abs(spec.energies[k] - check.energies[k]) / spec.energies[k];
    if (shift > kBasisTolerance) {
      throw ConvergenceError("fluxonium: basis_size too small (energy shifts on doubling)");
    }
  }

  QubitModel model;
  model.energies = spec.energies;
  check_monotone(model.energies, "fluxonium");
  model.raw_charge_scale = spec.charge.at(0);
  if (!(model.raw_charge_scale > 0.0)) {
    throw Error("fluxonium: vanishing 0-1 charge matrix element");
  }
  for (double c : spec.charge) model.charge_elements.push_back(0.5 * c / model.raw_charge_scale);
  if (!(params.el < params.ej)) {
    model.warnings.push_back("fluxonium: el >= ej, outside the usual el << ej regime");
  }
  return model;
}

TransmonEnergies implied_transmon_energies(double omega01, double alpha) {
  TransmonEnergies e;
  e.ec = -alpha;
  const double root = omega01 + e.ec;
  e.ej = root * root / (8.0 * e.ec);
  return e;
}

}  // namespace sfq
