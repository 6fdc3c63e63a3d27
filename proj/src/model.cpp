// Copyright 2026 The holonomy-lab Authors
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

#include "hlab/model.hpp"

#include <cmath>

namespace hlab {

namespace {

constexpr double kPerMicrosecondToPerNs = 1e-3;

ComplexMatrix transition(Eigen::Index to, Eigen::Index from) {
  ComplexMatrix m = ComplexMatrix::Zero(3, 3);
  m(to, from) = 1.0;
  return m;
}

void require_rate(double r, const char* name) {
  if (!std::isfinite(r) || r < 0.0) {
    throw ValidationError(std::string("NoiseModel: ") + name + " must be finite and >= 0");
  }
}

}  // namespace

void QutritDriveParams::validate() const {
  if (!std::isfinite(omega_ge) || !std::isfinite(omega_ef) || omega_ge < 0.0 || omega_ef < 0.0) {
    throw ValidationError("QutritDriveParams: amplitudes must be finite and >= 0");
  }
  if (!std::isfinite(phi0) || !std::isfinite(phi1)) {
    throw ValidationError("QutritDriveParams: phases must be finite");
  }
}

BrightFrame bright_frame(double theta, double phi) {
  if (!std::isfinite(theta) || !std::isfinite(phi)) throw ValidationError("bright_frame: non-finite angle");
  const cplx ph = std::exp(-kI * phi);
  BrightFrame f;
  f.theta = theta;
  f.phi = phi;
  f.bright = Ket::Zero(3);
  f.dark = Ket::Zero(3);
  f.bright(kLevelG) = -std::sin(theta / 2) * ph;
  f.bright(kLevelF) = std::cos(theta / 2);
  f.dark(kLevelG) = std::cos(theta / 2) * ph;
  f.dark(kLevelF) = std::sin(theta / 2);
  f.excited = qmath::basis_ket(3, kLevelE);
  return f;
}

QutritDriveParams drive_from_bright(const BrightFrame& frame, double omega, double phi1) {
  // (1/2) omega e^{i phi1} |b><e| expanded on |g><e| and |f><e|.
  double a_ge = omega * std::sin(frame.theta / 2);
  double a_ef = omega * std::cos(frame.theta / 2);
  double p0 = phi1 - frame.phi + kPi;
  double p1 = phi1;
  if (a_ge < 0.0) {
    a_ge = -a_ge;
    p0 += kPi;
  }
  if (a_ef < 0.0) {
    a_ef = -a_ef;
    p1 += kPi;
  }
  return {a_ge, a_ef, p0, p1};
}

ComplexMatrix qutrit_hamiltonian(const QutritDriveParams& p) {
  ComplexMatrix h = ComplexMatrix::Zero(3, 3);
  h(kLevelG, kLevelE) = 0.5 * p.omega_ge * std::exp(kI * p.phi0);
  h(kLevelF, kLevelE) = 0.5 * p.omega_ef * std::exp(kI * p.phi1);
  h(kLevelE, kLevelG) = std::conj(h(kLevelG, kLevelE));
  h(kLevelE, kLevelF) = std::conj(h(kLevelF, kLevelE));
  return h;
}

void NoiseModel::validate() const {
  if (!std::isfinite(epsilon) || std::abs(epsilon) > 1.0) {
    throw ValidationError("NoiseModel: |epsilon| must be <= 1");
  }
  require_rate(gamma_ge, "gamma_ge");
  require_rate(gamma_ef, "gamma_ef");
  require_rate(gamma_gf, "gamma_gf");
  require_rate(gamma1, "gamma1");
  require_rate(gamma2, "gamma2");
  require_rate(gamma3, "gamma3");
}

bool NoiseModel::has_decoherence() const {
  return gamma_ge > 0 || gamma_ef > 0 || gamma_gf > 0 || gamma1 > 0 || gamma2 > 0 || gamma3 > 0;
}

NoiseModel NoiseModel::device_defaults() {
  NoiseModel n;
  n.gamma_ge = 1.0 / 18.9;
  n.gamma_ef = 1.0 / 12.7;
  n.gamma_gf = 1.0 / 500.0;
  n.gamma1 = 1.0 / 38.0;
  n.gamma2 = 1.0 / 26.0;
  n.gamma3 = 1.0 / 31.0;
  return n;
}

double pure_dephasing_e(const NoiseModel& n) { return std::max(n.gamma1 - n.gamma_ge / 2, 0.0); }

double pure_dephasing_f(const NoiseModel& n) {
  // The g-f coherence decays at (gamma_ef + gamma_gf)/2 + dephasing_f.
  return std::max(n.gamma3 - (n.gamma_ef + n.gamma_gf) / 2, 0.0);
}

std::vector<ComplexMatrix> collapse_operators(const NoiseModel& n) {
  n.validate();
  std::vector<ComplexMatrix> ops;
  auto add = [&](double rate_us, const ComplexMatrix& op) {
    if (rate_us > 0.0) ops.push_back(std::sqrt(rate_us * kPerMicrosecondToPerNs) * op);
  };
  add(n.gamma_ge, transition(kLevelG, kLevelE));
  add(n.gamma_ef, transition(kLevelE, kLevelF));
  add(n.gamma_gf, transition(kLevelG, kLevelF));
  add(2.0 * pure_dephasing_e(n), transition(kLevelE, kLevelE));
  add(2.0 * pure_dephasing_f(n), transition(kLevelF, kLevelF));
  return ops;
}

void DispersiveSystemParams::validate() const {
  if (fock_levels < 3) throw ValidationError("DispersiveSystemParams: fock_levels must be >= 3");
  if (!std::isfinite(chi_ge) || !std::isfinite(chi_ef)) {
    throw ValidationError("DispersiveSystemParams: dispersive shifts must be finite");
  }
}

ComplexMatrix dispersive_shift(const DispersiveSystemParams& p) {
  p.validate();
  ComplexMatrix d = ComplexMatrix::Zero(p.dim(), p.dim());
  for (int n = 0; n < p.fock_levels; ++n) {
    d(3 * n + kLevelE, 3 * n + kLevelE) = -p.chi_ge * n;
    d(3 * n + kLevelF, 3 * n + kLevelF) = -(p.chi_ge + p.chi_ef) * n;
  }
  return d;
}

ComplexMatrix dispersive_hamiltonian(const DispersiveSystemParams& p, const QutritDriveParams& drive) {
  return dispersive_shift(p) + embed_qutrit(qutrit_hamiltonian(drive), p.fock_levels);
}

ComplexMatrix embed_qutrit(const ComplexMatrix& op, int fock_levels) {
  return qmath::tensor(ComplexMatrix::Identity(fock_levels, fock_levels), op);
}

ComplexMatrix cavity_lowering(int fock_levels) {
  ComplexMatrix a = ComplexMatrix::Zero(fock_levels, fock_levels);
  for (int n = 1; n < fock_levels; ++n) a(n - 1, n) = std::sqrt(static_cast<double>(n));
  return qmath::tensor(a, ComplexMatrix::Identity(3, 3));
}

std::vector<ComplexMatrix> cavity_collapse_operators(double t1_us, double t2_star_us, int fock_levels) {
  if (!(t1_us > 0.0) || !(t2_star_us > 0.0)) {
    throw ValidationError("cavity_collapse_operators: times must be positive");
  }
  const double kappa = kPerMicrosecondToPerNs / t1_us;
  const double kappa_phi = std::max(kPerMicrosecondToPerNs / t2_star_us - kappa / 2, 0.0);
  const ComplexMatrix a = cavity_lowering(fock_levels);
  std::vector<ComplexMatrix> ops{std::sqrt(kappa) * a};
  if (kappa_phi > 0.0) ops.push_back(std::sqrt(2.0 * kappa_phi) * (a.adjoint() * a));
  return ops;
}

}  // namespace hlab
