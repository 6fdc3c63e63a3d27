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

#include "hlab/twoqubit.hpp"

#include <cmath>
#include <iomanip>
#include <ostream>
#include <sstream>

#include "hlab/parallel.hpp"

namespace hlab {

namespace {

constexpr int kComputationalFock[2] = {0, 2};

char level_name(Eigen::Index level) { return "gef"[level]; }

// exp(-i a/2 (cos(p) sx + sin(p) sy)) between two flat indices.
ComplexMatrix pair_rotation(Eigen::Index dim, Eigen::Index lo, Eigen::Index hi, double angle, double axis) {
  ComplexMatrix u = ComplexMatrix::Identity(dim, dim);
  const double c = std::cos(angle / 2);
  const double s = std::sin(angle / 2);
  u(lo, lo) = c;
  u(hi, hi) = c;
  u(lo, hi) = -kI * s * std::exp(-kI * axis);
  u(hi, lo) = -kI * s * std::exp(kI * axis);
  return u;
}

// Effective resonant coupling |lo> <-> |hi> driven by a cosine pi pulse.
ComplexMatrix raman_pi(Eigen::Index dim, Eigen::Index lo, Eigen::Index hi, double duration) {
  PulseSchedule s;
  s.tau = duration;
  s.segments = {{kPi, 0.0, duration, Envelope::kCosine}};
  const SegmentHamiltonian ham = [&](int seg, double t) {
    const DriveSample d = s.sample(seg, t);
    ComplexMatrix h = ComplexMatrix::Zero(dim, dim);
    h(lo, hi) = 0.5 * d.omega * std::exp(kI * d.phi1);
    h(hi, lo) = std::conj(h(lo, hi));
    return h;
  };
  return evolve_unitary(s, ham, dim, kDefaultStep);
}

void require_epsilon(double eps) {
  if (!(std::abs(eps) <= 0.2)) throw ValidationError("epsilon must lie in [-0.2, 0.2]");
}

ComplexMatrix propagate(const PulseSchedule& s, const DispersiveSystemParams& params, double step) {
  const BrightFrame frame = bright_frame(s.gate.theta, s.gate.phi);
  return evolve_unitary(s, dispersive_drive(s, frame, params), params.dim(), step);
}

// Undo the phase every n > 0 level picks up, using the error-free run. Levels
// that are driven away (no diagonal weight) fall back to the bare dispersive
// phase.
ComplexMatrix calibrate_frame(const ComplexMatrix& u0, const DispersiveSystemParams& params, double tau) {
  const ComplexMatrix shift = dispersive_shift(params);
  ComplexMatrix f = ComplexMatrix::Identity(u0.rows(), u0.cols());
  for (Eigen::Index i = 3; i < u0.rows(); ++i) {
    const cplx d = u0(i, i);
    f(i, i) = std::abs(d) > 0.5 ? std::exp(-kI * std::arg(d)) : std::exp(kI * shift(i, i).real() * tau);
  }
  return f;
}

double max_leakage(const ComplexMatrix& u) {
  const auto sub = two_qubit_subspace();
  double worst = 0.0;
  for (Eigen::Index c : sub) {
    double kept = 0.0;
    for (Eigen::Index r : sub) kept += std::norm(u(r, c));
    worst = std::max(worst, 1.0 - kept);
  }
  return worst;
}

}  // namespace

std::string two_qubit_label(Eigen::Index index) {
  if (index < 0) throw ValidationError("two_qubit_label: negative index");
  std::ostringstream os;
  os << '|' << index / 3 << ',' << level_name(index % 3) << '>';
  return os.str();
}

std::vector<Eigen::Index> two_qubit_subspace() {
  std::vector<Eigen::Index> out;
  for (int n : kComputationalFock) {
    out.push_back(two_qubit_index(n, kLevelG));
    out.push_back(two_qubit_index(n, kLevelF));
  }
  return out;
}

double default_two_qubit_tau(Scheme s) { return 23.0 * default_tau(s); }

ComplexMatrix two_qubit_target(const GateSpec& g) {
  ComplexMatrix t = ComplexMatrix::Identity(4, 4);
  t.topLeftCorner(2, 2) = std::exp(kI * (g.gamma / 2)) * g.target();
  return t;
}

double TwoQubitState::population(int n, Eigen::Index level) const {
  if (n < 0 || n >= fock_levels) throw ValidationError("TwoQubitState: photon number out of range");
  return std::norm(ket(two_qubit_index(n, level)));
}

nlohmann::ordered_json TwoQubitState::to_json() const {
  nlohmann::ordered_json j;
  j["fock_levels"] = fock_levels;
  nlohmann::ordered_json amps = nlohmann::ordered_json::object();
  for (Eigen::Index i = 0; i < ket.size(); ++i) {
    if (std::abs(ket(i)) < 1e-12) continue;
    amps[two_qubit_label(i)] = {ket(i).real(), ket(i).imag()};
  }
  j["amplitudes"] = amps;
  return j;
}

ComplexMatrix TwoQubitGate::computational_block() const {
  const auto sub = two_qubit_subspace();
  const ComplexMatrix u = corrected();
  ComplexMatrix b(4, 4);
  for (int r = 0; r < 4; ++r) {
    for (int c = 0; c < 4; ++c) b(r, c) = u(sub[r], sub[c]);
  }
  return b;
}

double TwoQubitGate::fidelity_to_target() const {
  return std::abs((computational_block() * two_qubit_target(schedule.gate).adjoint()).trace()) / 4.0;
}

SegmentHamiltonian dispersive_drive(const PulseSchedule& s, const BrightFrame& frame,
                                    const DispersiveSystemParams& params) {
  params.validate();
  const SegmentHamiltonian qutrit = qutrit_drive(s, frame);
  const ComplexMatrix shift = dispersive_shift(params);
  const int n = params.fock_levels;
  return [qutrit, shift, n](int seg, double t) -> ComplexMatrix { return shift + embed_qutrit(qutrit(seg, t), n); };
}

TwoQubitGate build_two_qubit_gate(const GateSpec& g, Scheme scheme, double tau, const DispersiveSystemParams& params,
                                  double epsilon, double step) {
  params.validate();
  require_epsilon(epsilon);
  if (params.fock_levels < 3) throw ValidationError("build_two_qubit_gate: need at least 3 Fock levels");
  TwoQubitGate out;
  out.params = params;
  const PulseSchedule ideal = build_schedule(scheme, g, tau);
  const ComplexMatrix u0 = propagate(ideal, params, step);
  out.frame = calibrate_frame(u0, params, tau);
  if (epsilon == 0.0) {
    out.schedule = ideal;
    out.propagator = u0;
  } else {
    out.schedule = apply_rabi_error(ideal, epsilon);
    out.propagator = propagate(out.schedule, params, step);
  }
  out.leakage = max_leakage(out.propagator);
  if (out.leakage > kLeakageWarning) {
    std::ostringstream os;
    os << "leakage out of the computational space " << out.leakage << " exceeds " << kLeakageWarning;
    out.warnings.push_back(os.str());
  }
  return out;
}

FockTarget fock_target_from_string(const std::string& s) {
  if (s == "0") return FockTarget::kZero;
  if (s == "2") return FockTarget::kTwo;
  if (s == "0+2") return FockTarget::kSuperposition;
  throw ValidationError("unknown Fock target '" + s + "' (expected 0, 2 or 0+2)");
}

TwoQubitState prepare_fock(FockTarget target, int fock_levels, double raman_duration) {
  if (fock_levels < 3) throw ValidationError("prepare_fock: need at least 3 Fock levels");
  if (!(raman_duration > 0.0)) throw ValidationError("prepare_fock: Raman duration must be positive");
  const Eigen::Index dim = 3 * static_cast<Eigen::Index>(fock_levels);
  TwoQubitState st;
  st.fock_levels = fock_levels;
  st.ket = qmath::basis_ket(dim, two_qubit_index(0, kLevelG));
  if (target == FockTarget::kZero) return st;

  const double first = target == FockTarget::kSuperposition ? kPi / 2 : kPi;
  for (int n = 0; n < 2; ++n) {
    const double ge = n == 0 ? first : kPi;
    st.ket = pair_rotation(dim, two_qubit_index(n, kLevelG), two_qubit_index(n, kLevelE), ge, 0.0) * st.ket;
    st.ket = pair_rotation(dim, two_qubit_index(n, kLevelE), two_qubit_index(n, kLevelF), kPi, 0.0) * st.ket;
    st.ket = raman_pi(dim, two_qubit_index(n, kLevelF), two_qubit_index(n + 1, kLevelG), raman_duration) * st.ket;
  }
  if (target == FockTarget::kSuperposition) {
    // Virtual Z on the n = 2 component to make the relative phase real.
    const Eigen::Index a = two_qubit_index(0, kLevelG);
    const Eigen::Index b = two_qubit_index(2, kLevelG);
    const cplx rel = st.ket(b) * std::conj(st.ket(a));
    if (std::abs(rel) > 0.0) st.ket(b) *= std::exp(-kI * std::arg(rel));
  }
  return st;
}

std::vector<CnotPoint> cnot_robustness(const std::vector<double>& epsilons, Scheme scheme,
                                       const DispersiveSystemParams& params, double tau, double step) {
  params.validate();
  for (double e : epsilons) require_epsilon(e);
  const PulseSchedule ideal = build_schedule(scheme, GateSpec::named("X"), tau);
  const Ket in = qmath::basis_ket(params.dim(), two_qubit_index(0, kLevelF));
  return parallel_map(epsilons, [&](double eps) {
    const Ket out = propagate(apply_rabi_error(ideal, eps), params, step) * in;
    CnotPoint p;
    p.epsilon = eps;
    for (int n = 0; n < params.fock_levels; ++n) {
      p.p_g += std::norm(out(two_qubit_index(n, kLevelG)));
      p.p_e += std::norm(out(two_qubit_index(n, kLevelE)));
      p.p_f += std::norm(out(two_qubit_index(n, kLevelF)));
    }
    return p;
  });
}

void write_cnot_csv(std::ostream& os, const std::vector<CnotPoint>& pts) {
  os << "epsilon,P_g,P_e,P_f\n" << std::setprecision(12);
  for (const auto& p : pts) os << p.epsilon << ',' << p.p_g << ',' << p.p_e << ',' << p.p_f << '\n';
}

CnotDecoherence cnot_decoherence(Scheme scheme, const NoiseModel& noise, const DispersiveSystemParams& params,
                                 double tau, double cavity_t1_us, double cavity_t2_star_us, double step) {
  noise.validate();
  const TwoQubitGate ideal = build_two_qubit_gate(GateSpec::named("X"), scheme, tau, params, 0.0, step);
  const PulseSchedule s = apply_rabi_error(ideal.schedule, noise.epsilon);
  const BrightFrame frame = bright_frame(s.gate.theta, s.gate.phi);

  std::vector<ComplexMatrix> ops;
  for (const auto& l : collapse_operators(noise)) ops.push_back(embed_qutrit(l, params.fock_levels));
  for (auto& l : cavity_collapse_operators(cavity_t1_us, cavity_t2_star_us, params.fock_levels)) {
    ops.push_back(std::move(l));
  }
  const SegmentHamiltonian ham = dispersive_drive(s, frame, params);
  const ComplexMatrix target = ideal.corrected();

  const std::vector<Eigen::Index> inputs{two_qubit_index(0, kLevelF), two_qubit_index(2, kLevelG)};
  const std::vector<double> fid = parallel_map(inputs, [&](Eigen::Index i) {
    const Ket in = qmath::basis_ket(params.dim(), i);
    const ComplexMatrix rho = evolve_density(s, ham, ops, qmath::projector(in), step);
    const ComplexMatrix rho_f = ideal.frame * rho * ideal.frame.adjoint();
    const Ket psi = target * in;
    return (psi.adjoint() * rho_f * psi)(0, 0).real();
  });
  CnotDecoherence out;
  out.fidelity_0f = fid[0];
  out.fidelity_2g = fid[1];
  out.mean = 0.5 * (fid[0] + fid[1]);
  return out;
}

}  // namespace hlab
