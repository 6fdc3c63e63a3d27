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

#include "hlab/evolve.hpp"

#include <cmath>
#include <iomanip>
#include <ostream>

namespace hlab {

namespace {

// Gauss-Legendre nodes on [0, 1].
const double kGaussOffset = std::sqrt(3.0) / 6.0;

void require_step(double step) {
  if (!std::isfinite(step) || !(step > 0.0)) throw ValidationError("time step must be finite and > 0");
}

std::array<double, 3> diag_populations(const ComplexMatrix& rho) {
  return {rho(kLevelG, kLevelG).real(), rho(kLevelE, kLevelE).real(), rho(kLevelF, kLevelF).real()};
}

// Walks every sub-step of the schedule: fn(seg, t_local, h, t_global_end).
template <typename Fn>
void for_each_step(const PulseSchedule& s, double step, Fn&& fn) {
  require_step(step);
  double t0 = 0.0;
  for (std::size_t i = 0; i < s.segments.size(); ++i) {
    const double dur = s.segments[i].duration;
    const int n = steps_for(dur, step);
    const double h = dur / n;
    for (int k = 0; k < n; ++k) fn(static_cast<int>(i), k * h, h, t0 + (k + 1) * h);
    t0 += dur;
  }
}

}  // namespace

int steps_for(double duration, double step) {
  require_step(step);
  if (!(duration > 0.0)) return 0;
  return std::max(1, static_cast<int>(std::ceil(duration / step - 1e-9)));
}

void EvolutionTrace::write_csv(std::ostream& os) const {
  os << "t_ns,P_g,P_e,P_f\n" << std::setprecision(12);
  for (std::size_t i = 0; i < times.size() && i < populations.size(); ++i) {
    os << times[i] << ',' << populations[i][0] << ',' << populations[i][1] << ',' << populations[i][2] << '\n';
  }
}

SegmentHamiltonian qutrit_drive(const PulseSchedule& s, const BrightFrame& frame) {
  return [s, frame](int seg, double t) {
    const DriveSample d = s.sample(seg, t);
    return qutrit_hamiltonian(drive_from_bright(frame, d.omega, d.phi1));
  };
}

ComplexMatrix magnus4_step(const ComplexMatrix& h1, const ComplexMatrix& h2, double h) {
  // Omega = -i h/2 (H1 + H2) - (sqrt(3)/12) h^2 [H2, H1]
  const ComplexMatrix gen =
      (-kI * (h / 2.0)) * (h1 + h2) - (std::sqrt(3.0) / 12.0 * h * h) * qmath::commutator(h2, h1);
  return qmath::matrix_exp(gen);
}

ComplexMatrix evolve_unitary(const PulseSchedule& s, const SegmentHamiltonian& ham, Eigen::Index dim, double step,
                             const StepObserver& observer) {
  ComplexMatrix u = ComplexMatrix::Identity(dim, dim);
  for_each_step(s, step, [&](int seg, double t, double h, double t_end) {
    const ComplexMatrix h1 = ham(seg, t + (0.5 - kGaussOffset) * h);
    const ComplexMatrix h2 = ham(seg, t + (0.5 + kGaussOffset) * h);
    u = magnus4_step(h1, h2, h) * u;
    if (observer) observer(t_end, u);
  });
  if (!qmath::all_finite(u)) throw NumericalError("evolve_unitary: non-finite propagator");
  return u;
}

ComplexMatrix lindblad_rhs(const ComplexMatrix& h, const std::vector<ComplexMatrix>& ops, const ComplexMatrix& rho) {
  ComplexMatrix out = -kI * (h * rho - rho * h);
  for (const auto& l : ops) {
    const ComplexMatrix ld = l.adjoint();
    const ComplexMatrix ldl = ld * l;
    out += l * rho * ld - 0.5 * (ldl * rho + rho * ldl);
  }
  return out;
}

ComplexMatrix evolve_density(const PulseSchedule& s, const SegmentHamiltonian& ham,
                             const std::vector<ComplexMatrix>& ops, const ComplexMatrix& rho0, double step,
                             const StepObserver& observer) {
  ComplexMatrix rho = rho0;
  const cplx tr0 = rho0.trace();
  for_each_step(s, step, [&](int seg, double t, double h, double t_end) {
    const ComplexMatrix h0 = ham(seg, t);
    const ComplexMatrix hm = ham(seg, t + h / 2);
    const ComplexMatrix h1 = ham(seg, t + h);
    const ComplexMatrix k1 = lindblad_rhs(h0, ops, rho);
    const ComplexMatrix k2 = lindblad_rhs(hm, ops, rho + (h / 2) * k1);
    const ComplexMatrix k3 = lindblad_rhs(hm, ops, rho + (h / 2) * k2);
    const ComplexMatrix k4 = lindblad_rhs(h1, ops, rho + h * k3);
    rho += (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
    if (observer) observer(t_end, rho);
  });
  if (!qmath::all_finite(rho)) throw NumericalError("evolve_density: non-finite state");
  if (std::abs(rho.trace() - tr0) > kTraceDriftLimit) {
    throw NumericalError("evolve_density: trace drift exceeds limit; reduce the time step");
  }
  return rho;
}

ComplexMatrix liouvillian(const ComplexMatrix& h, const std::vector<ComplexMatrix>& ops) {
  const Eigen::Index d = h.rows();
  const ComplexMatrix id = ComplexMatrix::Identity(d, d);
  ComplexMatrix l = -kI * (qmath::tensor(id, h) - qmath::tensor(h.transpose(), id));
  for (const auto& op : ops) {
    const ComplexMatrix ldl = op.adjoint() * op;
    l += qmath::tensor(op.conjugate(), op) - 0.5 * qmath::tensor(id, ldl) - 0.5 * qmath::tensor(ldl.transpose(), id);
  }
  return l;
}

ComplexMatrix evolve_channel(const PulseSchedule& s, const SegmentHamiltonian& ham,
                             const std::vector<ComplexMatrix>& ops, Eigen::Index dim, double step) {
  const Eigen::Index d2 = dim * dim;
  ComplexMatrix sup = ComplexMatrix::Identity(d2, d2);
  for_each_step(s, step, [&](int seg, double t, double h, double) {
    const ComplexMatrix l0 = liouvillian(ham(seg, t), ops);
    const ComplexMatrix lm = liouvillian(ham(seg, t + h / 2), ops);
    const ComplexMatrix l1 = liouvillian(ham(seg, t + h), ops);
    const ComplexMatrix k1 = l0 * sup;
    const ComplexMatrix k2 = lm * (sup + (h / 2) * k1);
    const ComplexMatrix k3 = lm * (sup + (h / 2) * k2);
    const ComplexMatrix k4 = l1 * (sup + h * k3);
    sup += (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
  });
  if (!qmath::all_finite(sup)) throw NumericalError("evolve_channel: non-finite superoperator");
  return sup;
}

ComplexMatrix idle_channel(const std::vector<ComplexMatrix>& ops, Eigen::Index dim, double duration, double step) {
  require_step(step);
  if (duration < 0.0) throw ValidationError("idle_channel: negative duration");
  if (duration == 0.0 || ops.empty()) return ComplexMatrix::Identity(dim * dim, dim * dim);
  // Time-independent generator: the exponential is exact.
  return qmath::matrix_exp(liouvillian(ComplexMatrix::Zero(dim, dim), ops) * duration);
}

ComplexMatrix apply_channel(const ComplexMatrix& superop, const ComplexMatrix& rho) {
  if (superop.rows() != rho.size()) throw ValidationError("apply_channel: dimension mismatch");
  return qmath::unvec(superop * qmath::vec(rho), rho.rows());
}

ComplexMatrix unitary_channel(const ComplexMatrix& u) { return qmath::tensor(u.conjugate(), u); }

EvolutionTrace propagate_unitary(const PulseSchedule& s, const BrightFrame& frame, double step,
                                 const std::optional<Ket>& initial) {
  const Ket psi0 = initial ? qmath::normalize(*initial) : qmath::basis_ket(3, kLevelG);
  EvolutionTrace tr;
  auto record = [&](double t, const ComplexMatrix& u) {
    tr.times.push_back(t);
    tr.unitaries.push_back(u);
    const Ket psi = u * psi0;
    tr.populations.push_back({std::norm(psi(0)), std::norm(psi(1)), std::norm(psi(2))});
  };
  record(0.0, ComplexMatrix::Identity(3, 3));
  evolve_unitary(s, qutrit_drive(s, frame), 3, step, record);
  return tr;
}

EvolutionTrace propagate_lindblad(const PulseSchedule& s, const BrightFrame& frame, const NoiseModel& noise,
                                  const DensityMatrix& rho0, double step) {
  noise.validate();
  const PulseSchedule scaled = apply_rabi_error(s, noise.epsilon);
  EvolutionTrace tr;
  auto record = [&](double t, const ComplexMatrix& rho) {
    tr.times.push_back(t);
    tr.states.push_back(DensityMatrix::from_matrix(rho));
    tr.populations.push_back(diag_populations(rho));
  };
  record(0.0, rho0.matrix());
  evolve_density(scaled, qutrit_drive(scaled, frame), collapse_operators(noise), rho0.matrix(), step, record);
  return tr;
}

ComplexMatrix gate_propagator(const PulseSchedule& s, const BrightFrame& frame, double step) {
  return evolve_unitary(s, qutrit_drive(s, frame), 3, step);
}

ComplexMatrix gate_channel(const PulseSchedule& s, const BrightFrame& frame, const NoiseModel& noise, double step) {
  noise.validate();
  const PulseSchedule scaled = apply_rabi_error(s, noise.epsilon);
  return evolve_channel(scaled, qutrit_drive(scaled, frame), collapse_operators(noise), 3, step);
}

ComplexMatrix computational_block(const ComplexMatrix& u) {
  if (u.rows() != 3 || u.cols() != 3) throw ValidationError("computational_block: expected a 3x3 operator");
  ComplexMatrix w(2, 2);
  w << u(kLevelG, kLevelG), u(kLevelG, kLevelF), u(kLevelF, kLevelG), u(kLevelF, kLevelF);
  return w;
}

}  // namespace hlab
