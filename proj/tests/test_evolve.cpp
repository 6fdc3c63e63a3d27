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

#include <doctest.h>

#include <cmath>
#include <random>
#include <sstream>

#include "hlab/evolve.hpp"

using namespace hlab;

namespace {

ComplexMatrix random_density(std::mt19937_64& rng, Eigen::Index n) {
  std::normal_distribution<double> g(0.0, 1.0);
  ComplexMatrix a(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j < n; ++j) a(i, j) = cplx(g(rng), g(rng));
  }
  ComplexMatrix rho = a * a.adjoint();
  return rho / rho.trace();
}

PulseSchedule idle_schedule(double duration) {
  PulseSchedule s;
  s.tau = duration;
  s.segments = {{0.0, 0.0, duration, Envelope::kSquare}};
  return s;
}

}  // namespace

TEST_CASE("steps_for") {
  CHECK(steps_for(15.0, 0.05) == 300);
  CHECK(steps_for(15.01, 0.05) == 301);
  CHECK_THROWS_AS(steps_for(15.0, 0.0), ValidationError);
}

TEST_CASE("Magnus propagator is unitary and converges with the step") {
  const GateSpec g{0.9, 0.4, 1.7};
  const PulseSchedule s = build_sr_nhqc(g);
  const BrightFrame f = bright_frame(g.theta, g.phi);
  const ComplexMatrix u1 = gate_propagator(s, f, 0.05);
  const ComplexMatrix u2 = gate_propagator(s, f, 0.025);
  CHECK(qmath::unitarity_error(u1) < 1e-12);
  CHECK((u1 - u2).norm() < 1e-8);
  const PulseSchedule d = build_dynamical(g);
  CHECK((gate_propagator(d, f, 0.05) - gate_propagator(d, f, 0.025)).norm() < 1e-8);
}

TEST_CASE("RK4 master equation without noise matches the Magnus propagator") {
  const GateSpec g = GateSpec::named("Y/2");
  const PulseSchedule s = build_sr_nhqc(g);
  const BrightFrame f = bright_frame(g.theta, g.phi);
  std::mt19937_64 rng(1);
  const ComplexMatrix rho0 = random_density(rng, 3);
  const ComplexMatrix u = gate_propagator(s, f);
  const ComplexMatrix rho = evolve_density(s, qutrit_drive(s, f), {}, rho0, 0.05);
  CHECK((rho - u * rho0 * u.adjoint()).norm() < 1e-8);
}

TEST_CASE("Liouvillian matches the master-equation right-hand side") {
  std::mt19937_64 rng(7);
  const ComplexMatrix rho = random_density(rng, 3);
  const ComplexMatrix h = qutrit_hamiltonian(drive_from_bright(bright_frame(0.3, 0.8), 0.2, 0.6));
  const auto ops = collapse_operators(NoiseModel::device_defaults());
  const Eigen::VectorXcd lhs = liouvillian(h, ops) * qmath::vec(rho);
  CHECK((lhs - qmath::vec(lindblad_rhs(h, ops, rho))).norm() < 1e-15);
}

TEST_CASE("channel and density propagation agree") {
  const GateSpec g = GateSpec::named("X");
  const PulseSchedule s = build_sr_nhqc(g);
  const BrightFrame f = bright_frame(g.theta, g.phi);
  const NoiseModel n = NoiseModel::device_defaults();
  std::mt19937_64 rng(3);
  const ComplexMatrix rho0 = random_density(rng, 3);
  const ComplexMatrix sup = gate_channel(s, f, n);
  const ComplexMatrix rho = evolve_density(s, qutrit_drive(s, f), collapse_operators(n), rho0, kDefaultStep);
  CHECK((apply_channel(sup, rho0) - rho).norm() < 1e-12);
  CHECK(std::abs(apply_channel(sup, rho0).trace() - cplx(1.0)) < 1e-10);
}

TEST_CASE("free decay follows the rate equations") {
  NoiseModel n;
  n.gamma_ge = 1.0 / 18.9;
  const auto ops = collapse_operators(n);
  ComplexMatrix rho = ComplexMatrix::Zero(3, 3);
  rho(kLevelE, kLevelE) = 1.0;
  const double t = 5000.0;
  const double want = std::exp(-t * 1e-3 / 18.9);
  CHECK(apply_channel(idle_channel(ops, 3, t, kDefaultStep), rho)(kLevelE, kLevelE).real() ==
        doctest::Approx(want).epsilon(1e-12));
  const PulseSchedule idle = idle_schedule(t);
  const ComplexMatrix h0 = ComplexMatrix::Zero(3, 3);
  const ComplexMatrix out = evolve_density(idle, [&](int, double) { return h0; }, ops, rho, 1.0);
  CHECK(out(kLevelE, kLevelE).real() == doctest::Approx(want).epsilon(1e-10));
  CHECK(idle_channel({}, 3, t, kDefaultStep) == ComplexMatrix::Identity(9, 9));
}

TEST_CASE("runaway integration is reported") {
  const PulseSchedule idle = idle_schedule(100.0);
  ComplexMatrix l = ComplexMatrix::Zero(3, 3);
  l(kLevelG, kLevelE) = 3.0;
  ComplexMatrix rho = ComplexMatrix::Zero(3, 3);
  rho(kLevelE, kLevelE) = 1.0;
  const ComplexMatrix h0 = ComplexMatrix::Zero(3, 3);
  CHECK_THROWS_AS(evolve_density(idle, [&](int, double) { return h0; }, {l}, rho, 5.0), NumericalError);
}

TEST_CASE("Lindblad trace keeps valid density matrices") {
  const GateSpec g = GateSpec::named("X/2");
  const auto rho0 = DensityMatrix::pure(qmath::basis_ket(3, kLevelG));
  NoiseModel n = NoiseModel::device_defaults();
  n.epsilon = 0.05;
  const EvolutionTrace tr = propagate_lindblad(build_sr_nhqc(g), bright_frame(g.theta, g.phi), n, rho0);
  CHECK(tr.times.size() == tr.states.size());
  CHECK(tr.times.back() == doctest::Approx(120.0));
  for (const auto& p : tr.populations) CHECK(p[0] + p[1] + p[2] == doctest::Approx(1.0).epsilon(1e-9));
}

TEST_CASE("closed-system trace") {
  const GateSpec g = GateSpec::named("X");
  const EvolutionTrace tr = propagate_unitary(build_sr_nhqc(g), bright_frame(g.theta, g.phi));
  CHECK(tr.populations.front()[0] == 1.0);
  CHECK(tr.populations.back()[2] == doctest::Approx(1.0).epsilon(1e-12));
  std::ostringstream os;
  tr.write_csv(os);
  CHECK(os.str().rfind("t_ns,P_g,P_e,P_f\n", 0) == 0);
}

TEST_CASE("unitary channel and computational block") {
  const ComplexMatrix u = gate_propagator(build_nhqc(GateSpec::named("Y")), bright_frame(kPi / 2, kPi / 2));
  std::mt19937_64 rng(5);
  const ComplexMatrix rho = random_density(rng, 3);
  CHECK((apply_channel(unitary_channel(u), rho) - u * rho * u.adjoint()).norm() < 1e-14);
  CHECK(qmath::unitary_fidelity(computational_block(u), GateSpec::named("Y").target()) ==
        doctest::Approx(1.0).epsilon(1e-12));
  CHECK_THROWS_AS(computational_block(ComplexMatrix::Identity(2, 2)), ValidationError);
}
