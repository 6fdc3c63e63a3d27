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
#include <sstream>

#include "hlab/holonomy.hpp"

using namespace hlab;

namespace {

std::vector<double> grid(double a, double b, int n) {
  std::vector<double> v;
  for (int i = 0; i < n; ++i) v.push_back(a + (b - a) * i / (n - 1));
  return v;
}

}  // namespace

TEST_CASE("every scheme synthesizes the target rotation") {
  for (Scheme sc : {Scheme::kSrNhqc, Scheme::kNhqc, Scheme::kDynamical}) {
    for (const GateSpec& g : {GateSpec{kPi / 2, 0.0, kPi}, GateSpec{0.3, 1.1, 0.7}, GateSpec{2.5, -2.0, -1.2},
                              GateSpec{0.0, 0.0, 2.0}, GateSpec{kPi, 0.5, -kPi}}) {
      CHECK(1.0 - simulated_fidelity(build_schedule(sc, g, default_tau(sc)), 0.0) < 1e-6);
    }
  }
}

TEST_CASE("holonomic gates leave the dark state alone") {
  const GateSpec g{1.1, 0.4, 2.3};
  const BrightFrame f = bright_frame(g.theta, g.phi);
  for (Scheme sc : {Scheme::kSrNhqc, Scheme::kNhqc}) {
    const ComplexMatrix u = gate_propagator(build_schedule(sc, g, default_tau(sc)), f);
    CHECK((u * f.dark - f.dark).norm() < 1e-12);
    CHECK(std::abs(f.bright.dot(u * f.bright) - std::exp(kI * g.gamma)) < 1e-12);
  }
}

TEST_CASE("closed-form fidelity agrees with the closed-form gate") {
  for (double gamma : {0.4, kPi / 2, kPi}) {
    for (double eps : {-0.2, -0.05, 0.1, 0.2}) {
      const GateSpec g{kPi / 2, 0.3, gamma};
      const double f = qmath::unitary_fidelity(analytic_noisy_gate(g, eps), g.target());
      CHECK(f == doctest::Approx(analytic_fidelity(gamma, eps)).epsilon(1e-14));
      const cplx x = perturbed_bright_factor(gamma, eps);
      CHECK(std::abs(1.0 + x * std::exp(-kI * gamma)) / 2.0 == doctest::Approx(f).epsilon(1e-14));
    }
  }
  CHECK(analytic_fidelity(kPi, 0.0) == 1.0);
  CHECK(analytic_fidelity(kPi, 0.1) == doctest::Approx(0.9994011338507084).epsilon(1e-14));
  CHECK(qmath::unitary_fidelity(analytic_noisy_gate(GateSpec{0.7, 0.2, 1.9}, 0.0), GateSpec{0.7, 0.2, 1.9}.target()) ==
        doctest::Approx(1.0));
}

TEST_CASE("superrobust gate follows the analytic law") {
  const auto pts = robustness_sweep(GateSpec::named("X"), Scheme::kSrNhqc, grid(-0.2, 0.2, 41), kDefaultTauSr);
  REQUIRE(pts.size() == 41);
  for (const auto& p : pts) CHECK(std::abs(p.f_sim - p.f_analytic) < 1e-3);
  CHECK(pts[30].epsilon == doctest::Approx(0.1));
  CHECK(pts[30].f_sim == doctest::Approx(0.99940).epsilon(1e-3));
  CHECK_THROWS_AS(robustness_sweep(GateSpec::named("X"), Scheme::kSrNhqc, {0.3}, kDefaultTauSr), ValidationError);
}

TEST_CASE("error-scaling exponents") {
  const auto eps = grid(0.02, 0.1, 9);
  const double sr = fit_loglog_slope(robustness_sweep(GateSpec::named("X"), Scheme::kSrNhqc, eps, 120.0), 0.02, 0.1);
  const double nh = fit_loglog_slope(robustness_sweep(GateSpec::named("X"), Scheme::kNhqc, eps, 60.0), 0.02, 0.1);
  const double dy = fit_loglog_slope(robustness_sweep(GateSpec::named("X"), Scheme::kDynamical, eps, 105.0), 0.02, 0.1);
  CHECK(sr == doctest::Approx(4.0).epsilon(0.05));
  CHECK(nh == doctest::Approx(2.0).epsilon(0.1));
  CHECK(dy == doctest::Approx(2.0).epsilon(0.1));
}

TEST_CASE("log-log slope of a pure power law") {
  std::vector<SweepPoint> pts;
  for (double e : grid(0.01, 0.2, 12)) pts.push_back({e, 1.0 - 3.0 * std::pow(e, 3), 1.0});
  CHECK(fit_loglog_slope(pts, 0.0, 1.0) == doctest::Approx(3.0).epsilon(1e-12));
  CHECK_THROWS_AS(fit_loglog_slope(pts, 0.5, 1.0), NumericalError);
}

TEST_CASE("dynamical phases of the three constructions") {
  const GateSpec x = GateSpec::named("X");
  const BrightFrame f = bright_frame(x.theta, x.phi);

  const PhaseRecord sr = phase_record(build_sr_nhqc(x), f);
  CHECK(std::abs(sr.D11) < 0.01 * kPi);
  CHECK(std::abs(sr.D22) < 0.01 * kPi);
  CHECK(std::abs(sr.D12) < 0.01 * kPi);

  const PhaseRecord nh = phase_record(build_nhqc(x), f);
  CHECK(std::abs(std::abs(nh.D12) - kPi) < 0.1 * kPi);

  const PhaseRecord dy = phase_record(build_dynamical(x), f);
  // Frozen values of this construction.
  CHECK(dy.D11 / kPi == doctest::Approx(0.75).epsilon(1e-6));
  CHECK(dy.D22 / kPi == doctest::Approx(-0.75).epsilon(1e-6));
  CHECK(std::abs(dy.D12) / kPi == doctest::Approx(2.0 / kPi).epsilon(1e-5));

  for (const PhaseRecord* r : {&sr, &nh, &dy}) {
    CHECK(r->path_discrepancy < 1e-8);
    CHECK(r->dark_coupling < 1e-12);
    CHECK(std::abs(r->D11 - r->D11_rho) < 1e-8);
    CHECK(std::abs(r->D22 - r->D22_rho) < 1e-8);
    CHECK(std::abs(r->D12 - r->D12_rho) < 1e-8);
  }
  std::ostringstream os;
  sr.write_csv(os);
  CHECK(os.str().rfind("t_ns,d11,d22,Re_d12,Im_d12\n", 0) == 0);
}

TEST_CASE("bright element matches the perturbative factor") {
  const GateSpec x = GateSpec::named("X");
  const PulseSchedule s = build_sr_nhqc(x);
  const BrightFrame f = bright_frame(x.theta, x.phi);
  for (double eps : {0.05, 0.1, 0.15}) {
    CHECK(std::abs(bright_element(s, f, eps) - perturbed_bright_factor(x.gamma, eps)) < 1e-3);
  }
  CHECK(bright_element(s, f, 0.1).real() == doctest::Approx(-0.998802).epsilon(1e-5));
}

TEST_CASE("perturbative series converges order by order") {
  const GateSpec x = GateSpec::named("X");
  const auto dev = perturbative_deviations(build_sr_nhqc(x), bright_frame(x.theta, x.phi), 0.1, 6);
  REQUIRE(dev.size() == 6);
  for (std::size_t k = 1; k < dev.size(); ++k) CHECK(dev[k] < dev[k - 1]);
  CHECK(dev.back() < 1e-5);
  CHECK_THROWS_AS(perturbative_deviations(build_sr_nhqc(x), bright_frame(x.theta, x.phi), 0.1, 7), ValidationError);
}
