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

#include "hlab/pulses.hpp"

using namespace hlab;

namespace {

// Composite Gauss-Legendre (5 nodes) quadrature of the segment envelope.
double integrate_segment(const PulseSchedule& s, int seg, int panels = 64) {
  static const double x[5] = {0.0, -0.5384693101056831, 0.5384693101056831, -0.9061798459386640,
                              0.9061798459386640};
  static const double w[5] = {0.5688888888888889, 0.4786286704993665, 0.4786286704993665, 0.2369268850561891,
                              0.2369268850561891};
  const double T = s.segments[seg].duration;
  const double h = T / panels;
  double acc = 0.0;
  for (int p = 0; p < panels; ++p) {
    const double mid = (p + 0.5) * h;
    for (int k = 0; k < 5; ++k) acc += w[k] * s.sample(seg, mid + 0.5 * h * x[k]).omega;
  }
  return acc * h / 2.0;
}

}  // namespace

TEST_CASE("named gates") {
  const ComplexMatrix x = GateSpec::named("X").target();
  CHECK(qmath::unitary_fidelity(x, qmath::pauli_x()) == doctest::Approx(1.0));
  CHECK(qmath::unitary_fidelity(GateSpec::named("Y").target(), qmath::pauli_y()) == doctest::Approx(1.0));
  CHECK(qmath::unitary_fidelity(GateSpec::named("Z").target(), qmath::pauli_z()) == doctest::Approx(1.0));
  const ComplexMatrix x2 = GateSpec::named("X/2").target();
  CHECK((x2 * x2 - x).norm() < 1e-14);
  const ComplexMatrix mx2 = GateSpec::named("-X/2").target();
  CHECK((mx2 * x2 - ComplexMatrix::Identity(2, 2)).norm() < 1e-14);
  CHECK(qmath::unitarity_error(GateSpec{0.3, 1.2, 2.1}.target()) < 1e-14);
  CHECK_THROWS_AS(GateSpec::named("H"), ValidationError);
  CHECK_THROWS_AS((GateSpec{std::nan(""), 0.0, 0.0}.validate()), ValidationError);
}

TEST_CASE("scheme names round trip") {
  for (Scheme s : {Scheme::kSrNhqc, Scheme::kNhqc, Scheme::kDynamical}) CHECK(scheme_from_string(to_string(s)) == s);
  CHECK_THROWS_AS(scheme_from_string("drag"), ValidationError);
  CHECK(default_tau(Scheme::kSrNhqc) == 120.0);
  CHECK(default_tau(Scheme::kNhqc) == 60.0);
  CHECK(default_tau(Scheme::kDynamical) == 105.0);
}

TEST_CASE("superrobust schedule layout") {
  const PulseSchedule s = build_sr_nhqc(GateSpec::named("X"));
  REQUIRE(s.segments.size() == 6);
  const double areas[6] = {kPi / 2, kPi, kPi / 2, kPi / 2, kPi, kPi / 2};
  const double durations[6] = {15, 30, 15, 15, 30, 15};
  const double phases[6] = {0.0, kPi / 2, 0.0, 0.0, kPi / 2, 0.0};
  for (int i = 0; i < 6; ++i) {
    CHECK(s.segments[i].area == doctest::Approx(areas[i]));
    CHECK(s.segments[i].duration == doctest::Approx(durations[i]));
    CHECK(s.segments[i].phase == doctest::Approx(phases[i]));
  }
  CHECK(s.total_area() == doctest::Approx(4.0 * kPi));
  CHECK(s.segment_starts().back() == doctest::Approx(105.0));
  // pi/2 in 15 ns with a cosine envelope peaks at 2 * area / T.
  CHECK(s.peak_omega() == doctest::Approx(2.0 * kPi / 30.0).epsilon(1e-6));
}

TEST_CASE("cosine envelopes integrate to their area") {
  const PulseSchedule s = build_sr_nhqc(GateSpec{0.7, 0.2, 1.3});
  for (int i = 0; i < 6; ++i) CHECK(integrate_segment(s, i) == doctest::Approx(s.segments[i].area).epsilon(1e-12));
  const PulseSchedule sq = with_envelope(s, Envelope::kSquare);
  CHECK(integrate_segment(sq, 1) == doctest::Approx(kPi).epsilon(1e-12));
  CHECK(sample_envelope(s.segments[0], 0.0) == 0.0);
}

TEST_CASE("conventional schedule") {
  const PulseSchedule s = build_nhqc(GateSpec{kPi / 2, 0.0, 1.0});
  REQUIRE(s.segments.size() == 2);
  CHECK(s.segments[1].phase == doctest::Approx(kPi - 1.0));
  CHECK(s.total_area() == doctest::Approx(2.0 * kPi));
}

TEST_CASE("dynamical schedule") {
  const PulseSchedule s = build_dynamical(GateSpec::named("X"));
  CHECK(s.tau == 105.0);
  // Amplitudes vanish at the segment ends.
  CHECK(s.sample(0, 0.0).omega == 0.0);
  CHECK(s.peak_omega() == doctest::Approx(0.210182).epsilon(1e-4));
  CHECK(s.peak_omega() == doctest::Approx(build_sr_nhqc(GateSpec::named("X")).peak_omega()).epsilon(0.05));
  CHECK(integrate_segment(s, 0, 256) == doctest::Approx(s.total_area() / 2).epsilon(1e-6));
  CHECK_THROWS_AS(with_envelope(s, Envelope::kSquare), ValidationError);
}

TEST_CASE("rabi error scales amplitudes") {
  const PulseSchedule s = build_sr_nhqc(GateSpec::named("Y"));
  const PulseSchedule e = apply_rabi_error(s, 0.1);
  CHECK(e.total_area() == doctest::Approx(1.1 * s.total_area()));
  CHECK(e.sample_at(20.0).omega == doctest::Approx(1.1 * s.sample_at(20.0).omega));
  const PulseSchedule d = build_dynamical(GateSpec::named("Y"));
  CHECK(apply_rabi_error(d, -0.1).sample_at(30.0).omega == doctest::Approx(0.9 * d.sample_at(30.0).omega));
  CHECK_THROWS_AS(apply_rabi_error(s, 1.5), ValidationError);
}

TEST_CASE("envelope sampling errors") {
  const PulseSegment seg{kPi, 0.0, 10.0, Envelope::kCosine};
  CHECK_THROWS_AS(sample_envelope(seg, 10.5), ValidationError);
  CHECK_THROWS_AS(sample_envelope(seg, -0.1), ValidationError);
  CHECK_THROWS_AS(build_sr_nhqc(GateSpec::named("X"), 0.0), ValidationError);
  CHECK_THROWS_AS(build_sr_nhqc(GateSpec::named("X")).sample(6, 0.0), ValidationError);
}

TEST_CASE("schedule CSV") {
  std::ostringstream os;
  build_nhqc(GateSpec::named("X")).write_csv(os, 1.0);
  std::istringstream in(os.str());
  std::string line;
  std::getline(in, line);
  CHECK(line == "t_ns,Omega_rad_per_ns,phi1_rad,segment_index");
  int rows = 0;
  while (std::getline(in, line)) ++rows;
  CHECK(rows == 61);
}
