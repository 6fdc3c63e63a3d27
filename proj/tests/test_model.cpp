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

#include "hlab/model.hpp"

using namespace hlab;

TEST_CASE("bright and dark states are orthonormal and span {g, f}") {
  for (double th : {0.0, 0.4, kPi / 2, 2.9}) {
    for (double ph : {0.0, 1.1, -2.5}) {
      const BrightFrame f = bright_frame(th, ph);
      CHECK(std::abs(f.bright.squaredNorm() - 1.0) < 1e-14);
      CHECK(std::abs(f.dark.squaredNorm() - 1.0) < 1e-14);
      CHECK(std::abs(f.bright.dot(f.dark)) < 1e-14);
      CHECK(std::abs(f.bright(kLevelE)) == 0.0);
    }
  }
}

TEST_CASE("drive from the bright frame") {
  const BrightFrame f = bright_frame(1.2, 0.7);
  for (double phi1 : {0.0, 0.9, -2.2}) {
    const QutritDriveParams p = drive_from_bright(f, 0.3, phi1);
    const ComplexMatrix h = qutrit_hamiltonian(p);
    CHECK(qmath::hermiticity_error(h) < 1e-12);
    // Dark state decouples.
    CHECK((h * f.dark).norm() < 1e-15);
    // H = omega/2 (e^{i phi1}|b><e| + h.c.)
    const ComplexMatrix want = 0.5 * 0.3 * std::exp(kI * phi1) * f.bright * f.excited.adjoint();
    CHECK((h - want - want.adjoint()).norm() < 1e-15);
  }
}

TEST_CASE("drive amplitudes follow the theta ratio") {
  const QutritDriveParams p = drive_from_bright(bright_frame(kPi / 2, 0.0), 2.0, 0.0);
  CHECK(p.omega_ge == doctest::Approx(std::sqrt(2.0)));
  CHECK(p.omega_ef == doctest::Approx(std::sqrt(2.0)));
  const QutritDriveParams z = drive_from_bright(bright_frame(0.0, 0.0), 2.0, 0.0);
  CHECK(z.omega_ge == 0.0);
  CHECK(z.omega_ef == doctest::Approx(2.0));
}

TEST_CASE("drive validation") {
  QutritDriveParams p{-1.0, 0.0, 0.0, 0.0};
  CHECK_THROWS_AS(p.validate(), ValidationError);
  p = {1.0, 1.0, std::nan(""), 0.0};
  CHECK_THROWS_AS(p.validate(), ValidationError);
}

TEST_CASE("collapse operators of the device model") {
  const NoiseModel n = NoiseModel::device_defaults();
  // Both echo dephasing rates sit below the relaxation limit, so only the
  // three relaxation channels remain.
  CHECK(pure_dephasing_e(n) == 0.0);
  CHECK(pure_dephasing_f(n) == 0.0);
  const auto ops = collapse_operators(n);
  REQUIRE(ops.size() == 3);
  CHECK(std::norm(ops[0](kLevelG, kLevelE)) == doctest::Approx(1e-3 / 18.9));
  CHECK(std::norm(ops[1](kLevelE, kLevelF)) == doctest::Approx(1e-3 / 12.7));
  CHECK(std::norm(ops[2](kLevelG, kLevelF)) == doctest::Approx(1e-3 / 500.0));
  CHECK(collapse_operators(NoiseModel{}).empty());
  CHECK_FALSE(NoiseModel{}.has_decoherence());
  CHECK(n.has_decoherence());
}

TEST_CASE("pure dephasing operators") {
  NoiseModel n;
  n.gamma_ge = 0.02;
  n.gamma1 = 0.05;
  n.gamma3 = 0.03;
  CHECK(pure_dephasing_e(n) == doctest::Approx(0.04));
  CHECK(pure_dephasing_f(n) == doctest::Approx(0.03));
  const auto ops = collapse_operators(n);
  REQUIRE(ops.size() == 3);
  CHECK(std::norm(ops[1](kLevelE, kLevelE)) == doctest::Approx(2.0 * 0.04e-3));
  CHECK(std::norm(ops[2](kLevelF, kLevelF)) == doctest::Approx(2.0 * 0.03e-3));
}

TEST_CASE("noise validation") {
  NoiseModel n;
  n.gamma_ef = -1.0;
  CHECK_THROWS_AS(n.validate(), ValidationError);
  n = NoiseModel{};
  n.epsilon = 2.0;
  CHECK_THROWS_AS(n.validate(), ValidationError);
}

TEST_CASE("dispersive Hamiltonian") {
  DispersiveSystemParams p;
  const ComplexMatrix h =
      dispersive_hamiltonian(p, drive_from_bright(bright_frame(kPi / 2, 0.3), 0.01, 0.4));
  CHECK(h.rows() == 12);
  CHECK(qmath::hermiticity_error(h) < 1e-12);
  const ComplexMatrix a = cavity_lowering(p.fock_levels);
  const ComplexMatrix num = a.adjoint() * a;
  CHECK(qmath::commutator(h, num).norm() < 1e-14);
  const ComplexMatrix d = dispersive_shift(p);
  CHECK(d(3 * 2 + kLevelE, 3 * 2 + kLevelE).real() == doctest::Approx(-2.0 * p.chi_ge));
  CHECK(d(3 * 2 + kLevelF, 3 * 2 + kLevelF).real() == doctest::Approx(-2.0 * (p.chi_ge + p.chi_ef)));
  CHECK(d(3 * 2 + kLevelG, 3 * 2 + kLevelG) == cplx(0.0));
  p.fock_levels = 2;
  CHECK_THROWS_AS(p.validate(), ValidationError);
}

TEST_CASE("cavity collapse operators") {
  const auto ops = cavity_collapse_operators(334.0, 243.0, 4);
  REQUIRE(ops.size() == 2);
  const double kappa = 1e-3 / 334.0;
  CHECK(std::norm(ops[0](3 * 0, 3 * 1)) == doctest::Approx(kappa));
  const double kphi = 1e-3 / 243.0 - kappa / 2;
  CHECK(std::norm(ops[1](3 * 1, 3 * 1)) == doctest::Approx(2.0 * kphi));
  CHECK_THROWS_AS(cavity_collapse_operators(0.0, 1.0, 4), ValidationError);
}
