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

#include "hlab/twoqubit.hpp"

using namespace hlab;

TEST_CASE("two-qubit labels and subspace") {
  CHECK(two_qubit_index(2, kLevelF) == 8);
  CHECK(two_qubit_label(0) == "|0,g>");
  CHECK(two_qubit_label(8) == "|2,f>");
  CHECK(two_qubit_subspace() == std::vector<Eigen::Index>{0, 2, 6, 8});
  CHECK(default_two_qubit_tau(Scheme::kSrNhqc) == doctest::Approx(23.0 * kDefaultTauSr));
  CHECK(default_two_qubit_tau(Scheme::kNhqc) == doctest::Approx(23.0 * kDefaultTauNhqc));
}

TEST_CASE("two-qubit target is a controlled rotation") {
  const ComplexMatrix t = two_qubit_target(GateSpec::named("X"));
  CHECK(qmath::unitarity_error(t) < 1e-14);
  CHECK((t.bottomRightCorner(2, 2) - ComplexMatrix::Identity(2, 2)).norm() < 1e-14);
  CHECK(std::abs(t(1, 0)) == doctest::Approx(1.0));
}

TEST_CASE("selective superrobust CNOT") {
  const DispersiveSystemParams p;
  const TwoQubitGate gate =
      build_two_qubit_gate(GateSpec::named("X"), Scheme::kSrNhqc, default_two_qubit_tau(Scheme::kSrNhqc), p);
  const ComplexMatrix u = gate.corrected();
  CHECK(qmath::unitarity_error(u) < 1e-9);
  // The drive never changes the photon number.
  for (Eigen::Index r = 0; r < u.rows(); ++r) {
    for (Eigen::Index c = 0; c < u.cols(); ++c) {
      if (r / 3 != c / 3) CHECK(std::abs(u(r, c)) < 1e-12);
    }
  }
  CHECK(std::norm(u(two_qubit_index(0, kLevelG), two_qubit_index(0, kLevelF))) > 0.999);
  CHECK(std::norm(u(two_qubit_index(2, kLevelG), two_qubit_index(2, kLevelG))) > 0.999);
  // The calibrated frame only adjusts phases.
  CHECK(gate.frame.isDiagonal(1e-14));
  for (Eigen::Index i = 0; i < gate.frame.rows(); ++i) CHECK(std::abs(gate.frame(i, i)) == doctest::Approx(1.0));
  CHECK(gate.fidelity_to_target() > 0.99);
  CHECK(gate.computational_block().rows() == 4);
}

TEST_CASE("two-qubit gate inputs are validated") {
  const DispersiveSystemParams p;
  CHECK_THROWS_AS(build_two_qubit_gate(GateSpec::named("X"), Scheme::kSrNhqc, 2760.0, p, 0.3), ValidationError);
}

TEST_CASE("Fock-state preparation") {
  const TwoQubitState two = prepare_fock(FockTarget::kTwo);
  CHECK(two.population(2, kLevelG) == doctest::Approx(1.0).epsilon(1e-3));
  CHECK(two.ket.norm() == doctest::Approx(1.0).epsilon(1e-10));

  const TwoQubitState zero = prepare_fock(FockTarget::kZero);
  CHECK(zero.population(0, kLevelG) == doctest::Approx(1.0));

  const TwoQubitState sup = prepare_fock(FockTarget::kSuperposition);
  CHECK(sup.population(0, kLevelG) == doctest::Approx(0.5).epsilon(1e-3));
  CHECK(sup.population(2, kLevelG) == doctest::Approx(0.5).epsilon(1e-3));
  const cplx a = sup.ket(two_qubit_index(0, kLevelG));
  const cplx b = sup.ket(two_qubit_index(2, kLevelG));
  CHECK(std::abs(std::arg(b / a)) < 1e-6);
  CHECK(sup.to_json()["amplitudes"].contains("|0,g>"));

  CHECK(fock_target_from_string("0+2") == FockTarget::kSuperposition);
  CHECK_THROWS_AS(fock_target_from_string("1"), ValidationError);
  CHECK_THROWS_AS(prepare_fock(FockTarget::kTwo, 2), ValidationError);
}

TEST_CASE("CNOT robustness curve") {
  const DispersiveSystemParams p;
  const auto pts = cnot_robustness({0.0, 0.1}, Scheme::kSrNhqc, p, default_two_qubit_tau(Scheme::kSrNhqc));
  REQUIRE(pts.size() == 2);
  for (const auto& pt : pts) CHECK(pt.p_g + pt.p_e + pt.p_f == doctest::Approx(1.0).epsilon(1e-9));
  CHECK(pts[0].p_g > 0.999);
  CHECK(pts[1].p_g > 0.99);
  std::ostringstream os;
  write_cnot_csv(os, pts);
  CHECK(os.str().rfind("epsilon,P_g,P_e,P_f\n", 0) == 0);
}
