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

#include <sstream>

#include "hlab/evolve.hpp"
#include "hlab/rb.hpp"
#include "hlab/tomography.hpp"

using namespace hlab;

namespace {

ComplexMatrix embed_gf(const ComplexMatrix& u2) {
  ComplexMatrix u = ComplexMatrix::Identity(3, 3);
  u(0, 0) = u2(0, 0);
  u(0, 2) = u2(0, 1);
  u(2, 0) = u2(1, 0);
  u(2, 2) = u2(1, 1);
  return u;
}

QutritChannel from_superop(const ComplexMatrix& s) {
  return [s](const ComplexMatrix& rho) { return apply_channel(s, rho); };
}

}  // namespace

TEST_CASE("readout correction inverts the confusion matrix") {
  const AssignmentMatrix m = AssignmentMatrix::device_default();
  CHECK(m.matrix().colwise().sum().isApprox(Eigen::RowVector3d::Ones(), 1e-12));
  const Eigen::Vector3d p(0.2, 0.3, 0.5);
  CHECK((correct_readout(apply_readout(p, m), m) - p).norm() < 1e-12);
  // Pure |f> reads as the third column.
  CHECK((m.apply(Eigen::Vector3d(0, 0, 1)) - Eigen::Vector3d(0.076, 0.077, 0.847)).norm() < 1e-12);

  bool negative = false;
  m.correct(Eigen::Vector3d(1.0, 0.0, 0.0), &negative);
  CHECK(negative);
}

TEST_CASE("confusion matrices are validated") {
  Eigen::Matrix3d bad = Eigen::Matrix3d::Identity();
  bad(0, 0) = 0.5;
  CHECK_THROWS_AS(AssignmentMatrix::from_matrix(bad), ValidationError);
}

TEST_CASE("state tomography recovers the input") {
  const Ket psi = qmath::normalize(Ket{{cplx(0.6, 0.1), cplx(0.2, -0.3), cplx(0.5, 0.4)}});
  const ComplexMatrix rho = qmath::projector(psi);
  CHECK((reconstruct_state(rho, std::nullopt) - rho).norm() < 1e-12);
  CHECK((reconstruct_state(rho, AssignmentMatrix::device_default()) - rho).norm() < 1e-10);
}

TEST_CASE("process tomography of ideal gates") {
  for (const char* name : {"X", "Y/2", "-X/2", "I"}) {
    const ComplexMatrix u = GateSpec::named(name).target();
    const ChiMatrix chi = qpt(from_superop(unitary_channel(embed_gf(u))));
    CHECK(process_fidelity(chi.reduced, u) == doctest::Approx(1.0).epsilon(1e-10));
    CHECK(chi.full.trace().real() == doctest::Approx(1.0).epsilon(1e-10));
    CHECK(chi.clipped_weight < 1e-10);
  }
  const ComplexMatrix u = GateSpec::named("X").target();
  const ComplexMatrix ideal = ideal_chi(u);
  CHECK(std::abs(ideal(1, 1) - 1.0) < 1e-12);
  CHECK(ideal.trace().real() == doctest::Approx(1.0));
}

TEST_CASE("process fidelity of a depolarized identity") {
  // p rho + (1 - p) I/2 has chi_00 = 1 - 3(1 - p)/4.
  for (double p : {0.9, 0.7}) {
    const ChiMatrix chi = qpt(from_superop(depolarizing_superop(p)));
    CHECK(process_fidelity(chi.reduced, ComplexMatrix::Identity(2, 2)) ==
          doctest::Approx(1.0 - 0.75 * (1.0 - p)).epsilon(1e-10));
  }
}

TEST_CASE("readout-corrected tomography matches the uncorrected one") {
  const ComplexMatrix s = depolarizing_superop(0.95) * unitary_channel(embed_gf(GateSpec::named("X").target()));
  const ChiMatrix a = qpt(from_superop(s));
  const ChiMatrix b = qpt(from_superop(s), AssignmentMatrix::device_default());
  CHECK((a.reduced - b.reduced).norm() < 1e-8);
}

TEST_CASE("noisy superrobust X through tomography") {
  const GateSpec g = GateSpec::named("X");
  const ComplexMatrix s = gate_channel(build_sr_nhqc(g), bright_frame(g.theta, g.phi), NoiseModel::device_defaults());
  const ChiMatrix chi = qpt(from_superop(s));
  // Frozen regression value.
  CHECK(process_fidelity(chi.reduced, g.target()) == doctest::Approx(0.995169).epsilon(2e-6));
  std::ostringstream os;
  chi.write_bars_csv(os);
  CHECK(os.str().rfind("basis_row,basis_col,re,im\n", 0) == 0);
  CHECK(chi.to_json().contains("reduced"));
}
