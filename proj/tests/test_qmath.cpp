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

#include "hlab/qmath.hpp"

using namespace hlab;

namespace {

using LongMatrix = Eigen::Matrix<std::complex<long double>, Eigen::Dynamic, Eigen::Dynamic>;

// Scaling and squaring around a 64-term Taylor series in long double.
ComplexMatrix taylor64_exp(const ComplexMatrix& a) {
  LongMatrix x = a.cast<std::complex<long double>>();
  long double norm = 0;
  for (Eigen::Index j = 0; j < x.cols(); ++j) norm = std::max(norm, x.col(j).cwiseAbs().sum());
  int squarings = 0;
  while (norm > 0.25L) {
    norm /= 2;
    ++squarings;
  }
  x /= std::ldexp(1.0L, squarings);
  const Eigen::Index n = a.rows();
  LongMatrix term = LongMatrix::Identity(n, n);
  LongMatrix sum = LongMatrix::Identity(n, n);
  for (int k = 1; k <= 64; ++k) {
    term = (term * x) / static_cast<long double>(k);
    sum += term;
  }
  for (int i = 0; i < squarings; ++i) sum = sum * sum;
  return sum.cast<cplx>();
}

ComplexMatrix random_hermitian(std::mt19937_64& rng, Eigen::Index n, double scale) {
  std::normal_distribution<double> g(0.0, 1.0);
  ComplexMatrix m(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j < n; ++j) m(i, j) = cplx(g(rng), g(rng));
  }
  ComplexMatrix h = (m + m.adjoint()) / 2.0;
  return h * (scale / h.norm());
}

}  // namespace

TEST_CASE("matrix_exp of zero is the identity") {
  CHECK((qmath::matrix_exp(ComplexMatrix::Zero(2, 2)) - ComplexMatrix::Identity(2, 2)).norm() == 0.0);
}

TEST_CASE("matrix_exp half-turn Pauli rotation") {
  const ComplexMatrix u = qmath::matrix_exp(-kI * (kPi / 2) * qmath::pauli_x());
  CHECK((u - (-kI * qmath::pauli_x())).norm() < 1e-14);
}

TEST_CASE("matrix_exp agrees with a 64-term long double Taylor oracle") {
  const ComplexMatrix a = -kI * (kPi / 4) * qmath::pauli_z();
  CHECK((qmath::matrix_exp(a) - taylor64_exp(a)).norm() < 1e-12);

  std::mt19937_64 rng(11);
  std::normal_distribution<double> g(0.0, 1.0);
  for (double scale : {0.1, 1.0, 5.0, 10.0}) {
    ComplexMatrix m(4, 4);
    for (Eigen::Index i = 0; i < 4; ++i) {
      for (Eigen::Index j = 0; j < 4; ++j) m(i, j) = cplx(g(rng), g(rng));
    }
    m *= scale / m.norm();
    const ComplexMatrix want = taylor64_exp(m);
    CHECK((qmath::matrix_exp(m) - want).norm() / want.norm() < 1e-12);
  }
}

TEST_CASE("matrix_exp keeps anti-Hermitian generators unitary") {
  std::mt19937_64 rng(3);
  for (double scale : {1.0, 10.0, 100.0}) {
    const ComplexMatrix h = random_hermitian(rng, 9, scale);
    CHECK(qmath::unitarity_error(qmath::matrix_exp(-kI * h)) < 1e-10);
  }
}

TEST_CASE("matrix_exp rejects bad input") {
  CHECK_THROWS_AS(qmath::matrix_exp(ComplexMatrix::Zero(2, 3)), ValidationError);
  ComplexMatrix nan = ComplexMatrix::Zero(2, 2);
  nan(0, 0) = std::nan("");
  CHECK_THROWS_AS(qmath::matrix_exp(nan), NumericalError);
}

TEST_CASE("unitary_fidelity") {
  std::mt19937_64 rng(5);
  const ComplexMatrix u = qmath::matrix_exp(-kI * random_hermitian(rng, 3, 2.0));
  const ComplexMatrix v = qmath::matrix_exp(-kI * random_hermitian(rng, 3, 2.0));
  CHECK(qmath::unitary_fidelity(u, u) == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(qmath::unitary_fidelity(u, std::exp(kI * 0.731) * u) == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(qmath::unitary_fidelity(ComplexMatrix::Identity(2, 2), qmath::pauli_x()) == 0.0);
  CHECK(qmath::unitary_fidelity(u, v) == doctest::Approx(qmath::unitary_fidelity(v, u)).epsilon(1e-14));
  CHECK(qmath::unitary_fidelity(std::exp(kI * 0.2) * u, std::exp(-kI * 1.3) * v) ==
        doctest::Approx(qmath::unitary_fidelity(u, v)).epsilon(1e-14));
  CHECK_THROWS_AS(qmath::unitary_fidelity(ComplexMatrix::Identity(2, 2), ComplexMatrix::Identity(3, 3)),
                  ValidationError);
}

TEST_CASE("state_fidelity") {
  const auto g = DensityMatrix::pure(qmath::basis_ket(3, 0));
  const auto f = DensityMatrix::pure(qmath::basis_ket(3, 2));
  const auto mixed = DensityMatrix::maximally_mixed(3);
  CHECK(qmath::state_fidelity(g, g) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(qmath::state_fidelity(g, f) == doctest::Approx(0.0));
  CHECK(qmath::state_fidelity(mixed, g) == doctest::Approx(1.0 / 3.0).epsilon(1e-12));
  CHECK(qmath::state_fidelity(mixed, mixed) == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("tensor uses the row-major index convention") {
  CHECK((qmath::tensor(ComplexMatrix::Identity(2, 2), ComplexMatrix::Identity(3, 3)) - ComplexMatrix::Identity(6, 6))
            .norm() == 0.0);
  Eigen::VectorXcd d(4);
  d << 1.0, 1.0, -1.0, -1.0;
  CHECK((qmath::tensor(qmath::pauli_z(), ComplexMatrix::Identity(2, 2)) - ComplexMatrix(d.asDiagonal())).norm() ==
        0.0);
  const ComplexMatrix p = qmath::tensor(qmath::projector(qmath::basis_ket(3, 0)), qmath::projector(qmath::basis_ket(4, 2)));
  CHECK(p.trace().real() == 1.0);
  CHECK(p(2, 2) == cplx(1.0));

  std::mt19937_64 rng(9);
  const ComplexMatrix a = random_hermitian(rng, 2, 1.0);
  const ComplexMatrix b = random_hermitian(rng, 3, 1.0);
  const ComplexMatrix c = random_hermitian(rng, 2, 1.0);
  CHECK(qmath::tensor(qmath::tensor(a, b), c).isApprox(qmath::tensor(a, qmath::tensor(b, c)), 1e-14));
}

TEST_CASE("vec and unvec") {
  std::mt19937_64 rng(2);
  const ComplexMatrix a = random_hermitian(rng, 3, 1.0);
  const ComplexMatrix x = random_hermitian(rng, 3, 1.0);
  const ComplexMatrix b = random_hermitian(rng, 3, 1.0);
  const Eigen::VectorXcd lhs = qmath::vec(a * x * b);
  const Eigen::VectorXcd rhs = qmath::tensor(b.transpose(), a) * qmath::vec(x);
  CHECK((lhs - rhs).norm() < 1e-14);
  CHECK(qmath::unvec(qmath::vec(x), 3) == x);
}

TEST_CASE("DensityMatrix validation") {
  ComplexMatrix m = ComplexMatrix::Zero(2, 2);
  m(0, 0) = 0.5;
  m(1, 1) = 0.5;
  CHECK_NOTHROW(DensityMatrix::from_matrix(m));

  ComplexMatrix bad_trace = m * 2.0;
  CHECK_THROWS_AS(DensityMatrix::from_matrix(bad_trace), ValidationError);

  ComplexMatrix non_herm = m;
  non_herm(0, 1) = 0.1;
  CHECK_THROWS_AS(DensityMatrix::from_matrix(non_herm), ValidationError);

  ComplexMatrix negative = ComplexMatrix::Zero(2, 2);
  negative(0, 0) = 1.2;
  negative(1, 1) = -0.2;
  CHECK_THROWS_AS(DensityMatrix::from_matrix(negative), ValidationError);

  // Round-off negativity is clipped.
  ComplexMatrix tiny = ComplexMatrix::Zero(2, 2);
  tiny(0, 0) = 1.0 + 5e-11;
  tiny(1, 1) = -5e-11;
  const DensityMatrix d = DensityMatrix::from_matrix(tiny);
  CHECK(d.population(1) >= 0.0);
  CHECK(d.matrix().trace().real() == doctest::Approx(1.0).epsilon(1e-14));
}

TEST_CASE("normalize") {
  Ket k(3);
  k << 1.0, kI, 2.0;
  CHECK(std::abs(qmath::normalize(k).squaredNorm() - 1.0) < 1e-10);
  CHECK_THROWS_AS(qmath::normalize(Ket::Zero(3)), NumericalError);
}

TEST_CASE("matrix JSON round trip keeps field order") {
  std::mt19937_64 rng(4);
  const ComplexMatrix m = random_hermitian(rng, 3, 1.0);
  const auto j = qmath::to_json(m);
  CHECK(j.begin().key() == "rows");
  CHECK((qmath::matrix_from_json(nlohmann::json::parse(j.dump())) - m).norm() == 0.0);
}
