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

#pragma once

#include <complex>
#include <stdexcept>
#include <string>

#include <Eigen/Dense>
#include <json.hpp>

namespace hlab {

using cplx = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;
using Ket = Eigen::VectorXcd;
using RealVector = Eigen::VectorXd;

inline constexpr cplx kI{0.0, 1.0};
inline constexpr double kPi = 3.14159265358979323846;

/// Bad input: wrong shapes, out-of-range parameters, malformed config.
class ValidationError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Integration or fitting went wrong (non-finite values, drift, singular solves).
class NumericalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

namespace qmath {

inline constexpr double kDensityTolerance = 1e-10;
inline constexpr double kEigenvalueFloor = -1e-9;

bool all_finite(const ComplexMatrix& m);
void require_square(const ComplexMatrix& m, const char* what);

/// e^A by scaling and squaring with a degree-16 Taylor core.
ComplexMatrix matrix_exp(const ComplexMatrix& a);

/// |Tr(U V^dagger)| / d.
double unitary_fidelity(const ComplexMatrix& u, const ComplexMatrix& v);

/// Kronecker product; entry (iA*dimB + iB, jA*dimB + jB) = A(iA,jA) B(iB,jB).
ComplexMatrix tensor(const ComplexMatrix& a, const ComplexMatrix& b);

ComplexMatrix dagger(const ComplexMatrix& m);
ComplexMatrix commutator(const ComplexMatrix& a, const ComplexMatrix& b);
double hermiticity_error(const ComplexMatrix& m);
double unitarity_error(const ComplexMatrix& u);

Ket basis_ket(Eigen::Index dim, Eigen::Index index);
Ket normalize(const Ket& k);
ComplexMatrix projector(const Ket& k);

/// Matrix square root of a Hermitian PSD matrix (negative eigenvalues clipped).
ComplexMatrix psd_sqrt(const ComplexMatrix& m);

ComplexMatrix pauli_x();
ComplexMatrix pauli_y();
ComplexMatrix pauli_z();

/// Column-stacking vectorization, vec(A X B) = (B^T (x) A) vec(X).
Eigen::VectorXcd vec(const ComplexMatrix& m);
ComplexMatrix unvec(const Eigen::VectorXcd& v, Eigen::Index dim);

}  // namespace qmath

/// A validated density operator. Construction checks Hermiticity, unit trace
/// and positivity; eigenvalues in [-1e-9, 0) are clipped and the result is
/// renormalized.
class DensityMatrix {
 public:
  static DensityMatrix from_matrix(const ComplexMatrix& m);
  static DensityMatrix pure(const Ket& k);
  static DensityMatrix maximally_mixed(Eigen::Index dim);

  Eigen::Index dim() const { return rho_.rows(); }
  const ComplexMatrix& matrix() const { return rho_; }
  double population(Eigen::Index i) const { return rho_(i, i).real(); }

 private:
  explicit DensityMatrix(ComplexMatrix m) : rho_(std::move(m)) {}
  ComplexMatrix rho_;
};

namespace qmath {

/// Uhlmann fidelity (Tr sqrt(sqrt(rho) sigma sqrt(rho)))^2.
double state_fidelity(const DensityMatrix& rho, const DensityMatrix& sigma);

nlohmann::ordered_json to_json(const ComplexMatrix& m);
ComplexMatrix matrix_from_json(const nlohmann::json& j);

}  // namespace qmath
}  // namespace hlab
