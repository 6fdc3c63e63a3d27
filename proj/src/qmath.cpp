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

#include "hlab/qmath.hpp"

#include <algorithm>
#include <cmath>

#include <Eigen/Eigenvalues>

namespace hlab {
namespace qmath {

namespace {

// Taylor degree and the norm the scaled matrix must fall under. With
// ||A/2^s|| <= 0.5 the truncation term is below 0.5^17/17! ~ 2e-20.
constexpr int kTaylorDegree = 16;
constexpr double kScaledNormBound = 0.5;

double one_norm(const ComplexMatrix& a) {
  double best = 0.0;
  for (Eigen::Index j = 0; j < a.cols(); ++j) {
    best = std::max(best, a.col(j).cwiseAbs().sum());
  }
  return best;
}

}  // namespace

bool all_finite(const ComplexMatrix& m) {
  for (Eigen::Index i = 0; i < m.size(); ++i) {
    const cplx z = m.data()[i];
    if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) return false;
  }
  return true;
}

void require_square(const ComplexMatrix& m, const char* what) {
  if (m.rows() != m.cols() || m.rows() == 0) {
    throw ValidationError(std::string(what) + ": matrix must be square and non-empty, got " +
                          std::to_string(m.rows()) + "x" + std::to_string(m.cols()));
  }
}

ComplexMatrix matrix_exp(const ComplexMatrix& a) {
  require_square(a, "matrix_exp");
  if (!all_finite(a)) throw NumericalError("matrix_exp: non-finite entries");

  const double norm = one_norm(a);
  int squarings = 0;
  if (norm > kScaledNormBound) {
    squarings = static_cast<int>(std::ceil(std::log2(norm / kScaledNormBound)));
  }
  const ComplexMatrix scaled = a / std::ldexp(1.0, squarings);
  const Eigen::Index n = a.rows();

  // Horner: I + A(I + A/2(I + A/3(...)))
  ComplexMatrix result = ComplexMatrix::Identity(n, n);
  for (int k = kTaylorDegree; k >= 1; --k) {
    result = ComplexMatrix::Identity(n, n) + (scaled * result) / static_cast<double>(k);
  }
  for (int i = 0; i < squarings; ++i) result = result * result;
  return result;
}

double unitary_fidelity(const ComplexMatrix& u, const ComplexMatrix& v) {
  require_square(u, "unitary_fidelity");
  require_square(v, "unitary_fidelity");
  if (u.rows() != v.rows()) {
    throw ValidationError("unitary_fidelity: dimension mismatch (" + std::to_string(u.rows()) +
                          " vs " + std::to_string(v.rows()) + ")");
  }
  const cplx tr = (u * v.adjoint()).trace();
  return std::abs(tr) / static_cast<double>(u.rows());
}

ComplexMatrix tensor(const ComplexMatrix& a, const ComplexMatrix& b) {
  ComplexMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    for (Eigen::Index j = 0; j < a.cols(); ++j) {
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    }
  }
  return out;
}

ComplexMatrix dagger(const ComplexMatrix& m) { return m.adjoint(); }

ComplexMatrix commutator(const ComplexMatrix& a, const ComplexMatrix& b) { return a * b - b * a; }

double hermiticity_error(const ComplexMatrix& m) { return (m - m.adjoint()).cwiseAbs().maxCoeff(); }

double unitarity_error(const ComplexMatrix& u) {
  return (u.adjoint() * u - ComplexMatrix::Identity(u.cols(), u.cols())).cwiseAbs().maxCoeff();
}

Ket basis_ket(Eigen::Index dim, Eigen::Index index) {
  if (index < 0 || index >= dim) throw ValidationError("basis_ket: index out of range");
  Ket k = Ket::Zero(dim);
  k(index) = 1.0;
  return k;
}

Ket normalize(const Ket& k) {
  const double n = k.norm();
  if (!(n > 0.0) || !std::isfinite(n)) throw NumericalError("normalize: zero or non-finite norm");
  return k / n;
}

ComplexMatrix projector(const Ket& k) { return k * k.adjoint(); }

ComplexMatrix psd_sqrt(const ComplexMatrix& m) {
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(0.5 * (m + m.adjoint()));
  const Eigen::VectorXd roots = es.eigenvalues().cwiseMax(0.0).cwiseSqrt();
  return es.eigenvectors() * roots.asDiagonal() * es.eigenvectors().adjoint();
}

ComplexMatrix pauli_x() {
  ComplexMatrix m(2, 2);
  m << 0.0, 1.0, 1.0, 0.0;
  return m;
}

ComplexMatrix pauli_y() {
  ComplexMatrix m(2, 2);
  m << 0.0, -kI, kI, 0.0;
  return m;
}

ComplexMatrix pauli_z() {
  ComplexMatrix m(2, 2);
  m << 1.0, 0.0, 0.0, -1.0;
  return m;
}

Eigen::VectorXcd vec(const ComplexMatrix& m) {
  return Eigen::Map<const Eigen::VectorXcd>(m.data(), m.size());
}

ComplexMatrix unvec(const Eigen::VectorXcd& v, Eigen::Index dim) {
  if (v.size() != dim * dim) throw ValidationError("unvec: size mismatch");
  return Eigen::Map<const ComplexMatrix>(v.data(), dim, dim);
}

double state_fidelity(const DensityMatrix& rho, const DensityMatrix& sigma) {
  if (rho.dim() != sigma.dim()) throw ValidationError("state_fidelity: dimension mismatch");
  const ComplexMatrix root = psd_sqrt(rho.matrix());
  const ComplexMatrix inner = root * sigma.matrix() * root;
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(0.5 * (inner + inner.adjoint()));
  const double tr = es.eigenvalues().cwiseMax(0.0).cwiseSqrt().sum();
  return std::clamp(tr * tr, 0.0, 1.0);
}

nlohmann::ordered_json to_json(const ComplexMatrix& m) {
  nlohmann::ordered_json j;
  j["rows"] = m.rows();
  j["cols"] = m.cols();
  auto re = nlohmann::ordered_json::array();
  auto im = nlohmann::ordered_json::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    auto rr = nlohmann::ordered_json::array();
    auto ri = nlohmann::ordered_json::array();
    for (Eigen::Index c = 0; c < m.cols(); ++c) {
      rr.push_back(m(r, c).real());
      ri.push_back(m(r, c).imag());
    }
    re.push_back(std::move(rr));
    im.push_back(std::move(ri));
  }
  j["re"] = std::move(re);
  j["im"] = std::move(im);
  return j;
}

ComplexMatrix matrix_from_json(const nlohmann::json& j) {
  const auto rows = j.at("rows").get<Eigen::Index>();
  const auto cols = j.at("cols").get<Eigen::Index>();
  if (rows <= 0 || cols <= 0) throw ValidationError("matrix_from_json: non-positive shape");
  const auto& re = j.at("re");
  const auto& im = j.at("im");
  if (static_cast<Eigen::Index>(re.size()) != rows || static_cast<Eigen::Index>(im.size()) != rows) {
    throw ValidationError("matrix_from_json: row count mismatch");
  }
  ComplexMatrix m(rows, cols);
  for (Eigen::Index r = 0; r < rows; ++r) {
    if (static_cast<Eigen::Index>(re[r].size()) != cols || static_cast<Eigen::Index>(im[r].size()) != cols) {
      throw ValidationError("matrix_from_json: column count mismatch");
    }
    for (Eigen::Index c = 0; c < cols; ++c) {
      m(r, c) = cplx(re[r][c].get<double>(), im[r][c].get<double>());
    }
  }
  return m;
}

}  // namespace qmath

DensityMatrix DensityMatrix::from_matrix(const ComplexMatrix& m) {
  qmath::require_square(m, "DensityMatrix");
  if (!qmath::all_finite(m)) throw NumericalError("DensityMatrix: non-finite entries");
  if (qmath::hermiticity_error(m) > qmath::kDensityTolerance) {
    throw ValidationError("DensityMatrix: not Hermitian");
  }
  if (std::abs(m.trace() - cplx(1.0, 0.0)) > qmath::kDensityTolerance) {
    throw ValidationError("DensityMatrix: trace differs from 1");
  }
  const ComplexMatrix herm = 0.5 * (m + m.adjoint());
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(herm);
  const Eigen::VectorXd& ev = es.eigenvalues();
  if (ev.minCoeff() < qmath::kEigenvalueFloor) {
    throw ValidationError("DensityMatrix: negative eigenvalue " + std::to_string(ev.minCoeff()));
  }
  if (ev.minCoeff() >= 0.0) return DensityMatrix(herm);
  const Eigen::VectorXd clipped = ev.cwiseMax(0.0);
  ComplexMatrix rebuilt = es.eigenvectors() * clipped.asDiagonal() * es.eigenvectors().adjoint();
  rebuilt /= clipped.sum();
  return DensityMatrix(0.5 * (rebuilt + rebuilt.adjoint()));
}

DensityMatrix DensityMatrix::pure(const Ket& k) {
  return DensityMatrix(qmath::projector(qmath::normalize(k)));
}

DensityMatrix DensityMatrix::maximally_mixed(Eigen::Index dim) {
  if (dim <= 0) throw ValidationError("maximally_mixed: dim must be positive");
  return DensityMatrix(ComplexMatrix::Identity(dim, dim) / static_cast<double>(dim));
}

}  // namespace hlab
