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

#include "hlab/tomography.hpp"

#include <cmath>
#include <iomanip>
#include <ostream>

#include <Eigen/Eigenvalues>
#include <Eigen/QR>

#include "hlab/model.hpp"

namespace hlab {

namespace {

constexpr double kMaxCondition = 1e8;
constexpr double kTraceTolerance = 1e-6;

ComplexMatrix unit(Eigen::Index r, Eigen::Index c) {
  ComplexMatrix m = ComplexMatrix::Zero(3, 3);
  m(r, c) = 1.0;
  return m;
}

// exp(-i a/2 (cos(p) sx + sin(p) sy)) on levels (lo, hi).
ComplexMatrix rotation(Eigen::Index lo, Eigen::Index hi, double angle, double axis) {
  ComplexMatrix u = ComplexMatrix::Identity(3, 3);
  const double c = std::cos(angle / 2);
  const double s = std::sin(angle / 2);
  u(lo, lo) = c;
  u(hi, hi) = c;
  u(lo, hi) = -kI * s * std::exp(-kI * axis);
  u(hi, lo) = -kI * s * std::exp(kI * axis);
  return u;
}

// Real Hermitian basis for 3x3 density matrices: diagonal units, then
// symmetric and antisymmetric off-diagonal pairs.
std::vector<ComplexMatrix> hermitian_basis() {
  std::vector<ComplexMatrix> b;
  for (int i = 0; i < 3; ++i) b.push_back(unit(i, i));
  for (int i = 0; i < 3; ++i) {
    for (int j = i + 1; j < 3; ++j) {
      b.push_back(unit(i, j) + unit(j, i));
      b.push_back(-kI * unit(i, j) + kI * unit(j, i));
    }
  }
  return b;
}

// Design matrix of the 27 population measurements against the Hermitian
// basis coefficients, with its QR factorization.
struct StateDesign {
  std::vector<ComplexMatrix> observables;
  Eigen::MatrixXd a;
  Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr;
};

const StateDesign& state_design() {
  static const StateDesign design = [] {
    StateDesign d;
    const auto basis = hermitian_basis();
    for (const auto& u : qpt_prerotations()) {
      for (int j = 0; j < 3; ++j) d.observables.push_back(u.adjoint() * unit(j, j) * u);
    }
    d.a.resize(static_cast<Eigen::Index>(d.observables.size()), static_cast<Eigen::Index>(basis.size()));
    for (std::size_t r = 0; r < d.observables.size(); ++r) {
      for (std::size_t c = 0; c < basis.size(); ++c) {
        d.a(r, c) = (d.observables[r] * basis[c]).trace().real();
      }
    }
    d.qr.compute(d.a);
    if (d.qr.rank() != static_cast<Eigen::Index>(basis.size())) {
      throw NumericalError("state tomography design matrix is rank deficient");
    }
    return d;
  }();
  return design;
}

}  // namespace

AssignmentMatrix::AssignmentMatrix(const Eigen::Matrix3d& m) : m_(m), inv_(m.inverse()) {}

AssignmentMatrix AssignmentMatrix::from_matrix(const Eigen::Matrix3d& m) {
  if (!m.allFinite()) throw ValidationError("AssignmentMatrix: non-finite entries");
  if (m.minCoeff() < 0.0 || m.maxCoeff() > 1.0) throw ValidationError("AssignmentMatrix: entries must be in [0, 1]");
  for (int c = 0; c < 3; ++c) {
    if (std::abs(m.col(c).sum() - 1.0) > 1e-9) {
      throw ValidationError("AssignmentMatrix: column " + std::to_string(c) + " does not sum to 1");
    }
  }
  Eigen::JacobiSVD<Eigen::Matrix3d> svd(m);
  const auto sv = svd.singularValues();
  if (!(sv(2) > 0.0) || sv(0) / sv(2) > kMaxCondition) {
    throw ValidationError("AssignmentMatrix: matrix is singular or near-singular");
  }
  return AssignmentMatrix(m);
}

AssignmentMatrix AssignmentMatrix::device_default() {
  Eigen::Matrix3d m;
  m << 0.942, 0.080, 0.076,
       0.040, 0.908, 0.077,
       0.018, 0.012, 0.847;
  return from_matrix(m);
}

Eigen::Vector3d AssignmentMatrix::apply(const Eigen::Vector3d& p) const {
  if (!p.allFinite() || p.minCoeff() < -1e-12 || std::abs(p.sum() - 1.0) > 1e-9) {
    throw ValidationError("apply_readout: input must be a probability vector");
  }
  return m_ * p;
}

Eigen::Vector3d AssignmentMatrix::correct(const Eigen::Vector3d& measured, bool* negative) const {
  const Eigen::Vector3d p = inv_ * measured;
  if (negative) *negative = p.minCoeff() < 0.0;
  return p;
}

Eigen::Vector3d apply_readout(const Eigen::Vector3d& p, const AssignmentMatrix& m) { return m.apply(p); }

Eigen::Vector3d correct_readout(const Eigen::Vector3d& measured, const AssignmentMatrix& m) {
  return m.correct(measured);
}

std::vector<ComplexMatrix> chi_basis() {
  const ComplexMatrix i_gf = unit(0, 0) + unit(2, 2);
  const ComplexMatrix sx_gf = unit(0, 2) + unit(2, 0);
  const ComplexMatrix msy_gf = -unit(0, 2) + unit(2, 0);  // -i sigma_y
  const ComplexMatrix sz_gf = unit(0, 0) - unit(2, 2);
  const ComplexMatrix sx_ge = unit(0, 1) + unit(1, 0);
  const ComplexMatrix msy_ge = -unit(0, 1) + unit(1, 0);
  const ComplexMatrix sx_ef = unit(1, 2) + unit(2, 1);
  const ComplexMatrix msy_ef = -unit(1, 2) + unit(2, 1);
  return {i_gf, sx_gf, msy_gf, sz_gf, sx_ge, msy_ge, sx_ef, msy_ef, unit(1, 1)};
}

const std::array<std::string, 9>& chi_basis_labels() {
  static const std::array<std::string, 9> labels{"I_gf",  "sx_gf",  "-isy_gf", "sz_gf", "sx_ge",
                                                 "-isy_ge", "sx_ef", "-isy_ef", "I_e"};
  return labels;
}

std::vector<Ket> qpt_input_states() {
  const Ket g = qmath::basis_ket(3, kLevelG);
  const Ket e = qmath::basis_ket(3, kLevelE);
  const Ket f = qmath::basis_ket(3, kLevelF);
  const double r = 1.0 / std::sqrt(2.0);
  return {g, e, f, r * (g + e), r * (e + f), r * (g + f), r * (g - kI * e), r * (e - kI * f), r * (g - kI * f)};
}

std::vector<ComplexMatrix> qpt_prerotations() {
  const double h = kPi / 2;
  const ComplexMatrix x2_ge = rotation(kLevelG, kLevelE, h, 0.0);
  const ComplexMatrix y2_ge = rotation(kLevelG, kLevelE, h, h);
  const ComplexMatrix x_ge = rotation(kLevelG, kLevelE, kPi, 0.0);
  const ComplexMatrix x2_ef = rotation(kLevelE, kLevelF, h, 0.0);
  const ComplexMatrix y2_ef = rotation(kLevelE, kLevelF, h, h);
  const ComplexMatrix x_ef = rotation(kLevelE, kLevelF, kPi, 0.0);
  // Products are written in the listed order, so the rightmost acts first.
  return {ComplexMatrix::Identity(3, 3), x2_ge, y2_ge, x_ge, x2_ge * x_ef, y2_ge * x_ef, x_ge * x2_ef,
          x_ge * y2_ef, x_ge * x_ef};
}

ComplexMatrix reconstruct_state(const ComplexMatrix& rho_true, const std::optional<AssignmentMatrix>& readout,
                                int* negative_corrections) {
  const StateDesign& d = state_design();
  const auto& prer = qpt_prerotations();
  Eigen::VectorXd y(d.a.rows());
  for (std::size_t k = 0; k < prer.size(); ++k) {
    const ComplexMatrix r = prer[k] * rho_true * prer[k].adjoint();
    Eigen::Vector3d p(r(0, 0).real(), r(1, 1).real(), r(2, 2).real());
    if (readout) {
      p = p.cwiseMax(0.0);
      p /= p.sum();
      bool neg = false;
      p = readout->correct(readout->apply(p), &neg);
      if (neg && negative_corrections) ++*negative_corrections;
    }
    y.segment<3>(3 * static_cast<Eigen::Index>(k)) = p;
  }
  const Eigen::VectorXd x = d.qr.solve(y);
  const auto basis = hermitian_basis();
  ComplexMatrix rho = ComplexMatrix::Zero(3, 3);
  for (std::size_t c = 0; c < basis.size(); ++c) rho += x(static_cast<Eigen::Index>(c)) * basis[c];
  return rho;
}

ChiMatrix qpt(const QutritChannel& channel, const std::optional<AssignmentMatrix>& readout) {
  const auto inputs = qpt_input_states();
  const auto basis = chi_basis();
  ChiMatrix out;

  // Superoperator S with vec(rho_out) = S vec(rho_in), from the nine inputs.
  ComplexMatrix rin(9, 9);
  ComplexMatrix rout(9, 9);
  for (std::size_t i = 0; i < inputs.size(); ++i) {
    const ComplexMatrix rho = qmath::projector(inputs[i]);
    const ComplexMatrix mapped = channel(rho);
    if (mapped.rows() != 3 || mapped.cols() != 3) throw ValidationError("qpt: channel must return a 3x3 matrix");
    if (std::abs(mapped.trace() - cplx(1.0, 0.0)) > kTraceTolerance) {
      throw ValidationError("qpt: channel is not trace preserving");
    }
    rin.col(static_cast<Eigen::Index>(i)) = qmath::vec(rho);
    rout.col(static_cast<Eigen::Index>(i)) =
        qmath::vec(reconstruct_state(mapped, readout, &out.negative_corrections));
  }
  Eigen::FullPivLU<ComplexMatrix> lu(rin);
  if (!lu.isInvertible()) throw NumericalError("qpt: input states are not informationally complete");
  const ComplexMatrix sup = rout * lu.inverse();

  // S = sum chi_mn conj(E_n) (x) E_m; the Kronecker terms are orthogonal.
  std::vector<double> norms;
  for (const auto& e : basis) norms.push_back(std::sqrt((e.adjoint() * e).trace().real()));
  ComplexMatrix chi(9, 9);
  for (int m = 0; m < 9; ++m) {
    for (int n = 0; n < 9; ++n) {
      const ComplexMatrix term = qmath::tensor(basis[n].conjugate(), basis[m]);
      const double w = norms[m] * norms[m] * norms[n] * norms[n];
      chi(m, n) = (term.adjoint() * sup).trace() / w;
    }
  }

  // Nearest PSD matrix in the Hilbert-Schmidt-normalized basis, unit trace.
  ComplexMatrix chn(9, 9);
  for (int m = 0; m < 9; ++m) {
    for (int n = 0; n < 9; ++n) chn(m, n) = chi(m, n) * norms[m] * norms[n];
  }
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(0.5 * (chn + chn.adjoint()));
  Eigen::VectorXd ev = es.eigenvalues();
  for (Eigen::Index i = 0; i < ev.size(); ++i) {
    if (ev(i) < 0.0) {
      out.clipped_weight += -ev(i);
      ev(i) = 0.0;
    }
  }
  if (!(ev.sum() > 0.0)) throw NumericalError("qpt: process matrix vanished after projection");
  out.full = es.eigenvectors() * (ev / ev.sum()).asDiagonal() * es.eigenvectors().adjoint();
  out.reduced = 1.5 * out.full.topLeftCorner(4, 4);
  return out;
}

ComplexMatrix ideal_chi(const ComplexMatrix& u) {
  if (u.rows() != 2 || u.cols() != 2) throw ValidationError("ideal_chi: expected a 2x2 gate");
  const std::array<ComplexMatrix, 4> paulis{ComplexMatrix::Identity(2, 2), qmath::pauli_x(),
                                            ComplexMatrix(-kI * qmath::pauli_y()), qmath::pauli_z()};
  Eigen::VectorXcd c(4);
  for (int m = 0; m < 4; ++m) c(m) = (paulis[m].adjoint() * u).trace() / 2.0;
  return c * c.adjoint();
}

double process_fidelity(const ComplexMatrix& chi_reduced, const ComplexMatrix& ideal_gate) {
  if (chi_reduced.rows() != 4 || chi_reduced.cols() != 4) {
    throw ValidationError("process_fidelity: reduced chi must be 4x4 in the {I, sx, -i sy, sz} basis");
  }
  return std::abs((chi_reduced * ideal_chi(ideal_gate).adjoint()).trace());
}

nlohmann::ordered_json ChiMatrix::to_json() const {
  nlohmann::ordered_json j;
  j["basis_full"] = chi_basis_labels();
  j["basis_reduced"] = {"I", "sx", "-isy", "sz"};
  j["full"] = qmath::to_json(full);
  j["reduced"] = qmath::to_json(reduced);
  j["clipped_weight"] = clipped_weight;
  j["negative_corrections"] = negative_corrections;
  return j;
}

void ChiMatrix::write_bars_csv(std::ostream& os) const {
  static const std::array<const char*, 4> labels{"I", "sx", "-isy", "sz"};
  os << "basis_row,basis_col,re,im\n" << std::setprecision(12);
  for (int r = 0; r < 4; ++r) {
    for (int c = 0; c < 4; ++c) {
      os << labels[r] << ',' << labels[c] << ',' << reduced(r, c).real() << ',' << reduced(r, c).imag() << '\n';
    }
  }
}

}  // namespace hlab
