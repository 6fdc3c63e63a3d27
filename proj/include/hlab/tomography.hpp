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

#include <array>
#include <functional>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "hlab/qmath.hpp"

namespace hlab {

/// Readout confusion matrix; column j is the outcome distribution for a
/// qutrit prepared in level j.
class AssignmentMatrix {
 public:
  static AssignmentMatrix from_matrix(const Eigen::Matrix3d& m);
  static AssignmentMatrix device_default();

  const Eigen::Matrix3d& matrix() const { return m_; }
  Eigen::Vector3d apply(const Eigen::Vector3d& p) const;
  /// M^-1 P. Entries may come out slightly negative; they are kept and
  /// reported through `negative`.
  Eigen::Vector3d correct(const Eigen::Vector3d& measured, bool* negative = nullptr) const;

 private:
  explicit AssignmentMatrix(const Eigen::Matrix3d& m);
  Eigen::Matrix3d m_;
  Eigen::Matrix3d inv_;
};

Eigen::Vector3d apply_readout(const Eigen::Vector3d& p, const AssignmentMatrix& m);
Eigen::Vector3d correct_readout(const Eigen::Vector3d& measured, const AssignmentMatrix& m);

/// Qutrit channel under test, rho -> rho'.
using QutritChannel = std::function<ComplexMatrix(const ComplexMatrix&)>;

/// Operator basis {I_gf, sx_gf, -i sy_gf, sz_gf, sx_ge, -i sy_ge, sx_ef, -i sy_ef, I_e}.
std::vector<ComplexMatrix> chi_basis();
const std::array<std::string, 9>& chi_basis_labels();

/// The nine input states and nine tomography prerotations.
std::vector<Ket> qpt_input_states();
std::vector<ComplexMatrix> qpt_prerotations();

struct ChiMatrix {
  ComplexMatrix full;     // 9x9, unit trace in the Hilbert-Schmidt-normalized basis
  ComplexMatrix reduced;  // 4x4 on {I, sx, -i sy, sz}, the gf block times 3/2
  double clipped_weight = 0.0;  // total negative eigenvalue weight removed
  int negative_corrections = 0;  // readout-corrected vectors with entries < 0

  nlohmann::ordered_json to_json() const;
  /// basis_row, basis_col, re, im of the reduced matrix
  void write_bars_csv(std::ostream& os) const;
};

/// Linear-inversion state tomography from the populations seen after each
/// prerotation (optionally through the readout model).
ComplexMatrix reconstruct_state(const ComplexMatrix& rho_true, const std::optional<AssignmentMatrix>& readout,
                                int* negative_corrections = nullptr);

ChiMatrix qpt(const QutritChannel& channel, const std::optional<AssignmentMatrix>& readout = std::nullopt);

/// Reduced chi of a 2x2 unitary, c_m c_n^* with c_m = Tr(P_m^dag U)/2.
ComplexMatrix ideal_chi(const ComplexMatrix& u);

/// |Tr(chi_R chi_ideal^dag)|
double process_fidelity(const ComplexMatrix& chi_reduced, const ComplexMatrix& ideal_gate);

}  // namespace hlab
