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

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "hlab/model.hpp"
#include "hlab/pulses.hpp"
#include "hlab/qmath.hpp"
#include "hlab/tomography.hpp"

namespace hlab {

inline constexpr int kCliffordCount = 24;
inline constexpr double kGatesPerClifford = 1.875;

struct CliffordElement {
  int index = 0;
  ComplexMatrix unitary;              // 2x2 on {|g>, |f>}
  std::vector<std::string> gates;     // physical gate tags in time order
};

/// Frozen 24-element table built from {I, X, Y, +-X/2, +-Y/2}, 45 gates in all.
const std::vector<CliffordElement>& clifford_table();

/// Index of the element equal to `u` up to a global phase, or -1.
int clifford_index_of(const ComplexMatrix& u);

/// Index of C_b C_a (a applied first).
int clifford_compose(int a, int b);
int clifford_inverse(int a);

/// Physical gate tag -> qutrit superoperator (9x9, acts on vec(rho)).
using GateChannelFactory = std::function<ComplexMatrix(const std::string& tag)>;

struct RbOptions {
  std::vector<int> m_values{1, 10, 20, 40, 60, 80, 100, 150, 200, 300};
  int sequences = 50;
  std::uint64_t seed = 1;
  std::optional<std::string> interleaved;  // physical gate tag, must be a Clifford
  std::optional<ComplexMatrix> clifford_noise;  // extra channel after every Clifford
  std::optional<AssignmentMatrix> readout;
};

struct RbFit {
  double a = 0.0;
  double p = 1.0;
  double b = 0.0;
  double residual_rms = 0.0;
  bool converged = false;
  bool degenerate = false;  // flat decay, p reported as 1
  std::string status;
};

struct RbResult {
  std::vector<int> m_values;
  std::vector<double> mean_pg;
  std::vector<double> std_pg;
  int sequences = 0;
  RbFit fit;

  /// m, mean_Pg, std_Pg, n_seqs
  void write_csv(std::ostream& os) const;
  nlohmann::ordered_json fit_json() const;
};

/// Noisy holonomic gates from `scheme`; "I" is a free decay of the same
/// length as the scheme's gate.
GateChannelFactory holonomic_gate_factory(Scheme scheme, const NoiseModel& noise, double tau, double step);

RbResult run_rb(const GateChannelFactory& factory, const RbOptions& opts);

/// Fits F = A p^m + B with A, B in [0, 1] and p in (0, 1].
RbFit fit_rb_decay(const std::vector<int>& m, const std::vector<double>& f);

struct RbFidelities {
  double f_ref = 1.0;
  std::optional<double> f_gate;
  bool gate_exceeds_ref = false;
};

RbFidelities rb_fidelities(double p_ref, std::optional<double> p_gate = std::nullopt, double tolerance = 1e-3);

/// Qubit depolarizing channel p rho + (1-p) I/2 on the {|g>, |f>} block,
/// extended to the qutrit with Kraus operators P_k (+) I_e.
ComplexMatrix depolarizing_superop(double p);

}  // namespace hlab
