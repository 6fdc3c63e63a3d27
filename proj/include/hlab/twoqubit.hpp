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

#include <iosfwd>
#include <string>
#include <vector>

#include "hlab/evolve.hpp"
#include "hlab/model.hpp"
#include "hlab/pulses.hpp"

namespace hlab {

inline constexpr double kTwoQubitStep = 0.5;
inline constexpr double kRamanDuration = 140.0;
inline constexpr double kLeakageWarning = 0.01;
// Cavity T1 and T2* in us.
inline constexpr double kCavityT1 = 334.0;
inline constexpr double kCavityT2Star = 243.0;

/// Index of |n, s> in the qutrit (x) Fock space: n * 3 + s.
inline Eigen::Index two_qubit_index(int n, Eigen::Index level) { return 3 * static_cast<Eigen::Index>(n) + level; }

/// "|n,s>" for a flat index.
std::string two_qubit_label(Eigen::Index index);

/// Computational 4-space {|0g>, |0f>, |2g>, |2f>} as flat indices.
std::vector<Eigen::Index> two_qubit_subspace();

/// Selective-drive gate times: 23 single-qubit gate times.
double default_two_qubit_tau(Scheme s);

/// diag(e^{i gamma/2} U1, I) on the computational 4-space.
ComplexMatrix two_qubit_target(const GateSpec& g);

struct TwoQubitState {
  int fock_levels = 4;
  Ket ket;

  double population(int n, Eigen::Index level) const;
  /// Amplitudes keyed by |n,s> label, zero entries skipped.
  nlohmann::ordered_json to_json() const;
};

struct TwoQubitGate {
  PulseSchedule schedule;
  DispersiveSystemParams params;
  // Drive in the rotating frame of the n = 0 transitions.
  ComplexMatrix propagator;
  // Diagonal phase frame, calibrated once on the error-free propagator.
  ComplexMatrix frame;
  double leakage = 0.0;
  std::vector<std::string> warnings;

  ComplexMatrix corrected() const { return frame * propagator; }
  /// 4x4 block of the corrected propagator on two_qubit_subspace().
  ComplexMatrix computational_block() const;
  /// Phase-sensitive fidelity |Tr(block target^dag)| / 4.
  double fidelity_to_target() const;
};

/// Full-space Hamiltonian: dispersive shifts plus the qutrit drive on every
/// Fock block.
SegmentHamiltonian dispersive_drive(const PulseSchedule& s, const BrightFrame& frame,
                                    const DispersiveSystemParams& params);

/// Builds and propagates the number-selective gate. `epsilon` scales the
/// drive; the frame is calibrated at epsilon = 0.
TwoQubitGate build_two_qubit_gate(const GateSpec& g, Scheme scheme, double tau, const DispersiveSystemParams& params,
                                  double epsilon = 0.0, double step = kTwoQubitStep);

enum class FockTarget { kZero, kTwo, kSuperposition };

FockTarget fock_target_from_string(const std::string& s);

/// Ladder |0g> -> |0e> -> |0f> -> |1g> -> ... -> |2g> with ideal selective
/// qutrit pulses and effective resonant Raman couplings.
TwoQubitState prepare_fock(FockTarget target, int fock_levels = 4, double raman_duration = kRamanDuration);

struct CnotPoint {
  double epsilon = 0.0;
  double p_g = 0.0;
  double p_e = 0.0;
  double p_f = 0.0;
};

/// CNOT on |0f> with scaled drives; transmon populations traced over Fock.
std::vector<CnotPoint> cnot_robustness(const std::vector<double>& epsilons, Scheme scheme,
                                       const DispersiveSystemParams& params, double tau, double step = kTwoQubitStep);

/// epsilon, P_g, P_e, P_f
void write_cnot_csv(std::ostream& os, const std::vector<CnotPoint>& pts);

struct CnotDecoherence {
  double fidelity_0f = 0.0;
  double fidelity_2g = 0.0;
  double mean = 0.0;
};

/// Lindblad CNOT with transmon operators on every Fock block plus cavity
/// relaxation and dephasing. State fidelities are taken against the ideal
/// corrected outputs for |0f> and |2g>.
CnotDecoherence cnot_decoherence(Scheme scheme, const NoiseModel& noise, const DispersiveSystemParams& params,
                                 double tau, double cavity_t1_us = kCavityT1, double cavity_t2_star_us = kCavityT2Star,
                                 double step = kTwoQubitStep);

}  // namespace hlab
