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

#include <vector>

#include "hlab/qmath.hpp"

namespace hlab {

// Qutrit level indices. The two-qubit space uses n * 3 + level.
inline constexpr Eigen::Index kLevelG = 0;
inline constexpr Eigen::Index kLevelE = 1;
inline constexpr Eigen::Index kLevelF = 2;

/// Instantaneous drive on the two qutrit transitions (rad/ns, rad).
struct QutritDriveParams {
  double omega_ge = 0.0;
  double omega_ef = 0.0;
  double phi0 = 0.0;
  double phi1 = 0.0;

  void validate() const;
};

struct BrightFrame {
  double theta = 0.0;
  double phi = 0.0;
  Ket bright;
  Ket dark;
  Ket excited;
};

BrightFrame bright_frame(double theta, double phi);

/// Splits a bright-state drive of amplitude omega and phase phi1 into the
/// two transition drives. Negative amplitudes are folded into the phase.
QutritDriveParams drive_from_bright(const BrightFrame& frame, double omega, double phi1);

/// Rotating-frame Hamiltonian in the (g, e, f) basis.
ComplexMatrix qutrit_hamiltonian(const QutritDriveParams& p);

/// Rabi error plus transmon rates. Rates are in 1/us.
struct NoiseModel {
  double epsilon = 0.0;
  double gamma_ge = 0.0;
  double gamma_ef = 0.0;
  double gamma_gf = 0.0;
  // Echo dephasing rates for the ge, ef and gf coherences.
  double gamma1 = 0.0;
  double gamma2 = 0.0;
  double gamma3 = 0.0;

  void validate() const;
  bool has_decoherence() const;

  // Device values: T1 18.9 / 12.7 us, T2E 38 us on ge, ef and gf T2E
  // estimated from the relaxation rates.
  static NoiseModel device_defaults();
};

/// Pure-dephasing rates (1/us) on |e> and |f> implied by the model, clipped at 0.
double pure_dephasing_e(const NoiseModel& n);
double pure_dephasing_f(const NoiseModel& n);

/// Collapse operators with the rate folded in, in sqrt(1/ns). Zero-rate
/// channels are omitted.
std::vector<ComplexMatrix> collapse_operators(const NoiseModel& n);

struct DispersiveSystemParams {
  // rad/ns
  double chi_ge = 2.0 * kPi * 2.87e-3;
  double chi_ef = 2.0 * kPi * 2.08e-3;
  int fock_levels = 4;

  void validate() const;
  Eigen::Index dim() const { return 3 * static_cast<Eigen::Index>(fock_levels); }
};

/// Diagonal dispersive part of the transmon-cavity Hamiltonian.
ComplexMatrix dispersive_shift(const DispersiveSystemParams& p);

/// Dispersive part plus the qutrit drive on every Fock block (drive
/// resonant with the n = 0 block).
ComplexMatrix dispersive_hamiltonian(const DispersiveSystemParams& p, const QutritDriveParams& drive);

/// Lifts a qutrit operator to I_N (x) op.
ComplexMatrix embed_qutrit(const ComplexMatrix& op, int fock_levels);

/// Cavity annihilation operator a (x) I_3.
ComplexMatrix cavity_lowering(int fock_levels);

/// Cavity relaxation and pure dephasing from T1 and T2* (us).
std::vector<ComplexMatrix> cavity_collapse_operators(double t1_us, double t2_star_us, int fock_levels);

}  // namespace hlab
