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
#include <vector>

#include "hlab/evolve.hpp"

namespace hlab {

/// Dynamical-phase integrands d_mn(t) = <psi_m(t)|H(t)|psi_n(t)> for
/// psi_1(0) = |b>, psi_2(0) = |e>, and their integrals D_mn. Times repeat at
/// segment boundaries so each segment is integrated on its own.
struct PhaseRecord {
  std::vector<double> times;
  std::vector<double> d11;
  std::vector<double> d22;
  std::vector<cplx> d12;
  double D11 = 0.0;
  double D22 = 0.0;
  cplx D12{0.0, 0.0};

  // Same integrands rebuilt from <H> in four evolved density matrices.
  std::vector<double> d11_rho;
  std::vector<double> d22_rho;
  std::vector<cplx> d12_rho;
  double D11_rho = 0.0;
  double D22_rho = 0.0;
  cplx D12_rho{0.0, 0.0};

  double path_discrepancy = 0.0;  // max pointwise |direct - reconstructed|
  double dark_coupling = 0.0;     // max |<psi_0|H|psi_n>|

  /// t_ns, d11, d22, Re_d12, Im_d12
  void write_csv(std::ostream& os) const;
};

PhaseRecord phase_record(const PulseSchedule& s, const BrightFrame& frame, double step = kDefaultStep);

/// Closed-form fidelity of the Rabi-error-perturbed superrobust gate.
double analytic_fidelity(double gamma, double epsilon);

/// Bright-state amplitude after the perturbed superrobust loop.
cplx perturbed_bright_factor(double gamma, double epsilon);

/// |d><d| + X |b><b| on {|g>, |f>}; equals U1 up to a global phase at epsilon = 0.
ComplexMatrix analytic_noisy_gate(const GateSpec& g, double epsilon);

struct SweepPoint {
  double epsilon = 0.0;
  double f_sim = 0.0;
  double f_analytic = 0.0;  // superrobust closed form, whatever the scheme
};

/// Truncated propagator fidelity against U1 over an epsilon grid.
std::vector<SweepPoint> robustness_sweep(const GateSpec& g, Scheme scheme, const std::vector<double>& eps_grid,
                                         double tau, double step = kDefaultStep);

double simulated_fidelity(const PulseSchedule& s, double epsilon, double step = kDefaultStep);

/// Log-log slope of 1 - F against |epsilon| over [eps_min, eps_max],
/// skipping points with 1 - F below 1e-12.
double fit_loglog_slope(const std::vector<SweepPoint>& pts, double eps_min, double eps_max);

/// <b| U_eps(tau) |b> for the schedule with Rabi error epsilon.
cplx bright_element(const PulseSchedule& s, const BrightFrame& frame, double epsilon, double step = kDefaultStep);

/// Deviations || U_I - (I + R_1 + ... + R_k) ||_F for k = 1..order, with U_I
/// the perturbed propagator in the interaction picture of the ideal one,
/// expressed in the {|d>, |b>, |e>} basis.
std::vector<double> perturbative_deviations(const PulseSchedule& s, const BrightFrame& frame, double epsilon,
                                            int order, double step = kDefaultStep);

double perturbative_expansion_check(const PulseSchedule& s, const BrightFrame& frame, double epsilon, int order,
                                    double step = kDefaultStep);

}  // namespace hlab
