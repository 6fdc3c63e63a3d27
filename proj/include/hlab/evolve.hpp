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
#include <vector>

#include "hlab/model.hpp"
#include "hlab/pulses.hpp"

namespace hlab {

inline constexpr double kDefaultStep = 0.05;
inline constexpr double kTraceDriftLimit = 1e-5;

struct EvolutionTrace {
  std::vector<double> times;
  std::vector<ComplexMatrix> unitaries;
  std::vector<DensityMatrix> states;
  std::vector<std::array<double, 3>> populations;

  /// t_ns, P_g, P_e, P_f
  void write_csv(std::ostream& os) const;
};

/// H for segment `seg` at local time t.
using SegmentHamiltonian = std::function<ComplexMatrix(int seg, double t_local)>;

/// Called after every step with the global time and the current state
/// (propagator in the closed case, density matrix in the open case).
using StepObserver = std::function<void(double t, const ComplexMatrix& state)>;

/// Number of equal sub-steps used for a segment of the given duration.
int steps_for(double duration, double step);

/// Bright-frame drive of a schedule mapped onto the qutrit.
SegmentHamiltonian qutrit_drive(const PulseSchedule& s, const BrightFrame& frame);

/// Fourth-order Magnus step over [t, t + h] from two Gauss-Legendre nodes.
ComplexMatrix magnus4_step(const ComplexMatrix& h1, const ComplexMatrix& h2, double h);

/// Time-ordered propagator, composed from Magnus steps inside each segment.
ComplexMatrix evolve_unitary(const PulseSchedule& s, const SegmentHamiltonian& ham, Eigen::Index dim,
                             double step, const StepObserver& observer = {});

/// drho/dt = -i[H, rho] + sum L rho L^dag - 1/2 {L^dag L, rho}
ComplexMatrix lindblad_rhs(const ComplexMatrix& h, const std::vector<ComplexMatrix>& ops,
                           const ComplexMatrix& rho);

/// Fixed-step RK4 on the master equation. Throws NumericalError on trace drift.
ComplexMatrix evolve_density(const PulseSchedule& s, const SegmentHamiltonian& ham,
                             const std::vector<ComplexMatrix>& ops, const ComplexMatrix& rho0, double step,
                             const StepObserver& observer = {});

/// Column-stacked Liouvillian of the master equation above.
ComplexMatrix liouvillian(const ComplexMatrix& h, const std::vector<ComplexMatrix>& ops);

/// Superoperator of the whole schedule, acting on vec(rho).
ComplexMatrix evolve_channel(const PulseSchedule& s, const SegmentHamiltonian& ham,
                             const std::vector<ComplexMatrix>& ops, Eigen::Index dim, double step);

/// Free decay for `duration` ns.
ComplexMatrix idle_channel(const std::vector<ComplexMatrix>& ops, Eigen::Index dim, double duration, double step);

ComplexMatrix apply_channel(const ComplexMatrix& superop, const ComplexMatrix& rho);
ComplexMatrix unitary_channel(const ComplexMatrix& u);

/// Closed-system trace of a qutrit schedule. Populations follow `initial`
/// (|g> when not given).
EvolutionTrace propagate_unitary(const PulseSchedule& s, const BrightFrame& frame, double step = kDefaultStep,
                                 const std::optional<Ket>& initial = std::nullopt);

/// Open-system trace. The Rabi error in `noise` is applied to the schedule.
EvolutionTrace propagate_lindblad(const PulseSchedule& s, const BrightFrame& frame, const NoiseModel& noise,
                                  const DensityMatrix& rho0, double step = kDefaultStep);

/// Final propagator only.
ComplexMatrix gate_propagator(const PulseSchedule& s, const BrightFrame& frame, double step = kDefaultStep);

/// Final superoperator of a qutrit schedule under the noise model.
ComplexMatrix gate_channel(const PulseSchedule& s, const BrightFrame& frame, const NoiseModel& noise,
                           double step = kDefaultStep);

/// {|g>, |f>} block of a qutrit operator.
ComplexMatrix computational_block(const ComplexMatrix& u);

}  // namespace hlab
