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
#include <optional>
#include <string>
#include <vector>

#include "hlab/evolve.hpp"
#include "hlab/model.hpp"
#include "hlab/pulses.hpp"

namespace hlab {

/// Rates in 1/us, times in us.
struct DecayFitResult {
  double gamma_ge = 0.0;
  double gamma_ef = 0.0;
  double gamma_gf = 0.0;
  // Fitted initial populations of |f> and |e>.
  double p_f0 = 1.0;
  double p_e0 = 0.0;
  // One standard error and 95% half-widths, in the order ge, ef, gf.
  std::vector<double> std_error;
  std::vector<double> ci95;
  double residual_rms = 0.0;
  int iterations = 0;
  bool converged = false;
  std::string status;

  nlohmann::ordered_json to_json() const;
};

/// Populations of the three-level cascade f -> e -> g with a direct f -> g
/// channel. Returns (P_g, P_e, P_f).
std::array<double, 3> rate_equation_populations(double gamma_ge, double gamma_ef, double gamma_gf, double p_f0,
                                                double p_e0, double t);

/// Global fit of all three population curves.
DecayFitResult fit_rate_equation(const std::vector<double>& times, const std::vector<double>& p_g,
                                 const std::vector<double>& p_e, const std::vector<double>& p_f);

struct RamseyOptions {
  // Adds B exp(-t / T_d) to the model (e <-> f Ramsey).
  bool exponential_offset = false;
};

/// y = y0 + A exp(-t / T2*) cos(2 pi f t + phase) [+ B exp(-t / T_d)].
/// Times in us, frequencies in MHz.
struct RamseyFitResult {
  // Empty when the decay is not resolved; t2_lower_bound is set instead.
  std::optional<double> t2_star;
  std::optional<double> t2_lower_bound;
  double decay_rate = 0.0;
  double decay_rate_error = 0.0;
  double frequency = 0.0;
  double amplitude = 0.0;
  double offset = 0.0;
  double phase = 0.0;
  double offset_amplitude = 0.0;
  double offset_decay_time = 0.0;
  double residual_rms = 0.0;
  int iterations = 0;
  bool converged = false;
  std::string status;

  nlohmann::ordered_json to_json() const;
};

double ramsey_model(const RamseyFitResult& p, double t);

RamseyFitResult fit_ramsey(const std::vector<double>& times, const std::vector<double>& signal,
                           const RamseyOptions& opts = {});

/// (2 G1 + 2 G2 + 2 G3 + G_ge + G_ef) tau / 9 with rates in 1/us and tau in ns.
double coherence_limited_error(const NoiseModel& n, double tau);

/// 1 - average gate fidelity on {|g>, |f>} of the simulated noisy gate,
/// averaged over the six Pauli eigenstates. Leakage counts as error.
double lindblad_average_error(const GateSpec& g, Scheme scheme, const NoiseModel& n, double tau,
                              double step = kDefaultStep);

}  // namespace hlab
