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
#include <istream>
#include <optional>
#include <string>
#include <vector>

#include "hlab/model.hpp"
#include "hlab/pulses.hpp"

namespace hlab {

/// Library version recorded in every output header.
const char* version();

/// 64-bit FNV-1a.
std::uint64_t fnv1a64(const std::string& data);

/// Flat key = value configuration. Physical keys carry their unit as a
/// suffix (_GHz, _MHz, _us, _ns, _rad). Lines starting with '#' and text
/// after a '#' are comments.
struct RunConfig {
  // Device. Frequencies and readout couplings are metadata only: the
  // dynamics run in the rotating frame of the drives.
  double omega_R_GHz = 8.68;
  double omega_S_GHz = 6.56;
  double omega_ge_GHz = 5.31;
  double omega_ef_GHz = 5.12;
  double chi_RQ_ge_MHz = 2.52;
  double chi_RQ_ef_MHz = 2.39;
  double chi_SQ_ge_MHz = 2.87;
  double chi_SQ_ef_MHz = 2.08;
  int fock_levels = 4;

  double T1_ge_us = 18.9;
  double T1_ef_us = 12.7;
  double T1_gf_us = 500.0;
  double T2E_ge_us = 38.0;
  // Not measured; 2 / Gamma_ef and 2 / (Gamma_1 + Gamma_2).
  double T2E_ef_us = 26.0;
  double T2E_gf_us = 31.0;
  double T2star_ge_us = 25.9;
  double T1_cavity_us = 334.0;
  double T2star_cavity_us = 243.0;

  double raman_duration_ns = 140.0;
  double raman_drive_GHz = 3.83;

  // Run.
  std::string scheme = "sr";
  std::string gate = "X";
  std::optional<double> theta_rad;
  std::optional<double> phi_rad;
  std::optional<double> gamma_rad;
  // 0 selects the scheme default.
  double tau_ns = 0.0;
  double two_qubit_tau_ns = 0.0;
  double step_ns = 0.05;
  double two_qubit_step_ns = 0.5;
  double epsilon = 0.0;
  double epsilon_min = -0.2;
  double epsilon_max = 0.2;
  int epsilon_points = 41;
  bool noise = false;
  bool readout = false;
  std::uint64_t seed = 1;
  int rb_sequences = 50;
  std::vector<int> rb_lengths{1, 10, 20, 40, 60, 80, 100, 150, 200, 300};
  std::string output_dir = "out";

  /// Parses and validates. Unknown or repeated keys are rejected.
  static RunConfig parse(std::istream& in, const std::string& source = "<config>");
  static RunConfig load(const std::string& path);

  /// Sets one key from its text form, as in a config line.
  void set(const std::string& key, const std::string& value);
  void validate() const;

  /// Every key except output_dir in fixed order, one "key = value" per
  /// line. Outputs depend on nothing else, so the hash identifies a run.
  std::string canonical() const;
  std::string hash_hex() const;
  /// "# holonomy-lab <version> config_hash=<hex>"
  std::string header() const;

  Scheme scheme_value() const;
  GateSpec gate_spec() const;
  double tau() const;
  double two_qubit_tau() const;
  std::vector<double> epsilon_grid() const;
  /// Device relaxation and echo dephasing rates plus `epsilon`.
  NoiseModel noise_model() const;
  DispersiveSystemParams dispersive_params() const;

  static std::vector<std::string> keys();
};

}  // namespace hlab
