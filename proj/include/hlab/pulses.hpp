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

#include "hlab/model.hpp"

namespace hlab {

inline constexpr double kDefaultTauSr = 120.0;
inline constexpr double kDefaultTauNhqc = 60.0;
inline constexpr double kDefaultTauDynamical = 105.0;

/// Target rotation exp(-i gamma/2 n.sigma) on {|g>, |f>}, with |g> the +1
/// eigenstate of sigma_z.
struct GateSpec {
  double theta = 0.0;
  double phi = 0.0;
  double gamma = 0.0;

  ComplexMatrix target() const;
  void validate() const;

  /// X, Y, Z, X/2, Y/2, -X, -Y, -X/2, -Y/2, I.
  static GateSpec named(const std::string& name);
};

enum class Scheme { kSrNhqc, kNhqc, kDynamical };

std::string to_string(Scheme s);
Scheme scheme_from_string(const std::string& s);
double default_tau(Scheme s);

enum class Envelope { kCosine, kSquare, kParametric };

/// One rotation R_phase(area) on {|b>, |e>}. `phase` is the Bloch azimuth of
/// the rotation axis; the drive phase entering H is its negative.
struct PulseSegment {
  double area = 0.0;
  double phase = 0.0;
  double duration = 0.0;
  Envelope envelope = Envelope::kCosine;
};

/// Bright-state drive at one instant: H = omega/2 (e^{i phi1}|b><e| + h.c.).
struct DriveSample {
  double omega = 0.0;
  double phi1 = 0.0;
  int segment = 0;
};

/// Omega(t) of one area-normalized segment at local time t.
double sample_envelope(const PulseSegment& seg, double t);

struct PulseSchedule {
  Scheme scheme = Scheme::kSrNhqc;
  GateSpec gate;
  double tau = 0.0;
  std::vector<PulseSegment> segments;
  // Only used by parametric (dynamical) segments; piecewise segments carry
  // the scaling in their areas.
  double amplitude_scale = 1.0;

  DriveSample sample(int segment, double t_local) const;
  DriveSample sample_at(double t) const;
  std::vector<double> segment_starts() const;
  double total_area() const;
  double peak_omega(int samples_per_segment = 2000) const;

  /// t_ns, Omega_rad_per_ns, phi1_rad, segment_index.
  void write_csv(std::ostream& os, double step) const;
};

PulseSchedule build_sr_nhqc(const GateSpec& g, double tau = kDefaultTauSr);
PulseSchedule build_nhqc(const GateSpec& g, double tau = kDefaultTauNhqc);
PulseSchedule build_dynamical(const GateSpec& g, double tau = kDefaultTauDynamical);
PulseSchedule build_schedule(Scheme s, const GateSpec& g, double tau);

PulseSchedule apply_rabi_error(const PulseSchedule& s, double epsilon);

/// Same areas and phases, different envelope (piecewise schedules only).
PulseSchedule with_envelope(const PulseSchedule& s, Envelope env);

}  // namespace hlab
