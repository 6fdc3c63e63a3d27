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

#include "hlab/pulses.hpp"

#include <cmath>
#include <iomanip>
#include <ostream>

namespace hlab {

namespace {

constexpr double kOmegaClip = 1e-9;

void require_tau(double tau) {
  if (!std::isfinite(tau) || !(tau > 0.0)) throw ValidationError("tau must be finite and > 0");
}

// Parametric two-segment construction. chi = pi sin^2(pi t / tau) sweeps
// 0 -> pi -> 0; the first half carries |b> to |e>, the second brings it back
// with the extra phase gamma' = -gamma - pi.
DriveSample dynamical_sample(const PulseSchedule& s, int segment, double t_local) {
  const double tau = s.tau;
  const double t = segment == 0 ? t_local : t_local + tau / 2;
  const double sn = std::sin(kPi * t / tau);
  const double chi = kPi * sn * sn;
  const double chi_dot = (kPi * kPi / tau) * std::sin(2.0 * kPi * t / tau);
  const double s1 = std::sin(chi);
  const double s3 = s1 * s1 * s1;
  const double gamma_prime = -s.gate.gamma - kPi;

  double x;
  double aux;
  if (segment == 0) {
    // atan(-1/(2 s^3)), continuous through s = 0 where it tends to -pi/2.
    x = std::atan2(-1.0, 2.0 * s3);
    aux = -(2.0 / 3.0) * s3;
  } else {
    x = std::atan2(1.0, 2.0 * s3);
    aux = (2.0 / 3.0) * s3 + gamma_prime;
  }
  double omega = std::abs(chi_dot) * std::sqrt(1.0 + 4.0 * s3 * s3);
  if (omega < kOmegaClip) omega = 0.0;
  return {s.amplitude_scale * omega, x - aux, segment};
}

}  // namespace

ComplexMatrix GateSpec::target() const {
  const double nx = std::sin(theta) * std::cos(phi);
  const double ny = std::sin(theta) * std::sin(phi);
  const double nz = std::cos(theta);
  const ComplexMatrix gen = nx * qmath::pauli_x() + ny * qmath::pauli_y() + nz * qmath::pauli_z();
  return std::cos(gamma / 2) * ComplexMatrix::Identity(2, 2) - kI * std::sin(gamma / 2) * gen;
}

void GateSpec::validate() const {
  if (!std::isfinite(theta) || !std::isfinite(phi) || !std::isfinite(gamma)) {
    throw ValidationError("GateSpec: angles must be finite");
  }
}

GateSpec GateSpec::named(const std::string& name) {
  const double h = kPi / 2;
  if (name == "I") return {0.0, 0.0, 0.0};
  if (name == "X") return {h, 0.0, kPi};
  if (name == "Y") return {h, h, kPi};
  if (name == "Z") return {0.0, 0.0, kPi};
  if (name == "X/2") return {h, 0.0, h};
  if (name == "Y/2") return {h, h, h};
  if (name == "-X") return {h, 0.0, -kPi};
  if (name == "-Y") return {h, h, -kPi};
  if (name == "-X/2") return {h, 0.0, -h};
  if (name == "-Y/2") return {h, h, -h};
  throw ValidationError("unknown gate name '" + name + "'");
}

std::string to_string(Scheme s) {
  switch (s) {
    case Scheme::kSrNhqc:
      return "sr";
    case Scheme::kNhqc:
      return "nhqc";
    case Scheme::kDynamical:
      return "dynamical";
  }
  return "?";
}

Scheme scheme_from_string(const std::string& s) {
  if (s == "sr" || s == "sr-nhqc") return Scheme::kSrNhqc;
  if (s == "nhqc") return Scheme::kNhqc;
  if (s == "dynamical") return Scheme::kDynamical;
  throw ValidationError("unknown scheme '" + s + "' (expected sr, nhqc or dynamical)");
}

double default_tau(Scheme s) {
  switch (s) {
    case Scheme::kSrNhqc:
      return kDefaultTauSr;
    case Scheme::kNhqc:
      return kDefaultTauNhqc;
    case Scheme::kDynamical:
      return kDefaultTauDynamical;
  }
  return kDefaultTauSr;
}

double sample_envelope(const PulseSegment& seg, double t) {
  const double T = seg.duration;
  if (!(T > 0.0)) throw ValidationError("sample_envelope: non-positive duration");
  const double slack = 1e-12 * T;
  if (t < -slack || t > T + slack) throw ValidationError("sample_envelope: t outside segment");
  switch (seg.envelope) {
    case Envelope::kCosine:
      return seg.area / T * (1.0 - std::cos(2.0 * kPi * t / T));
    case Envelope::kSquare:
      return seg.area / T;
    case Envelope::kParametric:
      break;
  }
  throw ValidationError("sample_envelope: parametric segment has no closed envelope");
}

DriveSample PulseSchedule::sample(int segment, double t_local) const {
  if (segment < 0 || segment >= static_cast<int>(segments.size())) {
    throw ValidationError("PulseSchedule::sample: segment index out of range");
  }
  const PulseSegment& seg = segments[segment];
  if (seg.envelope == Envelope::kParametric) return dynamical_sample(*this, segment, t_local);
  return {sample_envelope(seg, t_local), -seg.phase, segment};
}

DriveSample PulseSchedule::sample_at(double t) const {
  double start = 0.0;
  for (std::size_t i = 0; i < segments.size(); ++i) {
    const double end = start + segments[i].duration;
    if (t < end || i + 1 == segments.size()) {
      return sample(static_cast<int>(i), std::min(std::max(t - start, 0.0), segments[i].duration));
    }
    start = end;
  }
  return {};
}

std::vector<double> PulseSchedule::segment_starts() const {
  std::vector<double> out;
  double t = 0.0;
  for (const auto& s : segments) {
    out.push_back(t);
    t += s.duration;
  }
  return out;
}

double PulseSchedule::total_area() const {
  double area = 0.0;
  for (std::size_t i = 0; i < segments.size(); ++i) {
    const auto& seg = segments[i];
    if (seg.envelope != Envelope::kParametric) {
      area += seg.area;
      continue;
    }
    // Simpson on the parametric amplitude.
    const int n = 4000;
    const double h = seg.duration / n;
    double acc = 0.0;
    for (int k = 0; k <= n; ++k) {
      const double w = (k == 0 || k == n) ? 1.0 : (k % 2 ? 4.0 : 2.0);
      acc += w * sample(static_cast<int>(i), k * h).omega;
    }
    area += acc * h / 3.0;
  }
  return area;
}

double PulseSchedule::peak_omega(int samples_per_segment) const {
  double best = 0.0;
  for (std::size_t i = 0; i < segments.size(); ++i) {
    for (int k = 0; k <= samples_per_segment; ++k) {
      const double t = segments[i].duration * k / samples_per_segment;
      best = std::max(best, sample(static_cast<int>(i), t).omega);
    }
  }
  return best;
}

void PulseSchedule::write_csv(std::ostream& os, double step) const {
  if (!(step > 0.0)) throw ValidationError("write_csv: step must be > 0");
  os << "t_ns,Omega_rad_per_ns,phi1_rad,segment_index\n";
  os << std::setprecision(12);
  const auto starts = segment_starts();
  for (std::size_t i = 0; i < segments.size(); ++i) {
    const int n = std::max(1, static_cast<int>(std::round(segments[i].duration / step)));
    const double h = segments[i].duration / n;
    for (int k = 0; k < n; ++k) {
      const DriveSample d = sample(static_cast<int>(i), k * h);
      os << starts[i] + k * h << ',' << d.omega << ',' << d.phi1 << ',' << i << '\n';
    }
  }
  const DriveSample last = sample(static_cast<int>(segments.size()) - 1, segments.back().duration);
  os << tau << ',' << last.omega << ',' << last.phi1 << ',' << segments.size() - 1 << '\n';
}

PulseSchedule build_sr_nhqc(const GateSpec& g, double tau) {
  g.validate();
  require_tau(tau);
  const double gm = g.gamma;
  PulseSchedule s;
  s.scheme = Scheme::kSrNhqc;
  s.gate = g;
  s.tau = tau;
  s.segments = {
      {kPi / 2, gm - kPi, tau / 8},     {kPi, gm - kPi / 2, tau / 4}, {kPi / 2, gm - kPi, tau / 8},
      {kPi / 2, 0.0, tau / 8},          {kPi, kPi / 2, tau / 4},      {kPi / 2, 0.0, tau / 8},
  };
  return s;
}

PulseSchedule build_nhqc(const GateSpec& g, double tau) {
  g.validate();
  require_tau(tau);
  PulseSchedule s;
  s.scheme = Scheme::kNhqc;
  s.gate = g;
  s.tau = tau;
  // Two pi rotations whose drive phases differ by gamma - pi.
  s.segments = {{kPi, 0.0, tau / 2}, {kPi, kPi - g.gamma, tau / 2}};
  return s;
}

PulseSchedule build_dynamical(const GateSpec& g, double tau) {
  g.validate();
  require_tau(tau);
  PulseSchedule s;
  s.scheme = Scheme::kDynamical;
  s.gate = g;
  s.tau = tau;
  s.segments = {{kPi, 0.0, tau / 2, Envelope::kParametric}, {kPi, 0.0, tau / 2, Envelope::kParametric}};
  return s;
}

PulseSchedule build_schedule(Scheme sc, const GateSpec& g, double tau) {
  switch (sc) {
    case Scheme::kSrNhqc:
      return build_sr_nhqc(g, tau);
    case Scheme::kNhqc:
      return build_nhqc(g, tau);
    case Scheme::kDynamical:
      return build_dynamical(g, tau);
  }
  throw ValidationError("build_schedule: unknown scheme");
}

PulseSchedule apply_rabi_error(const PulseSchedule& s, double epsilon) {
  if (!std::isfinite(epsilon) || std::abs(epsilon) > 1.0) {
    throw ValidationError("apply_rabi_error: |epsilon| must be <= 1");
  }
  PulseSchedule out = s;
  for (auto& seg : out.segments) {
    if (seg.envelope == Envelope::kParametric) continue;
    seg.area *= 1.0 + epsilon;
  }
  out.amplitude_scale *= 1.0 + epsilon;
  return out;
}

PulseSchedule with_envelope(const PulseSchedule& s, Envelope env) {
  if (env == Envelope::kParametric) throw ValidationError("with_envelope: cannot switch to parametric");
  PulseSchedule out = s;
  for (auto& seg : out.segments) {
    if (seg.envelope == Envelope::kParametric) {
      throw ValidationError("with_envelope: parametric schedules have a fixed shape");
    }
    seg.envelope = env;
  }
  return out;
}

}  // namespace hlab
