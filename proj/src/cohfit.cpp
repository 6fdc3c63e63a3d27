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

#include "hlab/cohfit.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "hlab/lsq.hpp"

namespace hlab {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kZ95 = 1.959963984540054;
// Decays slower than this fraction of the record are reported as bounds.
constexpr double kUnresolvedDecay = 1e-3;

// (e^{-a t} - e^{-b t}) / (b - a), finite at a == b.
double decay_difference(double a, double b, double t) {
  const double d = (b - a) * t;
  if (std::abs(d) < 1e-8) return t * std::exp(-a * t) * (1.0 - d / 2.0);
  return -std::exp(-a * t) * std::expm1(-d) / (b - a);
}

void require_same_size(std::size_t n, std::size_t m, const char* what) {
  if (n != m) throw ValidationError(std::string(what) + ": input lengths differ");
}

void require_finite(const std::vector<double>& v, const char* what) {
  for (double x : v) {
    if (!std::isfinite(x)) throw ValidationError(std::string(what) + ": non-finite input");
  }
}

double span_of(const std::vector<double>& t) {
  const auto [lo, hi] = std::minmax_element(t.begin(), t.end());
  return *hi - *lo;
}

double wrap_phase(double p) { return std::remainder(p, 2.0 * kPi); }

}  // namespace

std::array<double, 3> rate_equation_populations(double gamma_ge, double gamma_ef, double gamma_gf, double p_f0,
                                                double p_e0, double t) {
  const double a = gamma_ef + gamma_gf;
  const double pf = p_f0 * std::exp(-a * t);
  const double pe = p_e0 * std::exp(-gamma_ge * t) + gamma_ef * p_f0 * decay_difference(a, gamma_ge, t);
  return {1.0 - pf - pe, pe, pf};
}

DecayFitResult fit_rate_equation(const std::vector<double>& times, const std::vector<double>& p_g,
                                 const std::vector<double>& p_e, const std::vector<double>& p_f) {
  const std::size_t n = times.size();
  require_same_size(n, p_g.size(), "fit_rate_equation");
  require_same_size(n, p_e.size(), "fit_rate_equation");
  require_same_size(n, p_f.size(), "fit_rate_equation");
  if (n < 3) throw ValidationError("fit_rate_equation: need at least three time points");
  for (const auto* v : {&times, &p_g, &p_e, &p_f}) require_finite(*v, "fit_rate_equation");
  for (std::size_t i = 0; i < n; ++i) {
    for (double p : {p_g[i], p_e[i], p_f[i]}) {
      if (p < -0.05 || p > 1.05) throw ValidationError("fit_rate_equation: populations must lie in [0, 1]");
    }
    if (std::abs(p_g[i] + p_e[i] + p_f[i] - 1.0) > 0.1) {
      throw ValidationError("fit_rate_equation: populations do not sum to 1");
    }
  }
  const double span = span_of(times);
  if (!(span > 0.0)) throw ValidationError("fit_rate_equation: times must span a positive interval");

  // x = (G_ge, G_ef, G_gf, p_f0, p_e0)
  LsqProblem prob;
  prob.residuals = [&](const Eigen::VectorXd& x) {
    Eigen::VectorXd r(3 * static_cast<Eigen::Index>(n));
    for (std::size_t i = 0; i < n; ++i) {
      const auto m = rate_equation_populations(x(0), x(1), x(2), x(3), x(4), times[i]);
      r(3 * i) = m[0] - p_g[i];
      r(3 * i + 1) = m[1] - p_e[i];
      r(3 * i + 2) = m[2] - p_f[i];
    }
    return r;
  };
  prob.lower = Eigen::VectorXd::Zero(5);
  prob.upper = Eigen::VectorXd::Constant(5, kInf);
  prob.upper(3) = 1.0;
  prob.upper(4) = 1.0;

  const std::size_t i0 = static_cast<std::size_t>(std::min_element(times.begin(), times.end()) - times.begin());
  const std::size_t i1 = static_cast<std::size_t>(std::max_element(times.begin(), times.end()) - times.begin());
  double a0 = 1.0 / span;
  if (p_f[i0] > 0.0 && p_f[i1] > 0.0 && p_f[i1] < p_f[i0]) a0 = std::log(p_f[i0] / p_f[i1]) / span;
  Eigen::VectorXd x0(5);
  x0 << a0, 0.9 * a0, 0.1 * a0, std::clamp(p_f[i0], 0.01, 0.99), std::clamp(p_e[i0], 0.01, 0.99);
  const LsqResult r = solve_lsq(prob, x0);

  DecayFitResult out;
  out.gamma_ge = r.x(0);
  out.gamma_ef = r.x(1);
  out.gamma_gf = r.x(2);
  out.p_f0 = r.x(3);
  out.p_e0 = r.x(4);
  for (int k = 0; k < 3; ++k) {
    out.std_error.push_back(r.std_error(k));
    out.ci95.push_back(kZ95 * r.std_error(k));
  }
  out.residual_rms = r.residual_rms;
  out.iterations = r.iterations;
  out.converged = r.converged;
  out.status = r.status;
  return out;
}

nlohmann::ordered_json DecayFitResult::to_json() const {
  nlohmann::ordered_json j;
  j["gamma_ge_per_us"] = gamma_ge;
  j["gamma_ef_per_us"] = gamma_ef;
  j["gamma_gf_per_us"] = gamma_gf;
  j["std_error_per_us"] = std_error;
  j["ci95_per_us"] = ci95;
  j["p_f0"] = p_f0;
  j["p_e0"] = p_e0;
  j["residual_rms"] = residual_rms;
  j["iterations"] = iterations;
  j["converged"] = converged;
  j["status"] = status;
  return j;
}

double ramsey_model(const RamseyFitResult& p, double t) {
  double y = p.offset + p.amplitude * std::exp(-p.decay_rate * t) * std::cos(2.0 * kPi * p.frequency * t + p.phase);
  if (p.offset_decay_time > 0.0) y += p.offset_amplitude * std::exp(-t / p.offset_decay_time);
  return y;
}

RamseyFitResult fit_ramsey(const std::vector<double>& times, const std::vector<double>& signal,
                           const RamseyOptions& opts) {
  const std::size_t n = times.size();
  require_same_size(n, signal.size(), "fit_ramsey");
  require_finite(times, "fit_ramsey");
  require_finite(signal, "fit_ramsey");
  const std::size_t np = opts.exponential_offset ? 7 : 5;
  if (n < 2 * np) throw ValidationError("fit_ramsey: too few points");
  const double span = span_of(times);
  if (!(span > 0.0)) throw ValidationError("fit_ramsey: times must span a positive interval");

  // Starting point from a dense periodogram.
  double mean = 0.0;
  for (double y : signal) mean += y;
  mean /= static_cast<double>(n);
  const double nyquist = static_cast<double>(n - 1) / (2.0 * span);
  const int grid = static_cast<int>(8 * n);
  double best_f = 0.0;
  double best_power = -1.0;
  double best_c = 0.0;
  double best_s = 0.0;
  for (int k = 1; k <= grid; ++k) {
    const double f = nyquist * k / grid;
    double c = 0.0;
    double s = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      const double w = 2.0 * kPi * f * times[i];
      c += (signal[i] - mean) * std::cos(w);
      s += (signal[i] - mean) * std::sin(w);
    }
    if (c * c + s * s > best_power) {
      best_power = c * c + s * s;
      best_f = f;
      best_c = c;
      best_s = s;
    }
  }
  const double points_per_period = static_cast<double>(n - 1) / (span * best_f);
  if (points_per_period < 8.0 - 1e-9) {
    throw ValidationError("fit_ramsey: need at least 8 points per oscillation period");
  }
  const auto [lo, hi] = std::minmax_element(signal.begin(), signal.end());

  // x = (rate, f, A, y0, phase[, B, offset rate])
  LsqProblem prob;
  const bool off = opts.exponential_offset;
  prob.residuals = [&](const Eigen::VectorXd& x) {
    Eigen::VectorXd r(static_cast<Eigen::Index>(n));
    for (std::size_t i = 0; i < n; ++i) {
      const double t = times[i];
      double y = x(3) + x(2) * std::exp(-x(0) * t) * std::cos(2.0 * kPi * x(1) * t + x(4));
      if (off) y += x(5) * std::exp(-x(6) * t);
      r(i) = y - signal[i];
    }
    return r;
  };
  prob.jacobian = [&](const Eigen::VectorXd& x) {
    Eigen::MatrixXd j = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(np));
    for (std::size_t i = 0; i < n; ++i) {
      const double t = times[i];
      const double e = std::exp(-x(0) * t);
      const double w = 2.0 * kPi * x(1) * t + x(4);
      const double c = std::cos(w);
      const double s = std::sin(w);
      j(i, 0) = -t * x(2) * e * c;
      j(i, 1) = -2.0 * kPi * t * x(2) * e * s;
      j(i, 2) = e * c;
      j(i, 3) = 1.0;
      j(i, 4) = -x(2) * e * s;
      if (off) {
        const double eo = std::exp(-x(6) * t);
        j(i, 5) = eo;
        j(i, 6) = -t * x(5) * eo;
      }
    }
    return j;
  };
  const Eigen::Index npi = static_cast<Eigen::Index>(np);
  prob.lower = Eigen::VectorXd::Constant(npi, -kInf);
  prob.upper = Eigen::VectorXd::Constant(npi, kInf);
  prob.lower(0) = 0.0;
  prob.lower(1) = 0.0;
  prob.lower(2) = 0.0;
  Eigen::VectorXd x0(npi);
  x0(0) = 1.0 / span;
  x0(1) = best_f;
  x0(2) = std::max(0.5 * (*hi - *lo), 1e-12);
  x0(3) = mean;
  x0(4) = std::atan2(-best_s, best_c);
  if (off) {
    x0(5) = 0.0;
    x0(6) = 2.0 / span;
    prob.lower(6) = 0.0;
  }
  const LsqResult r = solve_lsq(prob, x0);

  RamseyFitResult out;
  out.decay_rate = r.x(0);
  out.decay_rate_error = r.std_error(0);
  out.frequency = r.x(1);
  out.amplitude = r.x(2);
  out.offset = r.x(3);
  out.phase = wrap_phase(r.x(4));
  if (off) {
    out.offset_amplitude = r.x(5);
    out.offset_decay_time = r.x(6) > 0.0 ? 1.0 / r.x(6) : kInf;
  }
  const bool unresolved = out.decay_rate * span < kUnresolvedDecay || out.decay_rate < 2.0 * out.decay_rate_error;
  if (unresolved) {
    out.t2_lower_bound = 1.0 / std::max(out.decay_rate + 2.0 * out.decay_rate_error, kUnresolvedDecay / span);
  } else {
    out.t2_star = 1.0 / out.decay_rate;
  }
  out.residual_rms = r.residual_rms;
  out.iterations = r.iterations;
  out.converged = r.converged;
  out.status = r.status;
  return out;
}

nlohmann::ordered_json RamseyFitResult::to_json() const {
  nlohmann::ordered_json j;
  j["t2_star_us"] = t2_star ? nlohmann::ordered_json(*t2_star) : nlohmann::ordered_json(nullptr);
  j["t2_lower_bound_us"] = t2_lower_bound ? nlohmann::ordered_json(*t2_lower_bound) : nlohmann::ordered_json(nullptr);
  j["decay_rate_per_us"] = decay_rate;
  j["decay_rate_std_error"] = decay_rate_error;
  j["frequency_MHz"] = frequency;
  j["amplitude"] = amplitude;
  j["offset"] = offset;
  j["phase_rad"] = phase;
  if (offset_decay_time > 0.0) {
    j["offset_amplitude"] = offset_amplitude;
    j["offset_decay_time_us"] = std::isfinite(offset_decay_time) ? nlohmann::ordered_json(offset_decay_time)
                                                                  : nlohmann::ordered_json(nullptr);
  }
  j["residual_rms"] = residual_rms;
  j["iterations"] = iterations;
  j["converged"] = converged;
  j["status"] = status;
  return j;
}

double coherence_limited_error(const NoiseModel& n, double tau) {
  n.validate();
  if (!(tau > 0.0)) throw ValidationError("coherence_limited_error: tau must be positive");
  const double sum = 2.0 * n.gamma1 + 2.0 * n.gamma2 + 2.0 * n.gamma3 + n.gamma_ge + n.gamma_ef;
  return sum * tau * 1e-3 / 9.0;
}

double lindblad_average_error(const GateSpec& g, Scheme scheme, const NoiseModel& n, double tau, double step) {
  const BrightFrame frame = bright_frame(g.theta, g.phi);
  const ComplexMatrix sup = gate_channel(build_schedule(scheme, g, tau), frame, n, step);
  const ComplexMatrix u = g.target();
  const double r = 1.0 / std::sqrt(2.0);
  const std::vector<Eigen::Vector2cd> states{
      {1.0, 0.0}, {0.0, 1.0}, {r, r}, {r, -r}, {cplx(r), kI * r}, {cplx(r), -kI * r},
  };
  double fid = 0.0;
  for (const auto& s : states) {
    Ket in = Ket::Zero(3);
    in(kLevelG) = s(0);
    in(kLevelF) = s(1);
    const Eigen::Vector2cd o = u * s;
    Ket want = Ket::Zero(3);
    want(kLevelG) = o(0);
    want(kLevelF) = o(1);
    const ComplexMatrix rho = apply_channel(sup, qmath::projector(in));
    fid += (want.adjoint() * rho * want)(0, 0).real();
  }
  return 1.0 - fid / static_cast<double>(states.size());
}

}  // namespace hlab
