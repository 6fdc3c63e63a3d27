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

#include "hlab/holonomy.hpp"

#include <cmath>
#include <iomanip>
#include <ostream>

#include "hlab/parallel.hpp"

namespace hlab {

namespace {

const double kGaussOffset = std::sqrt(3.0) / 6.0;

// Propagator and Hamiltonian on every grid node, segment by segment. The
// first node of each segment repeats the last node of the previous one.
struct GridTrace {
  std::vector<double> times;
  std::vector<int> seg_of;
  std::vector<ComplexMatrix> u;
  std::vector<ComplexMatrix> h;
};

GridTrace grid_trace(const PulseSchedule& s, const BrightFrame& frame, double step) {
  const SegmentHamiltonian ham = qutrit_drive(s, frame);
  GridTrace g;
  ComplexMatrix u = ComplexMatrix::Identity(3, 3);
  double t0 = 0.0;
  for (std::size_t i = 0; i < s.segments.size(); ++i) {
    const int seg = static_cast<int>(i);
    const double dur = s.segments[i].duration;
    const int n = steps_for(dur, step);
    const double h = dur / n;
    for (int k = 0; k <= n; ++k) {
      if (k > 0) {
        const double t = (k - 1) * h;
        u = magnus4_step(ham(seg, t + (0.5 - kGaussOffset) * h), ham(seg, t + (0.5 + kGaussOffset) * h), h) * u;
      }
      g.times.push_back(t0 + k * h);
      g.seg_of.push_back(seg);
      g.u.push_back(u);
      g.h.push_back(ham(seg, k * h));
    }
    t0 += dur;
  }
  return g;
}

// Trapezoid over each segment block of a grid trace.
template <typename T>
T integrate(const GridTrace& g, const std::vector<T>& f) {
  T acc{};
  for (std::size_t i = 1; i < f.size(); ++i) {
    if (g.seg_of[i] != g.seg_of[i - 1]) continue;
    acc += 0.5 * (g.times[i] - g.times[i - 1]) * (f[i] + f[i - 1]);
  }
  return acc;
}

ComplexMatrix frame_basis(const BrightFrame& frame) {
  ComplexMatrix v(3, 3);
  v.col(0) = frame.dark;
  v.col(1) = frame.bright;
  v.col(2) = frame.excited;
  return v;
}

}  // namespace

void PhaseRecord::write_csv(std::ostream& os) const {
  os << "t_ns,d11,d22,Re_d12,Im_d12\n" << std::setprecision(12);
  for (std::size_t i = 0; i < times.size(); ++i) {
    os << times[i] << ',' << d11[i] << ',' << d22[i] << ',' << d12[i].real() << ',' << d12[i].imag() << '\n';
  }
}

PhaseRecord phase_record(const PulseSchedule& s, const BrightFrame& frame, double step) {
  const GridTrace g = grid_trace(s, frame, step);
  const Ket& b = frame.bright;
  const Ket& e = frame.excited;
  const Ket& d = frame.dark;
  const Ket a1 = (b + e) / std::sqrt(2.0);
  const Ket a2 = (b - kI * e) / std::sqrt(2.0);

  PhaseRecord r;
  r.times = g.times;
  const std::size_t n = g.times.size();
  r.d11.resize(n);
  r.d22.resize(n);
  r.d12.resize(n);
  r.d11_rho.resize(n);
  r.d22_rho.resize(n);
  r.d12_rho.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    const ComplexMatrix& u = g.u[i];
    const ComplexMatrix& h = g.h[i];
    const Ket p0 = u * d;
    const Ket p1 = u * b;
    const Ket p2 = u * e;
    r.d11[i] = p1.dot(h * p1).real();
    r.d22[i] = p2.dot(h * p2).real();
    r.d12[i] = p1.dot(h * p2);
    r.dark_coupling = std::max({r.dark_coupling, std::abs(p0.dot(h * p0)), std::abs(p0.dot(h * p1)),
                                std::abs(p0.dot(h * p2))});

    // Expectation values <H> in rho = U rho0 U^dag for the four inputs.
    auto expect = [&](const Ket& psi0) {
      const ComplexMatrix rho = u * qmath::projector(psi0) * u.adjoint();
      return (rho * h).trace().real();
    };
    const double t11 = expect(b);
    const double t22 = expect(e);
    const double ta1 = expect(a1);
    const double ta2 = expect(a2);
    r.d11_rho[i] = t11;
    r.d22_rho[i] = t22;
    r.d12_rho[i] = cplx(ta1 - t11 / 2 - t22 / 2, ta2 - t11 / 2 - t22 / 2);

    r.path_discrepancy = std::max({r.path_discrepancy, std::abs(r.d11[i] - t11), std::abs(r.d22[i] - t22),
                                   std::abs(r.d12[i] - r.d12_rho[i])});
  }
  r.D11 = integrate(g, r.d11);
  r.D22 = integrate(g, r.d22);
  r.D12 = integrate(g, r.d12);
  r.D11_rho = integrate(g, r.d11_rho);
  r.D22_rho = integrate(g, r.d22_rho);
  r.D12_rho = integrate(g, r.d12_rho);
  return r;
}

double analytic_fidelity(double gamma, double epsilon) {
  const double c = std::cos(kPi * epsilon / 2);
  const double s = std::sin(kPi * epsilon / 2);
  const double cg = std::cos(gamma / 2);
  const double sg = std::sin(gamma / 2);
  const double k = c * c * c * c * (1.0 + s * s) * (1.0 + s * s);
  return std::sqrt(cg * cg + sg * sg * k);
}

cplx perturbed_bright_factor(double gamma, double epsilon) {
  const double c = std::cos(kPi * epsilon / 2);
  const double s = std::sin(kPi * epsilon / 2);
  return 1.0 - (1.0 - std::exp(kI * gamma)) * c * c * (1.0 + s * s);
}

ComplexMatrix analytic_noisy_gate(const GateSpec& g, double epsilon) {
  g.validate();
  const cplx x = perturbed_bright_factor(g.gamma, epsilon);
  const double c2 = std::pow(std::cos(g.theta / 2), 2);
  const double s2 = std::pow(std::sin(g.theta / 2), 2);
  const double st = std::sin(g.theta);
  ComplexMatrix u(2, 2);
  u(0, 0) = c2 + s2 * x;
  u(0, 1) = 0.5 * (1.0 - x) * st * std::exp(-kI * g.phi);
  u(1, 0) = 0.5 * (1.0 - x) * st * std::exp(kI * g.phi);
  u(1, 1) = s2 + c2 * x;
  return u;
}

double simulated_fidelity(const PulseSchedule& s, double epsilon, double step) {
  const BrightFrame frame = bright_frame(s.gate.theta, s.gate.phi);
  const ComplexMatrix u = gate_propagator(apply_rabi_error(s, epsilon), frame, step);
  return qmath::unitary_fidelity(computational_block(u), s.gate.target());
}

std::vector<SweepPoint> robustness_sweep(const GateSpec& g, Scheme scheme, const std::vector<double>& eps_grid,
                                         double tau, double step) {
  for (double e : eps_grid) {
    if (!std::isfinite(e) || std::abs(e) > 0.2 + 1e-12) {
      throw ValidationError("robustness_sweep: epsilon grid must lie within [-0.2, 0.2]");
    }
  }
  const PulseSchedule base = build_schedule(scheme, g, tau);
  return parallel_map(eps_grid, [&](double e) {
    return SweepPoint{e, simulated_fidelity(base, e, step), analytic_fidelity(g.gamma, e)};
  });
}

double fit_loglog_slope(const std::vector<SweepPoint>& pts, double eps_min, double eps_max) {
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  int n = 0;
  for (const auto& p : pts) {
    const double ae = std::abs(p.epsilon);
    const double inf = 1.0 - p.f_sim;
    if (ae < eps_min - 1e-12 || ae > eps_max + 1e-12 || inf < 1e-12) continue;
    const double x = std::log(ae);
    const double y = std::log(inf);
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
    ++n;
  }
  if (n < 2) throw NumericalError("fit_loglog_slope: fewer than two usable points");
  const double den = n * sxx - sx * sx;
  if (std::abs(den) < 1e-300) throw NumericalError("fit_loglog_slope: degenerate abscissae");
  return (n * sxy - sx * sy) / den;
}

cplx bright_element(const PulseSchedule& s, const BrightFrame& frame, double epsilon, double step) {
  const ComplexMatrix u = gate_propagator(apply_rabi_error(s, epsilon), frame, step);
  return frame.bright.dot(u * frame.bright);
}

std::vector<double> perturbative_deviations(const PulseSchedule& s, const BrightFrame& frame, double epsilon,
                                            int order, double step) {
  if (order < 1 || order > 6) throw ValidationError("perturbative expansion: order must be in 1..6");
  if (!std::isfinite(epsilon) || std::abs(epsilon) > 0.2 + 1e-12) {
    throw ValidationError("perturbative expansion: |epsilon| must be <= 0.2");
  }
  const GridTrace g = grid_trace(s, frame, step);
  const ComplexMatrix v = frame_basis(frame);
  const std::size_t n = g.times.size();

  // Perturbation eps*H in the interaction picture of the ideal evolution.
  std::vector<ComplexMatrix> dt(n);
  for (std::size_t i = 0; i < n; ++i) dt[i] = v.adjoint() * g.u[i].adjoint() * g.h[i] * g.u[i] * v;

  const ComplexMatrix u_eps = gate_propagator(apply_rabi_error(s, epsilon), frame, step);
  const ComplexMatrix u_int = v.adjoint() * g.u.back().adjoint() * u_eps * v;

  // S_k(t) = -i eps int_0^t d(t') S_{k-1}(t') dt', cumulative trapezoid.
  std::vector<ComplexMatrix> prev(n, ComplexMatrix::Identity(3, 3));
  ComplexMatrix partial = ComplexMatrix::Identity(3, 3);
  std::vector<double> out;
  for (int k = 1; k <= order; ++k) {
    std::vector<ComplexMatrix> cur(n, ComplexMatrix::Zero(3, 3));
    for (std::size_t i = 1; i < n; ++i) {
      cur[i] = cur[i - 1];
      if (g.seg_of[i] == g.seg_of[i - 1]) {
        const double h = g.times[i] - g.times[i - 1];
        cur[i] += (-kI * epsilon * 0.5 * h) * (dt[i] * prev[i] + dt[i - 1] * prev[i - 1]);
      }
    }
    partial += cur.back();
    out.push_back((u_int - partial).norm());
    prev = std::move(cur);
  }
  return out;
}

double perturbative_expansion_check(const PulseSchedule& s, const BrightFrame& frame, double epsilon, int order,
                                    double step) {
  return perturbative_deviations(s, frame, epsilon, order, step).back();
}

}  // namespace hlab
