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

#include "hlab/rb.hpp"

#include <array>
#include <cmath>
#include <iomanip>
#include <ostream>
#include <random>

#include "hlab/evolve.hpp"
#include "hlab/lsq.hpp"
#include "hlab/parallel.hpp"
#include "hlab/pulses.hpp"

namespace hlab {

namespace {

constexpr double kPhaseMatchTol = 1e-10;

// Decompositions in time order. Paulis, 2pi/3 rotations, pi/2 rotations,
// then the Hadamard-like elements.
const std::vector<std::vector<std::string>>& decompositions() {
  static const std::vector<std::vector<std::string>> d{
      {"I"},
      {"X"},
      {"Y"},
      {"Y", "X"},
      {"X/2", "Y/2"},
      {"X/2", "-Y/2"},
      {"-X/2", "Y/2"},
      {"-X/2", "-Y/2"},
      {"Y/2", "X/2"},
      {"Y/2", "-X/2"},
      {"-Y/2", "X/2"},
      {"-Y/2", "-X/2"},
      {"X/2"},
      {"-X/2"},
      {"Y/2"},
      {"-Y/2"},
      {"-X/2", "Y/2", "X/2"},
      {"-X/2", "-Y/2", "X/2"},
      {"X", "Y/2"},
      {"X", "-Y/2"},
      {"Y", "X/2"},
      {"Y", "-X/2"},
      {"X/2", "Y/2", "X/2"},
      {"-X/2", "Y/2", "-X/2"},
  };
  return d;
}

bool equal_up_to_phase(const ComplexMatrix& a, const ComplexMatrix& b) {
  return std::abs(qmath::unitary_fidelity(a, b) - 1.0) < kPhaseMatchTol;
}

struct Tables {
  std::vector<std::vector<int>> compose;
  std::vector<int> inverse;
};

const Tables& tables() {
  static const Tables t = [] {
    const auto& tab = clifford_table();
    Tables out;
    out.compose.assign(kCliffordCount, std::vector<int>(kCliffordCount, -1));
    out.inverse.assign(kCliffordCount, -1);
    for (int a = 0; a < kCliffordCount; ++a) {
      for (int b = 0; b < kCliffordCount; ++b) {
        const int k = clifford_index_of(tab[b].unitary * tab[a].unitary);
        if (k < 0) throw NumericalError("Clifford table is not closed under composition");
        out.compose[a][b] = k;
        if (k == 0) out.inverse[a] = b;
      }
    }
    return out;
  }();
  return t;
}

}  // namespace

const std::vector<CliffordElement>& clifford_table() {
  static const std::vector<CliffordElement> table = [] {
    std::vector<CliffordElement> out;
    const auto& d = decompositions();
    for (std::size_t i = 0; i < d.size(); ++i) {
      CliffordElement c;
      c.index = static_cast<int>(i);
      c.gates = d[i];
      c.unitary = ComplexMatrix::Identity(2, 2);
      for (const auto& g : c.gates) c.unitary = GateSpec::named(g).target() * c.unitary;
      out.push_back(std::move(c));
    }
    return out;
  }();
  return table;
}

int clifford_index_of(const ComplexMatrix& u) {
  const auto& tab = clifford_table();
  for (const auto& c : tab) {
    if (equal_up_to_phase(c.unitary, u)) return c.index;
  }
  return -1;
}

int clifford_compose(int a, int b) { return tables().compose.at(a).at(b); }

int clifford_inverse(int a) { return tables().inverse.at(a); }

ComplexMatrix depolarizing_superop(double p) {
  if (!(p >= 0.0 && p <= 1.0)) throw ValidationError("depolarizing_superop: p must lie in [0, 1]");
  // Kraus operators sqrt(w_k) (P_k (+) I_e) with P_k the Paulis on {g, f}.
  const double q = 1.0 - p;
  const std::array<double, 4> w{1.0 - 0.75 * q, 0.25 * q, 0.25 * q, 0.25 * q};
  const std::array<ComplexMatrix, 4> paulis{ComplexMatrix::Identity(2, 2), qmath::pauli_x(), qmath::pauli_y(),
                                            qmath::pauli_z()};
  ComplexMatrix sup = ComplexMatrix::Zero(9, 9);
  for (int k = 0; k < 4; ++k) {
    ComplexMatrix kr = ComplexMatrix::Zero(3, 3);
    kr(0, 0) = paulis[k](0, 0);
    kr(0, 2) = paulis[k](0, 1);
    kr(2, 0) = paulis[k](1, 0);
    kr(2, 2) = paulis[k](1, 1);
    kr(1, 1) = 1.0;
    sup += w[k] * unitary_channel(kr);
  }
  return sup;
}

RbFit fit_rb_decay(const std::vector<int>& m, const std::vector<double>& f) {
  if (m.size() != f.size() || m.size() < 3) throw ValidationError("fit_rb_decay: need at least three points");
  RbFit fit;
  double spread = 0.0;
  for (double v : f) spread = std::max(spread, std::abs(v - f.front()));
  if (spread < 1e-12) {
    fit.degenerate = true;
    fit.converged = true;
    fit.a = 0.0;
    fit.p = 1.0;
    fit.b = f.front();
    fit.status = "flat decay";
    return fit;
  }
  LsqProblem prob;
  prob.residuals = [&](const Eigen::VectorXd& x) {
    Eigen::VectorXd r(static_cast<Eigen::Index>(m.size()));
    for (std::size_t i = 0; i < m.size(); ++i) r(i) = x(0) * std::pow(x(1), m[i]) + x(2) - f[i];
    return r;
  };
  prob.jacobian = [&](const Eigen::VectorXd& x) {
    Eigen::MatrixXd j(static_cast<Eigen::Index>(m.size()), 3);
    for (std::size_t i = 0; i < m.size(); ++i) {
      j(i, 0) = std::pow(x(1), m[i]);
      j(i, 1) = m[i] == 0 ? 0.0 : x(0) * m[i] * std::pow(x(1), m[i] - 1);
      j(i, 2) = 1.0;
    }
    return j;
  };
  prob.lower = Eigen::Vector3d(0.0, 1e-9, 0.0);
  prob.upper = Eigen::Vector3d(1.0, 1.0, 1.0);
  const LsqResult r = solve_lsq(prob, Eigen::Vector3d(0.5, 0.99, 0.5));
  fit.a = r.x(0);
  fit.p = r.x(1);
  fit.b = r.x(2);
  fit.residual_rms = r.residual_rms;
  fit.converged = r.converged;
  fit.status = r.status;
  return fit;
}

GateChannelFactory holonomic_gate_factory(Scheme scheme, const NoiseModel& noise, double tau, double step) {
  noise.validate();
  if (!(tau > 0.0)) throw ValidationError("holonomic_gate_factory: tau must be positive");
  return [=](const std::string& tag) -> ComplexMatrix {
    if (tag == "I") return idle_channel(collapse_operators(noise), 3, tau, step);
    const GateSpec g = GateSpec::named(tag);
    return gate_channel(build_schedule(scheme, g, tau), bright_frame(g.theta, g.phi), noise, step);
  };
}

RbResult run_rb(const GateChannelFactory& factory, const RbOptions& opts) {
  if (opts.m_values.empty()) throw ValidationError("run_rb: m grid is empty");
  if (opts.sequences < 1) throw ValidationError("run_rb: need at least one sequence");
  for (int m : opts.m_values) {
    if (m < 0) throw ValidationError("run_rb: m values must be >= 0");
  }
  const auto& tab = clifford_table();

  std::map<std::string, ComplexMatrix> physical;
  for (const auto& c : tab) {
    for (const auto& g : c.gates) {
      if (!physical.count(g)) physical[g] = factory(g);
    }
  }
  std::vector<ComplexMatrix> cliff(kCliffordCount);
  for (const auto& c : tab) {
    ComplexMatrix s = ComplexMatrix::Identity(9, 9);
    for (const auto& g : c.gates) s = physical.at(g) * s;
    if (opts.clifford_noise) s = *opts.clifford_noise * s;
    cliff[c.index] = s;
  }

  int inter_index = -1;
  ComplexMatrix inter_channel;
  if (opts.interleaved) {
    inter_index = clifford_index_of(GateSpec::named(*opts.interleaved).target());
    if (inter_index < 0) throw ValidationError("run_rb: interleaved gate is not a Clifford element");
    inter_channel = physical.count(*opts.interleaved) ? physical.at(*opts.interleaved) : factory(*opts.interleaved);
  }

  // Draw every sequence up front so results do not depend on scheduling.
  std::mt19937_64 rng(opts.seed);
  struct Job {
    std::size_t m_slot;
    std::vector<int> seq;
  };
  std::vector<Job> jobs;
  for (std::size_t mi = 0; mi < opts.m_values.size(); ++mi) {
    for (int k = 0; k < opts.sequences; ++k) {
      Job j{mi, {}};
      j.seq.reserve(opts.m_values[mi]);
      for (int i = 0; i < opts.m_values[mi]; ++i) j.seq.push_back(static_cast<int>(rng() % kCliffordCount));
      jobs.push_back(std::move(j));
    }
  }

  ComplexMatrix rho0 = ComplexMatrix::Zero(3, 3);
  rho0(0, 0) = 1.0;
  const Eigen::VectorXcd v0 = qmath::vec(rho0);
  const std::vector<double> pg = parallel_map(jobs, [&](const Job& j) {
    Eigen::VectorXcd v = v0;
    int net = 0;
    for (int c : j.seq) {
      v = cliff[c] * v;
      net = clifford_compose(net, c);
      if (inter_index >= 0) {
        v = inter_channel * v;
        net = clifford_compose(net, inter_index);
      }
    }
    v = cliff[clifford_inverse(net)] * v;
    Eigen::Vector3d pops(v(0).real(), v(4).real(), v(8).real());
    if (opts.readout) {
      pops = pops.cwiseMax(0.0);
      pops /= pops.sum();
      pops = opts.readout->apply(pops);
    }
    return pops(0);
  });

  RbResult res;
  res.m_values = opts.m_values;
  res.sequences = opts.sequences;
  for (std::size_t mi = 0; mi < opts.m_values.size(); ++mi) {
    double sum = 0.0;
    double sq = 0.0;
    for (int k = 0; k < opts.sequences; ++k) {
      const double x = pg[mi * opts.sequences + k];
      sum += x;
      sq += x * x;
    }
    const double mean = sum / opts.sequences;
    const double var = opts.sequences > 1 ? std::max(sq / opts.sequences - mean * mean, 0.0) *
                                                opts.sequences / (opts.sequences - 1)
                                          : 0.0;
    res.mean_pg.push_back(mean);
    res.std_pg.push_back(std::sqrt(var));
  }
  res.fit = fit_rb_decay(res.m_values, res.mean_pg);
  return res;
}

RbFidelities rb_fidelities(double p_ref, std::optional<double> p_gate, double tolerance) {
  if (!(p_ref > 0.0 && p_ref <= 1.0)) throw ValidationError("rb_fidelities: p_ref must lie in (0, 1]");
  RbFidelities out;
  const double d = 2.0;
  out.f_ref = 1.0 - (1.0 - p_ref) * (d - 1.0) / d / kGatesPerClifford;
  if (p_gate) {
    if (!(*p_gate > 0.0 && *p_gate <= 1.0)) throw ValidationError("rb_fidelities: p_gate must lie in (0, 1]");
    out.f_gate = 1.0 - (1.0 - *p_gate / p_ref) * (d - 1.0) / d;
    out.gate_exceeds_ref = *p_gate > p_ref + tolerance;
  }
  return out;
}

void RbResult::write_csv(std::ostream& os) const {
  os << "m,mean_Pg,std_Pg,n_seqs\n" << std::setprecision(12);
  for (std::size_t i = 0; i < m_values.size(); ++i) {
    os << m_values[i] << ',' << mean_pg[i] << ',' << std_pg[i] << ',' << sequences << '\n';
  }
}

nlohmann::ordered_json RbResult::fit_json() const {
  nlohmann::ordered_json j;
  j["A"] = fit.a;
  j["p"] = fit.p;
  j["B"] = fit.b;
  j["residual_rms"] = fit.residual_rms;
  j["converged"] = fit.converged;
  j["degenerate"] = fit.degenerate;
  j["status"] = fit.status;
  return j;
}

}  // namespace hlab
