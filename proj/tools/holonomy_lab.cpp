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

// holonomy-lab: command-line front end. Every command writes plain CSV and
// JSON into the output directory. CSV files open with a '#' header line; JSON
// documents carry the same text in their leading "header" field.
//
// Exit codes: 0 success, 1 acceptance criteria failed, 2 invalid input,
// 3 numerical failure.

#include <CLI11.hpp>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>

#include "hlab/acceptance.hpp"
#include "hlab/cohfit.hpp"
#include "hlab/config.hpp"
#include "hlab/holonomy.hpp"
#include "hlab/rb.hpp"
#include "hlab/tomography.hpp"
#include "hlab/twoqubit.hpp"

namespace {

using hlab::RunConfig;
using json = nlohmann::ordered_json;

constexpr int kExitFailedCriteria = 1;
constexpr int kExitValidation = 2;
constexpr int kExitNumerical = 3;

// Raw flag text; applied on top of the config file so that errors name the flag.
struct Flags {
  std::string config;
  std::map<std::string, std::string> values;  // flag name -> text
  bool noise = false;
};

const std::vector<std::pair<std::string, std::string>>& flag_keys() {
  static const std::vector<std::pair<std::string, std::string>> m{
      {"--out", "output_dir"}, {"--seed", "seed"},     {"--scheme", "scheme"},   {"--gate", "gate"},
      {"--theta", "theta_rad"}, {"--phi", "phi_rad"},   {"--gamma", "gamma_rad"}, {"--epsilon", "epsilon"},
      {"--tau", "tau_ns"},
  };
  return m;
}

void add_common(CLI::App* sub, Flags& f) {
  sub->add_option("--config", f.config, "config file (key = value)");
  for (const auto& [flag, key] : flag_keys()) {
    sub->add_option_function<std::string>(
        flag, [&f, flag = flag](const std::string& v) { f.values[flag] = v; }, "overrides " + key);
  }
  sub->add_flag("--noise", f.noise, "enable the device decoherence model");
}

RunConfig resolve(const Flags& f) {
  RunConfig c = f.config.empty() ? RunConfig{} : RunConfig::load(f.config);
  for (const auto& [flag, key] : flag_keys()) {
    const auto it = f.values.find(flag);
    if (it == f.values.end()) continue;
    try {
      c.set(key, it->second);
    } catch (const hlab::ValidationError& e) {
      throw hlab::ValidationError(flag + ": " + e.what());
    }
  }
  // Named gates and explicit angles are exclusive; a flag wins over the file.
  if (f.values.count("--gate")) {
    c.theta_rad.reset();
    c.phi_rad.reset();
    c.gamma_rad.reset();
  }
  if (f.noise) c.noise = true;
  c.validate();
  return c;
}

class Output {
 public:
  explicit Output(const RunConfig& c) : dir_(c.output_dir), header_(c.header()) {
    std::filesystem::create_directories(dir_);
  }

  std::ofstream csv(const std::string& name) const {
    std::ofstream f = open(name);
    f << header_ << '\n';
    return f;
  }

  void json_file(const std::string& name, const json& body) const {
    json j;
    j["header"] = header_;
    for (const auto& [k, v] : body.items()) j[k] = v;
    std::ofstream f = open(name);
    f << j.dump(2) << '\n';
  }

 private:
  std::ofstream open(const std::string& name) const {
    if (name.find('/') != std::string::npos || name.find("..") != std::string::npos) {
      throw hlab::ValidationError("output names must stay inside the output directory");
    }
    std::ofstream f(dir_ / name);
    if (!f) throw hlab::ValidationError("cannot write " + (dir_ / name).string());
    f << std::setprecision(12);
    return f;
  }

  std::filesystem::path dir_;
  std::string header_;
};

json gate_json(const RunConfig& c) {
  const hlab::GateSpec g = c.gate_spec();
  json j;
  j["scheme"] = c.scheme;
  j["theta"] = g.theta;
  j["phi"] = g.phi;
  j["gamma"] = g.gamma;
  j["tau_ns"] = c.tau();
  return j;
}

std::string file_tag(std::string s) {
  for (char& ch : s) {
    if (ch == '/') ch = 'h';
    if (ch == '-') ch = 'm';
  }
  return s;
}

void cmd_simulate(const RunConfig& c) {
  const Output out(c);
  const hlab::GateSpec g = c.gate_spec();
  const hlab::PulseSchedule s = hlab::build_schedule(c.scheme_value(), g, c.tau());
  const hlab::BrightFrame frame = hlab::bright_frame(g.theta, g.phi);
  const hlab::PulseSchedule scaled = hlab::apply_rabi_error(s, c.epsilon);

  json j = gate_json(c);
  j["epsilon"] = c.epsilon;
  j["noise"] = c.noise;
  j["fidelity"] = hlab::simulated_fidelity(s, c.epsilon, c.step_ns);
  if (c.scheme_value() == hlab::Scheme::kSrNhqc) j["analytic_fidelity"] = hlab::analytic_fidelity(g.gamma, c.epsilon);
  j["peak_omega_rad_per_ns"] = s.peak_omega();

  hlab::EvolutionTrace tr;
  if (c.noise) {
    const hlab::NoiseModel n = c.noise_model();
    const auto rho0 = hlab::DensityMatrix::pure(hlab::qmath::basis_ket(3, hlab::kLevelG));
    tr = hlab::propagate_lindblad(s, frame, n, rho0, c.step_ns);
    j["average_gate_error"] = hlab::lindblad_average_error(g, c.scheme_value(), n, c.tau(), c.step_ns);
  } else {
    tr = hlab::propagate_unitary(scaled, frame, c.step_ns);
  }
  const auto& last = tr.populations.back();
  j["final_populations"] = {{"P_g", last[0]}, {"P_e", last[1]}, {"P_f", last[2]}};

  auto trace = out.csv("trace.csv");
  tr.write_csv(trace);
  auto pulse = out.csv("pulse.csv");
  scaled.write_csv(pulse, c.step_ns);
  out.json_file("fidelity.json", j);
  std::cout << "fidelity " << j["fidelity"].get<double>() << '\n';
}

void cmd_sweep(const RunConfig& c) {
  const Output out(c);
  const hlab::GateSpec g = c.gate_spec();
  const auto pts = hlab::robustness_sweep(g, c.scheme_value(), c.epsilon_grid(), c.tau(), c.step_ns);
  auto f = out.csv("sweep.csv");
  f << "epsilon,F_sim,F_analytic\n";
  for (const auto& p : pts) f << p.epsilon << ',' << p.f_sim << ',' << p.f_analytic << '\n';
  json j = gate_json(c);
  if (c.scheme_value() == hlab::Scheme::kSrNhqc) {
    double worst = 0.0;
    for (const auto& p : pts) worst = std::max(worst, std::abs(p.f_sim - p.f_analytic));
    j["max_abs_deviation_from_analytic"] = worst;
  }
  try {
    j["loglog_slope_0.02_0.1"] = hlab::fit_loglog_slope(pts, 0.02, 0.1);
  } catch (const hlab::NumericalError&) {
    j["loglog_slope_0.02_0.1"] = nullptr;
  }
  out.json_file("sweep.json", j);
}

void cmd_dynphase(const RunConfig& c) {
  const Output out(c);
  const hlab::GateSpec g = c.gate_spec();
  const hlab::PhaseRecord r =
      hlab::phase_record(hlab::build_schedule(c.scheme_value(), g, c.tau()), hlab::bright_frame(g.theta, g.phi),
                         c.step_ns);
  auto f = out.csv("dynphase.csv");
  r.write_csv(f);
  json j = gate_json(c);
  j["D11_over_pi"] = r.D11 / hlab::kPi;
  j["D22_over_pi"] = r.D22 / hlab::kPi;
  j["D12_re_over_pi"] = r.D12.real() / hlab::kPi;
  j["D12_im_over_pi"] = r.D12.imag() / hlab::kPi;
  j["D12_abs_over_pi"] = std::abs(r.D12) / hlab::kPi;
  j["reconstructed"] = {{"D11_over_pi", r.D11_rho / hlab::kPi},
                        {"D22_over_pi", r.D22_rho / hlab::kPi},
                        {"D12_abs_over_pi", std::abs(r.D12_rho) / hlab::kPi}};
  j["path_discrepancy"] = r.path_discrepancy;
  j["dark_coupling"] = r.dark_coupling;
  out.json_file("dynphase.json", j);
  std::cout << "|D12|/pi " << j["D12_abs_over_pi"].get<double>() << '\n';
}

void cmd_qpt(const RunConfig& c) {
  const Output out(c);
  const hlab::GateSpec g = c.gate_spec();
  const hlab::PulseSchedule s = hlab::build_schedule(c.scheme_value(), g, c.tau());
  const hlab::BrightFrame frame = hlab::bright_frame(g.theta, g.phi);
  const hlab::NoiseModel n = c.noise ? c.noise_model() : hlab::NoiseModel{c.epsilon};
  const hlab::ComplexMatrix sup = hlab::gate_channel(s, frame, n, c.step_ns);
  std::optional<hlab::AssignmentMatrix> m;
  if (c.readout) m = hlab::AssignmentMatrix::device_default();
  const hlab::ChiMatrix chi = hlab::qpt([&](const hlab::ComplexMatrix& rho) { return hlab::apply_channel(sup, rho); }, m);
  auto f = out.csv("chi_bars.csv");
  chi.write_bars_csv(f);
  json j = gate_json(c);
  j["noise"] = c.noise;
  j["readout"] = c.readout;
  j["process_fidelity"] = hlab::process_fidelity(chi.reduced, g.target());
  j["chi"] = chi.to_json();
  out.json_file("qpt.json", j);
  std::cout << "process fidelity " << j["process_fidelity"].get<double>() << '\n';
}

void cmd_rb(const RunConfig& c) {
  const Output out(c);
  const hlab::NoiseModel n = c.noise ? c.noise_model() : hlab::NoiseModel{c.epsilon};
  const hlab::GateChannelFactory factory = hlab::holonomic_gate_factory(c.scheme_value(), n, c.tau(), c.step_ns);
  hlab::RbOptions o;
  o.m_values = c.rb_lengths;
  o.sequences = c.rb_sequences;
  o.seed = c.seed;
  if (c.readout) o.readout = hlab::AssignmentMatrix::device_default();
  const hlab::RbResult ref = hlab::run_rb(factory, o);
  auto f = out.csv("rb_reference.csv");
  ref.write_csv(f);

  json j;
  j["scheme"] = c.scheme;
  j["tau_ns"] = c.tau();
  j["noise"] = c.noise;
  j["seed"] = c.seed;
  j["reference"] = ref.fit_json();
  j["reference"]["F_ref"] = hlab::rb_fidelities(ref.fit.p).f_ref;
  if (!c.theta_rad && c.gate != "I") {
    o.interleaved = c.gate;
    const hlab::RbResult inter = hlab::run_rb(factory, o);
    auto fi = out.csv("rb_interleaved_" + file_tag(c.gate) + ".csv");
    inter.write_csv(fi);
    const hlab::RbFidelities fid = hlab::rb_fidelities(ref.fit.p, inter.fit.p);
    j["interleaved"] = inter.fit_json();
    j["interleaved"]["gate"] = c.gate;
    j["interleaved"]["F_gate"] = *fid.f_gate;
    j["interleaved"]["exceeds_reference"] = fid.gate_exceeds_ref;
  }
  out.json_file("rb_fit.json", j);
  std::cout << "F_ref " << j["reference"]["F_ref"].get<double>() << '\n';
}

void cmd_twoqubit(const RunConfig& c) {
  const Output out(c);
  const hlab::DispersiveSystemParams p = c.dispersive_params();
  const hlab::GateSpec g = c.gate_spec();
  const hlab::Scheme sc = c.scheme_value();
  const hlab::TwoQubitGate gate = hlab::build_two_qubit_gate(g, sc, c.two_qubit_tau(), p, c.epsilon, c.two_qubit_step_ns);
  for (const auto& w : gate.warnings) std::cerr << "warning: " << w << '\n';

  json j = gate_json(c);
  j["tau_ns"] = c.two_qubit_tau();
  j["epsilon"] = c.epsilon;
  j["fidelity_to_target"] = gate.fidelity_to_target();
  j["leakage"] = gate.leakage;
  j["warnings"] = gate.warnings;
  j["computational_block"] = hlab::qmath::to_json(gate.computational_block());
  const hlab::ComplexMatrix u = gate.corrected();
  j["transfer_0f_to_0g"] = std::norm(u(hlab::two_qubit_index(0, hlab::kLevelG), hlab::two_qubit_index(0, hlab::kLevelF)));
  j["transfer_2g_to_2g"] = std::norm(u(hlab::two_qubit_index(2, hlab::kLevelG), hlab::two_qubit_index(2, hlab::kLevelG)));

  json prep;
  for (const auto& [name, t] : std::vector<std::pair<std::string, hlab::FockTarget>>{
           {"0", hlab::FockTarget::kZero}, {"2", hlab::FockTarget::kTwo}, {"0+2", hlab::FockTarget::kSuperposition}}) {
    prep[name] = hlab::prepare_fock(t, p.fock_levels, c.raman_duration_ns).to_json();
  }
  j["fock_preparation"] = prep;

  for (hlab::Scheme s : {hlab::Scheme::kSrNhqc, hlab::Scheme::kNhqc}) {
    const double tau = s == sc ? c.two_qubit_tau() : hlab::default_two_qubit_tau(s);
    const auto pts = hlab::cnot_robustness(c.epsilon_grid(), s, p, tau, c.two_qubit_step_ns);
    auto f = out.csv("cnot_robustness_" + hlab::to_string(s) + ".csv");
    hlab::write_cnot_csv(f, pts);
  }
  if (c.noise) {
    const hlab::CnotDecoherence d = hlab::cnot_decoherence(sc, c.noise_model(), p, c.two_qubit_tau(), c.T1_cavity_us,
                                                           c.T2star_cavity_us, c.two_qubit_step_ns);
    j["decoherent_cnot"] = {{"fidelity_0f", d.fidelity_0f}, {"fidelity_2g", d.fidelity_2g}, {"mean", d.mean}};
  }
  out.json_file("twoqubit.json", j);
}

void cmd_budget(const RunConfig& c) {
  const Output out(c);
  const hlab::NoiseModel n = c.noise_model();
  const double formula = hlab::coherence_limited_error(n, c.tau());
  double sim = 0.0;
  for (const char* name : {"X", "Y", "X/2", "Y/2"}) {
    sim += hlab::lindblad_average_error(hlab::GateSpec::named(name), c.scheme_value(), n, c.tau(), c.step_ns) / 4.0;
  }
  const hlab::CnotDecoherence cnot = hlab::cnot_decoherence(c.scheme_value(), n, c.dispersive_params(), c.two_qubit_tau(),
                                                           c.T1_cavity_us, c.T2star_cavity_us, c.two_qubit_step_ns);
  auto f = out.csv("budget.csv");
  f << "entry,value\n";
  f << "single_qubit_decoherence_formula," << formula << '\n';
  f << "single_qubit_decoherence_simulated," << sim << '\n';
  f << "two_qubit_cnot_simulated_error," << 1.0 - cnot.mean << '\n';
  json j;
  j["scheme"] = c.scheme;
  j["tau_ns"] = c.tau();
  j["two_qubit_tau_ns"] = c.two_qubit_tau();
  j["single_qubit_decoherence_formula"] = formula;
  j["single_qubit_decoherence_simulated"] = sim;
  j["two_qubit_cnot_simulated_error"] = 1.0 - cnot.mean;
  out.json_file("budget.json", j);
  std::cout << std::fixed << std::setprecision(4) << "single-qubit decoherence " << formula << '\n';
}

int cmd_acceptance(const RunConfig& c, const std::vector<int>& only) {
  const Output out(c);
  hlab::AcceptanceOptions o;
  o.seed = c.seed;
  o.step = c.step_ns;
  o.two_qubit_step = c.two_qubit_step_ns;
  o.only = only;
  json rows = json::array();
  bool all = true;
  hlab::run_acceptance(o, [&](const hlab::CriterionResult& r) {
    std::cout << hlab::format_result(r) << std::endl;
    all = all && r.pass;
    rows.push_back({{"id", r.id}, {"title", r.title}, {"pass", r.pass}, {"detail", r.detail}});
  });
  out.json_file("acceptance.json", {{"criteria", rows}});
  return all ? 0 : kExitFailedCriteria;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Pulse-level simulator for superrobust holonomic gates"};
  app.require_subcommand(1);
  Flags flags;
  std::vector<int> only;
  std::string name;

  struct Command {
    const char* name;
    const char* help;
  };
  const std::vector<Command> commands{
      {"simulate-gate", "propagate one gate; trace CSV and fidelity JSON"},
      {"sweep-epsilon", "fidelity against Rabi error"},
      {"dynphase", "dynamical-phase integrands and integrals"},
      {"qpt", "process tomography of one gate"},
      {"rb", "reference and interleaved randomized benchmarking"},
      {"twoqubit", "number-selective control gate and CNOT robustness"},
      {"budget", "coherence-limited error budget"},
      {"acceptance", "run the acceptance checks"},
  };
  for (const auto& cmd : commands) {
    CLI::App* sub = app.add_subcommand(cmd.name, cmd.help);
    add_common(sub, flags);
    if (std::string(cmd.name) == "acceptance") sub->add_option("--only", only, "criterion numbers to run");
    sub->callback([&name, n = cmd.name] { name = n; });
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitValidation;
  }

  try {
    const RunConfig c = resolve(flags);
    if (name == "simulate-gate") cmd_simulate(c);
    if (name == "sweep-epsilon") cmd_sweep(c);
    if (name == "dynphase") cmd_dynphase(c);
    if (name == "qpt") cmd_qpt(c);
    if (name == "rb") cmd_rb(c);
    if (name == "twoqubit") cmd_twoqubit(c);
    if (name == "budget") cmd_budget(c);
    if (name == "acceptance") return cmd_acceptance(c, only);
  } catch (const hlab::ValidationError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitValidation;
  } catch (const hlab::NumericalError& e) {
    std::cerr << "numerical failure: " << e.what() << '\n';
    return kExitNumerical;
  } catch (const std::filesystem::filesystem_error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitValidation;
  }
  return 0;
}
