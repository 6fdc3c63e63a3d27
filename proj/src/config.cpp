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

#include "hlab/config.hpp"

#include "hlab/twoqubit.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <set>
#include <string_view>
#include <sstream>
#include <variant>

#ifndef HLAB_VERSION
#define HLAB_VERSION "0.0.0"
#endif

namespace hlab {

namespace {

using Field = std::variant<double RunConfig::*, int RunConfig::*, bool RunConfig::*, std::string RunConfig::*,
                           std::optional<double> RunConfig::*, std::uint64_t RunConfig::*,
                           std::vector<int> RunConfig::*>;

struct Key {
  const char* name;
  Field field;
};

const std::vector<Key>& key_table() {
  static const std::vector<Key> t{
      {"omega_R_GHz", &RunConfig::omega_R_GHz},
      {"omega_S_GHz", &RunConfig::omega_S_GHz},
      {"omega_ge_GHz", &RunConfig::omega_ge_GHz},
      {"omega_ef_GHz", &RunConfig::omega_ef_GHz},
      {"chi_RQ_ge_MHz", &RunConfig::chi_RQ_ge_MHz},
      {"chi_RQ_ef_MHz", &RunConfig::chi_RQ_ef_MHz},
      {"chi_SQ_ge_MHz", &RunConfig::chi_SQ_ge_MHz},
      {"chi_SQ_ef_MHz", &RunConfig::chi_SQ_ef_MHz},
      {"fock_levels", &RunConfig::fock_levels},
      {"T1_ge_us", &RunConfig::T1_ge_us},
      {"T1_ef_us", &RunConfig::T1_ef_us},
      {"T1_gf_us", &RunConfig::T1_gf_us},
      {"T2E_ge_us", &RunConfig::T2E_ge_us},
      {"T2E_ef_us", &RunConfig::T2E_ef_us},
      {"T2E_gf_us", &RunConfig::T2E_gf_us},
      {"T2star_ge_us", &RunConfig::T2star_ge_us},
      {"T1_cavity_us", &RunConfig::T1_cavity_us},
      {"T2star_cavity_us", &RunConfig::T2star_cavity_us},
      {"raman_duration_ns", &RunConfig::raman_duration_ns},
      {"raman_drive_GHz", &RunConfig::raman_drive_GHz},
      {"scheme", &RunConfig::scheme},
      {"gate", &RunConfig::gate},
      {"theta_rad", &RunConfig::theta_rad},
      {"phi_rad", &RunConfig::phi_rad},
      {"gamma_rad", &RunConfig::gamma_rad},
      {"tau_ns", &RunConfig::tau_ns},
      {"two_qubit_tau_ns", &RunConfig::two_qubit_tau_ns},
      {"step_ns", &RunConfig::step_ns},
      {"two_qubit_step_ns", &RunConfig::two_qubit_step_ns},
      {"epsilon", &RunConfig::epsilon},
      {"epsilon_min", &RunConfig::epsilon_min},
      {"epsilon_max", &RunConfig::epsilon_max},
      {"epsilon_points", &RunConfig::epsilon_points},
      {"noise", &RunConfig::noise},
      {"readout", &RunConfig::readout},
      {"seed", &RunConfig::seed},
      {"rb_sequences", &RunConfig::rb_sequences},
      {"rb_lengths", &RunConfig::rb_lengths},
      {"output_dir", &RunConfig::output_dir},
  };
  return t;
}

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

[[noreturn]] void bad_value(const std::string& key, const std::string& value, const char* want) {
  throw ValidationError("invalid value '" + value + "' for " + key + " (expected " + want + ")");
}

template <typename T>
T parse_number(const std::string& key, const std::string& value, const char* want) {
  T out{};
  const char* first = value.data();
  const char* last = first + value.size();
  if (!value.empty() && *first == '+') ++first;
  const auto [ptr, ec] = std::from_chars(first, last, out);
  if (ec != std::errc() || ptr != last) bad_value(key, value, want);
  if constexpr (std::is_floating_point_v<T>) {
    if (!std::isfinite(out)) bad_value(key, value, want);
  }
  return out;
}

std::string format_double(double v) {
  char buf[64];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, ptr);
}

std::string format_field(const RunConfig& c, const Field& f) {
  return std::visit(
      [&](auto ptr) -> std::string {
        const auto& v = c.*ptr;
        using V = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<V, double>) {
          return format_double(v);
        } else if constexpr (std::is_same_v<V, bool>) {
          return v ? "true" : "false";
        } else if constexpr (std::is_same_v<V, std::string>) {
          return v;
        } else if constexpr (std::is_same_v<V, std::optional<double>>) {
          return v ? format_double(*v) : "none";
        } else if constexpr (std::is_same_v<V, std::vector<int>>) {
          std::string s;
          for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + std::to_string(v[i]);
          return s;
        } else {
          return std::to_string(v);
        }
      },
      f);
}

void require_positive(double v, const char* key) {
  if (!(v > 0.0)) throw ValidationError(std::string(key) + " must be positive");
}

}  // namespace

const char* version() { return HLAB_VERSION; }

std::uint64_t fnv1a64(const std::string& data) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : data) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

std::vector<std::string> RunConfig::keys() {
  std::vector<std::string> out;
  for (const auto& k : key_table()) out.emplace_back(k.name);
  return out;
}

void RunConfig::set(const std::string& key, const std::string& raw) {
  const std::string value = trim(raw);
  for (const auto& k : key_table()) {
    if (key != k.name) continue;
    std::visit(
        [&](auto ptr) {
          auto& dst = this->*ptr;
          using V = std::decay_t<decltype(dst)>;
          if constexpr (std::is_same_v<V, double>) {
            dst = parse_number<double>(key, value, "a number");
          } else if constexpr (std::is_same_v<V, int>) {
            dst = parse_number<int>(key, value, "an integer");
          } else if constexpr (std::is_same_v<V, std::uint64_t>) {
            dst = parse_number<std::uint64_t>(key, value, "a non-negative integer");
          } else if constexpr (std::is_same_v<V, bool>) {
            if (value == "true" || value == "on" || value == "1") {
              dst = true;
            } else if (value == "false" || value == "off" || value == "0") {
              dst = false;
            } else {
              bad_value(key, value, "true or false");
            }
          } else if constexpr (std::is_same_v<V, std::string>) {
            if (value.empty()) bad_value(key, value, "a non-empty string");
            dst = value;
          } else if constexpr (std::is_same_v<V, std::optional<double>>) {
            if (value == "none") {
              dst.reset();
            } else {
              dst = parse_number<double>(key, value, "a number in radians");
            }
          } else {
            std::vector<int> out;
            std::stringstream ss(value);
            std::string item;
            while (std::getline(ss, item, ',')) out.push_back(parse_number<int>(key, trim(item), "a list of integers"));
            if (out.empty()) bad_value(key, value, "a list of integers");
            dst = std::move(out);
          }
        },
        k.field);
    return;
  }
  throw ValidationError("unknown config key '" + key + "'");
}

RunConfig RunConfig::parse(std::istream& in, const std::string& source) {
  RunConfig c;
  std::set<std::string> seen;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    const std::string where = source + ":" + std::to_string(lineno) + ": ";
    if (eq == std::string::npos) throw ValidationError(where + "expected key = value");
    const std::string key = trim(line.substr(0, eq));
    if (!seen.insert(key).second) throw ValidationError(where + "duplicate key '" + key + "'");
    try {
      c.set(key, line.substr(eq + 1));
    } catch (const ValidationError& e) {
      throw ValidationError(where + e.what());
    }
  }
  c.validate();
  return c;
}

RunConfig RunConfig::load(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw ValidationError("cannot open config file '" + path + "'");
  return parse(f, path);
}

void RunConfig::validate() const {
  for (double v : {omega_R_GHz, omega_S_GHz, omega_ge_GHz, omega_ef_GHz, raman_drive_GHz}) {
    require_positive(v, "frequencies");
  }
  for (double v : {chi_RQ_ge_MHz, chi_RQ_ef_MHz, chi_SQ_ge_MHz, chi_SQ_ef_MHz}) require_positive(v, "dispersive shifts");
  for (double v : {T1_ge_us, T1_ef_us, T1_gf_us, T2E_ge_us, T2E_ef_us, T2E_gf_us, T2star_ge_us, T1_cavity_us,
                   T2star_cavity_us}) {
    require_positive(v, "coherence times");
  }
  require_positive(raman_duration_ns, "raman_duration_ns");
  require_positive(step_ns, "step_ns");
  require_positive(two_qubit_step_ns, "two_qubit_step_ns");
  if (fock_levels < 3) throw ValidationError("fock_levels must be at least 3");
  if (tau_ns < 0.0) throw ValidationError("tau_ns must be >= 0");
  if (two_qubit_tau_ns < 0.0) throw ValidationError("two_qubit_tau_ns must be >= 0");
  scheme_value();
  gate_spec();
  if (!(std::abs(epsilon) <= 0.2)) throw ValidationError("epsilon must lie in [-0.2, 0.2]");
  if (!(epsilon_min >= -0.2 && epsilon_max <= 0.2 && epsilon_min <= epsilon_max)) {
    throw ValidationError("epsilon_min/epsilon_max must satisfy -0.2 <= min <= max <= 0.2");
  }
  if (epsilon_points < 1) throw ValidationError("epsilon_points must be >= 1");
  if (rb_sequences < 1) throw ValidationError("rb_sequences must be >= 1");
  for (int m : rb_lengths) {
    if (m < 0) throw ValidationError("rb_lengths must be >= 0");
  }
  if (rb_lengths.size() < 3) throw ValidationError("rb_lengths needs at least three entries");
}

std::string RunConfig::canonical() const {
  std::string out;
  for (const auto& k : key_table()) {
    if (std::string_view(k.name) == "output_dir") continue;
    out += std::string(k.name) + " = " + format_field(*this, k.field) + "\n";
  }
  return out;
}

std::string RunConfig::hash_hex() const {
  std::ostringstream os;
  os << std::hex << std::setw(16) << std::setfill('0') << fnv1a64(canonical());
  return os.str();
}

std::string RunConfig::header() const {
  return std::string("# holonomy-lab ") + version() + " config_hash=" + hash_hex();
}

Scheme RunConfig::scheme_value() const { return scheme_from_string(scheme); }

GateSpec RunConfig::gate_spec() const {
  const int given = theta_rad.has_value() + phi_rad.has_value() + gamma_rad.has_value();
  if (given == 0) return GateSpec::named(gate);
  if (given != 3) throw ValidationError("theta_rad, phi_rad and gamma_rad must be given together");
  GateSpec g{*theta_rad, *phi_rad, *gamma_rad};
  g.validate();
  return g;
}

double RunConfig::tau() const { return tau_ns > 0.0 ? tau_ns : default_tau(scheme_value()); }

double RunConfig::two_qubit_tau() const {
  return two_qubit_tau_ns > 0.0 ? two_qubit_tau_ns : default_two_qubit_tau(scheme_value());
}

std::vector<double> RunConfig::epsilon_grid() const {
  std::vector<double> g;
  if (epsilon_points == 1) return {epsilon_min};
  for (int i = 0; i < epsilon_points; ++i) {
    g.push_back(epsilon_min + (epsilon_max - epsilon_min) * i / (epsilon_points - 1));
  }
  return g;
}

NoiseModel RunConfig::noise_model() const {
  NoiseModel n;
  n.epsilon = epsilon;
  n.gamma_ge = 1.0 / T1_ge_us;
  n.gamma_ef = 1.0 / T1_ef_us;
  n.gamma_gf = 1.0 / T1_gf_us;
  n.gamma1 = 1.0 / T2E_ge_us;
  n.gamma2 = 1.0 / T2E_ef_us;
  n.gamma3 = 1.0 / T2E_gf_us;
  n.validate();
  return n;
}

DispersiveSystemParams RunConfig::dispersive_params() const {
  DispersiveSystemParams p;
  p.chi_ge = 2.0 * kPi * chi_SQ_ge_MHz * 1e-3;
  p.chi_ef = 2.0 * kPi * chi_SQ_ef_MHz * 1e-3;
  p.fock_levels = fock_levels;
  p.validate();
  return p;
}

}  // namespace hlab
