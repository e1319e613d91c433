// Copyright 2026 The rpdqs Authors
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

#include "rpdqs/config.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace rpdqs {

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string item;
  std::istringstream is(s);
  while (std::getline(is, item, sep)) {
    item = trim(item);
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

double parse_double(const std::string& key, const std::string& v) {
  try {
    std::size_t used = 0;
    const double d = std::stod(v, &used);
    if (used != v.size() || !std::isfinite(d)) throw std::invalid_argument(v);
    return d;
  } catch (const std::exception&) {
    throw ConfigError(key, "expected a number, got '" + v + "'");
  }
}

long long parse_int(const std::string& key, const std::string& v) {
  try {
    std::size_t used = 0;
    const long long i = std::stoll(v, &used);
    if (used != v.size()) throw std::invalid_argument(v);
    return i;
  } catch (const std::exception&) {
    throw ConfigError(key, "expected an integer, got '" + v + "'");
  }
}

std::uint64_t parse_u64(const std::string& key, const std::string& v) {
  try {
    std::size_t used = 0;
    if (!v.empty() && v[0] == '-') throw std::invalid_argument(v);
    const unsigned long long i = std::stoull(v, &used);
    if (used != v.size()) throw std::invalid_argument(v);
    return i;
  } catch (const std::exception&) {
    throw ConfigError(key, "expected a non-negative integer, got '" + v + "'");
  }
}

bool parse_bool(const std::string& key, const std::string& v) {
  if (v == "true" || v == "1" || v == "on" || v == "yes") return true;
  if (v == "false" || v == "0" || v == "off" || v == "no") return false;
  throw ConfigError(key, "expected true/false, got '" + v + "'");
}

std::string exact(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

template <typename T, typename F>
std::string join(const std::vector<T>& xs, F&& fmt) {
  std::string s;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    if (i) s += ',';
    s += fmt(xs[i]);
  }
  return s;
}

std::vector<Nucleus> parse_nuclei(const std::string& key, const std::string& v) {
  std::vector<Nucleus> out;
  for (const auto& entry : split(v, ';')) {
    const auto colon = entry.find(':');
    if (colon == std::string::npos) throw ConfigError(key, "nucleus '" + entry + "' lacks 'electron:'");
    Nucleus n;
    n.electron = static_cast<int>(parse_int(key, trim(entry.substr(0, colon))));
    const auto values = split(entry.substr(colon + 1), ',');
    if (values.size() != 9) throw ConfigError(key, "hyperfine tensor needs 9 values");
    for (int i = 0; i < 9; ++i) n.hyperfine(i / 3, i % 3) = parse_double(key, values[i]);
    out.push_back(n);
  }
  return out;
}

std::string format_nuclei(const std::vector<Nucleus>& nuclei) {
  std::string s;
  for (std::size_t k = 0; k < nuclei.size(); ++k) {
    if (k) s += ';';
    s += std::to_string(nuclei[k].electron) + ':';
    for (int i = 0; i < 9; ++i) {
      if (i) s += ',';
      s += exact(nuclei[k].hyperfine(i / 3, i % 3));
    }
  }
  return s;
}

}  // namespace

std::string mode_name(Mode mode) {
  switch (mode) {
    case Mode::reference: return "reference";
    case Mode::statevector: return "statevector";
    case Mode::density: return "density";
  }
  return "?";
}

std::string nuclear_name(NuclearConfig config) {
  switch (config) {
    case NuclearConfig::up: return "up";
    case NuclearConfig::down: return "down";
    case NuclearConfig::mixed: return "mixed";
  }
  return "?";
}

Eigen::ArrayXd ThetaGrid::values() const {
  if (!explicit_values.empty())
    return Eigen::Map<const Eigen::ArrayXd>(explicit_values.data(), static_cast<Eigen::Index>(explicit_values.size()));
  if (count == 1) return Eigen::ArrayXd::Constant(1, min);
  return Eigen::ArrayXd::LinSpaced(count, min, max);
}

void ExperimentConfig::set(const std::string& raw_key, const std::string& raw_value) {
  const std::string key = trim(raw_key), v = trim(raw_value);
  auto& s = system;
  if (key == "system.B_mT") s.field_magnitude = parse_double(key, v);
  else if (key == "system.theta") s.theta = parse_double(key, v);
  else if (key == "system.phi") s.phi = parse_double(key, v);
  else if (key == "system.g1") s.g_factors[0] = parse_double(key, v);
  else if (key == "system.g2") s.g_factors[1] = parse_double(key, v);
  else if (key == "system.mu_B") s.bohr_magneton = parse_double(key, v);
  else if (key == "system.hbar") s.hbar = parse_double(key, v);
  else if (key == "system.k_S") s.k_singlet = parse_double(key, v);
  else if (key == "system.k_T") s.k_triplet = parse_double(key, v);
  else if (key == "system.nuclei") s.nuclei = parse_nuclei(key, v);
  else if (key == "mode") {
    if (v == "reference") mode = Mode::reference;
    else if (v == "statevector") mode = Mode::statevector;
    else if (v == "density") mode = Mode::density;
    else throw ConfigError(key, "expected reference|statevector|density, got '" + v + "'");
  } else if (key == "nuclear") {
    if (v == "up") nuclear = NuclearConfig::up;
    else if (v == "down") nuclear = NuclearConfig::down;
    else if (v == "mixed") nuclear = NuclearConfig::mixed;
    else throw ConfigError(key, "expected up|down|mixed, got '" + v + "'");
  } else if (key == "trotter_steps") {
    const long long n = parse_int(key, v);
    if (n < 1 || n > (1 << 24)) throw ConfigError(key, "must be in [1, 2^24]");
    trotter_steps = static_cast<int>(n);
  } else if (key == "t_max") t_max = parse_double(key, v);
  else if (key == "dt") dt = parse_double(key, v);
  else if (key == "theta") theta = parse_double(key, v);
  else if (key == "theta.count") {
    theta_grid.count = static_cast<int>(parse_int(key, v));
    theta_grid.explicit_values.clear();
  } else if (key == "theta.min") theta_grid.min = parse_double(key, v);
  else if (key == "theta.max") theta_grid.max = parse_double(key, v);
  else if (key == "theta.list") {
    theta_grid.explicit_values.clear();
    for (const auto& x : split(v, ',')) theta_grid.explicit_values.push_back(parse_double(key, x));
  } else if (key == "shots") shots = parse_u64(key, v);
  else if (key == "seed") seed = parse_u64(key, v);
  else if (key == "tail") {
    if (v == "none") tail = Tail::none;
    else if (v == "extend") tail = Tail::extend;
    else throw ConfigError(key, "expected none|extend, got '" + v + "'");
  } else if (key == "lowering.prune_all_zero") lowering.prune_all_zero = parse_bool(key, v);
  else if (key == "noise.enabled") noise.enabled = parse_bool(key, v);
  else if (key == "noise.p1") noise.p_depol_1q = parse_double(key, v);
  else if (key == "noise.p2") noise.p_depol_2q = parse_double(key, v);
  else if (key == "noise.readout01") noise.readout_flip_0to1 = parse_double(key, v);
  else if (key == "noise.readout10") noise.readout_flip_1to0 = parse_double(key, v);
  else if (key == "noise.profile") {
    if (v == "device_like") noise = NoiseProfile::device_like();
    else if (v == "off") noise = NoiseProfile{};
    else throw ConfigError(key, "expected device_like|off, got '" + v + "'");
  } else if (key == "n_list") {
    n_list.clear();
    for (const auto& x : split(v, ',')) n_list.push_back(static_cast<int>(parse_int(key, x)));
  } else if (key == "k_list") {
    k_list.clear();
    for (const auto& x : split(v, ',')) k_list.push_back(parse_double(key, x));
  } else if (key == "shot_list") {
    shot_list.clear();
    for (const auto& x : split(v, ',')) shot_list.push_back(parse_u64(key, x));
  } else if (key == "threads") {
    const long long t = parse_int(key, v);
    if (t < 1 || t > 1024) throw ConfigError(key, "must be in [1, 1024]");
    threads = static_cast<int>(t);
  } else if (key == "output") output_dir = v;
  else throw ConfigError(key, "unknown configuration key");
}

void ExperimentConfig::load(const std::string& text) {
  std::istringstream is(text);
  std::string line;
  int line_no = 0;
  while (std::getline(is, line)) {
    ++line_no;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw ConfigError("line " + std::to_string(line_no), "expected 'key = value'");
    set(line.substr(0, eq), line.substr(eq + 1));
  }
}

void ExperimentConfig::load_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("config", "cannot read '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  load(ss.str());
}

void ExperimentConfig::validate() const {
  try {
    system.validate();
  } catch (const std::invalid_argument& e) {
    throw ConfigError("system", e.what());
  }
  if (system.nuclei.empty()) throw ConfigError("system.nuclei", "at least one nucleus is required");
  if (system.n_sites() > 7) throw ConfigError("system.nuclei", "at most 5 nuclei (7 spins) are supported");
  if (!(dt > 0.0)) throw ConfigError("dt", "must be > 0");
  if (!(t_max >= dt)) throw ConfigError("t_max", "must be >= dt");
  if (t_max / dt > 1e7) throw ConfigError("dt", "more than 1e7 time points");
  if (theta_grid.explicit_values.empty()) {
    if (theta_grid.count < 1) throw ConfigError("theta.count", "must be >= 1");
    if (theta_grid.min < 0.0 || theta_grid.max > M_PI + 1e-12 || !(theta_grid.max > theta_grid.min || theta_grid.count == 1))
      throw ConfigError("theta.min", "grid must satisfy 0 <= min < max <= pi");
  } else {
    const auto& xs = theta_grid.explicit_values;
    for (std::size_t i = 0; i < xs.size(); ++i) {
      if (xs[i] < 0.0 || xs[i] > M_PI + 1e-12) throw ConfigError("theta.list", "angles must lie in [0, pi]");
      if (i > 0 && !(xs[i] > xs[i - 1])) throw ConfigError("theta.list", "angles must increase strictly");
    }
  }
  try {
    noise.validate();
  } catch (const std::invalid_argument& e) {
    throw ConfigError("noise", e.what());
  }
  if (noise.enabled && mode != Mode::density)
    throw ConfigError("mode", "noise requires mode=density");
  if (system.k_singlet != system.k_triplet)
    throw ConfigError("system.k_T", "asymmetric recombination (k_S != k_T) is not supported");
  if (shots > 0 && mode == Mode::reference)
    throw ConfigError("shots", "sampling needs a circuit mode (statevector or density)");
  for (int n : n_list)
    if (n < 1) throw ConfigError("n_list", "Trotter orders must be >= 1");
  for (double k : k_list)
    if (!(k >= 0.0)) throw ConfigError("k_list", "rates must be >= 0");
  for (auto s : shot_list)
    if (s < 1) throw ConfigError("shot_list", "shot counts must be >= 1");
}

std::map<std::string, std::string> ExperimentConfig::resolved() const {
  std::map<std::string, std::string> r;
  r["system.B_mT"] = exact(system.field_magnitude);
  r["system.theta"] = exact(system.theta);
  r["system.phi"] = exact(system.phi);
  r["system.g1"] = exact(system.g_factors[0]);
  r["system.g2"] = exact(system.g_factors[1]);
  r["system.mu_B"] = exact(system.bohr_magneton);
  r["system.hbar"] = exact(system.hbar);
  r["system.k_S"] = exact(system.k_singlet);
  r["system.k_T"] = exact(system.k_triplet);
  r["system.nuclei"] = format_nuclei(system.nuclei);
  r["mode"] = mode_name(mode);
  r["nuclear"] = nuclear_name(nuclear);
  r["trotter_steps"] = std::to_string(trotter_steps);
  r["t_max"] = exact(t_max);
  r["dt"] = exact(dt);
  r["theta"] = exact(theta);
  if (theta_grid.explicit_values.empty()) {
    r["theta.count"] = std::to_string(theta_grid.count);
    r["theta.min"] = exact(theta_grid.min);
    r["theta.max"] = exact(theta_grid.max);
  } else {
    r["theta.list"] = join(theta_grid.explicit_values, exact);
  }
  r["shots"] = std::to_string(shots);
  r["seed"] = std::to_string(seed);
  r["tail"] = tail == Tail::none ? "none" : "extend";
  r["lowering.prune_all_zero"] = lowering.prune_all_zero ? "true" : "false";
  r["noise.enabled"] = noise.enabled ? "true" : "false";
  r["noise.p1"] = exact(noise.p_depol_1q);
  r["noise.p2"] = exact(noise.p_depol_2q);
  r["noise.readout01"] = exact(noise.readout_flip_0to1);
  r["noise.readout10"] = exact(noise.readout_flip_1to0);
  r["n_list"] = join(n_list, [](int n) { return std::to_string(n); });
  r["k_list"] = join(k_list, exact);
  r["shot_list"] = join(shot_list, [](std::uint64_t s) { return std::to_string(s); });
  return r;
}

std::uint64_t ExperimentConfig::content_hash() const {
  std::uint64_t h = 1469598103934665603ull;
  for (const auto& [k, v] : resolved()) {
    for (char c : k + '=' + v + '\n') {
      h ^= static_cast<unsigned char>(c);
      h *= 1099511628211ull;
    }
  }
  return h;
}

}  // namespace rpdqs
