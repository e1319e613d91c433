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

#include "rpdqs/experiment.hpp"

#include <atomic>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <mutex>
#include <sstream>
#include <thread>

#include "json.hpp"
#include "rpdqs/format.hpp"

namespace rpdqs {

namespace fs = std::filesystem;
using json = nlohmann::json;

void parallel_for(std::size_t count, int threads, const std::function<void(std::size_t)>& fn) {
  const std::size_t workers = std::min<std::size_t>(std::max(threads, 1), count);
  if (workers <= 1) {
    for (std::size_t i = 0; i < count; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (std::size_t w = 0; w < workers; ++w) {
    pool.emplace_back([&] {
      for (std::size_t i = next++; i < count; i = next++) {
        try {
          fn(i);
        } catch (...) {
          std::lock_guard<std::mutex> lock(failure_mutex);
          if (!failure) failure = std::current_exception();
          next = count;
        }
      }
    });
  }
  for (auto& t : pool) t.join();
  if (failure) std::rethrow_exception(failure);
}

namespace {

Eigen::Index nuclear_bits(NuclearConfig config, int n_sites) {
  return config == NuclearConfig::up ? 0 : (Eigen::Index{1} << (n_sites - 2)) - 1;
}

// Density input for the circuit: electrons in |00>, nuclei per config.
QuantumState circuit_density_input(NuclearConfig config, int n_sites) {
  const Eigen::Index dim = Eigen::Index{1} << n_sites;
  MatrixXc rho = MatrixXc::Zero(dim, dim);
  if (config == NuclearConfig::mixed) {
    const Eigen::Index n_nuclear = Eigen::Index{1} << (n_sites - 2);
    for (Eigen::Index b = 0; b < n_nuclear; ++b) rho(b, b) = 1.0 / static_cast<double>(n_nuclear);
  } else {
    const Eigen::Index b = nuclear_bits(config, n_sites);
    rho(b, b) = 1.0;
  }
  return QuantumState::density(std::move(rho));
}

double measured_singlet(const OutcomeProbabilities& probs, const ExperimentConfig& config,
                        std::uint64_t seed) {
  if (config.shots == 0) return apply_readout_error(probs, config.noise)[3];
  return singlet_population_from_counts(sample_measurements(probs, config.shots, seed, config.noise));
}

PopulationTrace trace_on_grid(const ExperimentConfig& config, double theta, const TimeGrid& grid,
                              std::uint64_t stream) {
  RadicalPairSystem system = config.system;
  system.theta = theta;
  const int n_sites = system.n_sites();

  if (config.mode == Mode::reference) {
    const QuantumState state0 =
        config.nuclear == NuclearConfig::mixed
            ? initial_state(NuclearConfig::mixed, n_sites, QuantumState::Kind::density)
            : initial_state(config.nuclear, n_sites, QuantumState::Kind::pure);
    return evolve_exact(hamiltonian_matrix(system), system.hbar, state0, grid);
  }

  PopulationTrace trace;
  trace.times = grid.times();
  trace.singlet.resize(trace.times.size());
  trace.decayed = false;
  const std::uint64_t point_seed = mix_seed(config.seed, stream);
  ExecutionOptions options;
  options.fuse_steps = true;

  std::vector<NuclearConfig> configs;
  if (config.mode == Mode::statevector && config.nuclear == NuclearConfig::mixed)
    configs = {NuclearConfig::up, NuclearConfig::down};
  else
    configs = {config.nuclear};

  for (Eigen::Index i = 0; i < trace.times.size(); ++i) {
    const Circuit circuit =
        lower_to_basis(compile(system, trace.times[i], config.trotter_steps), config.lowering);
    double sum = 0.0;
    for (std::size_t c = 0; c < configs.size(); ++c) {
      const std::uint64_t seed = mix_seed(point_seed, static_cast<std::uint64_t>(i) * 4 + c);
      OutcomeProbabilities probs;
      if (config.mode == Mode::statevector) {
        const auto run = run_statevector(circuit, basis_state(n_sites, nuclear_bits(configs[c], n_sites)), options);
        probs = electron_probabilities(run.final_state);
      } else {
        probs = electron_probabilities(
            run_density(circuit, circuit_density_input(configs[c], n_sites), config.noise, options));
      }
      sum += measured_singlet(probs, config, seed);
    }
    trace.singlet[i] = sum / static_cast<double>(configs.size());
  }
  return trace;
}

std::string hex64(std::uint64_t v) {
  char buf[20];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(v));
  return buf;
}

double rounded(double v) { return std::stod(format_number(v)); }

fs::path output_path(const ExperimentConfig& config, const std::string& name) {
  const fs::path dir(config.output_dir);
  if (!dir.empty()) fs::create_directories(dir);
  return dir / name;
}

void write_text(const fs::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write '" + path.string() + "'");
  out << text;
  if (!out) throw std::runtime_error("failed writing '" + path.string() + "'");
}

void write_sidecar(const ExperimentConfig& config, const std::string& name, const std::string& command,
                   json results) {
  json doc;
  doc["command"] = command;
  doc["config"] = config.resolved();
  doc["config_hash"] = hex64(config.content_hash());
  doc["prng"] = ShotResult::kGenerator;
  doc["results"] = std::move(results);
  write_text(output_path(config, name), doc.dump(2) + "\n");
}

YieldCurve curve_from(const ExperimentConfig& config, const Eigen::ArrayXd& thetas) {
  YieldCurve curve;
  curve.thetas = thetas;
  curve.yields.resize(thetas.size());
  parallel_for(static_cast<std::size_t>(thetas.size()), config.threads, [&](std::size_t i) {
    curve.yields[static_cast<Eigen::Index>(i)] = singlet_yield_at(config, thetas[static_cast<Eigen::Index>(i)], i);
  });
  curve.metadata = {{"mode", mode_name(config.mode)},
                    {"trotter_steps", std::to_string(config.trotter_steps)},
                    {"noise", config.noise.enabled ? "on" : "off"},
                    {"t_max", format_number(yield_grid(config).t_max())},
                    {"dt", format_number(config.dt)},
                    {"shots", std::to_string(config.shots)}};
  return curve;
}

}  // namespace

TimeGrid yield_grid(const ExperimentConfig& config) {
  if (config.tail == Tail::none) return TimeGrid::span(config.t_max, config.dt);
  const double k = config.system.k_singlet;
  if (!(k > 0.0)) throw ConfigError("tail", "tail=extend needs k_S > 0");
  return TimeGrid::span(std::max(config.t_max, std::log(1e6) / k), config.dt);
}

PopulationTrace population_trace(const ExperimentConfig& config, double theta, std::uint64_t stream) {
  config.validate();
  return trace_on_grid(config, theta, TimeGrid::span(config.t_max, config.dt), stream);
}

double singlet_yield_at(const ExperimentConfig& config, double theta, std::uint64_t stream) {
  config.validate();
  const double k = config.system.k_singlet;
  const PopulationTrace raw = trace_on_grid(config, theta, yield_grid(config), stream);
  return singlet_yield(apply_decay(raw, k), k);
}

YieldCurve yield_curve(const ExperimentConfig& config) {
  config.validate();
  return curve_from(config, config.theta_grid.values());
}

PopulationResult cmd_population(const ExperimentConfig& config) {
  PopulationResult r;
  r.raw = population_trace(config, config.theta);
  r.decayed = apply_decay(r.raw, config.system.k_singlet);

  std::string csv = "time_us,population_raw,population_decayed\n";
  for (Eigen::Index i = 0; i < r.raw.times.size(); ++i)
    csv += format_number(r.raw.times[i]) + ',' + format_number(r.raw.singlet[i]) + ',' +
           format_number(r.decayed.singlet[i]) + '\n';
  write_text(output_path(config, "population.csv"), csv);
  write_sidecar(config, "population.json", "population",
                {{"theta_rad", rounded(config.theta)},
                 {"points", r.raw.times.size()},
                 {"singlet_yield", rounded(singlet_yield(r.decayed, config.system.k_singlet))}});
  return r;
}

YieldSweepResult cmd_yield_sweep(const ExperimentConfig& config) {
  YieldSweepResult r;
  r.curve = yield_curve(config);
  r.anisotropy = anisotropy(r.curve);
  write_yield_csv(output_path(config, "yield.csv"), r.curve);
  json meta;
  for (const auto& [k, v] : r.curve.metadata) meta[k] = v;
  Eigen::Index imax = 0, imin = 0;
  r.curve.yields.maxCoeff(&imax);
  r.curve.yields.minCoeff(&imin);
  write_sidecar(config, "yield.json", "yield-sweep",
                {{"anisotropy", rounded(r.anisotropy)},
                 {"yield_max", rounded(r.curve.yields[imax])},
                 {"yield_min", rounded(r.curve.yields[imin])},
                 {"theta_at_max", rounded(r.curve.thetas[imax])},
                 {"theta_at_min", rounded(r.curve.thetas[imin])},
                 {"curve", meta}});
  return r;
}

std::vector<TrotterSweepRow> cmd_trotter_sweep(const ExperimentConfig& config) {
  config.validate();
  std::vector<int> ns = config.n_list;
  if (ns.empty())
    for (int n = 1; n <= 30; ++n) ns.push_back(n);
  const bool noisy = config.noise.enabled;

  ExperimentConfig clean = config;
  clean.mode = Mode::statevector;
  clean.noise = NoiseProfile{};
  ExperimentConfig dirty = config;
  dirty.mode = Mode::density;

  std::vector<TrotterSweepRow> rows(ns.size());
  parallel_for(ns.size(), config.threads, [&](std::size_t i) {
    rows[i].n = ns[i];
    ExperimentConfig c = clean;
    c.trotter_steps = ns[i];
    rows[i].yield_noiseless = singlet_yield_at(c, config.theta, i);
    if (noisy) {
      ExperimentConfig d = dirty;
      d.trotter_steps = ns[i];
      rows[i].yield_noisy = singlet_yield_at(d, config.theta, i);
    }
  });

  std::string csv = noisy ? "n,yield_noiseless,yield_noisy\n" : "n,yield_noiseless\n";
  for (const auto& row : rows) {
    csv += std::to_string(row.n) + ',' + format_number(row.yield_noiseless);
    if (noisy) csv += ',' + format_number(row.yield_noisy);
    csv += '\n';
  }
  write_text(output_path(config, "trotter.csv"), csv);
  write_sidecar(config, "trotter.json", "trotter-sweep",
                {{"theta_rad", rounded(config.theta)}, {"rows", rows.size()}, {"noisy", noisy}});
  return rows;
}

std::vector<RateSweepRow> cmd_rate_sweep(const ExperimentConfig& config) {
  config.validate();
  std::vector<double> ks = config.k_list;
  if (ks.empty()) ks = {0.1, 0.3, 1.0, 3.0, 10.0};
  std::vector<RateSweepRow> rows(ks.size());
  parallel_for(ks.size(), config.threads, [&](std::size_t i) {
    ExperimentConfig c = config;
    c.system.k_singlet = c.system.k_triplet = ks[i];
    rows[i] = {ks[i], singlet_yield_at(c, config.theta, i)};
  });
  std::string csv = "k_MHz,yield\n";
  for (const auto& row : rows) csv += format_number(row.k) + ',' + format_number(row.yield) + '\n';
  write_text(output_path(config, "rate.csv"), csv);
  write_sidecar(config, "rate.json", "rate-sweep", {{"theta_rad", rounded(config.theta)}, {"rows", rows.size()}});
  return rows;
}

std::vector<ShotSweepRow> cmd_shot_sweep(const ExperimentConfig& config) {
  config.validate();
  if (config.mode == Mode::reference) throw ConfigError("mode", "shot-sweep needs statevector or density mode");
  std::vector<std::uint64_t> shot_list = config.shot_list;
  if (shot_list.empty()) shot_list = {100, 1000, 10000};

  ExperimentConfig exact_cfg = config;
  exact_cfg.shots = 0;
  const PopulationTrace exact = population_trace(exact_cfg, config.theta);

  std::vector<ShotSweepRow> rows(shot_list.size());
  parallel_for(shot_list.size(), config.threads, [&](std::size_t i) {
    ExperimentConfig c = config;
    c.shots = shot_list[i];
    const PopulationTrace sampled = population_trace(c, config.theta, i + 1);
    rows[i] = {shot_list[i], std::sqrt((sampled.singlet - exact.singlet).square().mean())};
  });
  std::string csv = "shots,rms_error\n";
  for (const auto& row : rows) csv += std::to_string(row.shots) + ',' + format_number(row.rms_error) + '\n';
  write_text(output_path(config, "shots.csv"), csv);
  write_sidecar(config, "shots.json", "shot-sweep", {{"theta_rad", rounded(config.theta)}, {"rows", rows.size()}});
  return rows;
}

FitReport cmd_fit(const ExperimentConfig& config, const fs::path& noisy_csv, const fs::path& reference_csv) {
  const YieldCurve noisy = read_yield_csv(noisy_csv);
  const YieldCurve reference = read_yield_csv(reference_csv);
  FitReport r;
  r.fit = rescale_fit(noisy, reference);
  r.pearson = pearson_correlation(r.fit.fitted.yields, reference.yields);
  write_yield_csv(output_path(config, "fit.csv"), r.fit.fitted);
  json results = {{"scale", rounded(r.fit.scale)},
                  {"offset", rounded(r.fit.offset)},
                  {"pearson", rounded(r.pearson)},
                  {"noisy", noisy_csv.string()},
                  {"reference", reference_csv.string()}};
  write_sidecar(config, "fit.json", "fit", results);
  return r;
}

CircuitReport cmd_circuit(const ExperimentConfig& config) {
  config.validate();
  RadicalPairSystem system = config.system;
  system.theta = config.theta;
  const Circuit raw = compile(system, config.t_max, config.trotter_steps);
  CircuitReport r;
  r.circuit = lower_to_basis(raw, config.lowering);
  r.counts = gate_count(r.circuit);
  write_text(output_path(config, "circuit.txt"), circuit_to_text(r.circuit));
  json per_kind = json::object();
  for (const auto& [kind, n] : r.counts.per_kind) per_kind[gate_kind_name(kind)] = n;
  write_sidecar(config, "circuit.json", "circuit",
                {{"total", r.counts.total},
                 {"trotter_only", r.counts.trotter_only},
                 {"per_step", r.circuit.step.size()},
                 {"per_kind", per_kind},
                 {"unlowered_total", raw.size()},
                 {"system_hash", hex64(r.circuit.system_hash)}});
  return r;
}

void write_yield_csv(const fs::path& path, const YieldCurve& curve) {
  if (path.has_parent_path()) fs::create_directories(path.parent_path());
  std::string csv = "theta_rad,singlet_yield\n";
  for (Eigen::Index i = 0; i < curve.thetas.size(); ++i)
    csv += format_number(curve.thetas[i]) + ',' + format_number(curve.yields[i]) + '\n';
  write_text(path, csv);
}

YieldCurve read_yield_csv(const fs::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot read '" + path.string() + "'");
  std::string line;
  if (!std::getline(in, line) || line.rfind("theta_rad,singlet_yield", 0) != 0)
    throw std::runtime_error("'" + path.string() + "' is not a theta_rad,singlet_yield file");
  std::vector<double> thetas, yields;
  int line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    const auto comma = line.find(',');
    try {
      if (comma == std::string::npos) throw std::invalid_argument(line);
      thetas.push_back(std::stod(line.substr(0, comma)));
      yields.push_back(std::stod(line.substr(comma + 1)));
    } catch (const std::exception&) {
      throw std::runtime_error(path.string() + ":" + std::to_string(line_no) + ": malformed row");
    }
  }
  YieldCurve curve;
  curve.thetas = Eigen::Map<Eigen::ArrayXd>(thetas.data(), static_cast<Eigen::Index>(thetas.size()));
  curve.yields = Eigen::Map<Eigen::ArrayXd>(yields.data(), static_cast<Eigen::Index>(yields.size()));
  curve.validate();
  return curve;
}

}  // namespace rpdqs
