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

// Command-line harness for the radical-pair emulator.
//
//   rpdqs <command> [--config FILE] [--set key=value]... [--output DIR]
//                   [--seed N] [--threads N]
//
// Exit status: 0 success, 2 configuration error, 1 runtime error.

#include <cstdio>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "rpdqs/experiment.hpp"
#include "rpdqs/format.hpp"

namespace {

struct CommonOptions {
  std::string config_file;
  std::vector<std::string> overrides;
  std::string output;
  std::string seed;
  std::string threads;
};

void add_common(CLI::App* cmd, CommonOptions& opts) {
  cmd->add_option("--config", opts.config_file, "key = value configuration file");
  cmd->add_option("--set", opts.overrides, "override one key, e.g. --set mode=statevector")->allow_extra_args(false);
  cmd->add_option("--output", opts.output, "output directory");
  cmd->add_option("--seed", opts.seed, "PRNG seed (u64)");
  cmd->add_option("--threads", opts.threads, "worker threads");
}

rpdqs::ExperimentConfig resolve(const CommonOptions& opts) {
  rpdqs::ExperimentConfig config;
  if (!opts.config_file.empty()) config.load_file(opts.config_file);
  for (const auto& kv : opts.overrides) {
    const auto eq = kv.find('=');
    if (eq == std::string::npos) throw rpdqs::ConfigError("--set", "expected key=value, got '" + kv + "'");
    config.set(kv.substr(0, eq), kv.substr(eq + 1));
  }
  if (!opts.output.empty()) config.set("output", opts.output);
  if (!opts.seed.empty()) config.set("seed", opts.seed);
  if (!opts.threads.empty()) config.set("threads", opts.threads);
  config.validate();
  return config;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Digital quantum simulation emulator for radical-pair spin dynamics"};
  app.require_subcommand(1);
  CommonOptions opts;

  auto* population = app.add_subcommand("population", "singlet population trace at one angle");
  auto* yield = app.add_subcommand("yield-sweep", "singlet yield over the theta grid and anisotropy");
  auto* trotter = app.add_subcommand("trotter-sweep", "yield at one angle versus Trotter order");
  auto* rate = app.add_subcommand("rate-sweep", "yield at one angle versus recombination rate");
  auto* shots = app.add_subcommand("shot-sweep", "RMS sampling error versus shot count");
  auto* fit = app.add_subcommand("fit", "rescale a noisy yield curve onto a reference curve");
  auto* circuit = app.add_subcommand("circuit", "dump the lowered gate circuit and its gate counts");
  std::string noisy_file, reference_file;
  fit->add_option("noisy", noisy_file, "noisy yield CSV")->required();
  fit->add_option("reference", reference_file, "reference yield CSV")->required();
  for (auto* cmd : {population, yield, trotter, rate, shots, fit, circuit}) add_common(cmd, opts);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    const rpdqs::ExperimentConfig config = resolve(opts);
    using rpdqs::format_number;
    if (population->parsed()) {
      const auto r = rpdqs::cmd_population(config);
      std::cout << "wrote " << r.raw.times.size() << " points to " << config.output_dir << "/population.csv\n";
    } else if (yield->parsed()) {
      const auto r = rpdqs::cmd_yield_sweep(config);
      std::cout << "anisotropy " << format_number(r.anisotropy) << " over " << r.curve.thetas.size()
                << " angles\n";
    } else if (trotter->parsed()) {
      for (const auto& row : rpdqs::cmd_trotter_sweep(config))
        std::cout << row.n << ' ' << format_number(row.yield_noiseless) << '\n';
    } else if (rate->parsed()) {
      for (const auto& row : rpdqs::cmd_rate_sweep(config))
        std::cout << format_number(row.k) << ' ' << format_number(row.yield) << '\n';
    } else if (shots->parsed()) {
      for (const auto& row : rpdqs::cmd_shot_sweep(config))
        std::cout << row.shots << ' ' << format_number(row.rms_error) << '\n';
    } else if (fit->parsed()) {
      const auto r = rpdqs::cmd_fit(config, noisy_file, reference_file);
      std::cout << "a " << format_number(r.fit.scale) << "\nb " << format_number(r.fit.offset) << "\nr "
                << format_number(r.pearson) << '\n';
    } else if (circuit->parsed()) {
      const auto r = rpdqs::cmd_circuit(config);
      std::cout << "total " << r.counts.total << "\ntrotter " << r.counts.trotter_only << '\n';
    }
  } catch (const rpdqs::ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
