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

#pragma once

#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "rpdqs/circuit.hpp"
#include "rpdqs/qsim.hpp"
#include "rpdqs/refsolver.hpp"
#include "rpdqs/spinham.hpp"

namespace rpdqs {

/// Invalid experiment configuration; `field()` names the offending key.
class ConfigError : public std::invalid_argument {
 public:
  ConfigError(std::string field, const std::string& message)
      : std::invalid_argument(field + ": " + message), field_(std::move(field)) {}
  const std::string& field() const { return field_; }

 private:
  std::string field_;
};

enum class Mode { reference, statevector, density };
enum class Tail { none, extend };

struct ThetaGrid {
  int count = 128;
  double min = 0.0;
  double max = 3.14159265358979323846;
  std::vector<double> explicit_values;  // overrides count/min/max when set

  /// Uniform grid with both endpoints (a single point sits at `min`).
  Eigen::ArrayXd values() const;
};

/// Everything an experiment needs. Defaults reproduce the prototype
/// radical pair with a 128-angle grid over [0, pi].
///
/// Keys accepted by set():
///   system.B_mT system.theta system.phi system.g1 system.g2 system.mu_B
///   system.hbar system.k_S system.k_T system.nuclei
///   mode nuclear trotter_steps t_max dt theta theta.count theta.min
///   theta.max theta.list shots seed tail lowering.prune_all_zero
///   noise.enabled noise.p1 noise.p2 noise.readout01 noise.readout10
///   n_list k_list shot_list threads output
/// `system.nuclei` is a ';'-separated list of "electron:a00,a01,...,a22".
struct ExperimentConfig {
  RadicalPairSystem system = RadicalPairSystem::prototype();
  Mode mode = Mode::reference;
  NuclearConfig nuclear = NuclearConfig::mixed;
  int trotter_steps = 1024;
  double t_max = 1.0;  // us
  double dt = 1e-3;    // us
  ThetaGrid theta_grid;
  double theta = 3.14159265358979323846 / 2;  // single-angle commands
  std::uint64_t shots = 0;                     // 0 = exact expectation
  std::uint64_t seed = 0;
  NoiseProfile noise;
  LoweringPolicy lowering;
  Tail tail = Tail::none;
  std::vector<int> n_list;
  std::vector<double> k_list;
  std::vector<std::uint64_t> shot_list;
  int threads = 1;
  std::string output_dir = ".";

  /// Parses and applies one key; throws ConfigError.
  void set(const std::string& key, const std::string& value);
  /// Applies "key = value" lines; '#' starts a comment.
  void load(const std::string& text);
  void load_file(const std::string& path);

  /// Throws ConfigError naming the first invalid field.
  void validate() const;

  /// Every key with its resolved value, as accepted by set().
  std::map<std::string, std::string> resolved() const;
  /// FNV-1a over the resolved key/value pairs.
  std::uint64_t content_hash() const;
};

std::string mode_name(Mode mode);
std::string nuclear_name(NuclearConfig config);

}  // namespace rpdqs
