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
#include <filesystem>
#include <functional>
#include <string>
#include <vector>

#include "rpdqs/config.hpp"
#include "rpdqs/observables.hpp"

namespace rpdqs {

/// Runs fn(i) for i in [0, count) on up to `threads` workers. Each index is
/// handled exactly once; callers store results by index.
void parallel_for(std::size_t count, int threads, const std::function<void(std::size_t)>& fn);

/// Undecayed singlet population over the config's time grid at field angle
/// `theta`, computed in the configured mode. `stream` separates the random
/// streams of different sweep points.
PopulationTrace population_trace(const ExperimentConfig& config, double theta, std::uint64_t stream = 0);

/// Time grid used for yields: [0, t_max], or longer with tail=extend until
/// exp(-k t) < 1e-6.
TimeGrid yield_grid(const ExperimentConfig& config);

/// Decays the trace with k = k_S and integrates it.
double singlet_yield_at(const ExperimentConfig& config, double theta, std::uint64_t stream = 0);

/// Singlet yield over the theta grid, in grid order.
YieldCurve yield_curve(const ExperimentConfig& config);

// ---------------------------------------------------------------------------
// Commands. Each writes its CSV and JSON sidecar into config.output_dir and
// returns the computed data.

struct PopulationResult {
  PopulationTrace raw;
  PopulationTrace decayed;
};
PopulationResult cmd_population(const ExperimentConfig& config);

struct YieldSweepResult {
  YieldCurve curve;
  double anisotropy = 0.0;
};
YieldSweepResult cmd_yield_sweep(const ExperimentConfig& config);

struct TrotterSweepRow {
  int n = 0;
  double yield_noiseless = 0.0;
  double yield_noisy = 0.0;  // only meaningful when noise is enabled
};
/// Defaults to n = 1..30 when config.n_list is empty.
std::vector<TrotterSweepRow> cmd_trotter_sweep(const ExperimentConfig& config);

struct RateSweepRow {
  double k = 0.0;
  double yield = 0.0;
};
/// Defaults to k = 0.1, 0.3, 1, 3, 10 MHz when config.k_list is empty.
std::vector<RateSweepRow> cmd_rate_sweep(const ExperimentConfig& config);

struct ShotSweepRow {
  std::uint64_t shots = 0;
  double rms_error = 0.0;
};
/// Defaults to 100, 1000, 10000 shots when config.shot_list is empty.
std::vector<ShotSweepRow> cmd_shot_sweep(const ExperimentConfig& config);

struct FitReport {
  RescaleFit fit;
  double pearson = 0.0;
};
FitReport cmd_fit(const ExperimentConfig& config, const std::filesystem::path& noisy_csv,
                  const std::filesystem::path& reference_csv);

struct CircuitReport {
  Circuit circuit;  // lowered
  GateCount counts;
};
/// Lowered circuit at config.theta, t = t_max, n = trotter_steps.
CircuitReport cmd_circuit(const ExperimentConfig& config);

// ---------------------------------------------------------------------------
// File formats.

/// `theta_rad,singlet_yield` with a header row.
void write_yield_csv(const std::filesystem::path& path, const YieldCurve& curve);
YieldCurve read_yield_csv(const std::filesystem::path& path);

}  // namespace rpdqs
