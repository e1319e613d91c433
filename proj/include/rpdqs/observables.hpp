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

#include <map>
#include <string>

#include "rpdqs/qsim.hpp"
#include "rpdqs/refsolver.hpp"

namespace rpdqs {

struct YieldCurve {
  Eigen::ArrayXd thetas;  // rad, strictly increasing in [0, pi]
  Eigen::ArrayXd yields;
  std::map<std::string, std::string> metadata;

  /// Throws std::invalid_argument on a broken invariant.
  void validate() const;
};

/// Tr[P_S rho], P_S = |S><S| on sites 0,1 (x) identity on the nuclei.
double singlet_population_from_state(const QuantumState& state);

/// counts["11"] / shots.
double singlet_population_from_counts(const ShotResult& counts);

/// Pointwise mean; throws std::invalid_argument if the grids differ.
PopulationTrace nuclear_average(const PopulationTrace& up, const PopulationTrace& down);

/// k times the trapezoidal integral of a decayed trace over its grid.
/// Throws std::logic_error for an undecayed trace.
double singlet_yield(const PopulationTrace& trace, double k);

/// max - min over the curve.
double anisotropy(const YieldCurve& curve);

struct RescaleFit {
  YieldCurve fitted;
  double scale = 1.0;
  double offset = 0.0;
};

/// Affine map matching the extrema of `noisy` to those of `reference`.
/// Throws std::invalid_argument on grid mismatch or a flat noisy curve.
RescaleFit rescale_fit(const YieldCurve& noisy, const YieldCurve& reference);

double pearson_correlation(const Eigen::ArrayXd& a, const Eigen::ArrayXd& b);

}  // namespace rpdqs
