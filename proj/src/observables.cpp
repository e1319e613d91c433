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

#include "rpdqs/observables.hpp"

#include <cmath>

#include "rpdqs/format.hpp"

namespace rpdqs {

void YieldCurve::validate() const {
  if (thetas.size() != yields.size()) throw std::invalid_argument("yield curve: size mismatch");
  if (thetas.size() < 1) throw std::invalid_argument("yield curve is empty");
  for (Eigen::Index i = 0; i < thetas.size(); ++i) {
    if (!std::isfinite(yields[i])) throw std::invalid_argument("yield curve has a non-finite yield");
    if (thetas[i] < -1e-12 || thetas[i] > M_PI + 1e-12) throw std::invalid_argument("theta outside [0, pi]");
    if (i > 0 && !(thetas[i] > thetas[i - 1])) throw std::invalid_argument("thetas must increase strictly");
  }
}

double singlet_population_from_state(const QuantumState& state) {
  if (state.n_sites() < 3) throw std::invalid_argument("state must span two electrons and a nucleus");
  // P_S only couples |01> and |10> on the electron pair.
  const Eigen::Index block = state.dim() / 4;
  if (state.kind() == QuantumState::Kind::pure) {
    const VectorXc& psi = state.amplitudes();
    return 0.5 * (psi.segment(block, block) - psi.segment(2 * block, block)).squaredNorm();
  }
  const MatrixXc& rho = state.density_matrix();
  const auto b01 = rho.block(block, block, block, block).trace();
  const auto b10 = rho.block(2 * block, 2 * block, block, block).trace();
  const auto x = rho.block(block, 2 * block, block, block).trace();
  return 0.5 * (b01 + b10 - x - std::conj(x)).real();
}

double singlet_population_from_counts(const ShotResult& counts) {
  if (counts.shots < 1) throw std::invalid_argument("shot result has no shots");
  return static_cast<double>(counts.count("11")) / static_cast<double>(counts.shots);
}

PopulationTrace nuclear_average(const PopulationTrace& up, const PopulationTrace& down) {
  if (up.times.size() != down.times.size() || !up.times.isApprox(down.times, 0.0) ||
      up.singlet.size() != down.singlet.size())
    throw std::invalid_argument("nuclear_average: time grids differ");
  if (up.decayed != down.decayed) throw std::invalid_argument("nuclear_average: mixed decay flags");
  PopulationTrace out;
  out.times = up.times;
  out.singlet = 0.5 * (up.singlet + down.singlet);
  if (up.triplet.size() == up.singlet.size() && down.triplet.size() == down.singlet.size())
    out.triplet = 0.5 * (up.triplet + down.triplet);
  out.decayed = up.decayed;
  return out;
}

double singlet_yield(const PopulationTrace& trace, double k) {
  if (!trace.decayed) throw std::logic_error("singlet_yield needs a decayed trace");
  const Eigen::Index n = trace.times.size();
  if (n != trace.singlet.size()) throw std::invalid_argument("trace size mismatch");
  if (n < 2) return 0.0;
  double integral = 0.0;
  for (Eigen::Index i = 1; i < n; ++i)
    integral += 0.5 * (trace.times[i] - trace.times[i - 1]) * (trace.singlet[i] + trace.singlet[i - 1]);
  return k * integral;
}

double anisotropy(const YieldCurve& curve) {
  if (curve.yields.size() < 1) throw std::invalid_argument("anisotropy of an empty curve");
  return curve.yields.maxCoeff() - curve.yields.minCoeff();
}

RescaleFit rescale_fit(const YieldCurve& noisy, const YieldCurve& reference) {
  if (noisy.thetas.size() != reference.thetas.size() ||
      ((noisy.thetas - reference.thetas).abs() > 1e-9).any())
    throw std::invalid_argument("rescale_fit: theta grids differ");
  const double lo = noisy.yields.minCoeff(), hi = noisy.yields.maxCoeff();
  if (!(hi > lo)) throw std::invalid_argument("rescale_fit: noisy curve is flat");
  const double ref_lo = reference.yields.minCoeff(), ref_hi = reference.yields.maxCoeff();
  RescaleFit fit;
  fit.scale = (ref_hi - ref_lo) / (hi - lo);
  fit.offset = ref_lo - fit.scale * lo;
  fit.fitted.thetas = noisy.thetas;
  fit.fitted.yields = fit.scale * noisy.yields + fit.offset;
  fit.fitted.metadata = noisy.metadata;
  fit.fitted.metadata["fit_scale"] = format_number(fit.scale);
  fit.fitted.metadata["fit_offset"] = format_number(fit.offset);
  return fit;
}

double pearson_correlation(const Eigen::ArrayXd& a, const Eigen::ArrayXd& b) {
  if (a.size() != b.size() || a.size() < 2) throw std::invalid_argument("pearson: need equal sizes >= 2");
  const Eigen::ArrayXd da = a - a.mean(), db = b - b.mean();
  const double denom = std::sqrt((da * da).sum() * (db * db).sum());
  if (denom == 0.0) throw std::invalid_argument("pearson: constant input");
  return (da * db).sum() / denom;
}

}  // namespace rpdqs
