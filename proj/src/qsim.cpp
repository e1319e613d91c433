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

#include "rpdqs/qsim.hpp"

#include <random>

namespace rpdqs {

NoiseProfile NoiseProfile::device_like() {
  NoiseProfile p;
  p.p_depol_1q = 3e-4;
  p.p_depol_2q = 8e-3;
  p.readout_flip_0to1 = 2e-2;
  p.readout_flip_1to0 = 2e-2;
  p.enabled = true;
  return p;
}

void NoiseProfile::validate() const {
  auto ok = [](double p) { return p >= 0.0 && p <= 1.0; };
  if (!ok(p_depol_1q)) throw std::invalid_argument("p_depol_1q must lie in [0, 1]");
  if (!ok(p_depol_2q)) throw std::invalid_argument("p_depol_2q must lie in [0, 1]");
  if (!ok(readout_flip_0to1)) throw std::invalid_argument("readout_flip_0to1 must lie in [0, 1]");
  if (!ok(readout_flip_1to0)) throw std::invalid_argument("readout_flip_1to0 must lie in [0, 1]");
}

void depolarize_1q(MatrixXc& rho, int n_qubits, int q, double p) {
  if (p == 0.0) return;
  const Eigen::Index dim = rho.rows();
  const Eigen::Index m = Eigen::Index{1} << site_bit(q, n_qubits);
  const double keep = 1.0 - p;
  for (Eigen::Index j = 0; j < dim; ++j) {
    if (j & m) continue;
    for (Eigen::Index i = 0; i < dim; ++i) {
      if (i & m) continue;
      const Complex<double> half_trace = 0.5 * (rho(i, j) + rho(i | m, j | m));
      rho(i, j) = keep * rho(i, j) + p * half_trace;
      rho(i | m, j | m) = keep * rho(i | m, j | m) + p * half_trace;
      rho(i | m, j) *= keep;
      rho(i, j | m) *= keep;
    }
  }
}

void depolarize_2q(MatrixXc& rho, int n_qubits, int q0, int q1, double p) {
  if (p == 0.0) return;
  const Eigen::Index dim = rho.rows();
  const Eigen::Index m0 = Eigen::Index{1} << site_bit(q0, n_qubits);
  const Eigen::Index m1 = Eigen::Index{1} << site_bit(q1, n_qubits);
  const std::array<Eigen::Index, 4> off{0, m1, m0, m0 | m1};
  const double keep = 1.0 - p;
  for (Eigen::Index j = 0; j < dim; ++j) {
    if ((j & m0) || (j & m1)) continue;
    for (Eigen::Index i = 0; i < dim; ++i) {
      if ((i & m0) || (i & m1)) continue;
      Complex<double> quarter_trace(0);
      for (int a = 0; a < 4; ++a) quarter_trace += rho(i | off[a], j | off[a]);
      quarter_trace *= 0.25;
      for (int a = 0; a < 4; ++a)
        for (int b = 0; b < 4; ++b) {
          auto& e = rho(i | off[a], j | off[b]);
          e = keep * e + (a == b ? p * quarter_trace : Complex<double>(0));
        }
    }
  }
}

namespace {

void check_dims(const Circuit& circuit, const QuantumState& initial) {
  circuit.validate();
  if (initial.n_sites() != circuit.n_qubits)
    throw std::invalid_argument("circuit has " + std::to_string(circuit.n_qubits) +
                                " qubits but the state spans " + std::to_string(initial.n_sites()));
}

MatrixXc matrix_power(MatrixXc base, int exponent) {
  MatrixXc result = MatrixXc::Identity(base.rows(), base.cols());
  while (exponent > 0) {
    if (exponent & 1) result = result * base;
    exponent >>= 1;
    if (exponent > 0) base = base * base;
  }
  return result;
}

}  // namespace

QuantumState basis_state(int n_qubits, Eigen::Index bits) {
  VectorXc v = VectorXc::Zero(Eigen::Index{1} << n_qubits);
  v(bits) = 1.0;
  return QuantumState::pure(std::move(v));
}

StatevectorRun run_statevector(const Circuit& circuit, const QuantumState& initial, ExecutionOptions options) {
  if (initial.kind() != QuantumState::Kind::pure)
    throw std::invalid_argument("run_statevector needs a pure state");
  check_dims(circuit, initial);
  const int n = circuit.n_qubits;
  StatevectorRun run;
  VectorXc psi = initial.amplitudes();
  for (const Gate& g : circuit.prep) apply_gate(psi, n, g);

  if (options.fuse_steps && circuit.trotter_steps > 0) {
    const MatrixXc step = circuit_unitary<double>(circuit.step, n);
    if (options.record_after_each_step) {
      for (int i = 0; i < circuit.trotter_steps; ++i) {
        psi = step * psi;
        run.step_states.push_back(psi);
      }
    } else {
      psi = matrix_power(step, circuit.trotter_steps) * psi;
    }
  } else {
    for (int i = 0; i < circuit.trotter_steps; ++i) {
      for (const Gate& g : circuit.step) apply_gate(psi, n, g);
      if (options.record_after_each_step) run.step_states.push_back(psi);
    }
  }
  for (const Gate& g : circuit.tail) apply_gate(psi, n, g);
  run.final_state = std::move(psi);
  return run;
}

MatrixXc run_density(const Circuit& circuit, const QuantumState& initial, const NoiseProfile& noise,
                     ExecutionOptions options) {
  noise.validate();
  check_dims(circuit, initial);
  const int n = circuit.n_qubits;
  MatrixXc rho = initial.to_density();
  if (options.fuse_steps && !noise.enabled) {
    const MatrixXc u = circuit_unitary<double>(circuit.tail, n) *
                       matrix_power(circuit_unitary<double>(circuit.step, n), circuit.trotter_steps) *
                       circuit_unitary<double>(circuit.prep, n);
    return u * rho * u.adjoint();
  }
  circuit.for_each_gate([&](const Gate& g) {
    apply_gate(rho, n, g);
    if (!noise.enabled) return;
    if (g.arity() == 1) depolarize_1q(rho, n, g.qubits[0], noise.p_depol_1q);
    else depolarize_2q(rho, n, g.qubits[0], g.qubits[1], noise.p_depol_2q);
  });
  return rho;
}

OutcomeProbabilities electron_probabilities(const VectorXc& psi) {
  const Eigen::Index block = psi.size() / 4;
  OutcomeProbabilities p{};
  for (int o = 0; o < 4; ++o) p[o] = psi.segment(o * block, block).squaredNorm();
  return p;
}

OutcomeProbabilities electron_probabilities(const MatrixXc& rho) {
  const Eigen::Index block = rho.rows() / 4;
  OutcomeProbabilities p{};
  for (int o = 0; o < 4; ++o) p[o] = rho.diagonal().segment(o * block, block).real().sum();
  return p;
}

OutcomeProbabilities electron_probabilities(const QuantumState& state) {
  if (state.n_sites() < 2) throw std::invalid_argument("state has no electron pair");
  return state.kind() == QuantumState::Kind::pure ? electron_probabilities(state.amplitudes())
                                                  : electron_probabilities(state.density_matrix());
}

OutcomeProbabilities apply_readout_error(const OutcomeProbabilities& p, const NoiseProfile& noise) {
  if (!noise.enabled) return p;
  noise.validate();
  // read[true_bit][observed_bit]
  const double read[2][2] = {{1.0 - noise.readout_flip_0to1, noise.readout_flip_0to1},
                             {noise.readout_flip_1to0, 1.0 - noise.readout_flip_1to0}};
  OutcomeProbabilities out{};
  for (int t = 0; t < 4; ++t)
    for (int o = 0; o < 4; ++o)
      out[o] += p[t] * read[t >> 1][o >> 1] * read[t & 1][o & 1];
  return out;
}

std::uint64_t ShotResult::count(const std::string& key) const {
  auto it = counts.find(key);
  return it == counts.end() ? 0 : it->second;
}

std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t stream) {
  std::uint64_t z = seed + 0x9e3779b97f4a7c15ull * (stream + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
  return z ^ (z >> 31);
}

ShotResult sample_measurements(const OutcomeProbabilities& probs, std::uint64_t shots, std::uint64_t seed,
                               const NoiseProfile& noise) {
  if (shots < 1) throw std::invalid_argument("shots must be >= 1");
  if (noise.enabled) noise.validate();
  std::mt19937_64 rng(seed);
  // 53-bit uniform in [0, 1), identical on every platform.
  auto uniform = [&rng] { return static_cast<double>(rng() >> 11) * 0x1.0p-53; };

  std::array<double, 4> cumulative{};
  double acc = 0.0;
  for (int o = 0; o < 4; ++o) cumulative[o] = (acc += std::max(probs[o], 0.0));
  std::array<std::uint64_t, 4> tally{};
  for (std::uint64_t s = 0; s < shots; ++s) {
    const double u = uniform() * acc;
    int outcome = 3;
    for (int o = 0; o < 3; ++o)
      if (u < cumulative[o]) {
        outcome = o;
        break;
      }
    if (noise.enabled) {
      for (int bit : {2, 1}) {
        const bool one = outcome & bit;
        if (uniform() < (one ? noise.readout_flip_1to0 : noise.readout_flip_0to1)) outcome ^= bit;
      }
    }
    ++tally[outcome];
  }
  ShotResult r;
  r.shots = shots;
  r.seed = seed;
  const char* keys[4] = {"00", "01", "10", "11"};
  for (int o = 0; o < 4; ++o) r.counts[keys[o]] = tally[o];
  return r;
}

ShotResult sample_measurements(const QuantumState& state, std::uint64_t shots, std::uint64_t seed,
                               const NoiseProfile& noise) {
  return sample_measurements(electron_probabilities(state), shots, seed, noise);
}

}  // namespace rpdqs
