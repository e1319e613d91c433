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

#include <gtest/gtest.h>

#include "oracles.hpp"
#include "rpdqs/refsolver.hpp"

namespace rpdqs {
namespace {

std::vector<Gate> random_gates(std::mt19937_64& rng, int n, int depth) {
  std::uniform_int_distribution<int> kind(0, 6), qubit(0, n - 1), letter(1, 3);
  std::uniform_real_distribution<double> angle(-M_PI, M_PI);
  std::vector<Gate> out;
  for (int d = 0; d < depth; ++d) {
    const int q0 = qubit(rng);
    int q1 = qubit(rng);
    while (q1 == q0) q1 = qubit(rng);
    switch (kind(rng)) {
      case 0: out.push_back(Gate::x(q0)); break;
      case 1: out.push_back(Gate::h(q0)); break;
      case 2: out.push_back(Gate::cnot(q0, q1)); break;
      case 3: out.push_back(Gate::rx(q0, angle(rng))); break;
      case 4: out.push_back(Gate::ry(q0, angle(rng))); break;
      case 5: out.push_back(Gate::rz(q0, angle(rng))); break;
      default:
        out.push_back(Gate::pauli_rot2(static_cast<Pauli>(letter(rng)), static_cast<Pauli>(letter(rng)), q0, q1,
                                       angle(rng)));
    }
  }
  return out;
}

oracle::Mat embed(const std::string& letters) { return oracle::pauli_string(letters); }

TEST(GateMatrices, MatchOracle) {
  const double a = 0.9;
  auto expo = [&](char p) { return (oracle::C(0, -a / 2) * oracle::pauli(p)).exp().eval(); };
  EXPECT_LT((single_qubit_matrix<double>(Gate::rx(0, a)) - expo('X')).cwiseAbs().maxCoeff(), 1e-14);
  EXPECT_LT((single_qubit_matrix<double>(Gate::ry(0, a)) - expo('Y')).cwiseAbs().maxCoeff(), 1e-14);
  EXPECT_LT((single_qubit_matrix<double>(Gate::rz(0, a)) - expo('Z')).cwiseAbs().maxCoeff(), 1e-14);
  oracle::Mat hadamard = (oracle::pauli('X') + oracle::pauli('Z')) / std::sqrt(2.0);
  EXPECT_LT((single_qubit_matrix<double>(Gate::h(0)) - hadamard).cwiseAbs().maxCoeff(), 1e-15);
}

TEST(Statevector, EmptyCircuitIsIdentity) {
  std::mt19937_64 rng(1);
  const auto s = QuantumState::pure(oracle::random_state(8, rng));
  const auto run = run_statevector(Circuit::from_gates(3, {}), s);
  EXPECT_LT((run.final_state - s.amplitudes()).cwiseAbs().maxCoeff(), 1e-15);
}

TEST(Statevector, CnotTargetsLowerBit) {
  // qubit 0 is the most significant bit
  const auto run = run_statevector(Circuit::from_gates(2, {Gate::x(0), Gate::cnot(0, 1)}), basis_state(2, 0));
  EXPECT_NEAR(std::norm(run.final_state(3)), 1.0, 1e-15);
  const auto run2 = run_statevector(Circuit::from_gates(3, {Gate::x(2)}), basis_state(3, 0));
  EXPECT_NEAR(std::norm(run2.final_state(1)), 1.0, 1e-15);
}

TEST(Statevector, DimensionMismatchThrows) {
  EXPECT_THROW(run_statevector(Circuit::from_gates(3, {}), basis_state(2, 0)), std::invalid_argument);
  EXPECT_THROW(run_density(Circuit::from_gates(2, {}), basis_state(3, 0), NoiseProfile{}), std::invalid_argument);
  const auto mixed = initial_state(NuclearConfig::mixed, 3, QuantumState::Kind::density);
  EXPECT_THROW(run_statevector(Circuit::from_gates(3, {}), mixed), std::invalid_argument);
}

TEST(Statevector, FusedMatchesGateByGate) {
  auto sys = RadicalPairSystem::prototype();
  sys.theta = 0.7;
  const Circuit c = lower_to_basis(compile(sys, 1.0, 37));
  const auto s = basis_state(3, 0);
  const auto plain = run_statevector(c, s);
  const auto fused = run_statevector(c, s, {false, true});
  EXPECT_LT((plain.final_state - fused.final_state).cwiseAbs().maxCoeff(), 1e-12);
  const auto recorded = run_statevector(c, s, {true, true});
  EXPECT_EQ(recorded.step_states.size(), 37u);
}

TEST(DensityProperty, NoiseOffMatchesStatevector) {
  std::mt19937_64 rng(11);
  std::uniform_int_distribution<int> width(2, 4), depth(0, 50);
  for (int trial = 0; trial < 200; ++trial) {
    const int n = width(rng);
    const Circuit c = Circuit::from_gates(n, random_gates(rng, n, depth(rng)));
    const VectorXc psi0 = oracle::random_state(1 << n, rng);
    const VectorXc psi = run_statevector(c, QuantumState::pure(psi0)).final_state;
    const MatrixXc rho = run_density(c, QuantumState::pure(psi0), NoiseProfile{});
    EXPECT_LT((rho - psi * psi.adjoint()).cwiseAbs().maxCoeff(), 1e-10);
  }
}

TEST(DensityProperty, NoisePreservesTraceAndPositivity) {
  std::mt19937_64 rng(12);
  NoiseProfile noise = NoiseProfile::device_like();
  noise.p_depol_1q = 0.05;
  noise.p_depol_2q = 0.1;
  for (int trial = 0; trial < 30; ++trial) {
    const Circuit c = Circuit::from_gates(3, random_gates(rng, 3, 40));
    const MatrixXc rho = run_density(c, QuantumState::density(oracle::random_density(8, rng)), noise);
    EXPECT_NEAR(rho.trace().real(), 1.0, 1e-12);
    EXPECT_LT((rho - rho.adjoint()).cwiseAbs().maxCoeff(), 1e-12);
    Eigen::SelfAdjointEigenSolver<MatrixXc> es(rho);
    EXPECT_GE(es.eigenvalues().minCoeff(), -1e-9);
  }
}

TEST(Depolarizing, FullStrengthGivesMaximallyMixed) {
  NoiseProfile noise;
  noise.enabled = true;
  noise.p_depol_1q = 1.0;
  const MatrixXc rho = run_density(Circuit::from_gates(1, {Gate::x(0)}), basis_state(1, 0), noise);
  EXPECT_LT((rho - MatrixXc::Identity(2, 2) / 2.0).cwiseAbs().maxCoeff(), 1e-15);
}

TEST(Depolarizing, MatchesKrausForm) {
  std::mt19937_64 rng(3);
  const double p = 0.37;
  const std::string axes = "IXYZ";
  for (int q = 0; q < 3; ++q) {
    const MatrixXc rho0 = oracle::random_density(8, rng);
    MatrixXc rho = rho0;
    depolarize_1q(rho, 3, q, p);
    oracle::Mat ref = (1.0 - 3.0 * p / 4.0) * rho0;
    for (char a : std::string("XYZ")) {
      std::string s = "III";
      s[q] = a;
      const oracle::Mat k = embed(s);
      ref += (p / 4.0) * k * rho0 * k;
    }
    EXPECT_LT((rho - ref).cwiseAbs().maxCoeff(), 1e-14) << q;
  }
  for (auto [q0, q1] : {std::pair{0, 1}, std::pair{0, 2}, std::pair{2, 1}}) {
    const MatrixXc rho0 = oracle::random_density(8, rng);
    MatrixXc rho = rho0;
    depolarize_2q(rho, 3, q0, q1, p);
    oracle::Mat ref = (1.0 - p) * rho0;
    for (char a : axes)
      for (char b : axes) {
        std::string s = "III";
        s[q0] = a;
        s[q1] = b;
        const oracle::Mat k = embed(s);
        ref += (p / 16.0) * k * rho0 * k;
      }
    EXPECT_LT((rho - ref).cwiseAbs().maxCoeff(), 1e-14) << q0 << q1;
  }
}

TEST(NoiseProfile, ValidatesRanges) {
  NoiseProfile noise = NoiseProfile::device_like();
  EXPECT_NO_THROW(noise.validate());
  noise.p_depol_2q = 1.5;
  EXPECT_THROW(noise.validate(), std::invalid_argument);
  noise = NoiseProfile::device_like();
  noise.readout_flip_0to1 = -0.1;
  EXPECT_THROW(noise.validate(), std::invalid_argument);
}

TEST(Readout, AnalyticConfusion) {
  NoiseProfile noise;
  noise.enabled = true;
  noise.readout_flip_0to1 = 0.1;
  noise.readout_flip_1to0 = 0.2;
  const auto p = apply_readout_error({0, 0, 0, 1}, noise);
  EXPECT_NEAR(p[3], 0.64, 1e-15);
  EXPECT_NEAR(p[0], 0.04, 1e-15);
  EXPECT_NEAR(p[1] + p[2], 0.32, 1e-15);
  NoiseProfile off;
  EXPECT_EQ(apply_readout_error({0.1, 0.2, 0.3, 0.4}, off), (OutcomeProbabilities{0.1, 0.2, 0.3, 0.4}));
}

TEST(Sampling, DeterministicForSeed) {
  const OutcomeProbabilities p{0.1, 0.2, 0.3, 0.4};
  const auto a = sample_measurements(p, 5000, 42, NoiseProfile{});
  const auto b = sample_measurements(p, 5000, 42, NoiseProfile{});
  const auto c = sample_measurements(p, 5000, 43, NoiseProfile{});
  EXPECT_EQ(a.counts, b.counts);
  EXPECT_NE(a.counts, c.counts);
  EXPECT_EQ(a.seed, 42u);
  std::uint64_t total = 0;
  for (const auto& [k, v] : a.counts) total += v;
  EXPECT_EQ(total, 5000u);
}

TEST(Sampling, FrequenciesWithinFiveSigma) {
  const OutcomeProbabilities p{0.1, 0.2, 0.3, 0.4};
  const std::uint64_t shots = 200000;
  const auto r = sample_measurements(p, shots, 7, NoiseProfile{});
  const char* keys[] = {"00", "01", "10", "11"};
  for (int o = 0; o < 4; ++o) {
    const double sigma = std::sqrt(p[o] * (1 - p[o]) / shots);
    EXPECT_NEAR(static_cast<double>(r.count(keys[o])) / shots, p[o], 5 * sigma) << keys[o];
  }
}

TEST(Sampling, ReadoutNoiseShiftsCounts) {
  NoiseProfile noise;
  noise.enabled = true;
  noise.readout_flip_1to0 = 0.25;
  const auto r = sample_measurements({0, 0, 0, 1}, 100000, 9, noise);
  EXPECT_NEAR(r.count("11") / 1e5, 0.5625, 0.01);
  EXPECT_EQ(r.count("00") + r.count("01") + r.count("10") + r.count("11"), 100000u);
}

TEST(Sampling, Errors) {
  EXPECT_THROW(sample_measurements({0.25, 0.25, 0.25, 0.25}, 0, 1, NoiseProfile{}), std::invalid_argument);
}

TEST(ElectronProbabilities, SingletAfterBasisChange) {
  const Circuit c = Circuit::from_gates(3, [] {
    auto g = prepare_singlet();
    for (const auto& b : measurement_basis_change()) g.push_back(b);
    return g;
  }());
  const auto run = run_statevector(c, basis_state(3, 0));
  const auto p = electron_probabilities(run.final_state);
  EXPECT_NEAR(p[3], 1.0, 1e-15);
  EXPECT_NEAR(p[0] + p[1] + p[2], 0.0, 1e-15);
}

TEST(MixSeed, DistinctStreams) {
  EXPECT_NE(mix_seed(0, 0), mix_seed(0, 1));
  EXPECT_NE(mix_seed(0, 0), mix_seed(1, 0));
  EXPECT_EQ(mix_seed(5, 3), mix_seed(5, 3));
}

}  // namespace
}  // namespace rpdqs
