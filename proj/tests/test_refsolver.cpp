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

#include "rpdqs/refsolver.hpp"

#include <random>

#include <gtest/gtest.h>

#include "oracles.hpp"
#include "rpdqs/spinham.hpp"

namespace rpdqs {
namespace {

constexpr double kHbar = 0.6582119569;

MatrixXc prototype_h(double theta, double phi = 0.0) {
  auto sys = RadicalPairSystem::prototype();
  sys.theta = theta;
  sys.phi = phi;
  return hamiltonian_matrix(sys);
}

QuantumState mixed3() { return initial_state(NuclearConfig::mixed, 3, QuantumState::Kind::density); }

TEST(InitialState, SingletWithNucleusUp) {
  const auto s = initial_state(NuclearConfig::up, 3);
  const VectorXc& v = s.amplitudes();
  ASSERT_EQ(v.size(), 8);
  // |01>|0> and |10>|0> at indices 2 and 4.
  EXPECT_NEAR(v(2).real(), M_SQRT1_2, 1e-15);
  EXPECT_NEAR(v(4).real(), -M_SQRT1_2, 1e-15);
  EXPECT_NEAR(v.norm(), 1.0, 1e-15);
  const MatrixXc p = singlet_projector(3);
  EXPECT_NEAR((v.adjoint() * p * v)(0).real(), 1.0, 1e-14);
}

TEST(InitialState, MixedIsHalfTraceSinglet) {
  const auto s = mixed3();
  const MatrixXc& rho = s.density_matrix();
  EXPECT_NEAR(rho.trace().real(), 1.0, 1e-14);
  EXPECT_NEAR((singlet_projector(3) * rho).trace().real(), 1.0, 1e-14);
  EXPECT_NEAR((rho * rho).trace().real(), 0.5, 1e-14);
}

TEST(InitialState, Errors) {
  EXPECT_THROW(initial_state(NuclearConfig::mixed, 3, QuantumState::Kind::pure), std::invalid_argument);
  EXPECT_THROW(initial_state(NuclearConfig::up, 2), std::invalid_argument);
}

TEST(QuantumStateValidation, RejectsBadInputs) {
  EXPECT_THROW(QuantumState::pure(VectorXc::Ones(4)), std::invalid_argument);
  EXPECT_THROW(QuantumState::pure(VectorXc::Ones(3).normalized()), std::invalid_argument);
  MatrixXc nonherm = MatrixXc::Identity(2, 2) / 2.0;
  nonherm(0, 1) = 0.3;
  EXPECT_THROW(QuantumState::density(nonherm), std::invalid_argument);
  MatrixXc neg = MatrixXc::Zero(2, 2);
  neg(0, 0) = 1.5;
  neg(1, 1) = -0.5;
  EXPECT_THROW(QuantumState::density(neg), std::invalid_argument);
  EXPECT_NO_THROW(QuantumState::density_unchecked(neg));
}

TEST(Projectors, CompleteAndIdempotent) {
  for (int n : {2, 3, 4}) {
    const MatrixXc ps = singlet_projector(n);
    const MatrixXc pt = triplet_projector(n);
    const auto dim = ps.rows();
    EXPECT_LT((ps + pt - MatrixXc::Identity(dim, dim)).cwiseAbs().maxCoeff(), 1e-15);
    EXPECT_LT((ps * ps - ps).cwiseAbs().maxCoeff(), 1e-15);
  }
  EXPECT_LT((singlet_projector(3) - oracle::singlet_projector3()).cwiseAbs().maxCoeff(), 1e-15);
}

TEST(TimeGrid, SpanAndErrors) {
  const auto g = TimeGrid::span(1.0, 1e-3);
  EXPECT_EQ(g.steps, 1000);
  EXPECT_EQ(g.size(), 1001);
  EXPECT_DOUBLE_EQ(g.times()(1000), 1.0);
  EXPECT_THROW(TimeGrid::span(1.0, 0.0), std::invalid_argument);
  EXPECT_THROW(TimeGrid::span(1e-4, 1e-3), std::invalid_argument);
}

TEST(SpectralPropagator, UnitaryMatchesExpmOracle) {
  for (double theta : {0.0, 0.7, M_PI / 2}) {
    const MatrixXc h = prototype_h(theta);
    const SpectralPropagator prop(h, kHbar);
    for (double t : {0.0, 0.013, 0.5, 1.0}) {
      const MatrixXc u = prop.unitary(t);
      EXPECT_LT((u - oracle::propagator(h, t)).cwiseAbs().maxCoeff(), 1e-10);
      EXPECT_LT((u * u.adjoint() - MatrixXc::Identity(8, 8)).cwiseAbs().maxCoeff(), 1e-10);
    }
  }
}

TEST(SpectralPropagator, RejectsNonHermitian) {
  MatrixXc h = prototype_h(0.3);
  h(0, 1) += 0.1;
  EXPECT_THROW(SpectralPropagator(h, kHbar), std::invalid_argument);
}

TEST(EvolveExact, ZeroHamiltonianIsConstant) {
  const auto trace =
      evolve_exact(MatrixXc::Zero(8, 8), kHbar, initial_state(NuclearConfig::down, 3), TimeGrid::span(1.0, 0.01));
  EXPECT_LT((trace.singlet - 1.0).abs().maxCoeff(), 1e-14);
  EXPECT_LT(trace.triplet.abs().maxCoeff(), 1e-14);
}

TEST(EvolveExact, DimensionMismatchThrows) {
  EXPECT_THROW(evolve_exact(MatrixXc::Zero(16, 16), kHbar, mixed3(), TimeGrid::span(1.0, 0.1)),
               std::invalid_argument);
}

TEST(EvolveExact, FrozenPopulationValues) {
  // Independent scipy expm values, tests/oracles/reference_values.py.
  const auto trace = evolve_exact(prototype_h(M_PI / 2), kHbar, mixed3(), TimeGrid::span(1.0, 0.05));
  EXPECT_FALSE(trace.decayed);
  const std::pair<int, double> frozen[] = {
      {2, 0.812412912600}, {5, 0.423893401382}, {10, 0.437253447226}, {15, 0.718819426619}, {20, 0.641305613654}};
  for (const auto& [i, value] : frozen) EXPECT_NEAR(trace.singlet(i), value, 1e-9) << trace.times(i);
  EXPECT_NEAR(trace.singlet(0), 1.0, 1e-14);
}

TEST(EvolveExact, MatchesOraclePointwise) {
  const double theta = 1.1;
  const MatrixXc h = prototype_h(theta);
  const auto s0 = mixed3();
  const auto trace = evolve_exact(h, kHbar, s0, TimeGrid::span(1.0, 0.1));
  const oracle::Mat p = oracle::singlet_projector3();
  for (Eigen::Index i = 0; i < trace.times.size(); ++i) {
    const oracle::Mat u = oracle::propagator(oracle::prototype_hamiltonian(theta), trace.times(i));
    const double ref = (p * u * s0.density_matrix() * u.adjoint()).trace().real();
    EXPECT_NEAR(trace.singlet(i), ref, 1e-10);
  }
}

TEST(EvolveExactProperty, PopulationsCompleteAndBounded) {
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> angle(0.0, M_PI);
  for (int trial = 0; trial < 20; ++trial) {
    const auto trace = evolve_exact(prototype_h(angle(rng), 2 * angle(rng)), kHbar,
                                    QuantumState::pure(oracle::random_state(8, rng)), TimeGrid::span(1.0, 0.02));
    EXPECT_LT((trace.singlet + trace.triplet - 1.0).abs().maxCoeff(), 1e-10);
    EXPECT_GE(trace.singlet.minCoeff(), -1e-12);
    EXPECT_LE(trace.singlet.maxCoeff(), 1.0 + 1e-12);
  }
}

TEST(EvolveExactProperty, MixedStateLinearity) {
  std::mt19937_64 rng(9);
  const MatrixXc h = prototype_h(0.9);
  const auto grid = TimeGrid::span(1.0, 0.05);
  for (int trial = 0; trial < 10; ++trial) {
    const MatrixXc a = oracle::random_density(8, rng);
    const MatrixXc b = oracle::random_density(8, rng);
    const double w = 0.3;
    const auto ta = evolve_exact(h, kHbar, QuantumState::density(a), grid);
    const auto tb = evolve_exact(h, kHbar, QuantumState::density(b), grid);
    const auto tab = evolve_exact(h, kHbar, QuantumState::density(w * a + (1 - w) * b), grid);
    EXPECT_LT((tab.singlet - (w * ta.singlet + (1 - w) * tb.singlet)).abs().maxCoeff(), 1e-12);
  }
}

TEST(EvolveExactProperty, AxialSymmetryInPhi) {
  // The prototype hyperfine tensor is axial, so the azimuth does not matter.
  const auto grid = TimeGrid::span(1.0, 0.05);
  const auto base = evolve_exact(prototype_h(0.8, 0.0), kHbar, mixed3(), grid);
  for (double phi : {0.5, 1.7, 4.0}) {
    const auto other = evolve_exact(prototype_h(0.8, phi), kHbar, mixed3(), grid);
    EXPECT_LT((other.singlet - base.singlet).abs().maxCoeff(), 1e-10) << phi;
  }
}

TEST(ApplyDecay, MultipliesByExponential) {
  const auto trace = evolve_exact(prototype_h(0.2), kHbar, mixed3(), TimeGrid::span(1.0, 0.1));
  const auto decayed = apply_decay(trace, 2.0);
  EXPECT_TRUE(decayed.decayed);
  for (Eigen::Index i = 0; i < trace.times.size(); ++i)
    EXPECT_NEAR(decayed.singlet(i), trace.singlet(i) * std::exp(-2.0 * trace.times(i)), 1e-15);
  EXPECT_THROW(apply_decay(decayed, 2.0), std::logic_error);
  EXPECT_THROW(apply_decay(trace, -1.0), std::invalid_argument);
  const auto none = apply_decay(trace, 0.0);
  EXPECT_LT((none.singlet - trace.singlet).abs().maxCoeff(), 1e-15);
}

TEST(Haberkorn, MatchesExactEvolution) {
  for (double theta : {0.0, M_PI / 3, M_PI / 2}) {
    const MatrixXc h = prototype_h(theta);
    const auto s0 = mixed3();
    const auto rk = rk4_haberkorn(h, kHbar, s0.density_matrix(), 1.0, 1.0, 1e-3, 1.0);
    const auto exact = apply_decay(evolve_exact(h, kHbar, s0, TimeGrid::span(1.0, 1e-3)), 1.0);
    ASSERT_EQ(rk.trace.singlet.size(), exact.singlet.size());
    EXPECT_LE((rk.trace.singlet - exact.singlet).abs().maxCoeff(), 1e-6) << theta;
    EXPECT_TRUE(rk.trace.decayed);
  }
}

TEST(Haberkorn, TraceDecaysExponentially) {
  const auto rk = rk4_haberkorn(prototype_h(0.4), kHbar, mixed3().density_matrix(), 1.0, 1.0, 1e-3, 1.0);
  for (Eigen::Index i = 0; i < rk.norm.size(); ++i)
    EXPECT_NEAR(rk.norm(i), std::exp(-rk.trace.times(i)), 1e-9);
  EXPECT_NEAR(rk.final_rho.trace().real(), std::exp(-1.0), 1e-9);
}

TEST(Haberkorn, AsymmetricRatesUnsupported) {
  EXPECT_THROW(rk4_haberkorn(prototype_h(0.4), kHbar, mixed3().density_matrix(), 1.0, 2.0, 1e-3, 1.0),
               UnsupportedFeature);
}

}  // namespace
}  // namespace rpdqs
