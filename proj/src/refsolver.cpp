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

#include <cmath>
#include <string>

namespace rpdqs {

namespace {

constexpr double kStateTol = 1e-10;
constexpr double kHermitianTol = 1e-12;

double hermitian_defect(const MatrixXc& m) {
  const double scale = std::max(m.cwiseAbs().maxCoeff(), 1.0);
  return (m - m.adjoint()).cwiseAbs().maxCoeff() / scale;
}

int sites_for_dim(Eigen::Index dim) {
  int n = 0;
  while ((Eigen::Index{1} << n) < dim) ++n;
  if ((Eigen::Index{1} << n) != dim || dim == 0)
    throw std::invalid_argument("state dimension " + std::to_string(dim) + " is not a power of two");
  return n;
}

// Singlet vector on the electron pair with the nuclei in basis state `nuclear_bits`.
VectorXc singlet_with_nuclei(int n_sites, Eigen::Index nuclear_bits) {
  const Eigen::Index dim = Eigen::Index{1} << n_sites;
  VectorXc v = VectorXc::Zero(dim);
  const Eigen::Index e1 = Eigen::Index{1} << site_bit(0, n_sites);
  const Eigen::Index e2 = Eigen::Index{1} << site_bit(1, n_sites);
  v(e2 | nuclear_bits) = M_SQRT1_2;
  v(e1 | nuclear_bits) = -M_SQRT1_2;
  return v;
}

}  // namespace

QuantumState QuantumState::pure(VectorXc amplitudes) {
  QuantumState s;
  s.kind_ = Kind::pure;
  s.n_sites_ = sites_for_dim(amplitudes.size());
  if (std::abs(amplitudes.norm() - 1.0) > kStateTol)
    throw std::invalid_argument("pure state is not normalized");
  s.amplitudes_ = std::move(amplitudes);
  return s;
}

QuantumState QuantumState::density(MatrixXc rho) {
  if (rho.rows() != rho.cols()) throw std::invalid_argument("density matrix must be square");
  if (hermitian_defect(rho) > kStateTol) throw std::invalid_argument("density matrix is not Hermitian");
  if (std::abs(rho.trace().real() - 1.0) > kStateTol) throw std::invalid_argument("density matrix trace != 1");
  Eigen::SelfAdjointEigenSolver<MatrixXc> es(rho, Eigen::EigenvaluesOnly);
  if (es.eigenvalues().minCoeff() < -kStateTol)
    throw std::invalid_argument("density matrix is not positive semidefinite");
  return density_unchecked(std::move(rho));
}

QuantumState QuantumState::density_unchecked(MatrixXc rho) {
  if (rho.rows() != rho.cols()) throw std::invalid_argument("density matrix must be square");
  QuantumState s;
  s.kind_ = Kind::density;
  s.n_sites_ = sites_for_dim(rho.rows());
  s.rho_ = std::move(rho);
  return s;
}

const VectorXc& QuantumState::amplitudes() const {
  if (kind_ != Kind::pure) throw std::logic_error("amplitudes() on a density state");
  return amplitudes_;
}

const MatrixXc& QuantumState::density_matrix() const {
  if (kind_ != Kind::density) throw std::logic_error("density_matrix() on a pure state");
  return rho_;
}

MatrixXc QuantumState::to_density() const {
  if (kind_ == Kind::density) return rho_;
  return amplitudes_ * amplitudes_.adjoint();
}

TimeGrid TimeGrid::span(double t_max, double dt) {
  if (!(dt > 0.0) || !std::isfinite(dt)) throw std::invalid_argument("dt must be > 0");
  if (!(t_max >= dt) || !std::isfinite(t_max)) throw std::invalid_argument("t_max must be >= dt");
  TimeGrid g;
  g.dt = dt;
  g.steps = static_cast<int>(std::llround(t_max / dt));
  return g;
}

Eigen::ArrayXd TimeGrid::times() const {
  return Eigen::ArrayXd::LinSpaced(size(), 0, static_cast<double>(steps)) * dt;
}

QuantumState initial_state(NuclearConfig config, int n_sites, QuantumState::Kind kind) {
  if (n_sites < 3) throw std::invalid_argument("initial_state needs at least one nucleus (n_sites >= 3)");
  const Eigen::Index all_nuclei_down = (Eigen::Index{1} << (n_sites - 2)) - 1;
  if (config == NuclearConfig::mixed) {
    if (kind != QuantumState::Kind::density)
      throw std::invalid_argument("mixed nuclear state requires a density matrix");
    const Eigen::Index dim = Eigen::Index{1} << n_sites;
    const Eigen::Index n_nuclear = all_nuclei_down + 1;
    MatrixXc rho = MatrixXc::Zero(dim, dim);
    for (Eigen::Index b = 0; b < n_nuclear; ++b) {
      const VectorXc v = singlet_with_nuclei(n_sites, b);
      rho += v * v.adjoint();
    }
    return QuantumState::density(rho / static_cast<double>(n_nuclear));
  }
  VectorXc v = singlet_with_nuclei(n_sites, config == NuclearConfig::up ? 0 : all_nuclei_down);
  if (kind == QuantumState::Kind::pure) return QuantumState::pure(std::move(v));
  return QuantumState::density(v * v.adjoint());
}

MatrixXc singlet_projector(int n_sites) {
  if (n_sites < 2) throw std::invalid_argument("singlet_projector needs two electron sites");
  Eigen::Vector4cd s(0, M_SQRT1_2, -M_SQRT1_2, 0);
  const Eigen::Matrix4cd ps = s * s.adjoint();
  const Eigen::Index rest = Eigen::Index{1} << (n_sites - 2);
  const Eigen::Index dim = 4 * rest;
  MatrixXc p = MatrixXc::Zero(dim, dim);
  for (int a = 0; a < 4; ++a)
    for (int b = 0; b < 4; ++b)
      if (ps(a, b) != 0.0)
        p.block(a * rest, b * rest, rest, rest).diagonal().setConstant(ps(a, b));
  return p;
}

MatrixXc triplet_projector(int n_sites) {
  const MatrixXc ps = singlet_projector(n_sites);
  return MatrixXc::Identity(ps.rows(), ps.cols()) - ps;
}

SpectralPropagator::SpectralPropagator(const MatrixXc& hamiltonian, double hbar) : hbar_(hbar) {
  if (hamiltonian.rows() != hamiltonian.cols()) throw std::invalid_argument("Hamiltonian must be square");
  if (!(hbar > 0.0)) throw std::invalid_argument("hbar must be > 0");
  if (hermitian_defect(hamiltonian) > kHermitianTol)
    throw std::invalid_argument("Hamiltonian is not Hermitian");
  Eigen::SelfAdjointEigenSolver<MatrixXc> es(hamiltonian);
  energies_ = es.eigenvalues();
  vectors_ = es.eigenvectors();
}

MatrixXc SpectralPropagator::unitary(double t) const {
  const VectorXc phases =
      (energies_.cast<Complex<double>>() * Complex<double>(0, -t / hbar_)).array().exp().matrix();
  return vectors_ * phases.asDiagonal() * vectors_.adjoint();
}

Eigen::ArrayXd SpectralPropagator::expectation(const MatrixXc& observable, const MatrixXc& rho,
                                               const Eigen::ArrayXd& times) const {
  // In the eigenbasis: <P>(t) = sum_ij P'_ji rho'_ij exp(-i (E_i - E_j) t / hbar).
  const MatrixXc rho_e = vectors_.adjoint() * rho * vectors_;
  const MatrixXc obs_e = vectors_.adjoint() * observable * vectors_;
  const MatrixXc weights = obs_e.transpose().cwiseProduct(rho_e);
  Eigen::ArrayXd out(times.size());
  for (Eigen::Index k = 0; k < times.size(); ++k) {
    const VectorXc phases =
        (energies_.cast<Complex<double>>() * Complex<double>(0, -times[k] / hbar_)).array().exp().matrix();
    out[k] = (phases.transpose() * weights * phases.conjugate()).value().real();
  }
  return out;
}

PopulationTrace evolve_exact(const MatrixXc& hamiltonian, double hbar, const QuantumState& state0,
                             const TimeGrid& grid) {
  if (hamiltonian.rows() != state0.dim())
    throw std::invalid_argument("Hamiltonian and state dimensions differ");
  const SpectralPropagator prop(hamiltonian, hbar);
  const MatrixXc rho = state0.to_density();
  PopulationTrace trace;
  trace.times = grid.times();
  trace.singlet = prop.expectation(singlet_projector(state0.n_sites()), rho, trace.times);
  trace.triplet = prop.expectation(triplet_projector(state0.n_sites()), rho, trace.times);
  trace.decayed = false;
  return trace;
}

PopulationTrace apply_decay(const PopulationTrace& trace, double k) {
  if (trace.decayed) throw std::logic_error("population trace is already decayed");
  if (!(k >= 0.0)) throw std::invalid_argument("decay rate must be >= 0");
  PopulationTrace out = trace;
  const Eigen::ArrayXd w = (-k * trace.times).exp();
  out.singlet *= w;
  if (out.triplet.size() == w.size()) out.triplet *= w;
  out.decayed = true;
  return out;
}

HaberkornRun rk4_haberkorn(const MatrixXc& hamiltonian, double hbar, const MatrixXc& rho0,
                           double k_singlet, double k_triplet, double dt, double t_max) {
  if (k_singlet != k_triplet)
    throw UnsupportedFeature("asymmetric recombination (k_S != k_T) is not supported");
  if (hamiltonian.rows() != rho0.rows() || rho0.rows() != rho0.cols())
    throw std::invalid_argument("Hamiltonian and density dimensions differ");
  if (hermitian_defect(hamiltonian) > kHermitianTol) throw std::invalid_argument("Hamiltonian is not Hermitian");
  const TimeGrid grid = TimeGrid::span(t_max, dt);
  const int n_sites = sites_for_dim(rho0.rows());
  const MatrixXc ps = singlet_projector(n_sites);
  const MatrixXc pt = triplet_projector(n_sites);
  const Complex<double> minus_i_over_hbar(0, -1.0 / hbar);

  auto rhs = [&](const MatrixXc& rho) -> MatrixXc {
    MatrixXc d = minus_i_over_hbar * (hamiltonian * rho - rho * hamiltonian);
    d -= 0.5 * k_singlet * (ps * rho + rho * ps);
    d -= 0.5 * k_triplet * (pt * rho + rho * pt);
    return d;
  };

  HaberkornRun run;
  run.trace.times = grid.times();
  run.trace.singlet.resize(grid.size());
  run.trace.triplet.resize(grid.size());
  run.norm.resize(grid.size());
  run.trace.decayed = true;

  MatrixXc rho = rho0;
  auto record = [&](Eigen::Index i) {
    run.trace.singlet[i] = (ps * rho).trace().real();
    run.trace.triplet[i] = (pt * rho).trace().real();
    run.norm[i] = rho.trace().real();
  };
  record(0);
  const double h = grid.dt;
  for (int i = 1; i <= grid.steps; ++i) {
    const MatrixXc k1 = rhs(rho);
    const MatrixXc k2 = rhs(rho + 0.5 * h * k1);
    const MatrixXc k3 = rhs(rho + 0.5 * h * k2);
    const MatrixXc k4 = rhs(rho + h * k3);
    rho += (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
    record(i);
  }
  run.final_rho = std::move(rho);
  return run;
}

}  // namespace rpdqs
