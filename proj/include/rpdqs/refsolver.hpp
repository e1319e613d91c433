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

#include <vector>

#include "rpdqs/types.hpp"

namespace rpdqs {

enum class NuclearConfig { up, down, mixed };

/// Dense pure state or density matrix over 2^n_sites amplitudes.
class QuantumState {
 public:
  enum class Kind { pure, density };

  /// Validates norm (pure) or Hermiticity, trace and positivity (density)
  /// to 1e-10.
  static QuantumState pure(VectorXc amplitudes);
  static QuantumState density(MatrixXc rho);
  /// Skips the unit-trace and positivity checks (decayed or noisy states).
  static QuantumState density_unchecked(MatrixXc rho);

  Kind kind() const { return kind_; }
  int n_sites() const { return n_sites_; }
  Eigen::Index dim() const { return Eigen::Index{1} << n_sites_; }

  const VectorXc& amplitudes() const;
  const MatrixXc& density_matrix() const;
  /// |psi><psi| for pure states, the stored matrix otherwise.
  MatrixXc to_density() const;

 private:
  Kind kind_ = Kind::pure;
  int n_sites_ = 0;
  VectorXc amplitudes_;
  MatrixXc rho_;
};

/// Uniform grid t_i = i * dt, i = 0..steps.
struct TimeGrid {
  double dt = 1e-3;
  int steps = 1000;

  /// steps = round(t_max / dt); throws unless dt > 0 and t_max >= dt.
  static TimeGrid span(double t_max, double dt);
  double t_max() const { return dt * steps; }
  Eigen::Index size() const { return steps + 1; }
  Eigen::ArrayXd times() const;
};

struct PopulationTrace {
  Eigen::ArrayXd times;
  Eigen::ArrayXd singlet;
  Eigen::ArrayXd triplet;  // empty when not tracked
  bool decayed = false;
};

/// Electrons in (|01> - |10>)/sqrt(2) on sites 0 and 1, every nucleus in
/// the requested configuration. `mixed` needs Kind::density.
QuantumState initial_state(NuclearConfig config, int n_sites,
                           QuantumState::Kind kind = QuantumState::Kind::pure);

/// |S><S| on the two electron sites tensored with identity on the nuclei.
MatrixXc singlet_projector(int n_sites);
MatrixXc triplet_projector(int n_sites);

/// exp(-i H t / hbar) through one eigendecomposition of H.
class SpectralPropagator {
 public:
  /// Throws std::invalid_argument if H is not Hermitian to 1e-12 relative.
  SpectralPropagator(const MatrixXc& hamiltonian, double hbar);

  MatrixXc unitary(double t) const;
  const Eigen::VectorXd& energies() const { return energies_; }
  const MatrixXc& eigenvectors() const { return vectors_; }

  /// Tr[P U(t) rho U(t)^dagger] at each time, O(d^2) per point.
  Eigen::ArrayXd expectation(const MatrixXc& observable, const MatrixXc& rho,
                             const Eigen::ArrayXd& times) const;

 private:
  double hbar_;
  Eigen::VectorXd energies_;
  MatrixXc vectors_;
};

/// Unitary singlet (and triplet) populations, decayed = false.
PopulationTrace evolve_exact(const MatrixXc& hamiltonian, double hbar, const QuantumState& state0,
                             const TimeGrid& grid);

/// Multiplies every population by exp(-k t). Throws std::logic_error if the
/// trace is already decayed.
PopulationTrace apply_decay(const PopulationTrace& trace, double k);

struct HaberkornRun {
  PopulationTrace trace;  // decayed = true
  Eigen::ArrayXd norm;    // Tr rho(t)
  MatrixXc final_rho;
};

/// Fixed-step classical RK4 integration of the Haberkorn master equation.
/// Throws UnsupportedFeature when k_singlet != k_triplet.
HaberkornRun rk4_haberkorn(const MatrixXc& hamiltonian, double hbar, const MatrixXc& rho0,
                           double k_singlet, double k_triplet, double dt, double t_max);

}  // namespace rpdqs
