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

#include <array>
#include <cmath>
#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "rpdqs/circuit.hpp"
#include "rpdqs/refsolver.hpp"

namespace rpdqs {

// ---------------------------------------------------------------------------
// Gate matrices and strided kernels, templated on the real scalar type.

template <typename Scalar>
using Mat2 = Eigen::Matrix<Complex<Scalar>, 2, 2>;
template <typename Scalar>
using Mat4 = Eigen::Matrix<Complex<Scalar>, 4, 4>;

template <typename Scalar = double>
Mat2<Scalar> single_qubit_matrix(const Gate& g) {
  using C = Complex<Scalar>;
  const Scalar c = std::cos(Scalar(g.angle) / 2), s = std::sin(Scalar(g.angle) / 2);
  Mat2<Scalar> m;
  switch (g.kind) {
    case GateKind::X: m << C(0), C(1), C(1), C(0); break;
    case GateKind::H: {
      const Scalar r = Scalar(1) / std::sqrt(Scalar(2));
      m << C(r), C(r), C(r), C(-r);
      break;
    }
    case GateKind::RX: m << C(c), C(0, -s), C(0, -s), C(c); break;
    case GateKind::RY: m << C(c), C(-s), C(s), C(c); break;
    case GateKind::RZ: m << C(c, -s), C(0), C(0), C(c, s); break;
    default: throw std::invalid_argument("single_qubit_matrix: " + gate_kind_name(g.kind) + " is not a 1-qubit gate");
  }
  return m;
}

/// 4x4 matrix in the (qubits[0], qubits[1]) basis, qubits[0] most significant.
template <typename Scalar = double>
Mat4<Scalar> two_qubit_matrix(const Gate& g) {
  using C = Complex<Scalar>;
  Mat4<Scalar> m = Mat4<Scalar>::Zero();
  if (g.kind == GateKind::CNOT) {
    m(0, 0) = m(1, 1) = m(2, 3) = m(3, 2) = C(1);
    return m;
  }
  if (g.kind != GateKind::PauliRot2)
    throw std::invalid_argument("two_qubit_matrix: " + gate_kind_name(g.kind) + " is not a 2-qubit gate");
  const Scalar c = std::cos(Scalar(g.angle) / 2), s = std::sin(Scalar(g.angle) / 2);
  Mat4<Scalar> pp;
  for (int a = 0; a < 2; ++a)
    for (int b = 0; b < 2; ++b)
      pp.template block<2, 2>(2 * a, 2 * b) =
          pauli_matrix<Scalar>(g.paulis[0])(a, b) * pauli_matrix<Scalar>(g.paulis[1]);
  return Mat4<Scalar>::Identity() * C(c) + pp * C(0, -s);
}

namespace kernels {

// Each kernel acts on the vector data[k * stride], k < 2^n.

template <typename Scalar>
void apply_1q(Complex<Scalar>* data, Eigen::Index stride, int n, int q, const Mat2<Scalar>& u) {
  const Eigen::Index dim = Eigen::Index{1} << n;
  const Eigen::Index mask = Eigen::Index{1} << site_bit(q, n);
  for (Eigen::Index i = 0; i < dim; ++i) {
    if (i & mask) continue;
    Complex<Scalar>& a = data[i * stride];
    Complex<Scalar>& b = data[(i | mask) * stride];
    const Complex<Scalar> a0 = a, b0 = b;
    a = u(0, 0) * a0 + u(0, 1) * b0;
    b = u(1, 0) * a0 + u(1, 1) * b0;
  }
}

template <typename Scalar>
void apply_diag_1q(Complex<Scalar>* data, Eigen::Index stride, int n, int q, Complex<Scalar> d0,
                   Complex<Scalar> d1) {
  const Eigen::Index dim = Eigen::Index{1} << n;
  const Eigen::Index mask = Eigen::Index{1} << site_bit(q, n);
  for (Eigen::Index i = 0; i < dim; ++i) data[i * stride] *= (i & mask) ? d1 : d0;
}

template <typename Scalar>
void apply_x(Complex<Scalar>* data, Eigen::Index stride, int n, int q) {
  const Eigen::Index dim = Eigen::Index{1} << n;
  const Eigen::Index mask = Eigen::Index{1} << site_bit(q, n);
  for (Eigen::Index i = 0; i < dim; ++i)
    if (!(i & mask)) std::swap(data[i * stride], data[(i | mask) * stride]);
}

template <typename Scalar>
void apply_cnot(Complex<Scalar>* data, Eigen::Index stride, int n, int control, int target) {
  const Eigen::Index dim = Eigen::Index{1} << n;
  const Eigen::Index cm = Eigen::Index{1} << site_bit(control, n);
  const Eigen::Index tm = Eigen::Index{1} << site_bit(target, n);
  for (Eigen::Index i = 0; i < dim; ++i)
    if ((i & cm) && !(i & tm)) std::swap(data[i * stride], data[(i | tm) * stride]);
}

template <typename Scalar>
void apply_2q(Complex<Scalar>* data, Eigen::Index stride, int n, int q0, int q1, const Mat4<Scalar>& u) {
  const Eigen::Index dim = Eigen::Index{1} << n;
  const Eigen::Index m0 = Eigen::Index{1} << site_bit(q0, n);
  const Eigen::Index m1 = Eigen::Index{1} << site_bit(q1, n);
  for (Eigen::Index i = 0; i < dim; ++i) {
    if ((i & m0) || (i & m1)) continue;
    const std::array<Eigen::Index, 4> idx{i, i | m1, i | m0, i | m0 | m1};
    std::array<Complex<Scalar>, 4> in;
    for (int k = 0; k < 4; ++k) in[k] = data[idx[k] * stride];
    for (int r = 0; r < 4; ++r) {
      Complex<Scalar> acc(0);
      for (int k = 0; k < 4; ++k) acc += u(r, k) * in[k];
      data[idx[r] * stride] = acc;
    }
  }
}

/// Applies `g` (or its complex conjugate) to one strided vector.
template <typename Scalar>
void apply_gate(Complex<Scalar>* data, Eigen::Index stride, int n, const Gate& g, bool conjugate = false) {
  auto cj = [&](Complex<Scalar> z) { return conjugate ? std::conj(z) : z; };
  switch (g.kind) {
    case GateKind::X: apply_x(data, stride, n, g.qubits[0]); return;
    case GateKind::CNOT: apply_cnot(data, stride, n, g.qubits[0], g.qubits[1]); return;
    case GateKind::RZ: {
      const Scalar half = Scalar(g.angle) / 2;
      apply_diag_1q(data, stride, n, g.qubits[0], cj(std::polar(Scalar(1), -half)),
                    cj(std::polar(Scalar(1), half)));
      return;
    }
    case GateKind::PauliRot2: {
      Mat4<Scalar> u = two_qubit_matrix<Scalar>(g);
      if (conjugate) u = u.conjugate().eval();
      apply_2q(data, stride, n, g.qubits[0], g.qubits[1], u);
      return;
    }
    default: {
      Mat2<Scalar> u = single_qubit_matrix<Scalar>(g);
      if (conjugate) u = u.conjugate().eval();
      apply_1q(data, stride, n, g.qubits[0], u);
      return;
    }
  }
}

}  // namespace kernels

/// In-place psi <- G psi.
template <typename Scalar>
void apply_gate(CVector<Scalar>& psi, int n_qubits, const Gate& g) {
  kernels::apply_gate(psi.data(), 1, n_qubits, g);
}

/// In-place rho <- G rho G^dagger.
template <typename Scalar>
void apply_gate(CMatrix<Scalar>& rho, int n_qubits, const Gate& g) {
  const Eigen::Index dim = rho.rows();
  for (Eigen::Index c = 0; c < dim; ++c) kernels::apply_gate(rho.data() + c * dim, 1, n_qubits, g);
  for (Eigen::Index r = 0; r < dim; ++r) kernels::apply_gate(rho.data() + r, dim, n_qubits, g, true);
}

/// Product of the gate matrices, first gate applied first.
template <typename Scalar = double>
CMatrix<Scalar> circuit_unitary(std::span<const Gate> gates, int n_qubits) {
  const Eigen::Index dim = Eigen::Index{1} << n_qubits;
  CMatrix<Scalar> u = CMatrix<Scalar>::Identity(dim, dim);
  for (const Gate& g : gates)
    for (Eigen::Index c = 0; c < dim; ++c) kernels::apply_gate(u.data() + c * dim, 1, n_qubits, g);
  return u;
}

// ---------------------------------------------------------------------------
// Noise channels.

/// Parametric per-gate noise: depolarizing after each gate, independent
/// bit flips at readout.
struct NoiseProfile {
  double p_depol_1q = 0.0;
  double p_depol_2q = 0.0;
  double readout_flip_0to1 = 0.0;
  double readout_flip_1to0 = 0.0;
  bool enabled = false;

  /// Qualitative device-like knobs (3e-4, 8e-3, 2e-2, 2e-2), enabled.
  static NoiseProfile device_like();

  /// Throws std::invalid_argument unless every probability is in [0, 1].
  void validate() const;
};

/// rho <- (1 - p) rho + p Tr_q(rho) (x) I/2.
void depolarize_1q(MatrixXc& rho, int n_qubits, int q, double p);
/// rho <- (1 - p) rho + p Tr_{q0 q1}(rho) (x) I/4.
void depolarize_2q(MatrixXc& rho, int n_qubits, int q0, int q1, double p);

// ---------------------------------------------------------------------------
// Executors.

struct ExecutionOptions {
  bool record_after_each_step = false;
  /// Multiply out one Trotter step and apply its power instead of replaying
  /// every gate. Same result up to rounding.
  bool fuse_steps = false;
};

struct StatevectorRun {
  VectorXc final_state;
  std::vector<VectorXc> step_states;  // after each Trotter step, if recorded
};

/// Throws std::invalid_argument on dimension mismatch or a density input.
StatevectorRun run_statevector(const Circuit& circuit, const QuantumState& initial,
                               ExecutionOptions options = {});

/// Density-matrix execution with depolarizing noise after every gate when
/// `noise.enabled`. `fuse_steps` only takes effect without noise.
MatrixXc run_density(const Circuit& circuit, const QuantumState& initial, const NoiseProfile& noise,
                     ExecutionOptions options = {});

/// Computational basis state |bits>, site 0 most significant.
QuantumState basis_state(int n_qubits, Eigen::Index bits);

// ---------------------------------------------------------------------------
// Measurement.

/// Probabilities of the electron-qubit outcomes 00, 01, 10, 11 (qubit 0 first).
using OutcomeProbabilities = std::array<double, 4>;

OutcomeProbabilities electron_probabilities(const QuantumState& state);
OutcomeProbabilities electron_probabilities(const VectorXc& psi);
OutcomeProbabilities electron_probabilities(const MatrixXc& rho);

/// Outcome distribution after independent per-bit readout flips.
OutcomeProbabilities apply_readout_error(const OutcomeProbabilities& p, const NoiseProfile& noise);

struct ShotResult {
  std::map<std::string, std::uint64_t> counts;  // keys "00", "01", "10", "11"
  std::uint64_t shots = 0;
  std::uint64_t seed = 0;
  static constexpr const char* kGenerator = "mt19937_64";

  std::uint64_t count(const std::string& key) const;
};

/// Born-rule sampling of the electron qubits with seeded mt19937_64, then
/// readout flips when `noise.enabled`. Throws std::invalid_argument for
/// shots < 1.
ShotResult sample_measurements(const OutcomeProbabilities& probs, std::uint64_t shots,
                               std::uint64_t seed, const NoiseProfile& noise);
ShotResult sample_measurements(const QuantumState& state, std::uint64_t shots, std::uint64_t seed,
                               const NoiseProfile& noise);

/// splitmix64 finalizer, used to derive independent per-point seeds.
std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t stream);

}  // namespace rpdqs
