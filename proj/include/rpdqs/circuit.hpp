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
#include <cstdint>
#include <iosfwd>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "rpdqs/spinham.hpp"

namespace rpdqs {

enum class GateKind : std::uint8_t { X, H, CNOT, RX, RY, RZ, PauliRot2 };

std::string gate_kind_name(GateKind kind);

/// Rotations follow R_P(angle) = exp(-i angle/2 P); PauliRot2 is
/// exp(-i angle/2 sigma_a (x) sigma_b) on (qubits[0], qubits[1]).
/// CNOT uses qubits[0] as control.
struct Gate {
  GateKind kind = GateKind::X;
  std::array<int, 2> qubits{0, -1};
  double angle = 0.0;
  std::array<Pauli, 2> paulis{Pauli::I, Pauli::I};

  int arity() const { return qubits[1] < 0 ? 1 : 2; }
  bool is_rotation() const;

  static Gate x(int q) { return {GateKind::X, {q, -1}, 0.0, {}}; }
  static Gate h(int q) { return {GateKind::H, {q, -1}, 0.0, {}}; }
  static Gate cnot(int control, int target) { return {GateKind::CNOT, {control, target}, 0.0, {}}; }
  static Gate rx(int q, double a) { return {GateKind::RX, {q, -1}, a, {}}; }
  static Gate ry(int q, double a) { return {GateKind::RY, {q, -1}, a, {}}; }
  static Gate rz(int q, double a) { return {GateKind::RZ, {q, -1}, a, {}}; }
  static Gate pauli_rot2(Pauli a, Pauli b, int q0, int q1, double angle) {
    return {GateKind::PauliRot2, {q0, q1}, angle, {a, b}};
  }

  bool operator==(const Gate&) const = default;
};

/// Gate program prep ++ trotter_steps x step ++ tail. Every Trotter step is
/// identical, so the step is stored once; gates() expands the flat list.
struct Circuit {
  int n_qubits = 0;
  std::vector<Gate> prep;
  std::vector<Gate> step;
  std::vector<Gate> tail;
  int trotter_steps = 0;
  double target_time = 0.0;  // us
  std::uint64_t system_hash = 0;
  std::vector<std::string> term_order;

  /// Plain gate list with no Trotter structure.
  static Circuit from_gates(int n_qubits, std::vector<Gate> gates);

  std::vector<Gate> gates() const;
  std::size_t size() const { return prep.size() + trotter_length() + tail.size(); }
  std::size_t trotter_length() const { return step.size() * static_cast<std::size_t>(trotter_steps); }

  /// Calls fn(gate) in execution order.
  template <typename Fn>
  void for_each_gate(Fn&& fn) const {
    for (const Gate& g : prep) fn(g);
    for (int i = 0; i < trotter_steps; ++i)
      for (const Gate& g : step) fn(g);
    for (const Gate& g : tail) fn(g);
  }

  /// Throws std::invalid_argument on out-of-range or repeated qubits or
  /// non-finite angles.
  void validate() const;
};

/// X(0), X(1), H(0), CNOT(0->1): |00> becomes (|01> - |10>)/sqrt(2).
std::vector<Gate> prepare_singlet();

/// CNOT(0->1), H(0): maps the singlet to |11>.
std::vector<Gate> measurement_basis_change();

/// One first-order Trotter step: a rotation of angle 2 c dt / hbar per term.
/// Throws std::invalid_argument for dt <= 0 or a term of weight > 2.
std::vector<Gate> trotter_step(std::span<const PauliTerm> terms, double delta_t, double hbar);

Circuit compile(const RadicalPairSystem& system, double t, int steps);

struct LoweringPolicy {
  bool prune_zeeman_zero = true;  // drop exactly-zero single-qubit rotations
  bool prune_all_zero = false;    // also drop exactly-zero two-qubit rotations
};

/// Rewrites PauliRot2 over {X, H, CNOT, RX, RY, RZ}.
Circuit lower_to_basis(const Circuit& circuit, LoweringPolicy policy = {});

struct GateCount {
  std::size_t total = 0;
  std::size_t trotter_only = 0;
  std::map<GateKind, std::size_t> per_kind;
};

GateCount gate_count(const Circuit& circuit);

/// Line format: "# qubits=N", "# steps=n", "# time_us=t", then one gate per
/// line as "KIND q0[,q1][,angle]" where PauliRot2 prints as R<a><b>.
void write_circuit(std::ostream& os, const Circuit& circuit);
std::string circuit_to_text(const Circuit& circuit);

}  // namespace rpdqs
