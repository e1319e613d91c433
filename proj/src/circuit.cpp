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

#include "rpdqs/circuit.hpp"

#include <cmath>
#include <numbers>
#include <ostream>
#include <sstream>

#include "rpdqs/format.hpp"

namespace rpdqs {

std::string gate_kind_name(GateKind kind) {
  switch (kind) {
    case GateKind::X: return "X";
    case GateKind::H: return "H";
    case GateKind::CNOT: return "CNOT";
    case GateKind::RX: return "RX";
    case GateKind::RY: return "RY";
    case GateKind::RZ: return "RZ";
    case GateKind::PauliRot2: return "PAULIROT2";
  }
  return "?";
}

bool Gate::is_rotation() const {
  return kind == GateKind::RX || kind == GateKind::RY || kind == GateKind::RZ ||
         kind == GateKind::PauliRot2;
}

Circuit Circuit::from_gates(int n_qubits, std::vector<Gate> gates) {
  Circuit c;
  c.n_qubits = n_qubits;
  c.prep = std::move(gates);
  return c;
}

std::vector<Gate> Circuit::gates() const {
  std::vector<Gate> out;
  out.reserve(size());
  for_each_gate([&](const Gate& g) { out.push_back(g); });
  return out;
}

void Circuit::validate() const {
  if (n_qubits < 1) throw std::invalid_argument("circuit needs at least one qubit");
  if (trotter_steps < 0) throw std::invalid_argument("negative Trotter step count");
  auto check = [&](const Gate& g) {
    const int need = (g.kind == GateKind::CNOT || g.kind == GateKind::PauliRot2) ? 2 : 1;
    if (g.arity() != need) throw std::invalid_argument(gate_kind_name(g.kind) + " has wrong arity");
    for (int i = 0; i < need; ++i)
      if (g.qubits[i] < 0 || g.qubits[i] >= n_qubits)
        throw std::invalid_argument(gate_kind_name(g.kind) + " qubit index out of range");
    if (need == 2 && g.qubits[0] == g.qubits[1])
      throw std::invalid_argument(gate_kind_name(g.kind) + " acts twice on one qubit");
    if (!std::isfinite(g.angle)) throw std::invalid_argument("non-finite rotation angle");
  };
  for (const auto* seg : {&prep, &step, &tail})
    for (const Gate& g : *seg) check(g);
}

std::vector<Gate> prepare_singlet() {
  return {Gate::x(0), Gate::x(1), Gate::h(0), Gate::cnot(0, 1)};
}

std::vector<Gate> measurement_basis_change() { return {Gate::cnot(0, 1), Gate::h(0)}; }

namespace {

// No check on dt so that t = 0 compiles to zero-angle rotations.
std::vector<Gate> step_gates(std::span<const PauliTerm> terms, double dt, double hbar) {
  std::vector<Gate> out;
  out.reserve(terms.size());
  for (const PauliTerm& term : terms) {
    std::array<int, 2> sites{-1, -1};
    int found = 0;
    for (std::size_t s = 0; s < term.letters.size(); ++s) {
      if (term.letters[s] == Pauli::I) continue;
      if (found == 2)
        throw std::invalid_argument("term " + term.label() + " acts on more than two sites");
      sites[found++] = static_cast<int>(s);
    }
    const double angle = 2.0 * term.coefficient * dt / hbar;
    if (found == 0) continue;  // identity: global phase only
    if (found == 1) {
      switch (term.letters[sites[0]]) {
        case Pauli::X: out.push_back(Gate::rx(sites[0], angle)); break;
        case Pauli::Y: out.push_back(Gate::ry(sites[0], angle)); break;
        default: out.push_back(Gate::rz(sites[0], angle)); break;
      }
    } else {
      out.push_back(Gate::pauli_rot2(term.letters[sites[0]], term.letters[sites[1]], sites[0],
                                     sites[1], angle));
    }
  }
  return out;
}

}  // namespace

std::vector<Gate> trotter_step(std::span<const PauliTerm> terms, double delta_t, double hbar) {
  if (!(delta_t > 0.0)) throw std::invalid_argument("trotter_step: delta_t must be > 0");
  if (!(hbar > 0.0)) throw std::invalid_argument("trotter_step: hbar must be > 0");
  return step_gates(terms, delta_t, hbar);
}

Circuit compile(const RadicalPairSystem& system, double t, int steps) {
  if (!(t >= 0.0) || !std::isfinite(t)) throw std::invalid_argument("compile: t must be >= 0");
  if (steps < 1) throw std::invalid_argument("compile: steps must be >= 1");
  const auto terms = build_pauli_terms(system);

  Circuit c;
  c.n_qubits = system.n_sites();
  c.trotter_steps = steps;
  c.target_time = t;
  c.system_hash = system_hash(system);
  for (const auto& term : terms) c.term_order.push_back(term.label());

  c.prep = prepare_singlet();
  c.step = step_gates(terms, t / steps, system.hbar);
  c.tail = measurement_basis_change();
  return c;
}

namespace {

void lower_gate(const Gate& g, LoweringPolicy policy, std::vector<Gate>& out) {
  if (g.kind != GateKind::PauliRot2) {
    const bool single_rot = g.kind == GateKind::RX || g.kind == GateKind::RY || g.kind == GateKind::RZ;
    if (single_rot && g.angle == 0.0 && (policy.prune_zeeman_zero || policy.prune_all_zero)) return;
    out.push_back(g);
    return;
  }
  if (g.angle == 0.0 && policy.prune_all_zero) return;
  constexpr double half_pi = std::numbers::pi / 2.0;
  auto basis_in = [&](Pauli p, int q) {
    if (p == Pauli::X) out.push_back(Gate::h(q));
    if (p == Pauli::Y) out.push_back(Gate::rx(q, half_pi));
  };
  auto basis_out = [&](Pauli p, int q) {
    if (p == Pauli::X) out.push_back(Gate::h(q));
    if (p == Pauli::Y) out.push_back(Gate::rx(q, -half_pi));
  };
  const int q0 = g.qubits[0], q1 = g.qubits[1];
  basis_in(g.paulis[0], q0);
  basis_in(g.paulis[1], q1);
  out.push_back(Gate::cnot(q0, q1));
  out.push_back(Gate::rz(q1, g.angle));
  out.push_back(Gate::cnot(q0, q1));
  basis_out(g.paulis[0], q0);
  basis_out(g.paulis[1], q1);
}

}  // namespace

Circuit lower_to_basis(const Circuit& circuit, LoweringPolicy policy) {
  Circuit out = circuit;
  auto lower = [&](const std::vector<Gate>& gates) {
    std::vector<Gate> lowered;
    for (const Gate& g : gates) lower_gate(g, policy, lowered);
    return lowered;
  };
  out.prep = lower(circuit.prep);
  out.step = lower(circuit.step);
  out.tail = lower(circuit.tail);
  return out;
}

GateCount gate_count(const Circuit& circuit) {
  GateCount count;
  count.total = circuit.size();
  count.trotter_only = circuit.trotter_length();
  for (const Gate& g : circuit.prep) ++count.per_kind[g.kind];
  for (const Gate& g : circuit.step) count.per_kind[g.kind] += circuit.trotter_steps;
  for (const Gate& g : circuit.tail) ++count.per_kind[g.kind];
  // Drop kinds that only appear in a zero-repeat step.
  std::erase_if(count.per_kind, [](const auto& kv) { return kv.second == 0; });
  return count;
}

void write_circuit(std::ostream& os, const Circuit& circuit) {
  os << "# qubits=" << circuit.n_qubits << '\n';
  os << "# steps=" << circuit.trotter_steps << '\n';
  os << "# time_us=" << format_number(circuit.target_time) << '\n';
  circuit.for_each_gate([&](const Gate& g) {
    if (g.kind == GateKind::PauliRot2)
      os << 'R' << pauli_char(g.paulis[0]) << pauli_char(g.paulis[1]);
    else
      os << gate_kind_name(g.kind);
    os << ' ' << g.qubits[0];
    if (g.arity() == 2) os << ',' << g.qubits[1];
    if (g.is_rotation()) os << ',' << format_number(g.angle);
    os << '\n';
  });
}

std::string circuit_to_text(const Circuit& circuit) {
  std::ostringstream os;
  write_circuit(os, circuit);
  return os.str();
}

}  // namespace rpdqs
