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

#include "rpdqs/spinham.hpp"

#include <cmath>

namespace rpdqs {

char pauli_char(Pauli p) { return "IXYZ"[static_cast<int>(p)]; }

Pauli pauli_from_char(char c) {
  switch (c) {
    case 'I': return Pauli::I;
    case 'X': return Pauli::X;
    case 'Y': return Pauli::Y;
    case 'Z': return Pauli::Z;
    default: throw std::invalid_argument(std::string("unknown Pauli letter '") + c + "'");
  }
}

int PauliTerm::weight() const {
  int w = 0;
  for (Pauli p : letters) w += p != Pauli::I;
  return w;
}

std::string PauliTerm::label() const {
  std::string s;
  s.reserve(letters.size());
  for (Pauli p : letters) s.push_back(pauli_char(p));
  return s;
}

RadicalPairSystem RadicalPairSystem::prototype() {
  RadicalPairSystem sys;
  Nucleus proton;
  proton.electron = 0;
  proton.hyperfine = Eigen::Vector3d(5.0, 5.0, 10.0).asDiagonal();
  sys.nuclei.push_back(proton);
  return sys;
}

Eigen::Vector3d RadicalPairSystem::field_vector() const {
  return field_magnitude * Eigen::Vector3d(std::sin(theta) * std::cos(phi),
                                           std::sin(theta) * std::sin(phi), std::cos(theta));
}

void RadicalPairSystem::validate() const {
  auto finite = [](double v) { return std::isfinite(v); };
  if (!finite(field_magnitude) || field_magnitude < 0.0)
    throw std::invalid_argument("field_magnitude must be finite and >= 0");
  if (!finite(theta) || !finite(phi)) throw std::invalid_argument("field angles must be finite");
  if (!finite(g_factors[0]) || !finite(g_factors[1])) throw std::invalid_argument("g factors must be finite");
  if (!finite(bohr_magneton)) throw std::invalid_argument("bohr_magneton must be finite");
  if (!finite(hbar) || hbar <= 0.0) throw std::invalid_argument("hbar must be > 0");
  if (!finite(k_singlet) || k_singlet < 0.0 || !finite(k_triplet) || k_triplet < 0.0)
    throw std::invalid_argument("recombination rates must be >= 0");
  for (const auto& n : nuclei) {
    if (n.electron != 0 && n.electron != 1)
      throw std::invalid_argument("nucleus must attach to electron 0 or 1");
    if (!n.hyperfine.allFinite()) throw std::invalid_argument("hyperfine tensor must be finite");
  }
}

std::vector<PauliTerm> build_pauli_terms(const RadicalPairSystem& system) {
  system.validate();
  const int n = system.n_sites();
  const Eigen::Vector3d field = system.field_vector();
  constexpr Pauli axes[3] = {Pauli::X, Pauli::Y, Pauli::Z};

  std::vector<PauliTerm> terms;
  terms.reserve(6 + 9 * system.nuclei.size());
  for (int e = 0; e < 2; ++e) {
    for (int a = 0; a < 3; ++a) {
      PauliTerm t;
      t.coefficient = system.g_factors[e] * system.bohr_magneton * field[a] / 2.0;
      t.letters.assign(n, Pauli::I);
      t.letters[e] = axes[a];
      terms.push_back(std::move(t));
    }
  }
  for (std::size_t k = 0; k < system.nuclei.size(); ++k) {
    const auto& nuc = system.nuclei[k];
    const int nuclear_site = 2 + static_cast<int>(k);
    for (int a = 0; a < 3; ++a) {
      for (int b = 0; b < 3; ++b) {
        PauliTerm t;
        t.coefficient = nuc.hyperfine(a, b) / 4.0;
        t.letters.assign(n, Pauli::I);
        t.letters[nuc.electron] = axes[a];
        t.letters[nuclear_site] = axes[b];
        terms.push_back(std::move(t));
      }
    }
  }
  return terms;
}

MatrixXc hamiltonian_matrix(const RadicalPairSystem& system) {
  return to_dense_matrix<double>(build_pauli_terms(system), system.n_sites());
}

namespace {

struct Fnv1a {
  std::uint64_t state = 1469598103934665603ull;
  void bytes(const void* data, std::size_t len) {
    const auto* p = static_cast<const unsigned char*>(data);
    for (std::size_t i = 0; i < len; ++i) {
      state ^= p[i];
      state *= 1099511628211ull;
    }
  }
  void value(double v) { bytes(&v, sizeof v); }
  void value(int v) { bytes(&v, sizeof v); }
};

}  // namespace

std::uint64_t system_hash(const RadicalPairSystem& s) {
  Fnv1a h;
  h.value(s.field_magnitude);
  h.value(s.theta);
  h.value(s.phi);
  h.value(s.g_factors[0]);
  h.value(s.g_factors[1]);
  h.value(s.bohr_magneton);
  h.value(s.hbar);
  h.value(s.k_singlet);
  h.value(s.k_triplet);
  for (const auto& n : s.nuclei) {
    h.value(n.electron);
    for (int i = 0; i < 9; ++i) h.value(n.hyperfine.data()[i]);
  }
  return h.state;
}

}  // namespace rpdqs
