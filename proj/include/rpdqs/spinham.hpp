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
#include <span>
#include <string>
#include <vector>

#include "rpdqs/types.hpp"

namespace rpdqs {

// Units: energies in neV, times in microseconds, rates in MHz, fields in mT.

enum class Pauli : std::uint8_t { I = 0, X = 1, Y = 2, Z = 3 };

char pauli_char(Pauli p);
Pauli pauli_from_char(char c);

/// 2x2 Pauli matrix.
template <typename Scalar = double>
Eigen::Matrix<Complex<Scalar>, 2, 2> pauli_matrix(Pauli p) {
  using C = Complex<Scalar>;
  Eigen::Matrix<C, 2, 2> m;
  switch (p) {
    case Pauli::I: m << C(1), C(0), C(0), C(1); break;
    case Pauli::X: m << C(0), C(1), C(1), C(0); break;
    case Pauli::Y: m << C(0), C(0, -1), C(0, 1), C(0); break;
    case Pauli::Z: m << C(1), C(0), C(0), C(-1); break;
  }
  return m;
}

/// One additive Hamiltonian component: coefficient (neV) times a Pauli string,
/// one letter per spin site.
struct PauliTerm {
  double coefficient = 0.0;
  std::vector<Pauli> letters;

  int weight() const;
  std::string label() const;  // e.g. "XIZ"
};

struct Nucleus {
  int electron = 0;  // 0 or 1
  Eigen::Matrix3d hyperfine = Eigen::Matrix3d::Zero();  // neV
};

/// Physical parameters of a radical pair with spin-1/2 nuclei.
///
/// Qubit layout: site 0 is electron 1, site 1 is electron 2, sites 2.. are
/// the nuclei in declaration order.
struct RadicalPairSystem {
  double field_magnitude = 0.05;  // mT
  double theta = 0.0;             // rad
  double phi = 0.0;               // rad
  std::array<double, 2> g_factors{2.0, 2.0};
  double bohr_magneton = 57.8838;  // neV / mT
  double hbar = 0.6582119569;      // neV us
  std::vector<Nucleus> nuclei;
  double k_singlet = 1.0;  // MHz
  double k_triplet = 1.0;  // MHz

  /// Two electrons and one proton on electron 1 with an axial tensor
  /// diag(5, 5, 10) neV; B = 50 uT, g = 2, k_S = k_T = 1 MHz.
  static RadicalPairSystem prototype();

  int n_sites() const { return 2 + static_cast<int>(nuclei.size()); }
  Eigen::Vector3d field_vector() const;

  /// Throws std::invalid_argument on a broken invariant.
  void validate() const;
};

/// Zeeman terms (electron 1 x,y,z then electron 2 x,y,z) followed by nine
/// hyperfine terms per nucleus in row-major (alpha, beta) order.
/// Zero-coefficient terms are kept.
std::vector<PauliTerm> build_pauli_terms(const RadicalPairSystem& system);

/// Dense sum of Pauli strings over `n_sites` qubits (site 0 most significant).
/// Throws std::invalid_argument when a term has the wrong number of letters.
template <typename Scalar = double>
CMatrix<Scalar> to_dense_matrix(std::span<const PauliTerm> terms, int n_sites) {
  if (n_sites < 0 || n_sites > 20) throw std::invalid_argument("to_dense_matrix: bad site count");
  const Eigen::Index dim = Eigen::Index{1} << n_sites;
  CMatrix<Scalar> h = CMatrix<Scalar>::Zero(dim, dim);
  for (const auto& term : terms) {
    if (static_cast<int>(term.letters.size()) != n_sites) {
      throw std::invalid_argument("to_dense_matrix: term " + term.label() + " does not span " +
                                  std::to_string(n_sites) + " sites");
    }
    // A Pauli string maps |b> to phase(b) |b ^ flip>.
    Eigen::Index flip = 0;
    for (int s = 0; s < n_sites; ++s) {
      const Pauli p = term.letters[s];
      if (p == Pauli::X || p == Pauli::Y) flip |= Eigen::Index{1} << site_bit(s, n_sites);
    }
    for (Eigen::Index col = 0; col < dim; ++col) {
      Complex<Scalar> phase(static_cast<Scalar>(term.coefficient));
      for (int s = 0; s < n_sites; ++s) {
        const bool one = (col >> site_bit(s, n_sites)) & 1;
        switch (term.letters[s]) {
          case Pauli::Y: phase *= one ? Complex<Scalar>(0, -1) : Complex<Scalar>(0, 1); break;
          case Pauli::Z: if (one) phase = -phase; break;
          default: break;
        }
      }
      h(col ^ flip, col) += phase;
    }
  }
  return h;
}

template <typename Scalar = double>
CMatrix<Scalar> to_dense_matrix(const std::vector<PauliTerm>& terms, int n_sites) {
  return to_dense_matrix<Scalar>(std::span<const PauliTerm>(terms), n_sites);
}

/// Dense Hamiltonian of `system` in neV.
MatrixXc hamiltonian_matrix(const RadicalPairSystem& system);

/// Stable 64-bit digest of every physical parameter.
std::uint64_t system_hash(const RadicalPairSystem& system);

}  // namespace rpdqs
