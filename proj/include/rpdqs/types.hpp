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

#include <complex>
#include <stdexcept>

#include <Eigen/Dense>

namespace rpdqs {

template <typename Scalar>
using Complex = std::complex<Scalar>;

template <typename Scalar>
using CMatrix = Eigen::Matrix<Complex<Scalar>, Eigen::Dynamic, Eigen::Dynamic>;

template <typename Scalar>
using CVector = Eigen::Matrix<Complex<Scalar>, Eigen::Dynamic, 1>;

using MatrixXc = CMatrix<double>;
using VectorXc = CVector<double>;

/// Raised for requests the model deliberately does not cover
/// (asymmetric recombination, for example).
class UnsupportedFeature : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

/// Index of `site` inside a basis label, site 0 being the most significant bit.
constexpr int site_bit(int site, int n_sites) { return n_sites - 1 - site; }

}  // namespace rpdqs
