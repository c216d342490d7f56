// Copyright 2026 The Ququart Parity Authors
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

// Reference values computed independently of the library's code paths:
// a direct-sum DFT, the tensor-product closed forms of the eight box outputs,
// and random states/unitaries for property tests.

#include <array>
#include <cmath>
#include <complex>
#include <cstddef>
#include <numbers>
#include <random>

#include <Eigen/Dense>

namespace ququart::testing {

using cd = std::complex<double>;

/// exp(2 pi i j k / d) / sqrt(d), evaluated term by term with std::exp.
inline Eigen::MatrixXcd direct_dft(std::size_t d) {
  const auto n = static_cast<Eigen::Index>(d);
  Eigen::MatrixXcd m(n, n);
  for (Eigen::Index j = 0; j < n; ++j) {
    for (Eigen::Index k = 0; k < n; ++k) {
      m(j, k) = std::exp(cd(0, 2 * std::numbers::pi * double(j) * double(k) / double(d))) /
                std::sqrt(double(d));
    }
  }
  return m;
}

/// prefactor * (|H> - |V>)/sqrt2 (x) (|l> + g |r>)/sqrt2 for box k at phase
/// phi, with (prefactor, g) taken from the factorized output states:
///   f1: 1, e^{i phi}          f5: -e^{i phi}, -e^{i(pi - phi)}
///   f2: -e^{i phi}, e^{i(pi - phi)}   f6: -1, -e^{i phi}
///   f3: -1, e^{i phi}         f7: e^{i phi}, -e^{i(pi - phi)}
///   f4: e^{i phi}, e^{i(pi - phi)}    f8: 1, -e^{i phi}
inline Eigen::Vector4cd closed_form_output(std::size_t k, double phi) {
  const cd e = std::exp(cd(0, phi));
  const cd mirrored = std::exp(cd(0, std::numbers::pi - phi));
  cd pre;
  cd g;
  switch (k) {
    case 1: pre = 1.0; g = e; break;
    case 2: pre = -e; g = mirrored; break;
    case 3: pre = -1.0; g = e; break;
    case 4: pre = e; g = mirrored; break;
    case 5: pre = -e; g = -mirrored; break;
    case 6: pre = -1.0; g = -e; break;
    case 7: pre = e; g = -mirrored; break;
    default: pre = 1.0; g = -e; break;
  }
  const double s = 1.0 / std::numbers::sqrt2;
  const std::array<cd, 2> pol = {s, -s};        // H, V
  const std::array<cd, 2> path = {s, s * g};    // l, r
  Eigen::Vector4cd out;
  for (int p = 0; p < 2; ++p) {
    for (int q = 0; q < 2; ++q) out(2 * p + q) = pre * pol[p] * path[q];
  }
  return out;
}

inline Eigen::VectorXcd random_unit_vector(std::size_t d, std::mt19937_64& rng) {
  std::normal_distribution<double> g;
  Eigen::VectorXcd v(static_cast<Eigen::Index>(d));
  for (Eigen::Index i = 0; i < v.size(); ++i) v(i) = cd(g(rng), g(rng));
  return v / v.norm();
}

/// Q factor of a complex Gaussian matrix.
inline Eigen::MatrixXcd random_unitary(std::size_t d, std::mt19937_64& rng) {
  std::normal_distribution<double> g;
  const auto n = static_cast<Eigen::Index>(d);
  Eigen::MatrixXcd a(n, n);
  for (Eigen::Index i = 0; i < a.size(); ++i) a.data()[i] = cd(g(rng), g(rng));
  Eigen::HouseholderQR<Eigen::MatrixXcd> qr(a);
  return qr.householderQ() * Eigen::MatrixXcd::Identity(n, n);
}

}  // namespace ququart::testing
