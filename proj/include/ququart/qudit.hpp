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

// Dense state vectors and unitaries for a single d-level system.
//
// Basis indices are one-based at every public entry point that takes a
// "basis index" (|1>..|d>), and zero-based for raw element access
// (amp(), operator()). Values are immutable after construction.

#include <complex>
#include <cstddef>

#include <Eigen/Dense>

namespace ququart {

using Complex = std::complex<double>;
using ComplexVector = Eigen::VectorXcd;
using ComplexMatrix = Eigen::MatrixXcd;

/// Tolerance applied when constructing states and unitaries.
inline constexpr double kConstructionTol = 1e-10;
/// Tolerance for pure-arithmetic identities on <= 16-dimensional products.
inline constexpr double kArithmeticTol = 1e-12;

class StateVector {
 public:
  /// Throws InvariantViolation unless every amplitude is finite and the norm
  /// is 1 within `tol`.
  explicit StateVector(ComplexVector amps, double tol = kConstructionTol);

  /// |index> with a one-based index in [1, dim].
  static StateVector basis(std::size_t index, std::size_t dim);

  std::size_t dim() const { return static_cast<std::size_t>(amps_.size()); }
  Complex amp(std::size_t i) const { return amps_(static_cast<Eigen::Index>(i)); }
  const ComplexVector& amplitudes() const { return amps_; }

  double norm() const { return amps_.norm(); }
  /// <this|other>
  Complex inner(const StateVector& other) const;
  /// |amp(i)|^2 for every zero-based i.
  Eigen::VectorXd probabilities() const { return amps_.cwiseAbs2(); }

  StateVector scaled(Complex phase) const;

 private:
  ComplexVector amps_;
};

class UnitaryMatrix {
 public:
  /// Throws InvariantViolation unless the matrix is square, finite, and
  /// max|U^dagger U - I| < tol.
  explicit UnitaryMatrix(ComplexMatrix entries, double tol = kConstructionTol);

  static UnitaryMatrix identity(std::size_t dim);

  std::size_t dim() const { return static_cast<std::size_t>(m_.rows()); }
  Complex operator()(std::size_t row, std::size_t col) const {
    return m_(static_cast<Eigen::Index>(row), static_cast<Eigen::Index>(col));
  }
  const ComplexMatrix& matrix() const { return m_; }

  /// max_{ij} |(U^dagger U - I)_{ij}|
  double unitarity_error() const;

  /// Matrix product this * rhs, i.e. rhs acts first.
  UnitaryMatrix operator*(const UnitaryMatrix& rhs) const;

 private:
  ComplexMatrix m_;
};

/// Tensor product a (x) b, a being the more significant factor.
UnitaryMatrix kron(const UnitaryMatrix& a, const UnitaryMatrix& b);

/// d-point DFT: entries[j][k] = exp(2 pi i j k / d) / sqrt(d), zero-based.
UnitaryMatrix qft_matrix(std::size_t d);

StateVector apply(const UnitaryMatrix& u, const StateVector& s);

UnitaryMatrix dagger(const UnitaryMatrix& u);

/// U_FT |j> for a one-based j.
StateVector fourier_state(std::size_t j, std::size_t d);

struct PhaseMatch {
  bool equal = false;
  /// c such that a ~= c * b; fitted from the largest-magnitude entry of b.
  Complex phase{1.0, 0.0};
};

/// True iff a unit-modulus c exists with max|a - c b| < tol. Works on
/// arbitrary nonzero operands; throws ZeroReference when b is all zero and
/// DimensionMismatch when shapes differ.
PhaseMatch equal_up_to_global_phase(const ComplexMatrix& a,
                                    const ComplexMatrix& b, double tol);
PhaseMatch equal_up_to_global_phase(const StateVector& a, const StateVector& b,
                                    double tol);
PhaseMatch equal_up_to_global_phase(const UnitaryMatrix& a,
                                    const UnitaryMatrix& b, double tol);

double max_abs_diff(const ComplexMatrix& a, const ComplexMatrix& b);

}  // namespace ququart
