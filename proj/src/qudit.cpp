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

#include "ququart/qudit.hpp"

#include <cmath>
#include <numbers>
#include <string>
#include <utility>

#include "ququart/errors.hpp"

namespace ququart {
namespace {

bool all_finite(const ComplexMatrix& m) {
  for (Eigen::Index i = 0; i < m.size(); ++i) {
    const Complex z = m.data()[i];
    if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) return false;
  }
  return true;
}

void require_same_shape(const ComplexMatrix& a, const ComplexMatrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) {
    throw DimensionMismatch("operands have shapes " + std::to_string(a.rows()) +
                            "x" + std::to_string(a.cols()) + " and " +
                            std::to_string(b.rows()) + "x" +
                            std::to_string(b.cols()));
  }
}

}  // namespace

StateVector::StateVector(ComplexVector amps, double tol)
    : amps_(std::move(amps)) {
  if (amps_.size() == 0) throw InvalidDimension("state vector of dimension 0");
  if (!all_finite(amps_)) {
    throw InvariantViolation("state vector has non-finite amplitudes");
  }
  const double n2 = amps_.squaredNorm();
  if (std::abs(n2 - 1.0) >= tol) {
    throw InvariantViolation("state vector is not normalized: sum |a|^2 = " +
                             std::to_string(n2));
  }
}

StateVector StateVector::basis(std::size_t index, std::size_t dim) {
  if (dim == 0) throw InvalidDimension("basis state of dimension 0");
  if (index < 1 || index > dim) {
    throw IndexOutOfRange("basis index " + std::to_string(index) +
                          " outside [1, " + std::to_string(dim) + "]");
  }
  ComplexVector v = ComplexVector::Zero(static_cast<Eigen::Index>(dim));
  v(static_cast<Eigen::Index>(index - 1)) = 1.0;
  return StateVector(std::move(v));
}

Complex StateVector::inner(const StateVector& other) const {
  if (other.dim() != dim()) {
    throw DimensionMismatch("inner product of dimensions " +
                            std::to_string(dim()) + " and " +
                            std::to_string(other.dim()));
  }
  return amps_.dot(other.amps_);  // conjugates the left operand
}

StateVector StateVector::scaled(Complex phase) const {
  return StateVector(amps_ * phase);
}

UnitaryMatrix::UnitaryMatrix(ComplexMatrix entries, double tol)
    : m_(std::move(entries)) {
  if (m_.rows() == 0) throw InvalidDimension("unitary of dimension 0");
  if (m_.rows() != m_.cols()) {
    throw InvalidDimension("unitary must be square, got " +
                           std::to_string(m_.rows()) + "x" +
                           std::to_string(m_.cols()));
  }
  if (!all_finite(m_)) throw InvariantViolation("matrix has non-finite entries");
  const double err = unitarity_error();
  if (err >= tol) {
    throw InvariantViolation("matrix is not unitary: max|U^dag U - I| = " +
                             std::to_string(err));
  }
}

UnitaryMatrix UnitaryMatrix::identity(std::size_t dim) {
  if (dim == 0) throw InvalidDimension("identity of dimension 0");
  const auto n = static_cast<Eigen::Index>(dim);
  return UnitaryMatrix(ComplexMatrix::Identity(n, n));
}

double UnitaryMatrix::unitarity_error() const {
  const ComplexMatrix gram = m_.adjoint() * m_;
  return (gram - ComplexMatrix::Identity(m_.rows(), m_.cols()))
      .cwiseAbs()
      .maxCoeff();
}

UnitaryMatrix UnitaryMatrix::operator*(const UnitaryMatrix& rhs) const {
  if (rhs.dim() != dim()) {
    throw DimensionMismatch("product of " + std::to_string(dim()) + "x" +
                            std::to_string(dim()) + " and " +
                            std::to_string(rhs.dim()) + "x" +
                            std::to_string(rhs.dim()));
  }
  return UnitaryMatrix(m_ * rhs.m_);
}

UnitaryMatrix kron(const UnitaryMatrix& a, const UnitaryMatrix& b) {
  const auto na = static_cast<Eigen::Index>(a.dim());
  const auto nb = static_cast<Eigen::Index>(b.dim());
  ComplexMatrix out(na * nb, na * nb);
  for (Eigen::Index i = 0; i < na; ++i) {
    for (Eigen::Index j = 0; j < na; ++j) {
      out.block(i * nb, j * nb, nb, nb) = a.matrix()(i, j) * b.matrix();
    }
  }
  return UnitaryMatrix(std::move(out));
}

UnitaryMatrix qft_matrix(std::size_t d) {
  if (d == 0) throw InvalidDimension("DFT of dimension 0");
  const auto n = static_cast<Eigen::Index>(d);
  const double scale = 1.0 / std::sqrt(static_cast<double>(d));
  ComplexMatrix m(n, n);
  static constexpr Complex kQuarterTurns[4] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};
  for (Eigen::Index j = 0; j < n; ++j) {
    for (Eigen::Index k = 0; k < n; ++k) {
      const Eigen::Index r = (j * k) % n;
      // Multiples of pi/2 are written exactly so that e.g. d = 4 is free of
      // rounding.
      const Complex w =
          (4 * r) % n == 0
              ? kQuarterTurns[(4 * r) / n]
              : std::polar(1.0, 2.0 * std::numbers::pi * static_cast<double>(r) /
                                    static_cast<double>(d));
      m(j, k) = scale * w;
    }
  }
  return UnitaryMatrix(std::move(m));
}

StateVector apply(const UnitaryMatrix& u, const StateVector& s) {
  if (u.dim() != s.dim()) {
    throw DimensionMismatch("cannot apply a " + std::to_string(u.dim()) +
                            "-dimensional unitary to a " +
                            std::to_string(s.dim()) + "-dimensional state");
  }
  return StateVector(u.matrix() * s.amplitudes());
}

UnitaryMatrix dagger(const UnitaryMatrix& u) {
  return UnitaryMatrix(u.matrix().adjoint());
}

StateVector fourier_state(std::size_t j, std::size_t d) {
  return apply(qft_matrix(d), StateVector::basis(j, d));
}

double max_abs_diff(const ComplexMatrix& a, const ComplexMatrix& b) {
  require_same_shape(a, b);
  if (a.size() == 0) return 0.0;
  return (a - b).cwiseAbs().maxCoeff();
}

PhaseMatch equal_up_to_global_phase(const ComplexMatrix& a,
                                    const ComplexMatrix& b, double tol) {
  require_same_shape(a, b);
  Eigen::Index row = 0;
  Eigen::Index col = 0;
  const double largest = b.size() == 0 ? 0.0 : b.cwiseAbs().maxCoeff(&row, &col);
  if (largest == 0.0) {
    throw ZeroReference("global-phase reference operand is all zero");
  }
  PhaseMatch match;
  match.phase = a(row, col) / b(row, col);
  match.equal = std::abs(std::abs(match.phase) - 1.0) < tol &&
                (a - match.phase * b).cwiseAbs().maxCoeff() < tol;
  return match;
}

PhaseMatch equal_up_to_global_phase(const StateVector& a, const StateVector& b,
                                    double tol) {
  return equal_up_to_global_phase(ComplexMatrix(a.amplitudes()),
                                  ComplexMatrix(b.amplitudes()), tol);
}

PhaseMatch equal_up_to_global_phase(const UnitaryMatrix& a,
                                    const UnitaryMatrix& b, double tol) {
  return equal_up_to_global_phase(a.matrix(), b.matrix(), tol);
}

}  // namespace ququart
