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

#include "ququart/permutation.hpp"

#include <algorithm>
#include <map>
#include <ostream>
#include <string>

#include "ququart/errors.hpp"

namespace ququart {
namespace {

void require_basis_index(std::size_t x, std::size_t d, const char* what) {
  if (x < 1 || x > d) {
    throw IndexOutOfRange(std::string(what) + " " + std::to_string(x) +
                          " outside [1, " + std::to_string(d) + "]");
  }
}

// Checks that (f(1), f(2)) fingerprints f1..f8 uniquely and returns the
// lookup table used by classical_parity.
std::map<std::pair<std::size_t, std::size_t>, std::size_t> build_fingerprints() {
  std::map<std::pair<std::size_t, std::size_t>, std::size_t> table;
  const auto& boxes = standard_boxes();
  for (std::size_t k = 0; k < boxes.size(); ++k) {
    const auto key = std::make_pair(boxes[k](1), boxes[k](2));
    if (!table.emplace(key, k + 1).second) {
      throw std::logic_error("boxes f" + std::to_string(table[key]) + " and f" +
                             std::to_string(k + 1) +
                             " share the (f(1), f(2)) fingerprint");
    }
  }
  return table;
}

}  // namespace

Permutation::Permutation(std::vector<std::size_t> one_based_map)
    : map_(std::move(one_based_map)) {
  if (map_.empty()) throw InvalidDimension("permutation of dimension 0");
  std::vector<bool> hit(map_.size(), false);
  for (std::size_t j = 0; j < map_.size(); ++j) {
    const std::size_t y = map_[j];
    if (y < 1 || y > map_.size() || hit[y - 1]) {
      throw NotABijection("map is not a bijection on {1.." +
                          std::to_string(map_.size()) + "}: f(" +
                          std::to_string(j + 1) + ") = " + std::to_string(y));
    }
    hit[y - 1] = true;
  }
}

Permutation Permutation::identity(std::size_t d) {
  std::vector<std::size_t> m(d);
  for (std::size_t j = 0; j < d; ++j) m[j] = j + 1;
  return Permutation(std::move(m));
}

std::size_t Permutation::operator()(std::size_t x) const {
  require_basis_index(x, dim(), "permutation argument");
  return map_[x - 1];
}

Permutation Permutation::after(const Permutation& other) const {
  if (other.dim() != dim()) {
    throw DimensionMismatch("composing permutations of different degree");
  }
  std::vector<std::size_t> m(dim());
  for (std::size_t j = 0; j < dim(); ++j) m[j] = map_[other.map_[j] - 1];
  return Permutation(std::move(m));
}

std::ostream& operator<<(std::ostream& os, const Permutation& p) {
  os << '(';
  for (std::size_t j = 0; j < p.dim(); ++j) os << (j ? " " : "") << p.map()[j];
  return os << ')';
}

std::string_view to_string(Parity p) {
  return p == Parity::even ? "even" : "odd";
}

Parity combine(Parity a, Parity b) {
  return a == b ? Parity::even : Parity::odd;
}

const std::array<Permutation, kBoxCount>& standard_boxes() {
  static const std::array<Permutation, kBoxCount> boxes = {
      Permutation({1, 2, 3, 4}), Permutation({2, 3, 4, 1}),
      Permutation({3, 4, 1, 2}), Permutation({4, 1, 2, 3}),
      Permutation({4, 3, 2, 1}), Permutation({3, 2, 1, 4}),
      Permutation({2, 1, 4, 3}), Permutation({1, 4, 3, 2}),
  };
  return boxes;
}

const Permutation& box(std::size_t k) {
  if (k < 1 || k > kBoxCount) {
    throw IndexOutOfRange("box id " + std::to_string(k) + " outside [1, 8]");
  }
  return standard_boxes()[k - 1];
}

std::optional<std::size_t> box_index(const Permutation& p) {
  const auto& boxes = standard_boxes();
  const auto it = std::find(boxes.begin(), boxes.end(), p);
  if (it == boxes.end()) return std::nullopt;
  return static_cast<std::size_t>(it - boxes.begin()) + 1;
}

std::vector<Permutation> dihedral_family(std::size_t d) {
  if (d == 0) throw InvalidDimension("dihedral family of degree 0");
  std::vector<Permutation> family;
  family.reserve(2 * d);
  for (std::size_t c = 0; c < d; ++c) {
    std::vector<std::size_t> m(d);
    for (std::size_t x = 0; x < d; ++x) m[x] = (x + c) % d + 1;
    family.emplace_back(std::move(m));
  }
  for (std::size_t c = 0; c < d; ++c) {
    std::vector<std::size_t> m(d);
    for (std::size_t x = 0; x < d; ++x) m[x] = (c + d - x) % d + 1;
    family.emplace_back(std::move(m));
  }
  return family;
}

UnitaryMatrix permutation_matrix(const Permutation& p) {
  const auto n = static_cast<Eigen::Index>(p.dim());
  ComplexMatrix m = ComplexMatrix::Zero(n, n);
  for (std::size_t j = 0; j < p.dim(); ++j) {
    m(static_cast<Eigen::Index>(p.map()[j] - 1), static_cast<Eigen::Index>(j)) = 1.0;
  }
  return UnitaryMatrix(std::move(m));
}

Parity parity(const Permutation& p) {
  const std::size_t d = p.dim();
  // Zero-based: rotations have f(x) - x constant, reflections f(x) + x.
  const auto& m = p.map();
  const std::size_t first = m[0] - 1;
  bool rotation = true;
  bool reflection = true;
  for (std::size_t x = 0; x < d; ++x) {
    const std::size_t y = m[x] - 1;
    rotation = rotation && (y + d - x) % d == first;
    reflection = reflection && (y + x) % d == first;
  }
  if (rotation) return Parity::even;
  if (reflection) return Parity::odd;
  throw NotInOracleFamily("permutation is neither a cyclic rotation nor a "
                          "reflection of {1.." + std::to_string(d) + "}");
}

std::size_t OracleHandle::evaluate(std::size_t x) {
  const std::size_t y = perm_(x);
  ++queries_;
  return y;
}

StateVector OracleHandle::apply(const StateVector& s) {
  StateVector out = ququart::apply(permutation_matrix(perm_), s);
  ++queries_;
  return out;
}

QuantumParityResult quantum_parity_single_query(OracleHandle& oracle,
                                                std::size_t probe) {
  if (oracle.dim() != kQuquartDim) {
    throw DimensionMismatch("the single-query parity test needs a ququart "
                            "oracle, got dimension " +
                            std::to_string(oracle.dim()));
  }
  if (probe != 2 && probe != 4) {
    throw UnsupportedProbe("probe |psi_" + std::to_string(probe) +
                           "> does not discriminate parity; use 2 or 4");
  }
  const UnitaryMatrix ft = qft_matrix(kQuquartDim);
  const StateVector input = apply(ft, StateVector::basis(probe, kQuquartDim));
  const StateVector kicked = oracle.apply(input);
  const StateVector readout = apply(dagger(ft), kicked);

  Eigen::Index outcome = 0;
  const double p = readout.probabilities().maxCoeff(&outcome);
  if (p < 1.0 - kConstructionTol) {
    throw NotInOracleFamily("oracle output is not a Fourier eigenstate; "
                            "largest outcome probability " + std::to_string(p));
  }
  const auto measured = static_cast<std::size_t>(outcome) + 1;
  return {measured == probe ? Parity::even : Parity::odd, measured};
}

ClassicalParityResult classical_parity(OracleHandle& oracle) {
  static const auto fingerprints = build_fingerprints();
  if (oracle.dim() != kQuquartDim) {
    throw DimensionMismatch("classical baseline expects a ququart oracle");
  }
  const std::size_t f1 = oracle.evaluate(1);
  const std::size_t f2 = oracle.evaluate(2);
  const auto it = fingerprints.find({f1, f2});
  if (it == fingerprints.end()) {
    throw NotInOracleFamily("(f(1), f(2)) = (" + std::to_string(f1) + ", " +
                            std::to_string(f2) + ") matches none of f1..f8");
  }
  return {parity(box(it->second)), oracle.query_count(), {{{1, f1}, {2, f2}}},
          it->second};
}

std::optional<AmbiguityWitness> single_query_ambiguity_witness(
    std::size_t x, std::size_t y, std::span<const Permutation> family) {
  if (family.empty()) return std::nullopt;
  const std::size_t d = family.front().dim();
  require_basis_index(x, d, "query input");
  require_basis_index(y, d, "query output");
  const Permutation* even = nullptr;
  const Permutation* odd = nullptr;
  for (const auto& p : family) {
    if (p(x) != y) continue;
    const Parity q = parity(p);
    if (q == Parity::even && even == nullptr) even = &p;
    if (q == Parity::odd && odd == nullptr) odd = &p;
  }
  if (even == nullptr || odd == nullptr) return std::nullopt;
  return AmbiguityWitness{*even, *odd};
}

std::optional<AmbiguityWitness> single_query_ambiguity_witness(std::size_t x,
                                                               std::size_t y) {
  return single_query_ambiguity_witness(x, y, standard_boxes());
}

}  // namespace ququart
