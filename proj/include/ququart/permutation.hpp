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

// Permutation oracles on a d-level system: the eight cyclic/anticyclic boxes
// of the ququart experiment, their unitaries, and the quantum (one query) and
// classical (two queries) parity strategies.

#include <array>
#include <cstddef>
#include <iosfwd>
#include <optional>
#include <span>
#include <string_view>
#include <utility>
#include <vector>

#include "ququart/qudit.hpp"

namespace ququart {

/// A bijection f on {1..d}, stored one-based: map()[j-1] == f(j).
class Permutation {
 public:
  /// Throws NotABijection if `one_based_map` is not a permutation of 1..d.
  explicit Permutation(std::vector<std::size_t> one_based_map);

  static Permutation identity(std::size_t d);

  std::size_t dim() const { return map_.size(); }
  /// f(x) for a one-based x.
  std::size_t operator()(std::size_t x) const;
  const std::vector<std::size_t>& map() const { return map_; }

  /// (this o other)(x) = this(other(x))
  Permutation after(const Permutation& other) const;

  friend bool operator==(const Permutation&, const Permutation&) = default;

 private:
  std::vector<std::size_t> map_;
};

/// Image list in one-line notation, e.g. "(2 3 4 1)".
std::ostream& operator<<(std::ostream& os, const Permutation& p);

enum class Parity { even, odd };

std::string_view to_string(Parity p);
Parity combine(Parity a, Parity b);

inline constexpr std::size_t kBoxCount = 8;
inline constexpr std::size_t kQuquartDim = 4;

/// f1..f8 in the order of the experiment: f1-f4 cyclic, f5-f8 anticyclic.
const std::array<Permutation, kBoxCount>& standard_boxes();

/// The box f_k for k in 1..8; throws IndexOutOfRange otherwise.
const Permutation& box(std::size_t k);

/// k such that standard_boxes()[k-1] == p, if any.
std::optional<std::size_t> box_index(const Permutation& p);

/// The 2d cyclic and anticyclic permutations of {1..d}: rotations
/// x -> x + c first (c = 0..d-1), then reflections x -> c - x.
std::vector<Permutation> dihedral_family(std::size_t d);

/// U = sum_j |f(j)><j|, so column j is e_{f(j)}.
UnitaryMatrix permutation_matrix(const Permutation& p);

/// Even for rotations, odd for reflections. For d <= 2 every permutation is
/// both and is reported even. Throws NotInOracleFamily otherwise.
Parity parity(const Permutation& p);

/// Black-box access to a permutation with query accounting. Each classical
/// evaluation and each unitary application counts as one query. Not
/// thread-safe.
class OracleHandle {
 public:
  explicit OracleHandle(Permutation perm) : perm_(std::move(perm)) {}

  std::size_t evaluate(std::size_t x);
  StateVector apply(const StateVector& s);

  std::size_t query_count() const { return queries_; }
  std::size_t dim() const { return perm_.dim(); }

 private:
  Permutation perm_;
  std::size_t queries_ = 0;
};

struct QuantumParityResult {
  Parity parity;
  /// One-based index of the computational basis state found after U_FT^dag.
  std::size_t measured_index;
};

/// Prepares psi_probe = U_FT |probe>, queries the oracle once, applies
/// U_FT^dag and reads the (deterministic) basis outcome. Even boxes return
/// the probe index, odd boxes the mirrored one (2 <-> 4).
/// Throws UnsupportedProbe for probe indices other than 2 and 4, and
/// DimensionMismatch for non-ququart oracles.
QuantumParityResult quantum_parity_single_query(OracleHandle& oracle,
                                                std::size_t probe);

struct ClassicalParityResult {
  Parity parity;
  std::size_t queries;
  /// (x, f(x)) for each classical evaluation, in query order.
  std::array<std::pair<std::size_t, std::size_t>, 2> observations;
  std::size_t identified_box;
};

/// Evaluates f(1) and f(2), which identify the box uniquely among f1..f8.
ClassicalParityResult classical_parity(OracleHandle& oracle);

struct AmbiguityWitness {
  Permutation even;
  Permutation odd;
};

/// An even and an odd member of `family` with f(x) = y, or nullopt when the
/// single observation x -> y does not leave both parities open.
std::optional<AmbiguityWitness> single_query_ambiguity_witness(
    std::size_t x, std::size_t y, std::span<const Permutation> family);
/// Same, over f1..f8.
std::optional<AmbiguityWitness> single_query_ambiguity_witness(std::size_t x,
                                                               std::size_t y);

}  // namespace ququart
