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

// Linear-optics layer: a ququart carried by one photon's polarization (H/V)
// and path (l/r) inside a Mach-Zehnder interferometer. The composite space is
// ordered polarization (x) path, giving the basis
//   |H,l> = 1, |H,r> = 2, |V,l> = 3, |V,r> = 4.
//
// Only the relative l/r phase is tracked. Global phases from mirrors, beam
// splitter reflections and the compensating 0-degree wave plate are dropped,
// and optics are lossless.

#include <array>
#include <cstddef>
#include <string>
#include <variant>
#include <vector>

#include "ququart/qudit.hpp"

namespace ququart::optics {

enum class Polarization { H, V };
enum class Path { l, r };

struct ModeLabel {
  Polarization pol;
  Path path;
  friend bool operator==(const ModeLabel&, const ModeLabel&) = default;
};

std::size_t encode(ModeLabel m);
/// Throws IndexOutOfRange for indices outside 1..4.
ModeLabel decode(std::size_t index);
std::string to_string(ModeLabel m);

enum class PathSelector { l, r, both };

/// Swaps the two spatial modes.
struct DovePrism {};

/// Retarder with Jones matrix [[cos 2t, sin 2t], [sin 2t, -cos 2t]] on the
/// selected path(s). A plate at exactly 0 degrees is the thickness
/// compensator and acts as the identity.
class HalfWavePlate {
 public:
  /// Throws InvariantViolation unless angle_deg is in [0, 180).
  HalfWavePlate(double angle_deg, PathSelector where);

  double angle_deg() const { return angle_deg_; }
  PathSelector where() const { return where_; }

 private:
  double angle_deg_;
  PathSelector where_;
};

/// PZT-driven phase e^{i phi} on both polarizations of path r.
struct PhaseShifter {
  double phi;
};

/// Symmetric 50:50 splitter (1/sqrt 2)[[1, i], [i, 1]] on (l, r). Output
/// port l feeds D1 and port r feeds D2.
struct BeamSplitter {};

/// State-preparation projector; not a unitary element.
struct Polarizer {
  double angle_deg;
};

using OpticalElement =
    std::variant<DovePrism, HalfWavePlate, PhaseShifter, BeamSplitter, Polarizer>;

std::string describe(const OpticalElement& e);

/// 4x4 action on the composite space. Throws NonUnitaryElement for a
/// Polarizer and InvariantViolation for a non-finite phase.
UnitaryMatrix element_unitary(const OpticalElement& e);

/// Elements in propagation order.
class OpticalTable {
 public:
  OpticalTable() = default;
  explicit OpticalTable(std::vector<OpticalElement> elements);

  OpticalTable& add(OpticalElement e);
  const std::vector<OpticalElement>& elements() const { return elements_; }

  /// E_n ... E_2 E_1 for elements E_1..E_n in propagation order.
  UnitaryMatrix transfer() const;

 private:
  std::vector<OpticalElement> elements_;
};

/// Which of the removable black-box elements are in the beam: the Dove
/// prism, HWP1 (45 degrees, path l) and HWP2 (45 degrees, path r).
struct BlackBoxConfig {
  bool dove_prism = false;
  bool hwp1 = false;
  bool hwp2 = false;
  friend bool operator==(const BlackBoxConfig&, const BlackBoxConfig&) = default;
};

std::string to_string(const BlackBoxConfig& c);

/// The insertion pattern realizing f_k, k in 1..8.
BlackBoxConfig config_for(std::size_t k);

/// Dove prism first, then the wave plates. A lone 45-degree plate is paired
/// with a 0-degree compensator in the other path.
OpticalTable black_box_table(const BlackBoxConfig& c);
UnitaryMatrix black_box_unitary(const BlackBoxConfig& c);

/// (|H> - |V>)/sqrt2 (x) (|l> + e^{i phi}|r>)/sqrt2, i.e.
/// (|H,l> + e^{i phi}|H,r> - |V,l> - e^{i phi}|V,r>)/2.
StateVector prepare_input(double phi);

struct DetectionProbabilities {
  double d1;
  double d2;
};

/// Click probabilities after the second beam splitter, polarization traced
/// out: p_d1 = sum_pol |a_l + i a_r|^2 / 2, p_d2 = sum_pol |a_l - i a_r|^2 / 2.
DetectionProbabilities detect_probabilities(const StateVector& s);
/// Validates normalization first; throws InvariantViolation otherwise.
DetectionProbabilities detect_probabilities(const ComplexVector& amps);

/// Black box k applied to prepare_input(phi).
StateVector run_box(std::size_t k, double phi);

}  // namespace ququart::optics
