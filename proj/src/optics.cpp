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

#include "ququart/optics.hpp"

#include <cmath>
#include <numbers>
#include <string>
#include <utility>

#include "ququart/errors.hpp"
#include "ququart/permutation.hpp"

namespace ququart::optics {
namespace {

constexpr Complex kI{0.0, 1.0};

Eigen::Index mode_row(Polarization pol, Path path) {
  return static_cast<Eigen::Index>(encode({pol, path}) - 1);
}

bool acts_on(PathSelector where, Path path) {
  return where == PathSelector::both ||
         (where == PathSelector::l && path == Path::l) ||
         (where == PathSelector::r && path == Path::r);
}

// cos and sin of an angle given in degrees, exact on multiples of 90.
std::pair<double, double> cos_sin_deg(double deg) {
  const double turns = deg / 90.0;
  if (turns == std::floor(turns)) {
    switch (static_cast<long>(std::fmod(turns, 4.0) + 4.0) % 4) {
      case 0: return {1.0, 0.0};
      case 1: return {0.0, 1.0};
      case 2: return {-1.0, 0.0};
      default: return {0.0, -1.0};
    }
  }
  const double rad = deg * std::numbers::pi / 180.0;
  return {std::cos(rad), std::sin(rad)};
}

// Embeds a 2x2 polarization operator acting on the selected path(s).
ComplexMatrix polarization_on_paths(const Eigen::Matrix2cd& jones,
                                    PathSelector where) {
  ComplexMatrix m = ComplexMatrix::Identity(4, 4);
  for (Path path : {Path::l, Path::r}) {
    if (!acts_on(where, path)) continue;
    const Polarization pols[2] = {Polarization::H, Polarization::V};
    for (int out = 0; out < 2; ++out) {
      for (int in = 0; in < 2; ++in) {
        m(mode_row(pols[out], path), mode_row(pols[in], path)) = jones(out, in);
      }
    }
  }
  return m;
}

// I_pol (x) B for a 2x2 spatial operator B on (l, r).
ComplexMatrix on_paths(const Eigen::Matrix2cd& b) {
  ComplexMatrix m = ComplexMatrix::Zero(4, 4);
  for (Polarization pol : {Polarization::H, Polarization::V}) {
    const Path paths[2] = {Path::l, Path::r};
    for (int out = 0; out < 2; ++out) {
      for (int in = 0; in < 2; ++in) {
        m(mode_row(pol, paths[out]), mode_row(pol, paths[in])) = b(out, in);
      }
    }
  }
  return m;
}

struct ElementMatrix {
  UnitaryMatrix operator()(const DovePrism&) const {
    Eigen::Matrix2cd swap;
    swap << 0, 1, 1, 0;
    return UnitaryMatrix(on_paths(swap));
  }
  UnitaryMatrix operator()(const HalfWavePlate& hwp) const {
    if (hwp.angle_deg() == 0.0) return UnitaryMatrix::identity(4);
    const auto [c, s] = cos_sin_deg(2.0 * hwp.angle_deg());
    Eigen::Matrix2cd jones;
    jones << c, s, s, -c;
    return UnitaryMatrix(polarization_on_paths(jones, hwp.where()));
  }
  UnitaryMatrix operator()(const PhaseShifter& ps) const {
    if (!std::isfinite(ps.phi)) {
      throw InvariantViolation("phase shifter with non-finite phase");
    }
    Eigen::Matrix2cd phase = Eigen::Matrix2cd::Identity();
    phase(1, 1) = std::polar(1.0, ps.phi);
    return UnitaryMatrix(on_paths(phase));
  }
  UnitaryMatrix operator()(const BeamSplitter&) const {
    Eigen::Matrix2cd bs;
    bs << 1.0, kI, kI, 1.0;
    return UnitaryMatrix(on_paths(bs / std::numbers::sqrt2));
  }
  UnitaryMatrix operator()(const Polarizer& p) const {
    throw NonUnitaryElement("polarizer at " + std::to_string(p.angle_deg) +
                            " deg is a projector, not a unitary element");
  }
};

const char* to_string(PathSelector where) {
  switch (where) {
    case PathSelector::l: return "l";
    case PathSelector::r: return "r";
    case PathSelector::both: return "l+r";
  }
  return "?";
}

}  // namespace

std::size_t encode(ModeLabel m) {
  return 1 + (m.pol == Polarization::V ? 2 : 0) + (m.path == Path::r ? 1 : 0);
}

ModeLabel decode(std::size_t index) {
  if (index < 1 || index > 4) {
    throw IndexOutOfRange("mode index " + std::to_string(index) +
                          " outside [1, 4]");
  }
  const std::size_t z = index - 1;
  return {z >= 2 ? Polarization::V : Polarization::H,
          z % 2 == 1 ? Path::r : Path::l};
}

std::string to_string(ModeLabel m) {
  std::string s = m.pol == Polarization::H ? "H" : "V";
  s += m.path == Path::l ? ",l" : ",r";
  return s;
}

HalfWavePlate::HalfWavePlate(double angle_deg, PathSelector where)
    : angle_deg_(angle_deg), where_(where) {
  if (!(angle_deg >= 0.0 && angle_deg < 180.0)) {
    throw InvariantViolation("half-wave plate angle " +
                             std::to_string(angle_deg) +
                             " deg outside [0, 180)");
  }
}

std::string describe(const OpticalElement& e) {
  struct Describe {
    std::string operator()(const DovePrism&) const { return "DP"; }
    std::string operator()(const HalfWavePlate& h) const {
      return "HWP(" + std::to_string(h.angle_deg()) + " deg, " +
             to_string(h.where()) + ")";
    }
    std::string operator()(const PhaseShifter& p) const {
      return "PZT(" + std::to_string(p.phi) + " rad, r)";
    }
    std::string operator()(const BeamSplitter&) const { return "BS"; }
    std::string operator()(const Polarizer& p) const {
      return "P(" + std::to_string(p.angle_deg) + " deg)";
    }
  };
  return std::visit(Describe{}, e);
}

UnitaryMatrix element_unitary(const OpticalElement& e) {
  return std::visit(ElementMatrix{}, e);
}

OpticalTable::OpticalTable(std::vector<OpticalElement> elements)
    : elements_(std::move(elements)) {}

OpticalTable& OpticalTable::add(OpticalElement e) {
  elements_.push_back(std::move(e));
  return *this;
}

UnitaryMatrix OpticalTable::transfer() const {
  UnitaryMatrix u = UnitaryMatrix::identity(4);
  for (const auto& e : elements_) u = element_unitary(e) * u;
  return u;
}

std::string to_string(const BlackBoxConfig& c) {
  std::string s = "DP=";
  s += c.dove_prism ? "yes" : "no";
  s += " HWP1=";
  s += c.hwp1 ? "yes" : "no";
  s += " HWP2=";
  s += c.hwp2 ? "yes" : "no";
  return s;
}

BlackBoxConfig config_for(std::size_t k) {
  static constexpr BlackBoxConfig kTable[kBoxCount] = {
      {false, false, false},  // f1
      {true, true, false},    // f2
      {false, true, true},    // f3
      {true, false, true},    // f4
      {true, true, true},     // f5
      {false, true, false},   // f6
      {true, false, false},   // f7
      {false, false, true},   // f8
  };
  if (k < 1 || k > kBoxCount) {
    throw IndexOutOfRange("box id " + std::to_string(k) + " outside [1, 8]");
  }
  return kTable[k - 1];
}

OpticalTable black_box_table(const BlackBoxConfig& c) {
  OpticalTable table;
  if (c.dove_prism) table.add(DovePrism{});
  if (c.hwp1) table.add(HalfWavePlate(45.0, PathSelector::l));
  if (c.hwp2) table.add(HalfWavePlate(45.0, PathSelector::r));
  if (c.hwp1 != c.hwp2) {
    table.add(HalfWavePlate(0.0, c.hwp1 ? PathSelector::r : PathSelector::l));
  }
  return table;
}

UnitaryMatrix black_box_unitary(const BlackBoxConfig& c) {
  return black_box_table(c).transfer();
}

StateVector prepare_input(double phi) {
  const Complex e = std::polar(1.0, phi);
  ComplexVector v(4);
  v << 1.0, e, -1.0, -e;
  return StateVector(v / 2.0);
}

DetectionProbabilities detect_probabilities(const StateVector& s) {
  if (s.dim() != 4) {
    throw DimensionMismatch("detection expects a ququart, got dimension " +
                            std::to_string(s.dim()));
  }
  const StateVector out = apply(element_unitary(BeamSplitter{}), s);
  const Eigen::VectorXd p = out.probabilities();
  const auto at = [&](Polarization pol, Path path) {
    return p(mode_row(pol, path));
  };
  return {at(Polarization::H, Path::l) + at(Polarization::V, Path::l),
          at(Polarization::H, Path::r) + at(Polarization::V, Path::r)};
}

DetectionProbabilities detect_probabilities(const ComplexVector& amps) {
  return detect_probabilities(StateVector(amps));
}

StateVector run_box(std::size_t k, double phi) {
  return apply(black_box_unitary(config_for(k)), prepare_input(phi));
}

}  // namespace ququart::optics
