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
#include <vector>

#include <gtest/gtest.h>

#include "oracles.hpp"
#include "ququart/errors.hpp"
#include "ququart/permutation.hpp"

namespace ququart::optics {
namespace {

using ququart::testing::cd;

constexpr double kPi = std::numbers::pi;
const cd kI{0, 1};

ComplexVector basis_amps(std::size_t j) { return StateVector::basis(j, 4).amplitudes(); }

TEST(ModeLabel, EncodeDecode) {
  EXPECT_EQ(encode({Polarization::H, Path::l}), 1u);
  EXPECT_EQ(encode({Polarization::H, Path::r}), 2u);
  EXPECT_EQ(encode({Polarization::V, Path::l}), 3u);
  EXPECT_EQ(encode({Polarization::V, Path::r}), 4u);
  for (std::size_t j = 1; j <= 4; ++j) EXPECT_EQ(encode(decode(j)), j);
  for (Polarization p : {Polarization::H, Polarization::V}) {
    for (Path q : {Path::l, Path::r}) {
      const ModeLabel m{p, q};
      EXPECT_EQ(decode(encode(m)), m);
    }
  }
  EXPECT_THROW(decode(0), IndexOutOfRange);
  EXPECT_THROW(decode(5), IndexOutOfRange);
  EXPECT_EQ(to_string(decode(4)), "V,r");
}

TEST(ElementUnitary, DovePrismSwapsPaths) {
  const UnitaryMatrix dp = element_unitary(DovePrism{});
  EXPECT_EQ(max_abs_diff(dp.matrix() * basis_amps(1), basis_amps(2)), 0.0);
  EXPECT_EQ(max_abs_diff(dp.matrix() * basis_amps(4), basis_amps(3)), 0.0);
}

TEST(ElementUnitary, HalfWavePlateAt45SwapsPolarizationOnItsPath) {
  const UnitaryMatrix hwp = element_unitary(HalfWavePlate(45.0, PathSelector::l));
  EXPECT_EQ(max_abs_diff(hwp.matrix() * basis_amps(1), basis_amps(3)), 0.0);
  EXPECT_EQ(max_abs_diff(hwp.matrix() * basis_amps(2), basis_amps(2)), 0.0);
  const UnitaryMatrix both = element_unitary(HalfWavePlate(45.0, PathSelector::both));
  EXPECT_EQ(max_abs_diff(both.matrix() * basis_amps(2), basis_amps(4)), 0.0);
}

TEST(ElementUnitary, CompensatorIsIdentity) {
  const UnitaryMatrix comp = element_unitary(HalfWavePlate(0.0, PathSelector::r));
  EXPECT_EQ(max_abs_diff(comp.matrix(), ComplexMatrix::Identity(4, 4)), 0.0);
}

TEST(ElementUnitary, GeneralHalfWavePlateJones) {
  const double theta = 22.5;
  const UnitaryMatrix hwp = element_unitary(HalfWavePlate(theta, PathSelector::r));
  const double c = std::cos(2 * theta * kPi / 180);
  const double s = std::sin(2 * theta * kPi / 180);
  // Acts on (|H,r>, |V,r>) = indices 2, 4; l path untouched.
  EXPECT_NEAR(std::abs(hwp(1, 1) - c), 0.0, 1e-15);
  EXPECT_NEAR(std::abs(hwp(3, 1) - s), 0.0, 1e-15);
  EXPECT_NEAR(std::abs(hwp(1, 3) - s), 0.0, 1e-15);
  EXPECT_NEAR(std::abs(hwp(3, 3) + c), 0.0, 1e-15);
  EXPECT_EQ(hwp(0, 0), cd(1, 0));
  EXPECT_EQ(hwp(2, 2), cd(1, 0));

  const UnitaryMatrix at90 = element_unitary(HalfWavePlate(90.0, PathSelector::l));
  EXPECT_EQ(at90(0, 0), cd(-1, 0));
  EXPECT_EQ(at90(2, 2), cd(1, 0));
}

TEST(ElementUnitary, PhaseShifterOnRightPath) {
  const double phi = 0.7;
  const UnitaryMatrix ps = element_unitary(PhaseShifter{phi});
  EXPECT_EQ(ps(0, 0), cd(1, 0));
  EXPECT_EQ(ps(2, 2), cd(1, 0));
  EXPECT_LT(std::abs(ps(1, 1) - std::polar(1.0, phi)), 1e-15);
  EXPECT_LT(std::abs(ps(3, 3) - std::polar(1.0, phi)), 1e-15);
  EXPECT_THROW(element_unitary(PhaseShifter{std::nan("")}), InvariantViolation);
}

TEST(ElementUnitary, Errors) {
  EXPECT_THROW(element_unitary(Polarizer{0.0}), NonUnitaryElement);
  EXPECT_THROW(HalfWavePlate(180.0, PathSelector::l), InvariantViolation);
  EXPECT_THROW(HalfWavePlate(-1.0, PathSelector::l), InvariantViolation);
}

TEST(ElementUnitary, BeamSplitterIsSymmetric) {
  const UnitaryMatrix bs = element_unitary(BeamSplitter{});
  EXPECT_LT(bs.unitarity_error(), kArithmeticTol);
  EXPECT_LT(max_abs_diff(bs.matrix(), bs.matrix().transpose()), 1e-15);
  EXPECT_LT(std::abs(bs(1, 0) - kI / std::sqrt(2.0)), 1e-15);
}

TEST(ConfigFor, TableRows) {
  EXPECT_EQ(config_for(5), (BlackBoxConfig{true, true, true}));
  EXPECT_EQ(config_for(7), (BlackBoxConfig{true, false, false}));
  EXPECT_EQ(config_for(1), (BlackBoxConfig{false, false, false}));
  EXPECT_THROW(config_for(0), IndexOutOfRange);
  EXPECT_THROW(config_for(9), IndexOutOfRange);
}

TEST(ConfigFor, EveryCombinationUsedOnce) {
  std::vector<int> seen(8, 0);
  for (std::size_t k = 1; k <= 8; ++k) {
    const auto c = config_for(k);
    ++seen[(c.dove_prism ? 4 : 0) + (c.hwp1 ? 2 : 0) + (c.hwp2 ? 1 : 0)];
  }
  for (int n : seen) EXPECT_EQ(n, 1);
}

// Output mode of each box for the inputs |H,l>, |H,r>, |V,l>, |V,r>.
const std::vector<std::vector<std::string>> kTableStates = {
    {"H,l", "H,r", "V,l", "V,r"}, {"H,r", "V,l", "V,r", "H,l"},
    {"V,l", "V,r", "H,l", "H,r"}, {"V,r", "H,l", "H,r", "V,l"},
    {"V,r", "V,l", "H,r", "H,l"}, {"V,l", "H,r", "H,l", "V,r"},
    {"H,r", "H,l", "V,r", "V,l"}, {"H,l", "V,r", "V,l", "H,r"}};

TEST(BlackBox, TableStateRows) {
  for (std::size_t k = 1; k <= 8; ++k) {
    const UnitaryMatrix u = black_box_unitary(config_for(k));
    for (std::size_t j = 1; j <= 4; ++j) {
      const StateVector out = apply(u, StateVector::basis(j, 4));
      Eigen::Index idx = 0;
      EXPECT_NEAR(out.probabilities().maxCoeff(&idx), 1.0, kArithmeticTol);
      EXPECT_EQ(to_string(decode(static_cast<std::size_t>(idx) + 1)),
                kTableStates[k - 1][j - 1])
          << "f" << k << " input " << j;
    }
  }
}

TEST(BlackBox, Examples) {
  EXPECT_EQ(max_abs_diff(black_box_unitary({false, false, false}).matrix(),
                         ComplexMatrix::Identity(4, 4)),
            0.0);
  EXPECT_TRUE(equal_up_to_global_phase(black_box_unitary({true, true, false}),
                                       permutation_matrix(box(2)), kArithmeticTol)
                  .equal);
  EXPECT_TRUE(equal_up_to_global_phase(black_box_unitary({false, false, true}),
                                       permutation_matrix(box(8)), kArithmeticTol)
                  .equal);
}

TEST(BlackBox, MatchesPermutationUnitaries) {
  for (std::size_t k = 1; k <= 8; ++k) {
    const UnitaryMatrix optical = black_box_unitary(config_for(k));
    const auto m = equal_up_to_global_phase(optical, permutation_matrix(box(k)),
                                            kArithmeticTol);
    EXPECT_TRUE(m.equal) << "f" << k;
    EXPECT_LT(optical.unitarity_error(), kConstructionTol);
  }
}

TEST(BlackBox, WavePlateOrderIrrelevant) {
  const OpticalTable forward({DovePrism{}, HalfWavePlate(45.0, PathSelector::l),
                              HalfWavePlate(45.0, PathSelector::r)});
  const OpticalTable reversed({DovePrism{}, HalfWavePlate(45.0, PathSelector::r),
                               HalfWavePlate(45.0, PathSelector::l)});
  EXPECT_EQ(max_abs_diff(forward.transfer().matrix(), reversed.transfer().matrix()), 0.0);
}

TEST(BlackBox, LoneWavePlateGetsCompensator) {
  const auto table = black_box_table(config_for(2));
  ASSERT_EQ(table.elements().size(), 3u);
  EXPECT_EQ(describe(table.elements()[0]), "DP");
  const auto* comp = std::get_if<HalfWavePlate>(&table.elements()[2]);
  ASSERT_NE(comp, nullptr);
  EXPECT_EQ(comp->angle_deg(), 0.0);
  EXPECT_EQ(comp->where(), PathSelector::r);
  EXPECT_EQ(black_box_table(config_for(5)).elements().size(), 3u);
}

TEST(PrepareInput, Examples) {
  const ComplexVector psi2 = (ComplexVector(4) << 1, kI, -1, -kI).finished() / 2.0;
  const ComplexVector psi4 = (ComplexVector(4) << 1, -kI, -1, kI).finished() / 2.0;
  EXPECT_LT(max_abs_diff(prepare_input(kPi / 2).amplitudes(), psi2), kArithmeticTol);
  EXPECT_LT(max_abs_diff(prepare_input(0.0).amplitudes(),
                         (ComplexVector(4) << 1, 1, -1, -1).finished() / 2.0),
            kArithmeticTol);
  EXPECT_LT(max_abs_diff(prepare_input(3 * kPi / 2).amplitudes(), psi4), kArithmeticTol);
  EXPECT_TRUE(equal_up_to_global_phase(prepare_input(kPi / 2), fourier_state(2, 4),
                                       kArithmeticTol).equal);
}

TEST(DetectProbabilities, Examples) {
  const auto even = detect_probabilities(run_box(1, kPi / 2));
  EXPECT_NEAR(even.d1, 0.0, kArithmeticTol);
  EXPECT_NEAR(even.d2, 1.0, kArithmeticTol);
  const auto odd = detect_probabilities(run_box(8, kPi / 2));
  EXPECT_NEAR(odd.d1, 1.0, kArithmeticTol);
  EXPECT_NEAR(odd.d2, 0.0, kArithmeticTol);
  for (int i = 0; i <= 64; ++i) {
    const double phi = 2 * kPi * i / 64;
    EXPECT_NEAR(detect_probabilities(run_box(1, phi)).d2, (1 + std::sin(phi)) / 2,
                kArithmeticTol);
  }
}

TEST(DetectProbabilities, MatchesProjectionFormula) {
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 200; ++trial) {
    const ComplexVector a = ququart::testing::random_unit_vector(4, rng);
    const double s2 = std::sqrt(2.0);
    const double d1 = std::norm((a(0) + kI * a(1)) / s2) + std::norm((a(2) + kI * a(3)) / s2);
    const double d2 = std::norm((a(0) - kI * a(1)) / s2) + std::norm((a(2) - kI * a(3)) / s2);
    const auto p = detect_probabilities(StateVector(a));
    EXPECT_NEAR(p.d1, d1, kArithmeticTol);
    EXPECT_NEAR(p.d2, d2, kArithmeticTol);
  }
}

TEST(DetectProbabilities, RejectsUnnormalizedInput) {
  EXPECT_THROW(detect_probabilities(ComplexVector::Ones(4)), InvariantViolation);
  EXPECT_THROW(detect_probabilities(fourier_state(1, 3)), DimensionMismatch);
}

TEST(RunBox, ClosedForms) {
  for (std::size_t k = 1; k <= 8; ++k) {
    for (int i = 0; i <= 32; ++i) {
      const double phi = kPi * i / 16;
      EXPECT_LT(max_abs_diff(run_box(k, phi).amplitudes(),
                             ququart::testing::closed_form_output(k, phi)),
                kArithmeticTol)
          << "f" << k << " phi = " << phi;
    }
  }
  EXPECT_EQ(max_abs_diff(run_box(1, 1.3).amplitudes(), prepare_input(1.3).amplitudes()),
            0.0);
}

TEST(RunBox, PolarizationStaysAntidiagonal) {
  // Overlap with (|H> + |V>)/sqrt2 on each path must vanish.
  for (std::size_t k = 1; k <= 8; ++k) {
    for (int i = 0; i < 40; ++i) {
      const StateVector s = run_box(k, 0.17 * i);
      EXPECT_LT(std::abs(s.amp(0) + s.amp(2)), kArithmeticTol);
      EXPECT_LT(std::abs(s.amp(1) + s.amp(3)), kArithmeticTol);
    }
  }
}

TEST(RunBox, ProbabilityConservedAndDecisionRule) {
  for (std::size_t k = 1; k <= 8; ++k) {
    const bool odd = parity(box(k)) == Parity::odd;
    for (int i = 0; i <= 64; ++i) {
      const auto p = detect_probabilities(run_box(k, 2 * kPi * i / 64));
      EXPECT_NEAR(p.d1 + p.d2, 1.0, kArithmeticTol);
    }
    for (int n = -2; n <= 2; ++n) {
      const auto green = detect_probabilities(run_box(k, (2 * n + 0.5) * kPi));
      EXPECT_NEAR(odd ? green.d1 : green.d2, 1.0, kArithmeticTol) << "f" << k;
      const auto blue = detect_probabilities(run_box(k, (2 * n + 1.5) * kPi));
      EXPECT_NEAR(odd ? blue.d2 : blue.d1, 1.0, kArithmeticTol) << "f" << k;
    }
  }
}

TEST(OpticalTable, FullInterferometerMatchesDetectionRule) {
  // PZT on r, black box, then BS2: port l -> D1, port r -> D2.
  const StateVector flat = prepare_input(0.0);
  for (std::size_t k = 1; k <= 8; ++k) {
    const double phi = 0.3 + 0.4 * static_cast<double>(k);
    OpticalTable table;
    table.add(PhaseShifter{phi});
    const OpticalTable black_box = black_box_table(config_for(k));
    for (const auto& e : black_box.elements()) table.add(e);
    table.add(BeamSplitter{});
    const Eigen::VectorXd p = apply(table.transfer(), flat).probabilities();
    const auto expected = detect_probabilities(run_box(k, phi));
    EXPECT_NEAR(p(0) + p(2), expected.d1, kArithmeticTol);
    EXPECT_NEAR(p(1) + p(3), expected.d2, kArithmeticTol);
  }
  OpticalTable bad;
  bad.add(Polarizer{0.0});
  EXPECT_THROW(bad.transfer(), NonUnitaryElement);
}

}  // namespace
}  // namespace ququart::optics
