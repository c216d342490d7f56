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

// Photon-counting layer: an attenuated coherent source feeding the
// interferometer, a visibility/phase-offset envelope for imperfect optics,
// seeded Poisson detector counts along a PZT voltage scan, sinusoid fits of
// the resulting fringes, and the detector contrast ratio.

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <span>
#include <vector>

#include "ququart/optics.hpp"

namespace ququart::stats {

/// Mean photon number per pulse above which the source is no longer in the
/// single-photon regime.
inline constexpr double kWeakSourceLimit = 0.25;
/// Largest Poisson mean a single counting step may request.
inline constexpr double kMaxCountMean = 1e9;

struct SourceParams {
  /// Coherent amplitude; mean photons per pulse is alpha^2.
  double alpha = 0.1;
  std::uint64_t pulses_per_step = 1'000'000;
  double detector_efficiency = 1.0;

  double mean_photons_per_pulse() const { return alpha * alpha; }
  bool is_weak() const { return mean_photons_per_pulse() <= kWeakSourceLimit; }
  /// Expected detected photons per step summed over both detectors.
  double expected_photons_per_step() const;
  /// Throws InvariantViolation on a negative/non-finite alpha, zero pulses,
  /// or an efficiency outside (0, 1].
  void validate() const;
};

struct NoiseParams {
  double visibility = 1.0;
  /// Systematic phase shift of this box's fringe, radians.
  double phase_offset = 0.0;
  /// Expected dark counts per detector per step.
  double dark_rate = 0.0;

  void validate() const;
};

/// p = 1/2 + V (p_ideal(k, phi + offset) - 1/2) for each detector.
optics::DetectionProbabilities noisy_probabilities(std::size_t k, double phi,
                                                   const NoiseParams& noise);

/// Poisson mean pulses * alpha^2 * efficiency * p + dark_rate.
double expected_counts(double p, const SourceParams& src, double dark_rate = 0.0);

/// One Poisson draw with mean expected_counts(p, src, dark_rate), fully
/// determined by `seed`. Throws CountOverflow when the mean exceeds 1e9.
std::uint64_t sample_counts(double p, const SourceParams& src,
                            std::uint64_t seed, double dark_rate = 0.0);

/// Independent sub-seed for (step, stream) of a scan; the same triple always
/// yields the same value, whatever order steps are evaluated in.
std::uint64_t derive_seed(std::uint64_t scan_seed, std::uint64_t step,
                          std::uint64_t stream);

/// PZT voltage sweep with linear voltage-to-phase calibration:
///   phase(v) = phase_at_start + 2 pi (v - v_start) / volts_per_2pi.
struct ScanRange {
  double v_start = 0.0;
  double v_end = 19.5;
  double v_step = 0.5;
  double volts_per_2pi = 10.0;
  double phase_at_start = 0.0;

  /// Throws ScanError for an empty range or non-positive step/calibration.
  void validate() const;
  std::size_t step_count() const;
  double voltage(std::size_t i) const { return v_start + static_cast<double>(i) * v_step; }
  double phase_at(double v) const;
  double phase_step() const;
};

enum class CountMode {
  sampled,
  /// Expected counts instead of Poisson draws (the infinite-statistics limit).
  expected,
};

struct FringeStep {
  double voltage;
  double phase;
  /// Integral in sampled mode; the Poisson mean in expected mode.
  double counts_d1;
  double counts_d2;
};

struct FringeScan {
  std::size_t box = 1;
  std::uint64_t seed = 0;
  ScanRange range;
  CountMode mode = CountMode::sampled;
  std::vector<FringeStep> steps;
};

FringeScan scan_fringe(std::size_t k, const ScanRange& range,
                       const SourceParams& src, const NoiseParams& noise,
                       std::uint64_t seed, CountMode mode = CountMode::sampled);

/// Header `voltage,phase,counts_d1,counts_d2`, one row per step, every value
/// printed with 9 significant digits, newline-terminated.
void write_csv(const FringeScan& scan, std::ostream& out);
/// Parses what write_csv produces. Throws ScanError on malformed input.
std::vector<FringeStep> read_csv(std::istream& in);

/// |c1 - c2| / (c1 + c2). Throws UndefinedContrast when both are zero and
/// InvariantViolation for negative counts.
double contrast_ratio(double counts_d1, double counts_d2);

struct ContrastReport {
  double eta;
  /// Poisson standard error of eta, 2 sqrt(c1 c2 / (c1 + c2)^3).
  double std_error;
  double phase_at_eval;
  /// Number of scan steps pooled.
  std::size_t points;
};

/// Indices of the steps closest to target + 2 pi N, one per period reached
/// by the scan (within half a phase step).
std::vector<std::size_t> marked_steps(const FringeScan& scan, double target_phase);

/// Contrast of the counts pooled over marked_steps(scan, target_phase).
/// Throws ScanError if the scan never reaches the target phase.
ContrastReport contrast_at(const FringeScan& scan, double target_phase);

enum class Detector { d1, d2 };

/// c(v) = offset + amplitude sin(2 pi v / volts_per_2pi + phase).
struct FringeFit {
  double amplitude;
  double phase;
  double offset;
  /// RMS of the fit residuals.
  double residual;

  double visibility() const { return amplitude / offset; }
};

/// Linear least squares in (sin, cos, 1). Throws FitError with fewer than
/// four steps or a rank-deficient design (all phases equal mod pi).
FringeFit fit_fringe(std::span<const FringeStep> steps, double volts_per_2pi,
                     Detector detector);
FringeFit fit_fringe(const FringeScan& scan, Detector detector);

/// Recovers volts-per-2pi from a reference scan by minimizing the sinusoid
/// fit residual over the fringe period.
double calibrate_volts_per_2pi(std::span<const FringeStep> steps,
                               Detector detector = Detector::d2);

}  // namespace ququart::stats
