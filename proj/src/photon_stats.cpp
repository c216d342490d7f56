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

#include "ququart/photon_stats.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <istream>
#include <limits>
#include <numbers>
#include <ostream>
#include <random>
#include <sstream>
#include <string>

#include "ququart/errors.hpp"

namespace ququart::stats {
namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

double counts_of(const FringeStep& s, Detector d) {
  return d == Detector::d1 ? s.counts_d1 : s.counts_d2;
}

std::string format_g9(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.9g", v);
  return buf;
}

// Residual sum of squares of the linear sinusoid fit at a trial period.
double fit_rss(std::span<const FringeStep> steps, double period,
               Detector detector) {
  const FringeFit f = fit_fringe(steps, period, detector);
  return f.residual * f.residual * static_cast<double>(steps.size());
}

}  // namespace

double SourceParams::expected_photons_per_step() const {
  return static_cast<double>(pulses_per_step) * mean_photons_per_pulse() *
         detector_efficiency;
}

void SourceParams::validate() const {
  if (!std::isfinite(alpha) || alpha < 0.0) {
    throw InvariantViolation("source alpha must be finite and >= 0");
  }
  if (pulses_per_step == 0) {
    throw InvariantViolation("pulses per step must be positive");
  }
  if (!(detector_efficiency > 0.0 && detector_efficiency <= 1.0)) {
    throw InvariantViolation("detector efficiency must lie in (0, 1]");
  }
}

void NoiseParams::validate() const {
  if (!(visibility >= 0.0 && visibility <= 1.0)) {
    throw InvariantViolation("visibility must lie in [0, 1]");
  }
  if (!std::isfinite(phase_offset)) {
    throw InvariantViolation("phase offset must be finite");
  }
  if (!(dark_rate >= 0.0) || !std::isfinite(dark_rate)) {
    throw InvariantViolation("dark rate must be finite and >= 0");
  }
}

optics::DetectionProbabilities noisy_probabilities(std::size_t k, double phi,
                                                   const NoiseParams& noise) {
  noise.validate();
  const auto ideal = optics::detect_probabilities(
      optics::run_box(k, phi + noise.phase_offset));
  const double v = noise.visibility;
  return {0.5 + v * (ideal.d1 - 0.5), 0.5 + v * (ideal.d2 - 0.5)};
}

double expected_counts(double p, const SourceParams& src, double dark_rate) {
  if (!(p >= 0.0 && p <= 1.0)) {
    throw InvariantViolation("click probability " + std::to_string(p) +
                             " outside [0, 1]");
  }
  return src.expected_photons_per_step() * p + dark_rate;
}

std::uint64_t sample_counts(double p, const SourceParams& src,
                            std::uint64_t seed, double dark_rate) {
  src.validate();
  const double mean = expected_counts(p, src, dark_rate);
  if (mean > kMaxCountMean) {
    throw CountOverflow("Poisson mean " + std::to_string(mean) +
                        " exceeds 1e9 counts per step");
  }
  if (mean <= 0.0) return 0;
  std::mt19937_64 rng(seed);
  std::poisson_distribution<std::int64_t> poisson(mean);
  return static_cast<std::uint64_t>(poisson(rng));
}

std::uint64_t derive_seed(std::uint64_t scan_seed, std::uint64_t step,
                          std::uint64_t stream) {
  return splitmix64(splitmix64(scan_seed) ^ splitmix64(2 * step + stream + 1));
}

void ScanRange::validate() const {
  if (!std::isfinite(v_start) || !std::isfinite(v_end)) {
    throw ScanError("scan voltages must be finite");
  }
  if (!(v_step > 0.0)) throw ScanError("voltage step must be positive");
  if (!(volts_per_2pi > 0.0)) throw ScanError("volts per 2pi must be positive");
  if (v_end < v_start) {
    throw ScanError("empty voltage range [" + std::to_string(v_start) + ", " +
                    std::to_string(v_end) + "]");
  }
}

std::size_t ScanRange::step_count() const {
  validate();
  // Tolerates v_end landing on the grid up to rounding.
  return static_cast<std::size_t>(std::floor((v_end - v_start) / v_step + 1e-9)) + 1;
}

double ScanRange::phase_at(double v) const {
  return phase_at_start + kTwoPi * (v - v_start) / volts_per_2pi;
}

double ScanRange::phase_step() const { return kTwoPi * v_step / volts_per_2pi; }

FringeScan scan_fringe(std::size_t k, const ScanRange& range,
                       const SourceParams& src, const NoiseParams& noise,
                       std::uint64_t seed, CountMode mode) {
  src.validate();
  noise.validate();
  const std::size_t n = range.step_count();
  FringeScan scan{k, seed, range, mode, {}};
  scan.steps.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double v = range.voltage(i);
    const double phi = range.phase_at(v);
    const auto p = noisy_probabilities(k, phi, noise);
    FringeStep step{v, phi, 0.0, 0.0};
    if (mode == CountMode::expected) {
      step.counts_d1 = expected_counts(p.d1, src, noise.dark_rate);
      step.counts_d2 = expected_counts(p.d2, src, noise.dark_rate);
    } else {
      step.counts_d1 = static_cast<double>(
          sample_counts(p.d1, src, derive_seed(seed, i, 0), noise.dark_rate));
      step.counts_d2 = static_cast<double>(
          sample_counts(p.d2, src, derive_seed(seed, i, 1), noise.dark_rate));
    }
    scan.steps.push_back(step);
  }
  return scan;
}

void write_csv(const FringeScan& scan, std::ostream& out) {
  out << "voltage,phase,counts_d1,counts_d2\n";
  for (const auto& s : scan.steps) {
    out << format_g9(s.voltage) << ',' << format_g9(s.phase) << ','
        << format_g9(s.counts_d1) << ',' << format_g9(s.counts_d2) << '\n';
  }
}

std::vector<FringeStep> read_csv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line) || line != "voltage,phase,counts_d1,counts_d2") {
    throw ScanError("missing or unexpected CSV header");
  }
  std::vector<FringeStep> steps;
  std::size_t row = 1;
  while (std::getline(in, line)) {
    ++row;
    if (line.empty()) continue;
    std::istringstream fields(line);
    FringeStep s{};
    char c1 = 0, c2 = 0, c3 = 0;
    if (!(fields >> s.voltage >> c1 >> s.phase >> c2 >> s.counts_d1 >> c3 >>
          s.counts_d2) ||
        c1 != ',' || c2 != ',' || c3 != ',') {
      throw ScanError("malformed CSV row " + std::to_string(row));
    }
    steps.push_back(s);
  }
  return steps;
}

double contrast_ratio(double counts_d1, double counts_d2) {
  if (counts_d1 < 0.0 || counts_d2 < 0.0) {
    throw InvariantViolation("photon counts must be non-negative");
  }
  const double total = counts_d1 + counts_d2;
  if (total <= 0.0) {
    throw UndefinedContrast("contrast ratio undefined with zero total counts");
  }
  return std::abs(counts_d1 - counts_d2) / total;
}

std::vector<std::size_t> marked_steps(const FringeScan& scan,
                                      double target_phase) {
  const double half_step = 0.5 * scan.range.phase_step() * (1.0 + 1e-9);
  std::vector<std::size_t> picked;
  long current_period = std::numeric_limits<long>::min();
  double best_distance = 0.0;
  for (std::size_t i = 0; i < scan.steps.size(); ++i) {
    const double delta = scan.steps[i].phase - target_phase;
    const long period = std::lround(delta / kTwoPi);
    const double distance = std::abs(delta - kTwoPi * static_cast<double>(period));
    if (distance > half_step) continue;
    if (period != current_period) {
      picked.push_back(i);
      current_period = period;
      best_distance = distance;
    } else if (distance < best_distance) {
      picked.back() = i;
      best_distance = distance;
    }
  }
  return picked;
}

ContrastReport contrast_at(const FringeScan& scan, double target_phase) {
  const auto idx = marked_steps(scan, target_phase);
  if (idx.empty()) {
    throw ScanError("scan never reaches phase " + std::to_string(target_phase));
  }
  double c1 = 0.0;
  double c2 = 0.0;
  for (std::size_t i : idx) {
    c1 += scan.steps[i].counts_d1;
    c2 += scan.steps[i].counts_d2;
  }
  const double total = c1 + c2;
  const double eta = contrast_ratio(c1, c2);
  return {eta, 2.0 * std::sqrt(c1 * c2 / (total * total * total)),
          scan.steps[idx.front()].phase, idx.size()};
}

FringeFit fit_fringe(std::span<const FringeStep> steps, double volts_per_2pi,
                     Detector detector) {
  if (steps.size() < 4) {
    throw FitError("fringe fit needs at least 4 steps, got " +
                   std::to_string(steps.size()));
  }
  if (!(volts_per_2pi > 0.0)) throw FitError("volts per 2pi must be positive");
  const auto n = static_cast<Eigen::Index>(steps.size());
  Eigen::MatrixXd design(n, 3);
  Eigen::VectorXd y(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    const auto& s = steps[static_cast<std::size_t>(i)];
    const double theta = kTwoPi * s.voltage / volts_per_2pi;
    design(i, 0) = std::sin(theta);
    design(i, 1) = std::cos(theta);
    design(i, 2) = 1.0;
    y(i) = counts_of(s, detector);
  }
  Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(design);
  qr.setThreshold(1e-9);
  if (qr.rank() < 3) {
    throw FitError("degenerate fringe design: sampled phases do not separate "
                   "sine, cosine and offset");
  }
  const Eigen::Vector3d coef = qr.solve(y);
  const double a = coef(0);
  const double b = coef(1);
  const Eigen::VectorXd resid = y - design * coef;
  return {std::hypot(a, b), std::atan2(b, a), coef(2),
          std::sqrt(resid.squaredNorm() / static_cast<double>(n))};
}

FringeFit fit_fringe(const FringeScan& scan, Detector detector) {
  return fit_fringe(scan.steps, scan.range.volts_per_2pi, detector);
}

double calibrate_volts_per_2pi(std::span<const FringeStep> steps,
                               Detector detector) {
  if (steps.size() < 5) {
    throw FitError("calibration needs at least 5 steps");
  }
  const double span = steps.back().voltage - steps.front().voltage;
  const double dv = span / static_cast<double>(steps.size() - 1);
  if (!(span > 0.0)) throw FitError("calibration scan has zero voltage span");

  // Scan spatial frequency between one period over twice the span and just
  // below Nyquist, then refine the best bracket by golden section.
  const double f_lo = 1.0 / (2.0 * span);
  const double f_hi = 1.0 / (2.2 * dv);
  constexpr int kGrid = 4000;
  const double df = (f_hi - f_lo) / kGrid;
  const auto rss = [&](double f) {
    try {
      return fit_rss(steps, 1.0 / f, detector);
    } catch (const FitError&) {
      return std::numeric_limits<double>::infinity();
    }
  };
  int best = 0;
  double best_rss = std::numeric_limits<double>::infinity();
  for (int i = 0; i <= kGrid; ++i) {
    const double r = rss(f_lo + df * i);
    if (r < best_rss) {
      best_rss = r;
      best = i;
    }
  }
  double a = f_lo + df * std::max(best - 1, 0);
  double b = f_lo + df * std::min(best + 1, kGrid);
  const double g = (std::sqrt(5.0) - 1.0) / 2.0;
  double c = b - g * (b - a);
  double d = a + g * (b - a);
  double rc = rss(c);
  double rd = rss(d);
  for (int it = 0; it < 200 && (b - a) > 1e-15 * b; ++it) {
    if (rc < rd) {
      b = d;
      d = c;
      rd = rc;
      c = b - g * (b - a);
      rc = rss(c);
    } else {
      a = c;
      c = d;
      rc = rd;
      d = a + g * (b - a);
      rd = rss(d);
    }
  }
  return 2.0 / (a + b);
}

}  // namespace ququart::stats
