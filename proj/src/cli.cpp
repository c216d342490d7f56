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

#include "ququart/cli.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <ostream>
#include <sstream>

#include <fmt/format.h>
#include <fmt/ostream.h>

#include "CLI11.hpp"
#include "json.hpp"
#include "ququart/errors.hpp"
#include "ququart/optics.hpp"
#include "ququart/permutation.hpp"

namespace ququart::cli {
namespace {

using nlohmann::json;

constexpr double kPi = std::numbers::pi;
// Fringe markers: phi = (2N + 1/2) pi prepares psi_2, (2N + 3/2) pi psi_4.
constexpr double kPsi2Phase = 0.5 * kPi;
constexpr double kPsi4Phase = 1.5 * kPi;

std::vector<std::size_t> selected_boxes(const std::optional<std::size_t>& box) {
  if (box) return {*box};
  std::vector<std::size_t> all(kBoxCount);
  for (std::size_t k = 0; k < kBoxCount; ++k) all[k] = k + 1;
  return all;
}

// Writes `text` to `path`; false if the file cannot be written.
bool write_file(const std::string& path, const std::string& text) {
  std::ofstream f(path, std::ios::binary | std::ios::trunc);
  if (!f) return false;
  f << text;
  f.flush();
  return static_cast<bool>(f);
}

// With several boxes, CSV output goes to one file per box:
// out.csv -> out_f1.csv ... out_f8.csv.
std::string per_box_path(const std::string& path, std::size_t k) {
  const std::filesystem::path p(path);
  std::filesystem::path q = p.parent_path() /
                            (p.stem().string() + "_f" + std::to_string(k) +
                             p.extension().string());
  return q.string();
}

struct VerifyRow {
  std::size_t box;
  optics::BlackBoxConfig config;
  double deviation;
  Complex phase;
  Parity parity;
  bool pass;
};

int cmd_verify(std::optional<std::size_t> fault_box, std::ostream& out,
               std::ostream& err) {
  std::vector<VerifyRow> rows;
  for (std::size_t k = 1; k <= kBoxCount; ++k) {
    optics::BlackBoxConfig config = optics::config_for(k);
    if (fault_box == k) config.dove_prism = !config.dove_prism;
    const UnitaryMatrix optical = optics::black_box_unitary(config);
    const UnitaryMatrix ideal = permutation_matrix(box(k));
    const PhaseMatch match =
        equal_up_to_global_phase(optical, ideal, kArithmeticTol);
    const double deviation =
        max_abs_diff(optical.matrix(), match.phase * ideal.matrix());
    rows.push_back({k, config, deviation, match.phase, parity(box(k)),
                    match.equal && deviation < kArithmeticTol});
  }

  fmt::print(out, "{:<4} {:<26} {:>10} {:>16} {:<6} {}\n", "box", "config",
             "max_dev", "global_phase", "parity", "status");
  for (const auto& r : rows) {
    fmt::print(out, "f{:<3} {:<26} {:>10.3e} {:>16} {:<6} {}\n", r.box,
               optics::to_string(r.config), r.deviation,
               fmt::format("{:+.3f}{:+.3f}i", r.phase.real(), r.phase.imag()),
               to_string(r.parity), r.pass ? "ok" : "FAIL");
  }
  const auto passed = std::count_if(rows.begin(), rows.end(),
                                    [](const VerifyRow& r) { return r.pass; });
  fmt::print(out, "{}/{} boxes match U_k up to global phase (tol {:.0e})\n",
             passed, rows.size(), kArithmeticTol);
  if (passed == static_cast<long>(rows.size())) return kSuccess;
  for (const auto& r : rows) {
    if (!r.pass) {
      fmt::print(err, "verification failed for f{}: deviation {:.3e}\n", r.box,
                 r.deviation);
    }
  }
  return kVerificationFailure;
}

int cmd_parity(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  json records = json::array();
  std::ostringstream csv;
  csv << "box,parity,measured_index,queries\n";
  std::size_t even = 0;
  std::size_t total_queries = 0;
  for (std::size_t k : selected_boxes(cfg.box)) {
    OracleHandle oracle(box(k));
    const auto result = quantum_parity_single_query(oracle, cfg.probe);
    fmt::print(out, "f{}: {}, measured |{}>, queries: {}\n", k,
               to_string(result.parity), result.measured_index,
               oracle.query_count());
    even += result.parity == Parity::even ? 1 : 0;
    total_queries += oracle.query_count();
    records.push_back({{"box", k},
                       {"parity", to_string(result.parity)},
                       {"measured_index", result.measured_index},
                       {"queries", oracle.query_count()}});
    csv << k << ',' << to_string(result.parity) << ','
        << result.measured_index << ',' << oracle.query_count() << '\n';
  }
  if (!cfg.box) {
    fmt::print(out, "all: {} even, {} odd, {} queries for {} boxes\n", even,
               kBoxCount - even, total_queries, kBoxCount);
  }
  if (!cfg.output_path.empty()) {
    const std::string text = cfg.format == OutputFormat::json
                                 ? (cfg.box ? records[0] : records).dump(2) + "\n"
                                 : csv.str();
    if (!write_file(cfg.output_path, text)) {
      fmt::print(err, "cannot write {}\n", cfg.output_path);
      return kIoError;
    }
  }
  return kSuccess;
}

int cmd_classical(const RunConfig& cfg, std::ostream& out) {
  for (std::size_t k : selected_boxes(cfg.box)) {
    OracleHandle oracle(box(k));
    const auto result = classical_parity(oracle);
    const auto [x, y] = result.observations[0];
    fmt::print(out, "f{}: queries ({}->{}, {}->{}), parity {}, queries: {}", k,
               x, y, result.observations[1].first,
               result.observations[1].second, to_string(result.parity),
               result.queries);
    if (const auto w = single_query_ambiguity_witness(x, y)) {
      fmt::print(out, "; one-query witness for ({},{}): even f{} / odd f{}", x,
                 y, *box_index(w->even), *box_index(w->odd));
    }
    fmt::print(out, "\n");
  }
  return kSuccess;
}

json contrast_json(const stats::FringeScan& scan, double phase) {
  try {
    const auto c = stats::contrast_at(scan, phase);
    return {{"value", c.eta}, {"stderr", c.std_error},
            {"phase", c.phase_at_eval}, {"points", c.points}};
  } catch (const Error&) {
    return nullptr;
  }
}

std::string contrast_text(const json& c) {
  if (c.is_null()) return "n/a";
  return fmt::format("{:.6f} +/- {:.6f}", c["value"].get<double>(),
                     c["stderr"].get<double>());
}

json fit_json(const stats::FringeScan& scan, stats::Detector d) {
  try {
    const auto f = stats::fit_fringe(scan, d);
    return {{"amplitude", f.amplitude}, {"phase", f.phase},
            {"offset", f.offset},       {"residual", f.residual},
            {"visibility", f.visibility()}};
  } catch (const Error&) {
    return nullptr;
  }
}

int cmd_scan(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  if (!cfg.source.is_weak()) {
    fmt::print(err,
               "warning: mean photon number {:.3g} per pulse exceeds {} "
               "(not a single-photon source)\n",
               cfg.source.mean_photons_per_pulse(), stats::kWeakSourceLimit);
  }
  const auto mode =
      cfg.expected_value ? stats::CountMode::expected : stats::CountMode::sampled;
  json records = json::array();
  std::vector<std::pair<std::size_t, std::string>> csv_files;
  double eta_sum = 0.0;
  std::size_t eta_n = 0;

  fmt::print(out, "{:<4} {:<6} {:>10} {:>10} {:>26} {:>26}\n", "box", "parity",
             "vis_d1", "vis_d2", "eta(psi2 marker)", "eta(psi4 marker)");
  for (std::size_t k : selected_boxes(cfg.box)) {
    const auto scan = stats::scan_fringe(k, cfg.range, cfg.source, cfg.noise,
                                         box_seed(cfg.seed, k), mode);
    const json fit1 = fit_json(scan, stats::Detector::d1);
    const json fit2 = fit_json(scan, stats::Detector::d2);
    const json eta2 = contrast_json(scan, kPsi2Phase);
    const json eta4 = contrast_json(scan, kPsi4Phase);
    const auto vis = [](const json& f) {
      return f.is_null() ? std::string("n/a")
                         : fmt::format("{:.6f}", f["visibility"].get<double>());
    };
    fmt::print(out, "f{:<3} {:<6} {:>10} {:>10} {:>26} {:>26}\n", k,
               to_string(parity(box(k))), vis(fit1), vis(fit2),
               contrast_text(eta2), contrast_text(eta4));
    for (const json* e : {&eta2, &eta4}) {
      if (!e->is_null()) {
        eta_sum += (*e)["value"].get<double>();
        ++eta_n;
      }
    }

    json steps = json::array();
    for (const auto& s : scan.steps) {
      steps.push_back({{"voltage", s.voltage},
                       {"phase", s.phase},
                       {"counts_d1", s.counts_d1},
                       {"counts_d2", s.counts_d2}});
    }
    records.push_back(
        {{"box", k},
         {"parity", to_string(parity(box(k)))},
         {"seed", scan.seed},
         {"mode", cfg.expected_value ? "expected" : "sampled"},
         {"volts_per_2pi", cfg.range.volts_per_2pi},
         {"visibility_fit", {{"d1", fit1}, {"d2", fit2}}},
         {"eta", {{"psi2", eta2}, {"psi4", eta4}}},
         {"steps", std::move(steps)}});
    std::ostringstream csv;
    stats::write_csv(scan, csv);
    csv_files.emplace_back(k, csv.str());
  }
  if (!cfg.box && eta_n > 0) {
    fmt::print(out, "all: mean eta at markers {:.6f} over {} readings\n",
               eta_sum / static_cast<double>(eta_n), eta_n);
  }

  if (cfg.output_path.empty()) return kSuccess;
  bool ok = true;
  if (cfg.format == OutputFormat::json) {
    ok = write_file(cfg.output_path,
                    (cfg.box ? records[0] : records).dump(2) + "\n");
  } else if (cfg.box) {
    ok = write_file(cfg.output_path, csv_files.front().second);
  } else {
    for (const auto& [k, text] : csv_files) {
      ok = ok && write_file(per_box_path(cfg.output_path, k), text);
    }
  }
  if (!ok) {
    fmt::print(err, "cannot write {}\n", cfg.output_path);
    return kIoError;
  }
  return kSuccess;
}

int cmd_fit(const std::string& input, double volts_per_2pi, bool calibrate,
            std::ostream& out, std::ostream& err) {
  std::ifstream f(input);
  if (!f) {
    fmt::print(err, "cannot read {}\n", input);
    return kIoError;
  }
  std::vector<stats::FringeStep> steps;
  try {
    steps = stats::read_csv(f);
  } catch (const ScanError& e) {
    fmt::print(err, "cannot parse {}: {}\n", input, e.what());
    return kIoError;
  }
  double period = volts_per_2pi;
  if (calibrate) {
    period = stats::calibrate_volts_per_2pi(steps, stats::Detector::d2);
    fmt::print(out, "calibrated volts_per_2pi: {:.9g}\n", period);
  }
  fmt::print(out, "{:<8} {:>14} {:>10} {:>14} {:>12} {:>10}\n", "detector",
             "amplitude", "phase", "offset", "residual", "visibility");
  for (auto d : {stats::Detector::d1, stats::Detector::d2}) {
    const auto fit = stats::fit_fringe(steps, period, d);
    fmt::print(out, "{:<8} {:>14.6g} {:>10.6f} {:>14.6g} {:>12.6g} {:>10.6f}\n",
               d == stats::Detector::d1 ? "D1" : "D2", fit.amplitude, fit.phase,
               fit.offset, fit.residual, fit.visibility());
  }
  return kSuccess;
}

void add_box_option(CLI::App* cmd, std::string& box_text) {
  cmd->add_option("--box", box_text, "Box 1..8 (or f1..f8), or 'all'")
      ->capture_default_str();
}

void add_output_options(CLI::App* cmd, RunConfig& cfg, std::string& format) {
  cmd->add_option("--out", cfg.output_path, "Machine-readable output file");
  cmd->add_option("--format", format, "csv or json")
      ->check(CLI::IsMember({"csv", "json"}))
      ->capture_default_str();
}

}  // namespace

std::optional<std::size_t> parse_box(const std::string& text) {
  if (text == "all") return std::nullopt;
  std::string digits = text;
  if (!digits.empty() && (digits.front() == 'f' || digits.front() == 'F')) {
    digits.erase(0, 1);
  }
  if (digits.size() == 1 && digits[0] >= '1' && digits[0] <= '8') {
    return static_cast<std::size_t>(digits[0] - '0');
  }
  throw IndexOutOfRange("invalid box '" + text + "': expected 1..8 or all");
}

std::uint64_t box_seed(std::uint64_t run_seed, std::size_t k) {
  return stats::derive_seed(run_seed, k, 0x626f78);
}

int run(const std::vector<std::string>& args, std::ostream& out,
        std::ostream& err) {
  CLI::App app{"Single-photon ququart permutation-parity simulator",
               "ququart-sim"};
  app.require_subcommand(1);

  RunConfig cfg;
  std::string box_text = "all";
  std::string format = "csv";
  std::string fault_box;
  std::string fit_input;
  bool calibrate = false;

  auto* verify = app.add_subcommand(
      "verify", "Check all eight optical black boxes against U_k");
  verify->add_option("--inject-fault", fault_box)->group("");

  auto* parity_cmd = app.add_subcommand(
      "parity", "Run the one-query quantum parity algorithm");
  add_box_option(parity_cmd, box_text);
  parity_cmd->add_option("--probe", cfg.probe, "Fourier probe state, 2 or 4")
      ->capture_default_str();
  add_output_options(parity_cmd, cfg, format);

  auto* classical = app.add_subcommand(
      "classical", "Run the two-query classical baseline");
  add_box_option(classical, box_text);

  auto* scan = app.add_subcommand("scan", "Simulate PZT fringe scans");
  add_box_option(scan, box_text);
  scan->add_option("--visibility", cfg.noise.visibility)->capture_default_str();
  scan->add_option("--phase-offset", cfg.noise.phase_offset, "Radians")
      ->capture_default_str();
  scan->add_option("--dark-rate", cfg.noise.dark_rate,
                   "Expected dark counts per detector per step")
      ->capture_default_str();
  scan->add_option("--alpha", cfg.source.alpha)->capture_default_str();
  scan->add_option("--pulses", cfg.source.pulses_per_step, "Pulses per step")
      ->capture_default_str();
  scan->add_option("--efficiency", cfg.source.detector_efficiency)
      ->capture_default_str();
  scan->add_option("--v-start", cfg.range.v_start)->capture_default_str();
  scan->add_option("--v-end", cfg.range.v_end)->capture_default_str();
  scan->add_option("--v-step", cfg.range.v_step)->capture_default_str();
  scan->add_option("--volts-per-2pi", cfg.range.volts_per_2pi)
      ->capture_default_str();
  scan->add_option("--seed", cfg.seed)->capture_default_str();
  scan->add_flag("--expected-value", cfg.expected_value,
                 "Write expected counts instead of Poisson samples");
  add_output_options(scan, cfg, format);

  auto* fit = app.add_subcommand("fit", "Fit sinusoids to a scan CSV");
  fit->add_option("--in", fit_input, "Scan CSV")->required();
  fit->add_option("--volts-per-2pi", cfg.range.volts_per_2pi)
      ->capture_default_str();
  fit->add_flag("--calibrate", calibrate,
                "Estimate volts-per-2pi from the data first");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(std::move(reversed));
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kSuccess : kUsageError;
  }

  try {
    cfg.format = format == "json" ? OutputFormat::json : OutputFormat::csv;
    if (*verify) {
      std::optional<std::size_t> fault;
      if (!fault_box.empty()) fault = parse_box(fault_box);
      return cmd_verify(fault, out, err);
    }
    if (*fit) return cmd_fit(fit_input, cfg.range.volts_per_2pi, calibrate, out, err);
    cfg.box = parse_box(box_text);
    if (*parity_cmd) {
      if (cfg.probe != 2 && cfg.probe != 4) {
        throw UnsupportedProbe("--probe must be 2 or 4");
      }
      return cmd_parity(cfg, out, err);
    }
    if (*classical) return cmd_classical(cfg, out);
    if (*scan) {
      cfg.source.validate();
      cfg.noise.validate();
      cfg.range.validate();
      return cmd_scan(cfg, out, err);
    }
  } catch (const IndexOutOfRange& e) {
    fmt::print(err, "error: {}\n", e.what());
    return kUsageError;
  } catch (const UnsupportedProbe& e) {
    fmt::print(err, "error: {}\n", e.what());
    return kUsageError;
  } catch (const InvariantViolation& e) {
    fmt::print(err, "error: {}\n", e.what());
    return kUsageError;
  } catch (const ScanError& e) {
    fmt::print(err, "error: {}\n", e.what());
    return kUsageError;
  } catch (const Error& e) {
    fmt::print(err, "error: {}\n", e.what());
    return kVerificationFailure;
  }
  return kUsageError;
}

}  // namespace ququart::cli
