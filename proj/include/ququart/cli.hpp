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

// Command-line front end. Human-readable tables go to `out`, diagnostics to
// `err`, and machine-readable output only to the file named by --out.
//
// Exit codes are a stable contract.

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "ququart/photon_stats.hpp"

namespace ququart::cli {

enum ExitCode : int {
  kSuccess = 0,
  kVerificationFailure = 1,
  kUsageError = 2,
  kIoError = 3,
};

enum class OutputFormat { csv, json };

struct RunConfig {
  /// Box id 1..8, or nullopt for all eight.
  std::optional<std::size_t> box;
  std::size_t probe = 2;
  stats::NoiseParams noise;
  stats::SourceParams source;
  stats::ScanRange range;
  std::uint64_t seed = 1;
  std::string output_path;
  OutputFormat format = OutputFormat::csv;
  bool expected_value = false;
};

/// Parses "all", "3" or "f3". Returns nullopt for "all"; throws
/// IndexOutOfRange for anything else outside 1..8.
std::optional<std::size_t> parse_box(const std::string& text);

/// Seed used for box k's scan, derived from the run seed so that a single
/// box and the same box inside `--box all` produce identical data.
std::uint64_t box_seed(std::uint64_t run_seed, std::size_t k);

/// Runs one command. `args` excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out,
        std::ostream& err);

}  // namespace ququart::cli
