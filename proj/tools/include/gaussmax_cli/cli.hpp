// Copyright 2026 The gaussmax Authors
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

// The gaussmax command-line driver: one command per invocation, JSON in,
// JSON result document out.
//
// Exit codes:
//   0  success
//   2  invalid or unsupported input, malformed JSON, bad arguments
//   3  numerical failure
//   4  a verification suite failed

#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

namespace gaussmax::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitInvalid = 2;
inline constexpr int kExitNumerical = 3;
inline constexpr int kExitVerifyFailed = 4;

enum class Units { kNats, kBits };

struct RunConfig {
  std::string command;
  /// File path, or inline JSON when the text starts with '{'.
  std::string input;
  /// Result document destination; empty writes to the output stream.
  std::string output_path;
  Units units = Units::kNats;
  std::optional<std::uint64_t> seed;
  std::optional<std::uint64_t> n;
  /// Suite name for `verify`; "all" runs every suite.
  std::string suite = "all";
  /// Pair CSV destination for `sample`.
  std::string csv_path;
  /// Check-name -> threshold replacements for `verify`.
  std::map<std::string, double> tolerances;
};

struct RunResult {
  int exit_code = kExitOk;
  /// Result document; null when the command failed before producing one.
  nlohmann::json document;
  std::string error;
};

const std::vector<std::string>& command_names();

/// Dispatches `config.command`. Never throws; errors map to exit codes.
RunResult run(const RunConfig& config);

/// Parses argv, runs, writes the document (or error message) and returns the
/// exit code.
int main_entry(int argc, char** argv, std::ostream& out, std::ostream& err);

}  // namespace gaussmax::cli
