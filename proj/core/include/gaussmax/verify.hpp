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

// Verification suites: randomized and closed-form checks of the analytic
// layer against the Fock-space oracle, Monte Carlo estimates and brute-force
// searches. Each suite returns one CheckResult per quantity it bounds.

#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

namespace gaussmax {

struct CheckResult {
  std::string name;
  double residual = 0.0;
  double threshold = 0.0;
  bool pass = false;
  std::string detail;
};

struct SuiteOptions {
  std::uint64_t seed = 7;
  /// Instance count for randomized suites; 0 keeps each suite's default.
  int n = 0;
  /// Replaces the threshold of the named checks.
  std::map<std::string, double> thresholds;
};

struct SuiteReport {
  std::string suite;
  std::vector<CheckResult> checks;
  double seconds = 0.0;
  bool pass() const;
};

struct SuiteInfo {
  std::string name;
  std::string summary;
};

/// Registered suites in run order.
const std::vector<SuiteInfo>& suite_catalog();

/// Canonical suite name for `name` (aliases included); raises InvalidInput
/// listing the valid names otherwise.
std::string resolve_suite(const std::string& name);

SuiteReport run_suite(const std::string& name, const SuiteOptions& options = {});

}  // namespace gaussmax
