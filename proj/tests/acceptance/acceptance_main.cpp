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

// Acceptance runner: one line per criterion, each backed by a verification
// suite at its default instance counts. Exits nonzero if any criterion fails.

#include <cstdio>
#include <exception>
#include <string>
#include <vector>

#include "gaussmax/verify.hpp"

namespace {

struct Criterion {
  const char* label;
  const char* suite;
};

constexpr Criterion kCriteria[] = {
    {"1  determinant identity on 4000 random pairs", "determinant-identity"},
    {"2  scalar dual values", "dual-scalar"},
    {"3  accessible information vs dual chi-capacity", "capacity-consistency"},
    {"4  invariance under rescaling K", "k-invariance"},
    {"5  Fock output law vs analytic density", "fock-density"},
    {"6  inverse square root on coherent states", "inv-sqrt"},
    {"7  finite ensemble/observable duality", "finite-duality"},
    {"8  water-filling", "waterfill"},
    {"9  Monte Carlo mutual information", "monte-carlo"},
    {"10 maximum-entropy bound", "max-entropy"},
    {"11 Parseval identity", "parseval"},
    {"12 Weyl relation", "weyl"},
    {"+  Gaussian dual vs discretized finite dual", "dual-closure"},
};

}  // namespace

int main() {
  int failures = 0;
  for (const Criterion& c : kCriteria) {
    gaussmax::SuiteReport report;
    std::string error;
    try {
      report = gaussmax::run_suite(c.suite);
    } catch (const std::exception& e) {
      error = e.what();
    }
    const bool pass = error.empty() && report.pass();
    if (!pass) ++failures;
    std::printf("[%s] %-48s (%s, %.2f s)\n", pass ? "PASS" : "FAIL", c.label, c.suite, report.seconds);
    if (!error.empty()) std::printf("       error: %s\n", error.c_str());
    for (const gaussmax::CheckResult& check : report.checks) {
      std::printf("       %-4s %-40s %.3e <= %.3e  %s\n", check.pass ? "ok" : "FAIL", check.name.c_str(),
                  check.residual, check.threshold, check.detail.c_str());
    }
  }
  std::printf("%d of %zu criteria failed\n", failures, std::size(kCriteria));
  return failures == 0 ? 0 : 1;
}
