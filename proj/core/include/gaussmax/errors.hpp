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

#pragma once

#include <stdexcept>
#include <string>

namespace gaussmax {

/// Malformed or out-of-contract arguments (dimension mismatch, non-Hermitian,
/// non-PSD, singular rescaling, ...).
class InvalidInput : public std::invalid_argument {
 public:
  explicit InvalidInput(const std::string& what) : std::invalid_argument(what) {}
};

/// Inputs that are well-formed but outside the supported regime, e.g. a
/// degenerate covariance where the duality construction needs strict
/// positivity.
class UnsupportedInput : public std::invalid_argument {
 public:
  explicit UnsupportedInput(const std::string& what) : std::invalid_argument(what) {}
};

/// An iterative routine failed to meet its stopping criterion.
class NumericalFailure : public std::runtime_error {
 public:
  explicit NumericalFailure(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace gaussmax
