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

// Monte Carlo sampling of (letter, outcome) pairs of a Gaussian ensemble
// measured by a Gaussian observable, and the plug-in information estimate.
//
// Samples are drawn in fixed-size shards; shard k uses a generator seeded by
// derive_seed(seed, k), so output depends only on (inputs, seed, n).

#pragma once

#include <cstdint>
#include <vector>

#include "gaussmax/gaussian.hpp"

namespace gaussmax {

struct SamplePair {
  CVector input;    // letter z
  CVector outcome;  // measurement result w
};

struct MCEstimate {
  double value = 0.0;      // nats
  double std_error = 0.0;  // sample standard deviation / sqrt(n)
  std::uint64_t n_samples = 0;
  std::uint64_t seed = 0;
};

inline constexpr std::size_t kShardSize = 8192;

/// Seed of shard `shard` (splitmix64 mixing of the pair).
std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t shard);

/// z ~ complex Gaussian with covariance Sigma; given z, K w ~ complex Gaussian
/// with mean z and covariance N_e + N_m + I. Sigma may be degenerate.
std::vector<SamplePair> sample_pairs(const GaussianEnsemble& ens, const GaussianObservable& obs, std::uint64_t n,
                                     std::uint64_t seed);

/// Mean of log[p(w | z) / p(w)] over sample_pairs, with the analytic
/// mu-densities of the conditional and marginal outcome laws. n >= 100.
MCEstimate mi_monte_carlo(const GaussianEnsemble& ens, const GaussianObservable& obs, std::uint64_t n,
                          std::uint64_t seed);

}  // namespace gaussmax
