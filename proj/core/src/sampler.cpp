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

#include "gaussmax/sampler.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include "gaussmax/errors.hpp"

namespace gaussmax {

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

// Standard complex normal: E g g^* = I, real and imaginary parts N(0, 1/2).
CVector standard_complex_normal(std::mt19937_64& rng, int dim) {
  std::normal_distribution<double> normal(0.0, std::sqrt(0.5));
  CVector g(dim);
  for (int k = 0; k < dim; ++k) {
    const double re = normal(rng);
    const double im = normal(rng);
    g(k) = cplx(re, im);
  }
  return g;
}

}  // namespace

std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t shard) {
  return splitmix64(splitmix64(seed) ^ splitmix64(shard + 0x632be59bd9b4e019ULL));
}

std::vector<SamplePair> sample_pairs(const GaussianEnsemble& ens, const GaussianObservable& obs, std::uint64_t n,
                                     std::uint64_t seed) {
  require_same_dim(ens.dim(), obs.dim(), "sample_pairs");
  if (n < 1) throw InvalidInput("sample_pairs: n must be at least 1");
  const int s = ens.dim();
  // Hermitian square roots rather than Cholesky so that a degenerate prior
  // (Sigma = 0 included) samples exactly on its support.
  const CMatrix prior_root = sqrtm(ens.prior_cov()).matrix();
  const HermitianMatrix conditional = ens.state_noise() + obs.noise() + HermitianMatrix::identity(s);
  const CMatrix noise_root = sqrtm(conditional).matrix();
  const Eigen::PartialPivLU<CMatrix> k_lu(obs.rescale());

  std::vector<SamplePair> out;
  out.reserve(static_cast<std::size_t>(n));
  for (std::uint64_t shard = 0; shard * kShardSize < n; ++shard) {
    std::mt19937_64 rng(derive_seed(seed, shard));
    const std::uint64_t count = std::min<std::uint64_t>(kShardSize, n - shard * kShardSize);
    for (std::uint64_t i = 0; i < count; ++i) {
      SamplePair pair;
      pair.input = prior_root * standard_complex_normal(rng, s);
      const CVector y = pair.input + noise_root * standard_complex_normal(rng, s);
      pair.outcome = k_lu.solve(y);
      out.push_back(std::move(pair));
    }
  }
  return out;
}

MCEstimate mi_monte_carlo(const GaussianEnsemble& ens, const GaussianObservable& obs, std::uint64_t n,
                          std::uint64_t seed) {
  if (n < 100) throw InvalidInput("mi_monte_carlo: n must be at least 100");
  const std::vector<SamplePair> pairs = sample_pairs(ens, obs, n, seed);
  const GaussianState marginal_state = ensemble_average(ens);
  // Welford accumulation of the log-ratio.
  double mean = 0.0;
  double m2 = 0.0;
  std::uint64_t count = 0;
  for (const SamplePair& pair : pairs) {
    const GaussianState letter(ens.state_noise(), pair.input);
    const double x =
        log_output_density(letter, obs, pair.outcome) - log_output_density(marginal_state, obs, pair.outcome);
    ++count;
    const double delta = x - mean;
    mean += delta / static_cast<double>(count);
    m2 += delta * (x - mean);
  }
  MCEstimate out;
  out.value = mean;
  out.n_samples = n;
  out.seed = seed;
  out.std_error = std::sqrt(m2 / static_cast<double>(count - 1) / static_cast<double>(count));
  return out;
}

}  // namespace gaussmax
