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

#include "gaussmax/gaussian.hpp"

#include <cmath>
#include <numbers>

#include "gtest/gtest.h"

#include "gaussmax/errors.hpp"
#include "instances.hpp"

using namespace gaussmax;

namespace {

HermitianMatrix sigma_2x2() {
  CMatrix m(2, 2);
  m << 2.0, 0.5, 0.5, 1.0;
  return HermitianMatrix(m);
}

HermitianMatrix noise_2x2() {
  CMatrix m(2, 2);
  m << cplx(0.3, 0.0), cplx(0.0, 0.1), cplx(0.0, -0.1), cplx(0.5, 0.0);
  return HermitianMatrix(m);
}

}  // namespace

TEST(gaussian_state, rejects_mismatched_mean_and_negative_covariance) {
  EXPECT_THROW(GaussianState(HermitianMatrix::identity(2), CVector::Zero(3)), InvalidInput);
  EXPECT_THROW(GaussianState(HermitianMatrix::diagonal({1.0, -0.1})), InvalidInput);
  EXPECT_NO_THROW(GaussianState(HermitianMatrix::zero(2)));
}

TEST(gaussian_observable, rejects_singular_rescale) {
  EXPECT_THROW(GaussianObservable(CMatrix::Zero(2, 2), HermitianMatrix::zero(2)), InvalidInput);
  EXPECT_THROW(GaussianObservable(CMatrix::Identity(3, 3), HermitianMatrix::zero(2)), InvalidInput);
  const GaussianObservable het = GaussianObservable::heterodyne(3);
  EXPECT_EQ(het.dim(), 3);
  EXPECT_DOUBLE_EQ(het.log_abs_det_rescale(), 0.0);
}

TEST(char_fn, vacuum_and_coherent_values) {
  const GaussianState vacuum(HermitianMatrix::zero(1));
  CVector w(1);
  w << cplx(0.6, -0.8);
  EXPECT_NEAR(std::abs(char_fn(vacuum, w) - std::exp(-0.5)), 0.0, 1e-15);

  CVector z(1);
  z << cplx(0.3, 0.2);
  const GaussianState coherent(HermitianMatrix::zero(1), z);
  const cplx phase(0.0, 2.0 * (std::conj(z(0)) * w(0)).imag());
  EXPECT_NEAR(std::abs(char_fn(coherent, w) - std::exp(phase - 0.5)), 0.0, 1e-15);
  EXPECT_NEAR(std::abs(char_fn(coherent, CVector::Zero(1)) - 1.0), 0.0, 0.0);
}

TEST(output_density, heterodyne_on_vacuum_is_unit_gaussian) {
  // The vacuum heterodyne law is exp(-|z|^2) with respect to mu.
  const GaussianState vacuum(HermitianMatrix::zero(1));
  CVector z(1);
  z << cplx(1.0, 0.5);
  const double p = output_density(vacuum, GaussianObservable::heterodyne(1), z);
  EXPECT_NEAR(p, std::exp(-1.25), 1e-15);
  EXPECT_NEAR(output_density_lebesgue(vacuum, GaussianObservable::heterodyne(1), z),
              std::exp(-1.25) / std::numbers::pi, 1e-15);
  EXPECT_NEAR(log_output_density(vacuum, GaussianObservable::heterodyne(1), z), -1.25, 1e-15);
}

TEST(output_density, rescaled_density_integrates_to_one) {
  // Riemann sum of the mu-density over a grid for a general K.
  CMatrix k(1, 1);
  k << cplx(1.5, 0.5);
  const GaussianObservable obs(k, HermitianMatrix::diagonal({0.4}));
  CVector mean(1);
  mean << cplx(0.2, -0.1);
  const GaussianState state(HermitianMatrix::diagonal({0.7}), mean);
  const double h = 0.02;
  double total = 0.0;
  for (double x = -4.0; x <= 4.0; x += h) {
    for (double y = -4.0; y <= 4.0; y += h) {
      CVector z(1);
      z << cplx(x, y);
      total += output_density(state, obs, z);
    }
  }
  EXPECT_NEAR(total * h * h / std::numbers::pi, 1.0, 1e-6);
}

TEST(output_density, matches_log_form) {
  gaussmax::testing::Rng rng(5);
  const GaussianObservable obs(gaussmax::testing::random_invertible(rng, 2), noise_2x2());
  CVector mean = gaussmax::testing::random_complex(rng, 2, 1).col(0);
  const GaussianState state(sigma_2x2(), mean);
  for (int i = 0; i < 10; ++i) {
    const CVector z = gaussmax::testing::random_complex(rng, 2, 1).col(0);
    EXPECT_NEAR(std::log(output_density(state, obs, z)), log_output_density(state, obs, z), 1e-12);
  }
}

TEST(output_covariance, is_sigma_plus_noise_plus_identity) {
  const HermitianMatrix a = output_covariance(sigma_2x2(), GaussianObservable(noise_2x2()));
  const CMatrix expected = sigma_2x2().matrix() + noise_2x2().matrix() + CMatrix::Identity(2, 2);
  EXPECT_NEAR((a.matrix() - expected).norm(), 0.0, 1e-15);
}

TEST(diff_entropy, closed_form) {
  EXPECT_NEAR(diff_entropy_gaussian(HermitianMatrix::identity(3)), 3.0, 1e-15);
  EXPECT_NEAR(diff_entropy_gaussian(HermitianMatrix::diagonal({std::exp(1.0), 2.0})), 3.0 + std::log(2.0),
              1e-14);
  EXPECT_THROW(diff_entropy_gaussian(HermitianMatrix::zero(1)), InvalidInput);
}

TEST(ensemble, requires_matching_dimensions_and_averages_to_sigma_plus_noise) {
  EXPECT_THROW(GaussianEnsemble(HermitianMatrix::identity(2), HermitianMatrix::identity(3)), InvalidInput);
  const GaussianEnsemble ens(sigma_2x2(), noise_2x2());
  const GaussianState avg = ensemble_average(ens);
  EXPECT_NEAR((avg.cov().matrix() - sigma_2x2().matrix() - noise_2x2().matrix()).norm(), 0.0, 1e-15);
  EXPECT_EQ(avg.mean().norm(), 0.0);
}
