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

#include "gaussmax/capacity.hpp"

#include "gaussmax/errors.hpp"

namespace gaussmax {

namespace {

HermitianMatrix plus_identity(const HermitianMatrix& a) { return a + HermitianMatrix::identity(a.dim()); }

}  // namespace

double min_output_entropy(const GaussianObservable& obs) {
  return diff_entropy_gaussian(plus_identity(obs.noise())) - 2.0 * obs.log_abs_det_rescale();
}

double max_output_entropy(const GaussianObservable& obs, const HermitianMatrix& input_cov) {
  const HermitianMatrix sigma = require_psd(input_cov, "input covariance");
  return diff_entropy_gaussian(output_covariance(sigma, obs)) - 2.0 * obs.log_abs_det_rescale();
}

ChiCapacity chi_capacity(const GaussianObservable& obs, const HermitianMatrix& input_cov) {
  require_same_dim(obs.dim(), input_cov.dim(), "chi_capacity");
  const HermitianMatrix sigma = require_psd(input_cov, "input covariance");
  ChiCapacity out;
  out.value = log_det_identity_plus(plus_identity(obs.noise()), sigma);
  out.optimal_prior_cov = sigma;
  return out;
}

double gaussian_ensemble_information(const GaussianEnsemble& ens, const GaussianObservable& obs) {
  require_same_dim(ens.dim(), obs.dim(), "gaussian_ensemble_information");
  const HermitianMatrix conditional = plus_identity(ens.state_noise() + obs.noise());
  return log_det_identity_plus(conditional, ens.prior_cov());
}

GaussianObservable AccessibleInformation::maximizer(const CMatrix& rescale) const {
  return GaussianObservable(rescale, HermitianMatrix::zero(dim));
}

GaussianObservable AccessibleInformation::maximizer() const { return GaussianObservable::heterodyne(dim); }

AccessibleInformation accessible_information(const GaussianEnsemble& ens) {
  require_nondegenerate(ens.prior_cov(), kMinEig, "prior covariance");
  require_nondegenerate(ens.state_noise(), kMinEig, "state noise");
  AccessibleInformation out;
  out.dim = ens.dim();
  out.value = log_det_identity_plus(plus_identity(ens.state_noise()), ens.prior_cov());
  return out;
}

}  // namespace gaussmax
