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

// Closed-form capacity and information functionals of gauge-covariant
// Gaussian observables and ensembles. All values in nats.

#pragma once

#include "gaussmax/gaussian.hpp"

namespace gaussmax {

/// Minimal output differential entropy of `obs`, attained on the vacuum:
/// s + log det(N + I) - 2 log|det K|.
double min_output_entropy(const GaussianObservable& obs);

/// Maximal output entropy over input states with covariance `input_cov`,
/// attained on rho_Sigma: s + log det(Sigma + N + I) - 2 log|det K|.
double max_output_entropy(const GaussianObservable& obs, const HermitianMatrix& input_cov);

struct ChiCapacity {
  double value = 0.0;
  /// Covariance of the optimal Gaussian prior over coherent states; equals
  /// the input covariance constraint.
  HermitianMatrix optimal_prior_cov;
  /// The optimum is a Gaussian ensemble of coherent states |z><z|.
  bool coherent_state_ensemble = true;
};

/// Constrained chi-capacity log det(I + (N + I)^{-1} Sigma). K never enters.
ChiCapacity chi_capacity(const GaussianObservable& obs, const HermitianMatrix& input_cov);

/// Shannon information between the letter of `ens` and the outcome of `obs`:
/// log det(Sigma + N_e + N_m + I) - log det(N_e + N_m + I).
double gaussian_ensemble_information(const GaussianEnsemble& ens, const GaussianObservable& obs);

struct AccessibleInformation {
  double value = 0.0;
  int dim = 0;
  /// A member of the maximizing family (K, 0); any invertible K attains the
  /// value. Returns the heterodyne member for K = I.
  GaussianObservable maximizer(const CMatrix& rescale) const;
  GaussianObservable maximizer() const;
};

/// Accessible information of a nondegenerate Gaussian ensemble, equal to
/// log det(I + (N + I)^{-1} Sigma). Raises UnsupportedInput if Sigma or N has
/// an eigenvalue below kMinEig.
AccessibleInformation accessible_information(const GaussianEnsemble& ens);

}  // namespace gaussmax
