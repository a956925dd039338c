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

// Gauge-invariant Gaussian states, observables and ensembles in the complex
// covariance formalism.
//
// Conventions used throughout the library:
//  * Covariances are complex s x s Hermitian matrices in photon-number units,
//    Lambda = Tr a rho a^dagger.
//  * Densities on the outcome space C^s are taken with respect to the
//    reference measure mu(d^{2s}z) = pi^{-s} d^{2s}z. The Lebesgue density is
//    the mu-density divided by pi^s.
//  * Entropies and informations are in nats.

#pragma once

#include "gaussmax/linalg.hpp"

namespace gaussmax {

/// Gaussian state rho_{Lambda, z}: covariance Lambda, displacement z.
class GaussianState {
 public:
  GaussianState(HermitianMatrix cov, CVector mean);
  /// Zero-mean state rho_Lambda.
  explicit GaussianState(HermitianMatrix cov);

  int dim() const { return cov_.dim(); }
  const HermitianMatrix& cov() const { return cov_; }
  const CVector& mean() const { return mean_; }

 private:
  HermitianMatrix cov_;
  CVector mean_;
};

/// Gauge-covariant Gaussian observable
///   M(d^{2s}z) = D(Kz) rho_N D(Kz)^dagger |det K|^2 d^{2s}z / pi^s.
class GaussianObservable {
 public:
  GaussianObservable(CMatrix rescale, HermitianMatrix noise);
  /// K = I.
  explicit GaussianObservable(HermitianMatrix noise);

  /// Ideal multimode heterodyne: K = I, N = 0.
  static GaussianObservable heterodyne(int dim);

  int dim() const { return noise_.dim(); }
  const CMatrix& rescale() const { return rescale_; }
  const HermitianMatrix& noise() const { return noise_; }
  /// log |det K|.
  double log_abs_det_rescale() const { return log_abs_det_; }

 private:
  CMatrix rescale_;
  HermitianMatrix noise_;
  double log_abs_det_ = 0.0;
};

/// Gaussian ensemble of displaced states rho_{N, z} with a centred complex
/// Gaussian prior of covariance Sigma on z.
class GaussianEnsemble {
 public:
  GaussianEnsemble(HermitianMatrix prior_cov, HermitianMatrix state_noise);

  int dim() const { return prior_cov_.dim(); }
  const HermitianMatrix& prior_cov() const { return prior_cov_; }
  const HermitianMatrix& state_noise() const { return state_noise_; }

 private:
  HermitianMatrix prior_cov_;
  HermitianMatrix state_noise_;
};

/// Quantum characteristic function Tr rho D(w) = exp[2i Im(z* w) - w*(Lambda + I/2) w].
cplx char_fn(const GaussianState& state, const CVector& w);

/// Covariance of the outcome law of `obs` applied to a state with covariance
/// `state_cov`, in the K = I outcome coordinates: Sigma + N + I.
HermitianMatrix output_covariance(const HermitianMatrix& state_cov, const GaussianObservable& obs);

/// mu-density of the outcome of `obs` on `state` at `outcome`.
/// For K = I this is det(A)^{-1} exp[-(z - z0)* A^{-1} (z - z0)] with
/// A = Sigma + N + I; general K evaluates p(Kz) |det K|^2.
double output_density(const GaussianState& state, const GaussianObservable& obs, const CVector& outcome);

/// Natural log of output_density, without the final exponential.
double log_output_density(const GaussianState& state, const GaussianObservable& obs, const CVector& outcome);

/// Lebesgue density, output_density / pi^s.
double output_density_lebesgue(const GaussianState& state, const GaussianObservable& obs,
                               const CVector& outcome);

/// Differential entropy (w.r.t. mu) of the complex Gaussian with covariance A:
/// s + log det A.
double diff_entropy_gaussian(const HermitianMatrix& a);

/// Barycentre of the ensemble: zero-mean Gaussian state with covariance Sigma + N.
GaussianState ensemble_average(const GaussianEnsemble& ens);

}  // namespace gaussmax
