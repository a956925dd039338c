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
#include <sstream>

#include "gaussmax/errors.hpp"

namespace gaussmax {

GaussianState::GaussianState(HermitianMatrix cov, CVector mean)
    : cov_(require_psd(cov, "state covariance")), mean_(std::move(mean)) {
  require_same_dim(cov_.dim(), mean_.size(), "GaussianState mean");
}

GaussianState::GaussianState(HermitianMatrix cov)
    : GaussianState(cov, CVector::Zero(cov.dim())) {}

GaussianObservable::GaussianObservable(CMatrix rescale, HermitianMatrix noise)
    : rescale_(std::move(rescale)), noise_(require_psd(noise, "observable noise")) {
  if (rescale_.rows() != rescale_.cols()) throw InvalidInput("observable rescaling must be square");
  require_same_dim(rescale_.rows(), noise_.dim(), "GaussianObservable rescale");
  const double abs_det = std::abs(rescale_.determinant());
  if (!(abs_det > kMinDet)) {
    std::ostringstream os;
    os << "observable rescaling is singular: |det K| = " << abs_det;
    throw InvalidInput(os.str());
  }
  // Sum of log singular values is stabler than log|det| for ill-scaled K.
  Eigen::JacobiSVD<CMatrix> svd(rescale_);
  log_abs_det_ = svd.singularValues().array().log().sum();
}

GaussianObservable::GaussianObservable(HermitianMatrix noise)
    : GaussianObservable(CMatrix::Identity(noise.dim(), noise.dim()), noise) {}

GaussianObservable GaussianObservable::heterodyne(int dim) {
  return GaussianObservable(HermitianMatrix::zero(dim));
}

GaussianEnsemble::GaussianEnsemble(HermitianMatrix prior_cov, HermitianMatrix state_noise)
    : prior_cov_(require_psd(prior_cov, "prior covariance")),
      state_noise_(require_psd(state_noise, "state noise")) {
  require_same_dim(prior_cov_.dim(), state_noise_.dim(), "GaussianEnsemble");
}

cplx char_fn(const GaussianState& state, const CVector& w) {
  require_same_dim(state.dim(), w.size(), "char_fn");
  const cplx symplectic = state.mean().dot(w);  // z* w
  const double quad = (w.adjoint() * state.cov().matrix() * w)(0, 0).real() + 0.5 * w.squaredNorm();
  return std::exp(cplx(-quad, 2.0 * symplectic.imag()));
}

HermitianMatrix output_covariance(const HermitianMatrix& state_cov, const GaussianObservable& obs) {
  require_same_dim(state_cov.dim(), obs.dim(), "output_covariance");
  return state_cov + obs.noise() + HermitianMatrix::identity(obs.dim());
}

double log_output_density(const GaussianState& state, const GaussianObservable& obs, const CVector& outcome) {
  require_same_dim(state.dim(), obs.dim(), "output_density");
  require_same_dim(state.dim(), outcome.size(), "output_density outcome");
  const HermitianMatrix a = output_covariance(state.cov(), obs);
  Eigen::LLT<CMatrix> llt(a.matrix());
  if (llt.info() != Eigen::Success) throw NumericalFailure("output covariance is not positive definite");
  const CVector centred = obs.rescale() * outcome - state.mean();
  const CVector solved = llt.matrixL().solve(centred);
  double log_det_a = 0.0;
  for (Eigen::Index i = 0; i < a.dim(); ++i) log_det_a += 2.0 * std::log(llt.matrixLLT()(i, i).real());
  return -solved.squaredNorm() - log_det_a + 2.0 * obs.log_abs_det_rescale();
}

double output_density(const GaussianState& state, const GaussianObservable& obs, const CVector& outcome) {
  return std::exp(log_output_density(state, obs, outcome));
}

double output_density_lebesgue(const GaussianState& state, const GaussianObservable& obs,
                               const CVector& outcome) {
  return output_density(state, obs, outcome) / std::pow(std::numbers::pi, state.dim());
}

double diff_entropy_gaussian(const HermitianMatrix& a) {
  return static_cast<double>(a.dim()) + log_det(a);
}

GaussianState ensemble_average(const GaussianEnsemble& ens) {
  return GaussianState(ens.prior_cov() + ens.state_noise());
}

}  // namespace gaussmax
