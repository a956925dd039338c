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

#include "gaussmax/duality.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

#include <Eigen/Eigenvalues>

#include "gaussmax/errors.hpp"

namespace gaussmax {

namespace {

// Re Tr(A B) without forming the product.
double trace_product(const CMatrix& a, const CMatrix& b) {
  return (a.transpose().cwiseProduct(b)).sum().real();
}

std::vector<cplx> sorted_spectrum(const CMatrix& a) {
  Eigen::ComplexEigenSolver<CMatrix> solver(a, /*computeEigenvectors=*/false);
  if (solver.info() != Eigen::Success) throw NumericalFailure("eigenvalue computation failed");
  std::vector<cplx> ev(solver.eigenvalues().data(), solver.eigenvalues().data() + a.rows());
  std::sort(ev.begin(), ev.end(), [](cplx x, cplx y) { return x.real() < y.real(); });
  return ev;
}

}  // namespace

DualGaussianResult dual_gaussian_observable(const GaussianEnsemble& ens) {
  const HermitianMatrix& sigma = ens.prior_cov();
  const HermitianMatrix& noise = ens.state_noise();
  require_nondegenerate(sigma, kMinEig, "prior covariance");
  require_nondegenerate(noise, kMinEig, "state noise");
  const int s = ens.dim();
  const HermitianMatrix id = HermitianMatrix::identity(s);

  DualGaussianResult out;
  out.sigma_tilde = sigma + noise;

  // N^{-1} - Sigma~^{-1} = N^{-1/2} B (I + B)^{-1} N^{-1/2}, B = N^{-1/2} Sigma N^{-1/2};
  // this form has no cancellation when Sigma << N.
  const HermitianMatrix n_inv_half = inv_sqrtm(noise);
  const HermitianMatrix b = congruence(n_inv_half.matrix(), sigma);
  const HermitianMatrix gap =
      congruence(n_inv_half.matrix(), spectral_map(b, [](double x) { return x / (1.0 + x); }));
  const HermitianMatrix r = inv_sqrtm(id + inverse(out.sigma_tilde));
  out.dual_noise = inverse(congruence(r.matrix(), gap));

  const HermitianMatrix t =
      spectral_map(out.sigma_tilde, [](double x) { return std::sqrt(x * (x + 1.0)); });
  out.rescale = t.matrix() * inverse(sigma).matrix();
  return out;
}

CapacityIdentityCheck verify_capacity_identity(const GaussianEnsemble& ens) {
  const DualGaussianResult dual = dual_gaussian_observable(ens);
  const int s = ens.dim();
  const HermitianMatrix id = HermitianMatrix::identity(s);
  const HermitianMatrix& sigma = ens.prior_cov();
  const HermitianMatrix& noise = ens.state_noise();

  CapacityIdentityCheck out;
  out.lhs = std::exp(log_det_identity_plus(dual.dual_noise + id, dual.sigma_tilde));
  out.rhs = std::exp(log_det_identity_plus(noise + id, sigma));
  out.residual = std::abs(out.lhs - out.rhs) / std::abs(out.rhs);

  const CMatrix dual_product = inverse(dual.dual_noise + id).matrix() * dual.sigma_tilde.matrix();
  const HermitianMatrix t =
      spectral_map(dual.sigma_tilde, [](double x) { return std::sqrt(x * (x + 1.0)); });
  const HermitianMatrix t_inv =
      spectral_map(dual.sigma_tilde, [](double x) { return 1.0 / std::sqrt(x * (x + 1.0)); });
  const CMatrix similar = t_inv.matrix() * sigma.matrix() * inverse(noise + id).matrix() * t.matrix();
  const auto ev_dual = sorted_spectrum(dual_product);
  const auto ev_similar = sorted_spectrum(similar);
  for (std::size_t i = 0; i < ev_dual.size(); ++i) {
    const double scale = std::max(1.0, std::abs(ev_similar[i]));
    out.similarity_residual = std::max(out.similarity_residual, std::abs(ev_dual[i] - ev_similar[i]) / scale);
  }
  return out;
}

DiscreteEnsemble::DiscreteEnsemble(std::vector<double> probs, std::vector<CMatrix> states)
    : probs_(std::move(probs)), states_(std::move(states)) {
  if (probs_.empty()) throw InvalidInput("ensemble must contain at least one state");
  if (probs_.size() != states_.size()) throw InvalidInput("ensemble probs and states lengths differ");
  dim_ = static_cast<int>(states_.front().rows());
  double total = 0.0;
  for (std::size_t i = 0; i < probs_.size(); ++i) {
    if (!(probs_[i] >= 0.0)) throw InvalidInput("ensemble probabilities must be nonnegative");
    total += probs_[i];
    const CMatrix& rho = states_[i];
    if (rho.rows() != dim_ || rho.cols() != dim_) throw InvalidInput("ensemble states have inconsistent dimensions");
    if (hermiticity_defect(rho) > kStateTol) throw InvalidInput("ensemble state is not Hermitian");
    if (std::abs(rho.trace() - cplx(1.0)) > kStateTol) throw InvalidInput("ensemble state does not have unit trace");
    if (HermitianMatrix(0.5 * (rho + rho.adjoint())).min_eigenvalue() < -kStateTol) {
      throw InvalidInput("ensemble state is not positive semidefinite");
    }
  }
  if (std::abs(total - 1.0) > kProbSumTol) {
    std::ostringstream os;
    os << "ensemble probabilities sum to " << total;
    throw InvalidInput(os.str());
  }
}

HermitianMatrix DiscreteEnsemble::average_state() const {
  CMatrix acc = CMatrix::Zero(dim_, dim_);
  for (std::size_t i = 0; i < probs_.size(); ++i) acc += probs_[i] * states_[i];
  return HermitianMatrix(0.5 * (acc + acc.adjoint()));
}

DiscretePOVM::DiscretePOVM(std::vector<CMatrix> elements, std::vector<double> weights, Unchecked)
    : elements_(std::move(elements)), weights_(std::move(weights)) {
  if (elements_.empty()) throw InvalidInput("POVM must contain at least one outcome");
  if (elements_.size() != weights_.size()) throw InvalidInput("POVM elements and weights lengths differ");
  dim_ = static_cast<int>(elements_.front().rows());
  for (std::size_t j = 0; j < elements_.size(); ++j) {
    const CMatrix& m = elements_[j];
    if (m.rows() != dim_ || m.cols() != dim_) throw InvalidInput("POVM elements have inconsistent dimensions");
    if (!(weights_[j] > 0.0)) throw InvalidInput("POVM weights must be positive");
  }
}

DiscretePOVM::DiscretePOVM(std::vector<CMatrix> elements, std::vector<double> weights)
    : DiscretePOVM(std::move(elements), std::move(weights), Unchecked{}) {
  for (const CMatrix& m : elements_) {
    const double scale = std::max(1.0, m.cwiseAbs().maxCoeff());
    if (hermiticity_defect(m) > kPovmTol * scale) throw InvalidInput("POVM element is not Hermitian");
    if (HermitianMatrix(0.5 * (m + m.adjoint())).min_eigenvalue() < -kPovmTol * scale) {
      throw InvalidInput("POVM element is not positive semidefinite");
    }
  }
  const double defect = completeness_defect();
  if (defect > kPovmTol) {
    std::ostringstream os;
    os << "POVM is not complete: ||sum m_j mu_j - I||_F = " << defect;
    throw InvalidInput(os.str());
  }
}

DiscretePOVM DiscretePOVM::approximate(std::vector<CMatrix> elements, std::vector<double> weights) {
  return DiscretePOVM(std::move(elements), std::move(weights), Unchecked{});
}

double DiscretePOVM::completeness_defect() const {
  CMatrix acc = -CMatrix::Identity(dim_, dim_);
  for (std::size_t j = 0; j < elements_.size(); ++j) acc += weights_[j] * elements_[j];
  return acc.norm();
}

DiscretePOVM coarse_grain(const DiscretePOVM& povm, const std::vector<std::vector<std::size_t>>& groups) {
  std::vector<int> seen(povm.size(), 0);
  std::vector<CMatrix> merged;
  for (const auto& group : groups) {
    if (group.empty()) throw InvalidInput("coarse_grain: empty group");
    CMatrix acc = CMatrix::Zero(povm.dim(), povm.dim());
    for (std::size_t j : group) {
      if (j >= povm.size()) throw InvalidInput("coarse_grain: outcome index out of range");
      ++seen[j];
      acc += povm.weights()[j] * povm.elements()[j];
    }
    merged.push_back(std::move(acc));
  }
  if (std::any_of(seen.begin(), seen.end(), [](int c) { return c != 1; })) {
    throw InvalidInput("coarse_grain: groups must partition the outcomes");
  }
  std::vector<double> weights(merged.size(), 1.0);
  return DiscretePOVM::approximate(std::move(merged), std::move(weights));
}

DualPair dual_pair_finite(const DiscreteEnsemble& ens, const DiscretePOVM& povm) {
  require_same_dim(ens.dim(), povm.dim(), "dual_pair_finite");
  const int d = ens.dim();
  const HermitianEigen avg = eigh(ens.average_state());
  const double cutoff = kPinvTol * std::max(avg.values.maxCoeff(), 0.0);

  RVector root(d);
  RVector inv_root(d);
  RVector kernel(d);
  int kernel_dim = 0;
  for (int k = 0; k < d; ++k) {
    const double lambda = avg.values(k);
    if (lambda > cutoff) {
      root(k) = std::sqrt(lambda);
      inv_root(k) = 1.0 / std::sqrt(lambda);
      kernel(k) = 0.0;
    } else {
      root(k) = 0.0;
      inv_root(k) = 0.0;
      kernel(k) = 1.0;
      ++kernel_dim;
    }
  }
  const CMatrix& u = avg.vectors;
  const CMatrix rho_half = u * root.asDiagonal() * u.adjoint();
  const CMatrix rho_inv_half = u * inv_root.asDiagonal() * u.adjoint();
  const CMatrix kernel_proj = u * kernel.asDiagonal() * u.adjoint();
  const CMatrix rho_bar = u * avg.values.asDiagonal() * u.adjoint();

  std::vector<double> dual_probs;
  std::vector<CMatrix> dual_states;
  DualPair out{DiscreteEnsemble({1.0}, {CMatrix::Identity(d, d) / d}),
               DiscretePOVM::approximate({CMatrix::Identity(d, d)}, {1.0}),
               {},
               {},
               kernel_dim};
  for (std::size_t j = 0; j < povm.size(); ++j) {
    const CMatrix& m = povm.elements()[j];
    const double overlap = trace_product(rho_bar, m);
    const double mass = overlap * povm.weights()[j];
    if (!(mass > 1e-14)) {
      out.dropped_outcomes.push_back(j);
      continue;
    }
    CMatrix state = rho_half * m * rho_half / overlap;
    state = 0.5 * (state + state.adjoint());
    dual_probs.push_back(mass);
    dual_states.push_back(std::move(state));
    out.kept_outcomes.push_back(j);
  }
  if (dual_probs.empty()) throw InvalidInput("dual_pair_finite: every outcome has zero probability");
  const double total = std::accumulate(dual_probs.begin(), dual_probs.end(), 0.0);
  for (double& p : dual_probs) p /= total;
  out.ensemble = DiscreteEnsemble(std::move(dual_probs), std::move(dual_states));

  std::vector<CMatrix> dual_elements;
  dual_elements.reserve(ens.size());
  for (std::size_t i = 0; i < ens.size(); ++i) {
    const double p = ens.probs()[i];
    CMatrix e = p * (rho_inv_half * ens.states()[i] * rho_inv_half) + p * kernel_proj;
    dual_elements.push_back(0.5 * (e + e.adjoint()));
  }
  out.povm = DiscretePOVM::approximate(std::move(dual_elements), std::vector<double>(ens.size(), 1.0));
  return out;
}

JointDistribution::JointDistribution(Eigen::MatrixXd p) : p_(std::move(p)) {
  for (Eigen::Index i = 0; i < p_.rows(); ++i) {
    for (Eigen::Index j = 0; j < p_.cols(); ++j) {
      if (p_(i, j) < -1e-14 || !std::isfinite(p_(i, j))) throw InvalidInput("joint distribution has a negative entry");
      p_(i, j) = std::max(p_(i, j), 0.0);
    }
  }
  if (std::abs(p_.sum() - 1.0) > 1e-10) {
    std::ostringstream os;
    os << "joint distribution sums to " << p_.sum();
    throw InvalidInput(os.str());
  }
}

JointDistribution joint_distribution(const DiscreteEnsemble& ens, const DiscretePOVM& povm) {
  require_same_dim(ens.dim(), povm.dim(), "joint_distribution");
  Eigen::MatrixXd p(static_cast<Eigen::Index>(ens.size()), static_cast<Eigen::Index>(povm.size()));
  for (std::size_t i = 0; i < ens.size(); ++i) {
    for (std::size_t j = 0; j < povm.size(); ++j) {
      p(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) =
          ens.probs()[i] * trace_product(ens.states()[i], povm.elements()[j]) * povm.weights()[j];
    }
  }
  return JointDistribution(std::move(p));
}

double mutual_information_discrete(const JointDistribution& joint) {
  const Eigen::MatrixXd& p = joint.matrix();
  const Eigen::VectorXd r = joint.row_marginals();
  const Eigen::VectorXd c = joint.col_marginals();
  double acc = 0.0;
  for (Eigen::Index i = 0; i < p.rows(); ++i) {
    for (Eigen::Index j = 0; j < p.cols(); ++j) {
      const double pij = p(i, j);
      if (pij > 0.0) acc += pij * std::log(pij / (r(i) * c(j)));
    }
  }
  return acc;
}

}  // namespace gaussmax
