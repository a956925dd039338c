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

// Ensemble-observable duality.
//
// Gaussian case: the observable dual to the ensemble {Sigma-Gaussian prior,
// rho_{N,z}} is again gauge-covariant Gaussian, (K, N~) with
//   Sigma~ = Sigma + N,
//   N~^{-1} = R (N^{-1} - Sigma~^{-1}) R,   R = (I + Sigma~^{-1})^{-1/2},
//   K = sqrt(Sigma~ (Sigma~ + I)) Sigma^{-1}.
//
// Finite case: for an ensemble {p_i, rho_i} and a POVM {m_j, mu_j} with
// average state rhobar, the dual pair is
//   pi'_j = Tr(rhobar m_j) mu_j,   rho'_j = rhobar^{1/2} m_j rhobar^{1/2} / Tr(rhobar m_j),
//   M'_i = p_i rhobar^{-1/2} rho_i rhobar^{-1/2}   (generalized inverse),
// and the joint law of (letter, outcome) is preserved up to transposition.

#pragma once

#include <cstddef>
#include <vector>

#include "gaussmax/gaussian.hpp"
#include "gaussmax/linalg.hpp"

namespace gaussmax {

struct DualGaussianResult {
  CMatrix rescale;               // K
  HermitianMatrix dual_noise;    // N~
  HermitianMatrix sigma_tilde;   // Sigma + N
  GaussianObservable observable() const { return GaussianObservable(rescale, dual_noise); }
};

/// Raises UnsupportedInput when Sigma or N has an eigenvalue below kMinEig.
DualGaussianResult dual_gaussian_observable(const GaussianEnsemble& ens);

struct CapacityIdentityCheck {
  double lhs = 0.0;       // det(I + (N~ + I)^{-1} Sigma~)
  double rhs = 0.0;       // det(I + (N + I)^{-1} Sigma)
  double residual = 0.0;  // |lhs - rhs| / |rhs|
  /// Max distance between the sorted spectra of (N~ + I)^{-1} Sigma~ and
  /// T^{-1} Sigma (N + I)^{-1} T with T = sqrt(Sigma~ (Sigma~ + I)),
  /// relative to max(1, |lambda|).
  double similarity_residual = 0.0;
};

CapacityIdentityCheck verify_capacity_identity(const GaussianEnsemble& ens);

/// Tolerance for the density-matrix and probability invariants below.
inline constexpr double kStateTol = 1e-10;
inline constexpr double kProbSumTol = 1e-12;
inline constexpr double kPovmTol = 1e-10;

/// Finite ensemble {p_i, rho_i} of d x d density matrices.
class DiscreteEnsemble {
 public:
  DiscreteEnsemble(std::vector<double> probs, std::vector<CMatrix> states);

  std::size_t size() const { return probs_.size(); }
  int dim() const { return dim_; }
  const std::vector<double>& probs() const { return probs_; }
  const std::vector<CMatrix>& states() const { return states_; }
  /// sum_i p_i rho_i.
  HermitianMatrix average_state() const;

 private:
  std::vector<double> probs_;
  std::vector<CMatrix> states_;
  int dim_ = 0;
};

/// Finite POVM with densities m_j and weights mu_j: sum_j m_j mu_j = I.
class DiscretePOVM {
 public:
  /// Checks completeness to kPovmTol.
  DiscretePOVM(std::vector<CMatrix> elements, std::vector<double> weights);

  /// Skips the completeness check; used for truncated or discretized
  /// measurements whose defect is reported separately.
  static DiscretePOVM approximate(std::vector<CMatrix> elements, std::vector<double> weights);

  std::size_t size() const { return elements_.size(); }
  int dim() const { return dim_; }
  const std::vector<CMatrix>& elements() const { return elements_; }
  const std::vector<double>& weights() const { return weights_; }
  /// || sum_j m_j mu_j - I ||_F.
  double completeness_defect() const;

 private:
  struct Unchecked {};
  DiscretePOVM(std::vector<CMatrix> elements, std::vector<double> weights, Unchecked);

  std::vector<CMatrix> elements_;
  std::vector<double> weights_;
  int dim_ = 0;
};

/// Merges the listed outcome groups into single outcomes with unit weight
/// (coarse graining). Every outcome must appear in exactly one group.
DiscretePOVM coarse_grain(const DiscretePOVM& povm, const std::vector<std::vector<std::size_t>>& groups);

struct DualPair {
  DiscreteEnsemble ensemble;  // {pi'_j, rho'_j} over kept outcomes
  DiscretePOVM povm;          // {M'_i} with unit weights, one per letter
  /// Indices of POVM outcomes that became dual letters, in order.
  std::vector<std::size_t> kept_outcomes;
  /// Outcomes with Tr(rhobar m_j) mu_j = 0, dropped from the dual ensemble.
  std::vector<std::size_t> dropped_outcomes;
  /// Dimension of ker(rhobar); M'_i are extended by p_i on this subspace.
  int kernel_dim = 0;
};

/// Relative cutoff below which eigenvalues of rhobar count as kernel.
inline constexpr double kPinvTol = 1e-12;

DualPair dual_pair_finite(const DiscreteEnsemble& ens, const DiscretePOVM& povm);

/// Row-stochastic-free joint law P[i][j] = p_i Tr(rho_i m_j) mu_j.
class JointDistribution {
 public:
  /// Entries >= -1e-14 are clipped to 0; the total must be 1 within 1e-10.
  explicit JointDistribution(Eigen::MatrixXd p);

  const Eigen::MatrixXd& matrix() const { return p_; }
  Eigen::VectorXd row_marginals() const { return p_.rowwise().sum(); }
  Eigen::VectorXd col_marginals() const { return p_.colwise().sum().transpose(); }

 private:
  Eigen::MatrixXd p_;
};

JointDistribution joint_distribution(const DiscreteEnsemble& ens, const DiscretePOVM& povm);

/// sum_ij P_ij log(P_ij / (r_i c_j)) with 0 log 0 = 0.
double mutual_information_discrete(const JointDistribution& p);

}  // namespace gaussmax
