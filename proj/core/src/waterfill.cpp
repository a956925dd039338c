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

#include "gaussmax/waterfill.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numeric>
#include <sstream>

namespace gaussmax {

EnergyConstraint::EnergyConstraint(HermitianMatrix hamiltonian, double budget)
    : hamiltonian_(std::move(hamiltonian)), budget_(budget) {
  if (!(budget_ > 0.0) || !std::isfinite(budget_)) throw InvalidInput("energy budget must be positive");
  if (hamiltonian_.dim() == 0 || !(hamiltonian_.min_eigenvalue() > 0.0)) {
    throw InvalidInput("Hamiltonian matrix must be positive definite");
  }
}

double EnergyConstraint::energy(const HermitianMatrix& sigma) const {
  require_same_dim(hamiltonian_.dim(), sigma.dim(), "EnergyConstraint::energy");
  return (hamiltonian_.matrix() * sigma.matrix()).trace().real();
}

namespace {

double allocated_energy(std::span<const double> thresholds, double nu) {
  double acc = 0.0;
  for (double t : thresholds) acc += std::max(nu - t, 0.0);
  return acc;
}

}  // namespace

WaterfillResult waterfill_diagonal(std::span<const double> freqs, std::span<const double> noise_diag,
                                   double budget) {
  if (freqs.empty()) throw InvalidInput("waterfill: no modes");
  if (freqs.size() != noise_diag.size()) throw InvalidInput("waterfill: freqs and noise lengths differ");
  if (!(budget > 0.0) || !std::isfinite(budget)) throw InvalidInput("waterfill: budget must be positive");
  for (std::size_t j = 0; j < freqs.size(); ++j) {
    if (!(freqs[j] > 0.0) || !std::isfinite(freqs[j])) throw InvalidInput("waterfill: frequencies must be positive");
    if (!(noise_diag[j] >= 0.0) || !std::isfinite(noise_diag[j])) {
      throw InvalidInput("waterfill: noise entries must be nonnegative");
    }
  }

  // omega_j (nu / omega_j - n_j - 1)_+ = (nu - t_j)_+ with t_j = omega_j (n_j + 1).
  std::vector<double> thresholds(freqs.size());
  for (std::size_t j = 0; j < freqs.size(); ++j) thresholds[j] = freqs[j] * (noise_diag[j] + 1.0);

  const auto [wmin, wmax] = std::minmax_element(freqs.begin(), freqs.end());
  double lo = *std::min_element(thresholds.begin(), thresholds.end());
  double hi = *std::max_element(thresholds.begin(), thresholds.end()) + budget * (*wmax / *wmin);
  const double residual_tol = 1e-12 * std::max(1.0, budget);
  double nu = hi;
  for (int it = 0; it < 400; ++it) {
    nu = 0.5 * (lo + hi);
    const double r = allocated_energy(thresholds, nu) - budget;
    if (std::abs(r) <= residual_tol) break;
    // Allocation is nondecreasing in nu; keeping hi on the feasible side
    // yields the smallest root on a flat segment.
    (r >= 0.0 ? hi : lo) = nu;
  }

  // Snap to the exact level of the identified active set.
  std::vector<int> active;
  double active_sum = 0.0;
  for (std::size_t j = 0; j < thresholds.size(); ++j) {
    if (thresholds[j] < nu) {
      active.push_back(static_cast<int>(j));
      active_sum += thresholds[j];
    }
  }
  if (!active.empty()) {
    const double snapped = (budget + active_sum) / static_cast<double>(active.size());
    bool consistent = true;
    for (std::size_t j = 0; j < thresholds.size(); ++j) {
      const bool is_active = std::find(active.begin(), active.end(), static_cast<int>(j)) != active.end();
      if (is_active != (thresholds[j] < snapped)) consistent = false;
    }
    if (consistent) nu = snapped;
  }

  WaterfillResult out;
  out.water_level = nu;
  out.allocations.resize(freqs.size());
  for (std::size_t j = 0; j < freqs.size(); ++j) {
    const double s = std::max(nu / freqs[j] - noise_diag[j] - 1.0, 0.0);
    out.allocations[j] = s;
    out.capacity += std::log1p(s / (noise_diag[j] + 1.0));
    if (s > 0.0) out.active.push_back(static_cast<int>(j));
  }
  return out;
}

double capacity_objective(const HermitianMatrix& noise, const HermitianMatrix& sigma) {
  return log_det_identity_plus(noise + HermitianMatrix::identity(noise.dim()), sigma);
}

std::vector<double> project_capped_simplex(std::span<const double> x, double total) {
  std::vector<double> out(x.begin(), x.end());
  double clipped_sum = 0.0;
  for (double& v : out) {
    v = std::max(v, 0.0);
    clipped_sum += v;
  }
  if (clipped_sum <= total) return out;
  std::vector<double> sorted(x.begin(), x.end());
  std::sort(sorted.begin(), sorted.end(), std::greater<>());
  double cumulative = 0.0;
  double tau = 0.0;
  for (std::size_t k = 0; k < sorted.size(); ++k) {
    cumulative += sorted[k];
    const double candidate = (cumulative - total) / static_cast<double>(k + 1);
    if (k + 1 == sorted.size() || sorted[k + 1] <= candidate) {
      tau = candidate;
      break;
    }
  }
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = std::max(x[i] - tau, 0.0);
  return out;
}

namespace {

// Unitary whose columns diagonalize both eps and N, given that they commute.
CMatrix common_eigenbasis(const HermitianMatrix& eps, const HermitianMatrix& noise) {
  const HermitianEigen e = eigh(eps);
  const Eigen::Index s = e.values.size();
  CMatrix basis(s, s);
  Eigen::Index start = 0;
  const double scale = std::max(1.0, e.values.cwiseAbs().maxCoeff());
  while (start < s) {
    Eigen::Index end = start + 1;
    while (end < s && e.values(end) - e.values(start) <= 1e-10 * scale) ++end;
    const CMatrix block = e.vectors.middleCols(start, end - start);
    const HermitianMatrix compressed(block.adjoint() * noise.matrix() * block);
    const HermitianEigen inner = eigh(compressed);
    basis.middleCols(start, end - start) = block * inner.vectors;
    start = end;
  }
  return basis;
}

HermitianMatrix project_feasible(const HermitianMatrix& x, double total) {
  const HermitianEigen e = eigh(x);
  std::vector<double> values(e.values.data(), e.values.data() + e.values.size());
  const std::vector<double> projected = project_capped_simplex(values, total);
  const RVector d = Eigen::Map<const RVector>(projected.data(), static_cast<Eigen::Index>(projected.size()));
  return HermitianMatrix(e.vectors * d.asDiagonal() * e.vectors.adjoint());
}

}  // namespace

ConstrainedCapacity constrained_capacity(const EnergyConstraint& constraint, const HermitianMatrix& noise,
                                         const AscentOptions& options) {
  const HermitianMatrix& eps = constraint.hamiltonian();
  require_same_dim(eps.dim(), noise.dim(), "constrained_capacity");
  const HermitianMatrix n_psd = require_psd(noise, "noise");
  const int s = eps.dim();
  const double budget = constraint.budget();

  const CMatrix commutator = eps.matrix() * n_psd.matrix() - n_psd.matrix() * eps.matrix();
  if (commutator.norm() <= options.commute_tol) {
    const CMatrix u = common_eigenbasis(eps, n_psd);
    const CMatrix eps_d = u.adjoint() * eps.matrix() * u;
    const CMatrix n_d = u.adjoint() * n_psd.matrix() * u;
    std::vector<double> freqs(static_cast<std::size_t>(s));
    std::vector<double> noise_diag(static_cast<std::size_t>(s));
    for (int j = 0; j < s; ++j) {
      freqs[static_cast<std::size_t>(j)] = eps_d(j, j).real();
      noise_diag[static_cast<std::size_t>(j)] = std::max(n_d(j, j).real(), 0.0);
    }
    ConstrainedCapacity out;
    out.closed_form = true;
    out.waterfill = waterfill_diagonal(freqs, noise_diag, budget);
    const RVector alloc =
        Eigen::Map<const RVector>(out.waterfill.allocations.data(), static_cast<Eigen::Index>(s));
    out.optimal_cov = HermitianMatrix(u * alloc.cast<cplx>().asDiagonal() * u.adjoint());
    out.capacity = out.waterfill.capacity;
    return out;
  }

  // Whitened problem: maximize log det(M + X) subject to X >= 0, tr X <= E,
  // with M = eps^{1/2} (N + I) eps^{1/2} and Sigma = eps^{-1/2} X eps^{-1/2}.
  const HermitianMatrix eps_half = sqrtm(eps);
  const HermitianMatrix eps_inv_half = inv_sqrtm(eps);
  const HermitianMatrix m = congruence(eps_half.matrix(), n_psd + HermitianMatrix::identity(s));
  const double log_det_m = log_det(m);
  auto objective = [&](const HermitianMatrix& x) { return log_det(m + x) - log_det_m; };

  HermitianMatrix x = HermitianMatrix::identity(s).scaled(budget / s);
  double value = objective(x);
  double step = options.initial_step;
  ConstrainedCapacity out;
  out.objective_trace.push_back(value);
  bool converged = false;
  int it = 0;
  for (; it < options.max_iterations; ++it) {
    const HermitianMatrix grad = inverse(m + x);
    bool accepted = false;
    while (step > 1e-18) {
      const HermitianMatrix candidate = project_feasible(x + grad.scaled(step), budget);
      const double candidate_value = objective(candidate);
      if (candidate_value > value) {
        const double gain = candidate_value - value;
        const double moved = (candidate.matrix() - x.matrix()).norm();
        x = candidate;
        value = candidate_value;
        out.objective_trace.push_back(value);
        accepted = true;
        step *= 2.0;
        if (gain < options.objective_tol || moved < options.step_tol) converged = true;
        break;
      }
      step *= 0.5;
    }
    // No ascent direction left at machine precision: stationary point.
    if (!accepted) converged = true;
    if (converged) break;
  }

  out.iterations = it + 1;
  out.optimal_cov = congruence(eps_inv_half.matrix(), x);
  out.capacity = capacity_objective(n_psd, out.optimal_cov);
  if (!converged) {
    std::ostringstream os;
    os << "projected ascent did not converge in " << options.max_iterations << " iterations";
    throw AscentNonConvergence(os.str(), out);
  }
  return out;
}

}  // namespace gaussmax
