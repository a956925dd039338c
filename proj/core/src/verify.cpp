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

#include "gaussmax/verify.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <functional>
#include <numbers>
#include <random>
#include <sstream>

#include "gaussmax/capacity.hpp"
#include "gaussmax/duality.hpp"
#include "gaussmax/errors.hpp"
#include "gaussmax/fock.hpp"
#include "gaussmax/sampler.hpp"
#include "gaussmax/waterfill.hpp"

namespace gaussmax {

namespace {

using Rng = std::mt19937_64;
constexpr double kPi = std::numbers::pi;

double uniform(Rng& rng, double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng); }

int uniform_int(Rng& rng, int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); }

CMatrix complex_gaussian(Rng& rng, int rows, int cols) {
  std::normal_distribution<double> normal(0.0, 1.0);
  CMatrix g(rows, cols);
  for (int i = 0; i < rows; ++i) {
    for (int j = 0; j < cols; ++j) {
      const double re = normal(rng);
      const double im = normal(rng);
      g(i, j) = cplx(re, im);
    }
  }
  return g;
}

CMatrix random_unitary(Rng& rng, int dim) {
  const CMatrix g = complex_gaussian(rng, dim, dim);
  Eigen::HouseholderQR<CMatrix> qr(g);
  return qr.householderQ() * CMatrix::Identity(dim, dim);
}

// U diag(lambda) U^* with log-uniform eigenvalues in [lo, hi].
HermitianMatrix random_pd(Rng& rng, int dim, double lo, double hi) {
  RVector lambda(dim);
  for (int k = 0; k < dim; ++k) lambda(k) = std::exp(uniform(rng, std::log(lo), std::log(hi)));
  const CMatrix u = random_unitary(rng, dim);
  return HermitianMatrix(u * lambda.cast<cplx>().asDiagonal() * u.adjoint());
}

CMatrix random_invertible(Rng& rng, int dim) {
  for (;;) {
    const CMatrix k = complex_gaussian(rng, dim, dim);
    const Eigen::JacobiSVD<CMatrix> svd(k);
    if (svd.singularValues().minCoeff() > 0.05) return k;
  }
}

CMatrix random_density(Rng& rng, int dim, int rank) {
  const CMatrix g = complex_gaussian(rng, dim, rank);
  CMatrix rho = g * g.adjoint();
  rho /= rho.trace().real();
  return 0.5 * (rho + rho.adjoint());
}

CVector random_disk_point(Rng& rng, int dim, double radius) {
  CVector z(dim);
  for (int k = 0; k < dim; ++k) z(k) = std::polar(radius * std::sqrt(uniform(rng, 0.0, 1.0)), uniform(rng, 0.0, 2.0 * kPi));
  return z;
}

struct Checks {
  const SuiteOptions& options;
  std::vector<CheckResult> results;

  void add(const std::string& name, double residual, double threshold, const std::string& detail = {},
           bool inclusive = false) {
    const auto it = options.thresholds.find(name);
    if (it != options.thresholds.end()) threshold = it->second;
    const bool pass = std::isfinite(residual) && (inclusive ? residual <= threshold : residual < threshold);
    results.push_back({name, residual, threshold, pass, detail});
  }
};

int count_or(const SuiteOptions& options, int fallback) { return options.n > 0 ? options.n : fallback; }

std::string describe_count(int instances) {
  std::ostringstream os;
  os << instances << " instances";
  return os.str();
}

// ---------------------------------------------------------------------------

void suite_determinant_identity(Checks& out) {
  Rng rng(out.options.seed);
  const int per_dim = count_or(out.options, 1000);
  double worst_similarity = 0.0;
  for (int s = 1; s <= 4; ++s) {
    double worst = 0.0;
    for (int i = 0; i < per_dim; ++i) {
      const GaussianEnsemble ens(random_pd(rng, s, 0.05, 5.0), random_pd(rng, s, 0.05, 5.0));
      const CapacityIdentityCheck check = verify_capacity_identity(ens);
      worst = std::max(worst, check.residual);
      worst_similarity = std::max(worst_similarity, check.similarity_residual);
    }
    out.add("determinant-identity.s" + std::to_string(s), worst, 1e-10, describe_count(per_dim));
  }
  out.add("determinant-identity.similarity", worst_similarity, 1e-9, "sorted spectra of the similar pair");
}

void suite_dual_scalar(Checks& out) {
  const GaussianEnsemble ens(HermitianMatrix::diagonal({1.0}), HermitianMatrix::diagonal({1.0}));
  const DualGaussianResult dual = dual_gaussian_observable(ens);
  const CapacityIdentityCheck check = verify_capacity_identity(ens);
  out.add("dual-scalar.sigma-tilde", std::abs(dual.sigma_tilde(0, 0) - 2.0), 1e-12);
  out.add("dual-scalar.dual-noise", std::abs(dual.dual_noise(0, 0) - 3.0), 1e-12);
  out.add("dual-scalar.rescale", std::abs(dual.rescale(0, 0) - std::sqrt(6.0)), 1e-12);
  out.add("dual-scalar.lhs", std::abs(check.lhs - 1.5), 1e-12);
  out.add("dual-scalar.rhs", std::abs(check.rhs - 1.5), 1e-12);
}

void suite_capacity_consistency(Checks& out) {
  Rng rng(out.options.seed + 1);
  const int instances = count_or(out.options, 500);
  double worst = 0.0;
  for (int i = 0; i < instances; ++i) {
    const int s = 1 + i % 4;
    const GaussianEnsemble ens(random_pd(rng, s, 0.05, 5.0), random_pd(rng, s, 0.05, 5.0));
    const double accessible = accessible_information(ens).value;
    const DualGaussianResult dual = dual_gaussian_observable(ens);
    const double chi = chi_capacity(dual.observable(), dual.sigma_tilde).value;
    const double heterodyne = gaussian_ensemble_information(ens, GaussianObservable::heterodyne(s));
    worst = std::max({worst, std::abs(accessible - chi), std::abs(accessible - heterodyne), std::abs(chi - heterodyne)});
  }
  out.add("capacity-consistency.max-gap", worst, 1e-10, describe_count(instances));
}

void suite_k_invariance(Checks& out) {
  Rng rng(out.options.seed + 2);
  const int instances = count_or(out.options, 20);
  constexpr int kRescalings = 100;
  double chi_spread = 0.0;
  double info_spread = 0.0;
  double entropy_route = 0.0;
  for (int i = 0; i < instances; ++i) {
    const int s = 1 + i % 4;
    const HermitianMatrix sigma = random_pd(rng, s, 0.05, 5.0);
    const HermitianMatrix n_state = random_pd(rng, s, 0.05, 5.0);
    const HermitianMatrix n_meas = random_pd(rng, s, 0.05, 5.0);
    const GaussianEnsemble ens(sigma, n_state);
    const double chi_ref = chi_capacity(GaussianObservable(n_meas), sigma).value;
    const double info_ref = gaussian_ensemble_information(ens, GaussianObservable(n_meas));
    const double accessible = accessible_information(ens).value;
    for (int k = 0; k < kRescalings; ++k) {
      const GaussianObservable obs(random_invertible(rng, s), n_meas);
      chi_spread = std::max(chi_spread, std::abs(chi_capacity(obs, sigma).value - chi_ref));
      info_spread = std::max(info_spread, std::abs(gaussian_ensemble_information(ens, obs) - info_ref));
      // Entropy-difference route, where the -2 log|det K| terms must cancel.
      const double via_entropy =
          max_output_entropy(obs, sigma + n_state) - max_output_entropy(obs, n_state);
      entropy_route = std::max(entropy_route, std::abs(via_entropy - info_ref));
      const GaussianObservable ideal = AccessibleInformation{accessible, s}.maximizer(obs.rescale());
      info_spread = std::max(info_spread, std::abs(gaussian_ensemble_information(ens, ideal) - accessible));
    }
  }
  out.add("k-invariance.chi-capacity", chi_spread, 0.0, describe_count(instances) + " x 100 rescalings", true);
  out.add("k-invariance.ensemble-information", info_spread, 1e-12);
  out.add("k-invariance.entropy-route", entropy_route, 1e-12);
}

void suite_fock_density(Checks& out) {
  constexpr int kCutoff = 25;
  const HermitianMatrix sigma = HermitianMatrix::diagonal({0.5});
  const GaussianObservable obs(HermitianMatrix::diagonal({0.3}));
  const OutcomeGrid grid(1, 6.0, 0.25);
  const DiscretizedPOVM povm = discretize_povm(obs, grid, kCutoff);
  const TruncatedState rho = gaussian_state_fock(sigma, kCutoff, StateMethod::kEigenproduct);
  const OutputDistribution dist = fock_output_distribution(rho.rho, povm.povm);
  const GaussianState state(sigma);
  double worst = 0.0;
  double analytic_total = 0.0;
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const double cell = output_density(state, obs, povm.outcomes[i]) * grid.cell_weight();
    analytic_total += cell;
    worst = std::max(worst, std::abs(dist.masses[i] - cell));
  }
  std::ostringstream detail;
  detail << "trace defect " << rho.trace_defect << ", fock mass " << dist.total << ", analytic mass "
         << analytic_total;
  out.add("fock-density.max-cell", worst, 1e-5, detail.str());
  out.add("fock-density.clipped", dist.clipped, 1e-12);
}

void suite_inv_sqrt(Checks& out) {
  Rng rng(out.options.seed + 3);
  double worst_single = 0.0;
  double worst_leak = 0.0;
  for (double lambda : {0.5, 1.0, 2.0}) {
    const HermitianMatrix cov = HermitianMatrix::diagonal({lambda});
    std::vector<CVector> points = {CVector::Zero(1), CVector::Constant(1, cplx(1.0, 0.0)),
                                   CVector::Constant(1, cplx(0.0, -1.0)), CVector::Constant(1, cplx(0.5, 0.0))};
    for (int k = 0; k < 20; ++k) points.push_back(random_disk_point(rng, 1, 1.0));
    for (const CVector& z : points) {
      const InvSqrtCoherent r = inv_sqrt_coherent(cov, z, 40);
      worst_single = std::max(worst_single, r.deviation);
      worst_leak = std::max(worst_leak, r.leakage);
    }
  }
  std::ostringstream detail;
  detail << "max leakage " << worst_leak;
  out.add("inv-sqrt.single-mode", worst_single, 1e-8, detail.str());

  const HermitianMatrix cov2 = HermitianMatrix::diagonal({0.5, 2.0});
  CVector z2(2);
  z2 << cplx(0.3, 0.0), cplx(0.0, 0.2);
  double worst_two = inv_sqrt_coherent(cov2, z2, 25).deviation;
  for (int k = 0; k < 10; ++k) {
    worst_two = std::max(worst_two, inv_sqrt_coherent(cov2, random_disk_point(rng, 2, 0.7), 25).deviation);
  }
  out.add("inv-sqrt.two-mode", worst_two, 1e-6);
}

void suite_finite_duality(Checks& out) {
  Rng rng(out.options.seed + 4);
  const int instances = count_or(out.options, 200);
  double joint_gap = 0.0;
  double average_gap = 0.0;
  double info_gap = 0.0;
  double identity_gap = 0.0;
  double completeness = 0.0;
  int singular = 0;
  for (int t = 0; t < instances; ++t) {
    const int d = uniform_int(rng, 1, 6);
    const int n_states = uniform_int(rng, 1, 6);
    const int n_outcomes = uniform_int(rng, 1, 6);
    // A quarter of the instances confine every state to a proper subspace so
    // that the average state is singular.
    const bool confined = d > 1 && t % 4 == 3;
    const int support = confined ? uniform_int(rng, 1, d - 1) : d;
    const CMatrix basis = random_unitary(rng, d).leftCols(support);

    std::vector<double> probs(static_cast<std::size_t>(n_states));
    std::vector<CMatrix> states;
    double total = 0.0;
    for (double& p : probs) total += (p = uniform(rng, 0.05, 1.0));
    for (double& p : probs) p /= total;
    for (int i = 0; i < n_states; ++i) {
      const CMatrix inner = random_density(rng, support, uniform_int(rng, 1, support));
      CMatrix rho = basis * inner * basis.adjoint();
      states.push_back(0.5 * (rho + rho.adjoint()));
    }
    const DiscreteEnsemble ens(probs, states);

    std::vector<CMatrix> raw;
    CMatrix sum = CMatrix::Zero(d, d);
    for (int j = 0; j < n_outcomes; ++j) {
      const CMatrix g = complex_gaussian(rng, d, uniform_int(rng, 1, d));
      raw.push_back(g * g.adjoint());
      sum += raw.back();
    }
    if (HermitianMatrix(sum).min_eigenvalue() < 1e-3) {
      // Low-rank sums get a full-rank last element.
      raw.back() += CMatrix::Identity(d, d);
      sum += CMatrix::Identity(d, d);
    }
    const CMatrix s_inv_half = inv_sqrtm(HermitianMatrix(sum)).matrix();
    std::vector<CMatrix> elements;
    std::vector<double> weights;
    for (const CMatrix& a : raw) {
      const double mu = uniform(rng, 0.5, 2.0);
      CMatrix m = s_inv_half * a * s_inv_half / mu;
      elements.push_back(0.5 * (m + m.adjoint()));
      weights.push_back(mu);
    }
    const DiscretePOVM povm(elements, weights);

    const DualPair dual = dual_pair_finite(ens, povm);
    if (dual.kernel_dim > 0) ++singular;
    const JointDistribution p = joint_distribution(ens, povm);
    const JointDistribution q = joint_distribution(dual.ensemble, dual.povm);
    for (std::size_t i = 0; i < ens.size(); ++i) {
      for (std::size_t j = 0; j < povm.size(); ++j) {
        const auto kept = std::find(dual.kept_outcomes.begin(), dual.kept_outcomes.end(), j);
        const double dual_value =
            kept == dual.kept_outcomes.end()
                ? 0.0
                : q.matrix()(kept - dual.kept_outcomes.begin(), static_cast<Eigen::Index>(i));
        joint_gap = std::max(joint_gap, std::abs(p.matrix()(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) - dual_value));
      }
    }
    average_gap = std::max(
        average_gap, (dual.ensemble.average_state().matrix() - ens.average_state().matrix()).norm());
    info_gap = std::max(info_gap, std::abs(mutual_information_discrete(p) - mutual_information_discrete(q)));
    completeness = std::max(completeness, dual.povm.completeness_defect());

    if (dual.kernel_dim == 0) {
      const CMatrix root = sqrtm(ens.average_state()).matrix();
      for (std::size_t i = 0; i < ens.size(); ++i) {
        const CMatrix lhs = root * dual.povm.elements()[i] * root;
        identity_gap = std::max(identity_gap, (lhs - ens.probs()[i] * ens.states()[i]).cwiseAbs().maxCoeff());
      }
    }
  }
  std::ostringstream detail;
  detail << instances << " instances, " << singular << " with singular average state";
  out.add("finite-duality.joint", joint_gap, 1e-12, detail.str());
  out.add("finite-duality.average-state", average_gap, 1e-12);
  out.add("finite-duality.information", info_gap, 1e-12);
  out.add("finite-duality.root-identity", identity_gap, 1e-12);
  out.add("finite-duality.dual-completeness", completeness, 1e-10);
}

// Brute force over s_1 on a 1e-4 grid with the budget saturated.
double brute_force_two_mode(const double omega[2], const double noise[2], double budget) {
  double best = -1.0;
  const double top = budget / omega[0];
  const long steps = static_cast<long>(std::floor(top / 1e-4));
  for (long i = 0; i <= steps + 1; ++i) {
    const double s1 = std::min(static_cast<double>(i) * 1e-4, top);
    const double s2 = std::max((budget - omega[0] * s1) / omega[1], 0.0);
    best = std::max(best, std::log1p(s1 / (noise[0] + 1.0)) + std::log1p(s2 / (noise[1] + 1.0)));
  }
  return best;
}

double kkt_residual(const WaterfillResult& r, const std::vector<double>& omega, const std::vector<double>& noise,
                    double budget) {
  double spent = 0.0;
  double worst = 0.0;
  for (std::size_t j = 0; j < omega.size(); ++j) {
    const double s = r.allocations[j];
    spent += omega[j] * s;
    worst = std::max(worst, std::max(-s, 0.0));
    const double threshold = omega[j] * (noise[j] + 1.0);
    if (s > 0.0) {
      worst = std::max(worst, std::abs(r.water_level - omega[j] * (noise[j] + 1.0 + s)) / r.water_level);
    } else {
      worst = std::max(worst, std::max(r.water_level - threshold, 0.0) / r.water_level);
    }
  }
  return std::max(worst, std::abs(spent - budget) / budget);
}

// det of a 2x2 Hermitian matrix.
double det2(const CMatrix& a) { return (a(0, 0) * a(1, 1) - a(0, 1) * a(1, 0)).real(); }

// Search over X = E [[a, c], [conj c, 1 - a]], |c| = r sqrt(a(1 - a)),
// Sigma = eps^{-1/2} X eps^{-1/2}; coarse grid refined until the a-step is 1e-3.
double brute_force_noncommuting(const CMatrix& eps_inv_half, const CMatrix& noise_plus_id, double budget) {
  const double base = std::log(det2(noise_plus_id));
  auto value = [&](double a, double r, double theta) {
    const cplx c = std::polar(r * std::sqrt(a * (1.0 - a)), theta);
    CMatrix x(2, 2);
    x << cplx(a), c, std::conj(c), cplx(1.0 - a);
    const CMatrix sigma = budget * eps_inv_half * x * eps_inv_half;
    return std::log(det2(noise_plus_id + sigma)) - base;
  };
  double best = -1.0;
  double ba = 0.5;
  double br = 0.0;
  double bt = 0.0;
  double step_a = 1.0 / 40.0;
  double step_r = 1.0 / 20.0;
  double step_t = 2.0 * kPi / 36.0;
  double lo_a = 0.0, hi_a = 1.0, lo_r = 0.0, hi_r = 1.0, lo_t = 0.0, hi_t = 2.0 * kPi;
  for (;;) {
    for (double a = lo_a; a <= hi_a + 1e-15; a += step_a) {
      for (double r = lo_r; r <= hi_r + 1e-15; r += step_r) {
        for (double t = lo_t; t <= hi_t + 1e-15; t += step_t) {
          const double aa = std::clamp(a, 0.0, 1.0);
          const double rr = std::clamp(r, 0.0, 1.0);
          const double v = value(aa, rr, t);
          if (v > best) {
            best = v;
            ba = aa;
            br = rr;
            bt = t;
          }
        }
      }
    }
    if (step_a <= 1e-3) break;
    lo_a = std::max(ba - 2.0 * step_a, 0.0);
    hi_a = std::min(ba + 2.0 * step_a, 1.0);
    lo_r = std::max(br - 2.0 * step_r, 0.0);
    hi_r = std::min(br + 2.0 * step_r, 1.0);
    lo_t = bt - 2.0 * step_t;
    hi_t = bt + 2.0 * step_t;
    step_a = std::max(step_a / 5.0, 1e-3);
    step_r = std::max(step_r / 5.0, 1e-3);
    step_t = std::max(step_t / 5.0, 1e-3);
  }
  return best;
}

void suite_waterfill(Checks& out) {
  {
    const std::vector<double> omega = {1.0, 1.0};
    const std::vector<double> noise = {0.0, 0.0};
    const WaterfillResult r = waterfill_diagonal(omega, noise, 2.0);
    out.add("waterfill.closed-form", std::abs(r.capacity - 2.0 * std::log(2.0)), 1e-12);
  }
  Rng rng(out.options.seed + 5);
  const int instances = count_or(out.options, 25);
  double brute_gap = 0.0;
  double kkt = 0.0;
  double rotated_gap = 0.0;
  for (int t = 0; t < instances; ++t) {
    const double omega[2] = {uniform(rng, 0.5, 2.0), uniform(rng, 0.5, 2.0)};
    const double noise[2] = {uniform(rng, 0.0, 2.0), uniform(rng, 0.0, 2.0)};
    const double budget = uniform(rng, 0.2, 4.0);
    const std::vector<double> w(omega, omega + 2);
    const std::vector<double> n(noise, noise + 2);
    const WaterfillResult r = waterfill_diagonal(w, n, budget);
    kkt = std::max(kkt, kkt_residual(r, w, n, budget));
    const double brute = brute_force_two_mode(omega, noise, budget);
    brute_gap = std::max({brute_gap, std::abs(r.capacity - brute), brute - r.capacity});

    // Same problem in a rotated common eigenbasis.
    const CMatrix u = random_unitary(rng, 2);
    const RVector wd = Eigen::Map<const RVector>(omega, 2);
    const RVector nd = Eigen::Map<const RVector>(noise, 2);
    const HermitianMatrix eps(u * wd.cast<cplx>().asDiagonal() * u.adjoint());
    const HermitianMatrix nm(u * nd.cast<cplx>().asDiagonal() * u.adjoint());
    const ConstrainedCapacity rotated = constrained_capacity(EnergyConstraint(eps, budget), nm);
    rotated_gap = std::max(rotated_gap, std::abs(rotated.capacity - r.capacity));
  }
  out.add("waterfill.commuting-brute-force", brute_gap, 1e-4, describe_count(instances));
  out.add("waterfill.kkt", kkt, 1e-9);
  out.add("waterfill.rotated-basis", rotated_gap, 1e-10);

  const int noncommuting = count_or(out.options, 8);
  double nc_gap = 0.0;
  int iterations = 0;
  for (int t = 0; t < noncommuting; ++t) {
    const HermitianMatrix eps = random_pd(rng, 2, 0.5, 2.0);
    HermitianMatrix noise = random_pd(rng, 2, 0.05, 2.0);
    const double budget = uniform(rng, 0.2, 4.0);
    const ConstrainedCapacity c = constrained_capacity(EnergyConstraint(eps, budget), noise);
    iterations = std::max(iterations, c.iterations);
    const CMatrix eps_inv_half = inv_sqrtm(eps).matrix();
    const CMatrix noise_plus_id = (noise + HermitianMatrix::identity(2)).matrix();
    const double brute = brute_force_noncommuting(eps_inv_half, noise_plus_id, budget);
    nc_gap = std::max({nc_gap, std::abs(c.capacity - brute), brute - c.capacity});
  }
  std::ostringstream detail;
  detail << noncommuting << " instances, max " << iterations << " ascent iterations";
  out.add("waterfill.noncommuting-brute-force", nc_gap, 1e-3, detail.str());
}

void suite_monte_carlo(Checks& out) {
  Rng rng(out.options.seed + 6);
  const int instances = count_or(out.options, 20);
  constexpr std::uint64_t kSamples = 100000;
  int misses = 0;
  double worst_z = 0.0;
  for (int t = 0; t < instances; ++t) {
    const int s = 1 + t % 2;
    const GaussianEnsemble ens(random_pd(rng, s, 0.05, 3.0), random_pd(rng, s, 0.05, 3.0));
    const GaussianObservable obs(random_invertible(rng, s), random_pd(rng, s, 0.05, 3.0));
    const std::uint64_t seed = rng();
    const MCEstimate est = mi_monte_carlo(ens, obs, kSamples, seed);
    const double exact = gaussian_ensemble_information(ens, obs);
    const double z = std::abs(est.value - exact) / est.std_error;
    worst_z = std::max(worst_z, z);
    if (!(z < 3.0)) ++misses;
  }
  const int allowed = instances - (instances * 9 + 9) / 10;
  std::ostringstream detail;
  detail << misses << " of " << instances << " outside 3 stderr (worst " << worst_z << " stderr)";
  out.add("monte-carlo.misses", misses, allowed, detail.str(), true);
}

// Differential entropy (w.r.t. mu) of a discretized density: -sum q log(q / mu).
double discrete_entropy(const OutputDistribution& dist, double cell) {
  double h = 0.0;
  for (double q : dist.masses) {
    if (q > 0.0) h -= q * std::log(q / cell);
  }
  return h;
}

void suite_max_entropy(Checks& out) {
  Rng rng(out.options.seed + 7);
  const int instances = count_or(out.options, 50);
  constexpr int kCutoff = 25;
  const OutcomeGrid grid(1, 6.0, 0.25);
  const GaussianObservable obs = GaussianObservable::heterodyne(1);
  const DiscretizedPOVM povm = discretize_povm(obs, grid, kCutoff);
  double worst = -1e300;
  double worst_defect = 0.0;
  for (int t = 0; t < instances; ++t) {
    const int parts = uniform_int(rng, 1, 3);
    CMatrix rho = CMatrix::Zero(kCutoff, kCutoff);
    for (int k = 0; k < parts; ++k) {
      const HermitianMatrix n = HermitianMatrix::diagonal({uniform(rng, 0.0, 1.0)});
      const TruncatedState part = displaced_thermal(n, random_disk_point(rng, 1, 1.0), kCutoff);
      worst_defect = std::max(worst_defect, part.trace_defect);
      rho += uniform(rng, 0.1, 1.0) * part.rho.matrix;
    }
    rho /= rho.trace().real();
    const FockOperator state{1, kCutoff, rho};
    const HermitianMatrix cov = covariance_of(state);
    const double analytic = max_output_entropy(obs, cov);
    const double discrete = discrete_entropy(fock_output_distribution(state, povm.povm), grid.cell_weight());
    worst = std::max(worst, discrete - analytic);
  }
  std::ostringstream detail;
  detail << instances << " states, max trace defect " << worst_defect;
  out.add("max-entropy.excess", worst, 1e-2, detail.str());
}

void suite_parseval(Checks& out) {
  Rng rng(out.options.seed + 8);
  const int instances = count_or(out.options, 50);
  constexpr int kCutoff = 10;
  const OutcomeGrid grid(1, 8.0, 0.2);
  double worst = 0.0;
  for (int t = 0; t < instances; ++t) {
    const FockOperator rho{1, kCutoff, random_density(rng, kCutoff, uniform_int(rng, 1, kCutoff))};
    const FockOperator sigma{1, kCutoff, random_density(rng, kCutoff, uniform_int(rng, 1, kCutoff))};
    worst = std::max(worst, parseval_check(rho, sigma, grid).residual);
  }
  out.add("parseval.residual", worst, 1e-3, describe_count(instances));
}

void suite_weyl(Checks& out) {
  Rng rng(out.options.seed + 9);
  const int instances = count_or(out.options, 100);
  constexpr int kCutoff = 40;
  constexpr int kBlock = kCutoff / 2;
  double worst = 0.0;
  for (int t = 0; t < instances; ++t) {
    const CVector z = random_disk_point(rng, 1, 1.0);
    const CVector w = random_disk_point(rng, 1, 1.0);
    const CMatrix dz = displacement_matrix(z, kCutoff).op.matrix;
    const CMatrix dw = displacement_matrix(w, kCutoff).op.matrix;
    const CMatrix dzw = displacement_matrix(z + w, kCutoff).op.matrix;
    const cplx phase = std::exp(cplx(0.0, -std::imag(std::conj(z(0)) * w(0))));
    const CMatrix gap = (dz * dw - phase * dzw).topLeftCorner(kBlock, kBlock);
    worst = std::max(worst, gap.norm());
  }
  out.add("weyl.residual", worst, 1e-8, describe_count(instances) + ", levels below 20");
}

void suite_dual_closure(Checks& out) {
  constexpr int kCutoff = 20;
  const HermitianMatrix sigma = HermitianMatrix::diagonal({1.0});
  const HermitianMatrix noise = HermitianMatrix::diagonal({1.0});
  const GaussianEnsemble gaussian(sigma, noise);
  const DualGaussianResult dual = dual_gaussian_observable(gaussian);

  // Letters on a grid with discretized Gaussian prior weights.
  const OutcomeGrid letters(1, 4.0, 0.25);
  std::vector<double> probs;
  std::vector<CMatrix> states;
  double total = 0.0;
  for (std::size_t i = 0; i < letters.size(); ++i) {
    const CVector z = letters.point(i);
    const double p = std::exp(-std::norm(z(0)) / sigma(0, 0).real());
    probs.push_back(p);
    total += p;
    CMatrix rho = displaced_thermal(noise, z, kCutoff).rho.matrix;
    rho /= rho.trace().real();
    states.push_back(rho);
  }
  for (double& p : probs) p /= total;
  const DiscreteEnsemble ens(probs, states);
  const DiscretizedPOVM heterodyne = discretize_povm(GaussianObservable::heterodyne(1), OutcomeGrid(1, 6.0, 0.25), kCutoff);
  const DualPair pair = dual_pair_finite(ens, heterodyne.povm);

  const GaussianObservable analytic = dual.observable();
  std::vector<TruncatedState> probes;
  probes.push_back(gaussian_state_fock(HermitianMatrix::diagonal({0.0}), kCutoff, StateMethod::kEigenproduct));
  probes.push_back(gaussian_state_fock(HermitianMatrix::diagonal({0.5}), kCutoff, StateMethod::kEigenproduct));
  probes.push_back(displaced_thermal(HermitianMatrix::diagonal({0.0}), CVector::Constant(1, cplx(0.4, -0.3)), kCutoff));
  const std::vector<GaussianState> probe_states = {
      GaussianState(HermitianMatrix::diagonal({0.0})), GaussianState(HermitianMatrix::diagonal({0.5})),
      GaussianState(HermitianMatrix::diagonal({0.0}), CVector::Constant(1, cplx(0.4, -0.3)))};
  double worst_tv = 0.0;
  for (std::size_t k = 0; k < probes.size(); ++k) {
    double tv = 0.0;
    for (std::size_t i = 0; i < ens.size(); ++i) {
      const double q = trace_overlap(probes[k].rho.matrix, pair.povm.elements()[i]);
      const double p = output_density(probe_states[k], analytic, letters.point(i)) * letters.cell_weight();
      tv += 0.5 * std::abs(q - p);
    }
    worst_tv = std::max(worst_tv, tv);
  }
  std::ostringstream detail;
  detail << "dual K = " << dual.rescale(0, 0).real() << ", dual noise = " << dual.dual_noise(0, 0).real()
         << ", " << pair.dropped_outcomes.size() << " dropped outcomes";
  out.add("dual-closure.statistics", worst_tv, 5e-2, detail.str());
  const double average_gap = (pair.ensemble.average_state().matrix() - ens.average_state().matrix()).norm();
  out.add("dual-closure.average-state", average_gap, 5e-2);
}

struct Suite {
  SuiteInfo info;
  std::function<void(Checks&)> run;
  /// Wall-clock budget in seconds; <= 0 means none.
  double budget_seconds;
};

const std::vector<Suite>& suites() {
  static const std::vector<Suite> registry = {
      {{"determinant-identity", "dual capacity determinant identity on random pairs, s = 1..4"},
       suite_determinant_identity, 10.0},
      {{"dual-scalar", "closed-form dual of Sigma = N = 1"}, suite_dual_scalar, 0.0},
      {{"capacity-consistency", "accessible information = dual chi-capacity = heterodyne information"},
       suite_capacity_consistency, 0.0},
      {{"k-invariance", "capacity and information under random invertible rescalings"}, suite_k_invariance, 0.0},
      {{"fock-density", "Fock oracle output distribution against the analytic density"}, suite_fock_density, 30.0},
      {{"inv-sqrt", "inverse square root of a Gaussian state on coherent vectors"}, suite_inv_sqrt, 0.0},
      {{"finite-duality", "finite ensemble-observable duality on random instances"}, suite_finite_duality, 0.0},
      {{"waterfill", "water-filling against brute force and KKT conditions"}, suite_waterfill, 0.0},
      {{"monte-carlo", "Monte Carlo information against the analytic value"}, suite_monte_carlo, 120.0},
      {{"max-entropy", "Gaussian output entropy bounds truncated-state output entropy"}, suite_max_entropy, 0.0},
      {{"parseval", "Parseval identity for characteristic functions"}, suite_parseval, 0.0},
      {{"weyl", "Weyl relation of truncated displacements"}, suite_weyl, 0.0},
      {{"dual-closure", "finite dual of a discretized Gaussian ensemble against the analytic dual"},
       suite_dual_closure, 0.0},
  };
  return registry;
}

}  // namespace

bool SuiteReport::pass() const {
  return std::all_of(checks.begin(), checks.end(), [](const CheckResult& c) { return c.pass; });
}

const std::vector<SuiteInfo>& suite_catalog() {
  static const std::vector<SuiteInfo> catalog = [] {
    std::vector<SuiteInfo> out;
    for (const Suite& s : suites()) out.push_back(s.info);
    return out;
  }();
  return catalog;
}

std::string resolve_suite(const std::string& name) {
  if (name == "chu") return "determinant-identity";
  for (const Suite& s : suites()) {
    if (s.info.name == name) return name;
  }
  std::ostringstream os;
  os << "unknown suite '" << name << "'; valid suites:";
  for (const Suite& s : suites()) os << ' ' << s.info.name;
  throw InvalidInput(os.str());
}

SuiteReport run_suite(const std::string& name, const SuiteOptions& options) {
  const std::string canonical = resolve_suite(name);
  const auto it = std::find_if(suites().begin(), suites().end(),
                               [&](const Suite& s) { return s.info.name == canonical; });
  Checks checks{options, {}};
  const auto start = std::chrono::steady_clock::now();
  it->run(checks);
  const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  if (it->budget_seconds > 0.0) checks.add(canonical + ".runtime-seconds", seconds, it->budget_seconds);
  return {canonical, std::move(checks.results), seconds};
}

}  // namespace gaussmax
