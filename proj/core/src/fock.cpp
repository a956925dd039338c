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

#include "gaussmax/fock.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "gaussmax/errors.hpp"

namespace gaussmax {

namespace {

constexpr double kPi = std::numbers::pi;
// Thermal weights beyond this tail mass are not represented.
constexpr double kThermalTail = 1e-17;
constexpr int kMaxThermalPad = 5000;

CMatrix kron(const CMatrix& a, const CMatrix& b) {
  CMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    for (Eigen::Index j = 0; j < a.cols(); ++j) {
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    }
  }
  return out;
}

CVector kron(const CVector& a, const CVector& b) {
  CVector out(a.size() * b.size());
  for (Eigen::Index i = 0; i < a.size(); ++i) out.segment(i * b.size(), b.size()) = a(i) * b;
  return out;
}

CMatrix kron_all(const std::vector<CMatrix>& factors) {
  CMatrix out = factors.front();
  for (std::size_t k = 1; k < factors.size(); ++k) out = kron(out, factors[k]);
  return out;
}

CMatrix lowering(int cutoff) {
  CMatrix a = CMatrix::Zero(cutoff, cutoff);
  for (int n = 1; n < cutoff; ++n) a(n - 1, n) = std::sqrt(static_cast<double>(n));
  return a;
}

// Level of mode k in basis index idx.
int mode_level(Eigen::Index idx, int k, int modes, int cutoff) {
  for (int j = modes - 1; j > k; --j) idx /= cutoff;
  return static_cast<int>(idx % cutoff);
}

void require_modes(const FockOperator& op) {
  if (op.total_dim() != fock_dimension(op.modes, op.cutoff) || op.matrix.cols() != op.total_dim()) {
    throw InvalidInput("Fock operator shape does not match its modes and cutoff");
  }
}

struct ThermalWeights {
  RVector weights;
  double tail = 0.0;
};

ThermalWeights thermal_weights(double n, int min_levels) {
  ThermalWeights out;
  if (n == 0.0) {
    out.weights = RVector::Zero(std::max(min_levels, 1));
    out.weights(0) = 1.0;
    return out;
  }
  const double q = n / (n + 1.0);
  int pad = static_cast<int>(std::ceil(std::log(kThermalTail) / std::log(q)));
  pad = std::clamp(pad, std::max(min_levels, 1), kMaxThermalPad);
  out.weights.resize(pad);
  double w = 1.0 / (n + 1.0);
  for (int k = 0; k < pad; ++k) {
    out.weights(k) = w;
    w *= q;
  }
  out.tail = std::pow(q, pad);
  return out;
}

RVector gauss_hermite_probability_nodes(int order, RVector& weights) {
  // Golub-Welsch for the weight exp(-x^2); weights are normalized to sum to 1.
  Eigen::MatrixXd jacobi = Eigen::MatrixXd::Zero(order, order);
  for (int k = 0; k + 1 < order; ++k) {
    jacobi(k, k + 1) = jacobi(k + 1, k) = std::sqrt(0.5 * (k + 1));
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(jacobi);
  weights = solver.eigenvectors().row(0).transpose().array().square();
  return solver.eigenvalues();
}

}  // namespace

double trace_overlap(const CMatrix& rho, const CMatrix& m) {
  return (rho.transpose().cwiseProduct(m)).sum().real();
}

Eigen::Index fock_dimension(int modes, int cutoff) {
  if (modes < 1) throw InvalidInput("Fock space needs at least one mode");
  if (cutoff < 2) throw InvalidInput("Fock cutoff must be at least 2");
  Eigen::Index dim = 1;
  for (int k = 0; k < modes; ++k) {
    if (dim > (Eigen::Index{1} << 24) / cutoff) throw InvalidInput("Fock space dimension too large");
    dim *= cutoff;
  }
  return dim;
}

std::vector<FockOperator> ladder_operators(int modes, int cutoff) {
  fock_dimension(modes, cutoff);
  const CMatrix a = lowering(cutoff);
  const CMatrix id = CMatrix::Identity(cutoff, cutoff);
  std::vector<FockOperator> out;
  for (int k = 0; k < modes; ++k) {
    std::vector<CMatrix> factors(static_cast<std::size_t>(modes), id);
    factors[static_cast<std::size_t>(k)] = a;
    out.push_back({modes, cutoff, kron_all(factors)});
  }
  return out;
}

FockOperator number_operator(int modes, int cutoff) {
  const Eigen::Index dim = fock_dimension(modes, cutoff);
  CMatrix n = CMatrix::Zero(dim, dim);
  for (Eigen::Index i = 0; i < dim; ++i) {
    int total = 0;
    for (int k = 0; k < modes; ++k) total += mode_level(i, k, modes, cutoff);
    n(i, i) = static_cast<double>(total);
  }
  return {modes, cutoff, n};
}

Displacement displacement_matrix(const CVector& z, int cutoff) {
  const int modes = static_cast<int>(z.size());
  fock_dimension(modes, cutoff);
  const CMatrix a = lowering(cutoff);
  Displacement out;
  std::vector<CMatrix> factors;
  for (int k = 0; k < modes; ++k) {
    const cplx zk = z(k);
    const double r = std::abs(zk);
    if (cutoff < r * r + 6.0 * r) out.within_cutoff_heuristic = false;
    // G = i(a^dagger z - z^* a) is Hermitian and D = exp(-iG).
    const CMatrix g = cplx(0.0, 1.0) * (a.adjoint() * zk - std::conj(zk) * a);
    const HermitianEigen e = eigh(HermitianMatrix(g));
    CVector phases(e.values.size());
    for (Eigen::Index i = 0; i < e.values.size(); ++i) phases(i) = std::exp(cplx(0.0, -e.values(i)));
    factors.push_back(e.vectors * phases.asDiagonal() * e.vectors.adjoint());
  }
  out.op = {modes, cutoff, kron_all(factors)};
  const Eigen::Index dim = out.op.total_dim();
  out.unitarity_defect = (out.op.matrix * out.op.matrix.adjoint() - CMatrix::Identity(dim, dim)).norm();
  return out;
}

CMatrix displacement_elements(cplx alpha, int rows, int cols) {
  if (rows < 1 || cols < 1) throw InvalidInput("displacement_elements: empty block");
  CMatrix out = CMatrix::Zero(rows, cols);
  const double r = std::abs(alpha);
  if (r == 0.0) {
    for (int i = 0; i < std::min(rows, cols); ++i) out(i, i) = 1.0;
    return out;
  }
  const double x = r * r;
  const double log_r = std::log(r);
  const cplx unit = alpha / r;
  // <m|D|n> = sqrt(n!/m!) alpha^{m-n} e^{-x/2} L_n^{(m-n)}(x) for m >= n, and
  // sqrt(m!/n!) (-conj alpha)^{n-m} e^{-x/2} L_m^{(n-m)}(x) otherwise.
  auto fill_diagonal = [&](int offset, bool below) {
    const int a = offset;
    const int count = below ? std::min(cols, rows - a) : std::min(rows, cols - a);
    if (count <= 0) return;
    const cplx phase_unit = below ? unit : -std::conj(unit);
    const cplx phase = std::pow(phase_unit, a);
    double l_prev = 0.0;
    double l_curr = 1.0;
    for (int k = 0; k < count; ++k) {
      if (k == 1) {
        l_prev = 1.0;
        l_curr = 1.0 + a - x;
      } else if (k > 1) {
        const double next = ((2.0 * k - 1.0 + a - x) * l_curr - (k - 1.0 + a) * l_prev) / k;
        l_prev = l_curr;
        l_curr = next;
      }
      const double log_pref =
          0.5 * (std::lgamma(k + 1.0) - std::lgamma(k + a + 1.0)) + a * log_r - 0.5 * x;
      const cplx value = phase * std::exp(log_pref) * l_curr;
      if (below) {
        out(k + a, k) = value;
      } else {
        out(k, k + a) = value;
      }
    }
  };
  for (int a = 0; a < rows; ++a) fill_diagonal(a, true);
  for (int a = 1; a < cols; ++a) fill_diagonal(a, false);
  return out;
}

CoherentState coherent_state(const CVector& z, int cutoff) {
  const int modes = static_cast<int>(z.size());
  fock_dimension(modes, cutoff);
  CoherentState out;
  for (int k = 0; k < modes; ++k) {
    CVector amp(cutoff);
    amp(0) = std::exp(-0.5 * std::norm(z(k)));
    for (int n = 1; n < cutoff; ++n) amp(n) = amp(n - 1) * z(k) / std::sqrt(static_cast<double>(n));
    out.amplitudes = k == 0 ? amp : kron(out.amplitudes, amp);
  }
  out.leakage = 1.0 - out.amplitudes.squaredNorm();
  return out;
}

TruncatedState gaussian_state_fock(const HermitianMatrix& cov, int cutoff, StateMethod method, int order) {
  const int modes = cov.dim();
  const Eigen::Index dim = fock_dimension(modes, cutoff);
  TruncatedState out;
  out.rho = {modes, cutoff, CMatrix::Zero(dim, dim)};

  if (method == StateMethod::kEigenproduct) {
    const double scale = std::max(1.0, cov.matrix().cwiseAbs().maxCoeff());
    if (!cov.is_diagonal(kHermitianTol * scale)) {
      throw InvalidInput("eigenproduct construction requires a diagonal covariance");
    }
    const HermitianMatrix lambda = require_psd(cov, "state covariance");
    std::vector<CMatrix> factors;
    for (int k = 0; k < modes; ++k) {
      const RVector w = thermal_weights(std::max(lambda(k, k).real(), 0.0), cutoff).weights.head(cutoff);
      factors.push_back(w.cast<cplx>().asDiagonal());
    }
    out.rho.matrix = kron_all(factors);
  } else {
    require_nondegenerate(cov, kMinEig, "state covariance");
    if (order < 2) throw InvalidInput("quadrature order must be at least 2");
    RVector w;
    const RVector x = gauss_hermite_probability_nodes(order, w);
    const CMatrix root = sqrtm(cov).matrix();
    const int axes = 2 * modes;
    std::size_t nodes = 1;
    for (int k = 0; k < axes; ++k) nodes *= static_cast<std::size_t>(order);

    constexpr std::size_t kChunk = 2048;
    CMatrix columns(dim, static_cast<Eigen::Index>(std::min(nodes, kChunk)));
    std::vector<int> digits(static_cast<std::size_t>(axes), 0);
    std::size_t filled = 0;
    auto flush = [&]() {
      const auto block = columns.leftCols(static_cast<Eigen::Index>(filled));
      out.rho.matrix.noalias() += block * block.adjoint();
      filled = 0;
    };
    for (std::size_t node = 0; node < nodes; ++node) {
      CVector g(modes);
      double weight = 1.0;
      for (int k = 0; k < modes; ++k) {
        const int ir = digits[static_cast<std::size_t>(2 * k)];
        const int ii = digits[static_cast<std::size_t>(2 * k + 1)];
        g(k) = cplx(x(ir), x(ii));
        weight *= w(ir) * w(ii);
      }
      columns.col(static_cast<Eigen::Index>(filled)) =
          std::sqrt(weight) * coherent_state(root * g, cutoff).amplitudes;
      if (++filled == static_cast<std::size_t>(columns.cols())) flush();
      for (int k = axes - 1; k >= 0; --k) {
        if (++digits[static_cast<std::size_t>(k)] < order) break;
        digits[static_cast<std::size_t>(k)] = 0;
      }
    }
    if (filled > 0) flush();
    out.rho.matrix = 0.5 * (out.rho.matrix + out.rho.matrix.adjoint());
  }
  out.trace_defect = 1.0 - out.rho.matrix.trace().real();
  return out;
}

TruncatedState displaced_thermal(const HermitianMatrix& noise, const CVector& z, int cutoff) {
  const int modes = noise.dim();
  require_same_dim(modes, z.size(), "displaced_thermal");
  fock_dimension(modes, cutoff);
  const double scale = std::max(1.0, noise.matrix().cwiseAbs().maxCoeff());
  if (!noise.is_diagonal(kHermitianTol * scale)) {
    throw UnsupportedInput("displaced thermal states require a diagonal noise matrix");
  }
  const HermitianMatrix n = require_psd(noise, "noise");
  std::vector<CMatrix> factors;
  for (int k = 0; k < modes; ++k) {
    const ThermalWeights t = thermal_weights(std::max(n(k, k).real(), 0.0), 1);
    const CMatrix b = displacement_elements(z(k), cutoff, static_cast<int>(t.weights.size()));
    factors.push_back(b * t.weights.cast<cplx>().asDiagonal() * b.adjoint());
  }
  TruncatedState out;
  out.rho = {modes, cutoff, kron_all(factors)};
  out.rho.matrix = 0.5 * (out.rho.matrix + out.rho.matrix.adjoint());
  out.trace_defect = 1.0 - out.rho.matrix.trace().real();
  return out;
}

InvSqrtCoherent inv_sqrt_coherent(const HermitianMatrix& cov, const CVector& z, int cutoff) {
  const int modes = cov.dim();
  require_same_dim(modes, z.size(), "inv_sqrt_coherent");
  require_nondegenerate(cov, kMinEig, "state covariance");
  const TruncatedState state = gaussian_state_fock(cov, cutoff, StateMethod::kEigenproduct);

  // Pseudo-inverse square root; the cutoff only guards exact zeros because
  // thermal weights span many orders of magnitude at high levels.
  const HermitianEigen e = eigh(HermitianMatrix(state.rho.matrix));
  const double cutoff_eig = e.values.maxCoeff() * 1e-280;
  RVector inv_root(e.values.size());
  for (Eigen::Index i = 0; i < e.values.size(); ++i) {
    inv_root(i) = e.values(i) > cutoff_eig ? 1.0 / std::sqrt(e.values(i)) : 0.0;
  }
  const CoherentState coherent = coherent_state(z, cutoff);

  InvSqrtCoherent out;
  out.numeric = e.vectors * (inv_root.asDiagonal() * (e.vectors.adjoint() * coherent.amplitudes));

  CVector zeta(modes);
  double quad = 0.0;
  double log_det_plus = 0.0;
  for (int k = 0; k < modes; ++k) {
    const double lambda = cov(k, k).real();
    zeta(k) = std::sqrt(1.0 + 1.0 / lambda) * z(k);
    quad += std::norm(z(k)) / lambda;
    log_det_plus += std::log1p(lambda);
  }
  const CoherentState shifted = coherent_state(zeta, cutoff);
  out.analytic = std::exp(0.5 * log_det_plus + 0.5 * quad) * shifted.amplitudes;
  out.leakage = shifted.leakage;
  out.deviation = (out.numeric - out.analytic).norm() / out.analytic.norm();
  return out;
}

OutcomeGrid::OutcomeGrid(int modes, double extent, double spacing)
    : modes_(modes), extent_(extent), spacing_(spacing) {
  if (modes_ < 1) throw InvalidInput("grid needs at least one mode");
  if (!(extent_ > 0.0) || !(spacing_ > 0.0) || !std::isfinite(extent_) || !std::isfinite(spacing_)) {
    throw InvalidInput("grid extent and spacing must be positive");
  }
  const double steps = 2.0 * extent_ / spacing_;
  const long n = std::lround(steps);
  if (std::abs(steps - static_cast<double>(n)) > 1e-9 * std::max(1.0, steps)) {
    throw InvalidInput("grid extent must be a multiple of half the spacing");
  }
  axis_.resize(static_cast<std::size_t>(n + 1));
  for (long i = 0; i <= n; ++i) axis_[static_cast<std::size_t>(i)] = -extent_ + static_cast<double>(i) * spacing_;
  size_ = 1;
  for (int k = 0; k < 2 * modes_; ++k) {
    if (size_ > std::size_t{100000000} / axis_.size()) throw InvalidInput("grid has too many points");
    size_ *= axis_.size();
  }
}

CVector OutcomeGrid::point(std::size_t index) const {
  if (index >= size_) throw InvalidInput("grid index out of range");
  const std::size_t n = axis_.size();
  std::vector<double> coords(static_cast<std::size_t>(2 * modes_));
  for (int k = 2 * modes_ - 1; k >= 0; --k) {
    coords[static_cast<std::size_t>(k)] = axis_[index % n];
    index /= n;
  }
  CVector z(modes_);
  for (int k = 0; k < modes_; ++k) {
    z(k) = cplx(coords[static_cast<std::size_t>(2 * k)], coords[static_cast<std::size_t>(2 * k + 1)]);
  }
  return z;
}

double OutcomeGrid::cell_weight() const { return std::pow(spacing_ * spacing_ / kPi, modes_); }

bool OutcomeGrid::covers(const HermitianMatrix& cov) const {
  require_same_dim(modes_, cov.dim(), "OutcomeGrid::covers");
  const double sd = std::sqrt(std::max(cov.eigenvalues().maxCoeff(), 0.0) / 2.0);
  return extent_ >= 5.0 * sd;
}

DiscretizedPOVM discretize_povm(const GaussianObservable& obs, const OutcomeGrid& grid, int cutoff) {
  require_same_dim(obs.dim(), grid.modes(), "discretize_povm");
  const double jacobian = std::exp(2.0 * obs.log_abs_det_rescale());
  std::vector<CMatrix> elements;
  std::vector<CVector> outcomes;
  elements.reserve(grid.size());
  outcomes.reserve(grid.size());
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const CVector z = grid.point(i);
    elements.push_back(jacobian * displaced_thermal(obs.noise(), obs.rescale() * z, cutoff).rho.matrix);
    outcomes.push_back(z);
  }
  std::vector<double> weights(grid.size(), grid.cell_weight());
  DiscretizedPOVM out{DiscretePOVM::approximate(std::move(elements), std::move(weights)), std::move(outcomes), 0.0};
  out.completeness_defect = out.povm.completeness_defect();
  return out;
}

double block_completeness_defect(const DiscretePOVM& povm, int modes, int cutoff, int max_level) {
  const Eigen::Index dim = fock_dimension(modes, cutoff);
  require_same_dim(dim, povm.dim(), "block_completeness_defect");
  CMatrix acc = -CMatrix::Identity(dim, dim);
  for (std::size_t j = 0; j < povm.size(); ++j) acc += povm.weights()[j] * povm.elements()[j];
  std::vector<Eigen::Index> keep;
  for (Eigen::Index i = 0; i < dim; ++i) {
    bool low = true;
    for (int k = 0; k < modes; ++k) low = low && mode_level(i, k, modes, cutoff) <= max_level;
    if (low) keep.push_back(i);
  }
  double sum = 0.0;
  for (Eigen::Index i : keep) {
    for (Eigen::Index j : keep) sum += std::norm(acc(i, j));
  }
  return std::sqrt(sum);
}

OutputDistribution fock_output_distribution(const FockOperator& rho, const DiscretePOVM& povm) {
  require_modes(rho);
  require_same_dim(rho.total_dim(), povm.dim(), "fock_output_distribution");
  OutputDistribution out;
  out.masses.resize(povm.size());
  for (std::size_t j = 0; j < povm.size(); ++j) {
    double q = trace_overlap(rho.matrix, povm.elements()[j]) * povm.weights()[j];
    if (q < 0.0) {
      out.clipped -= q;
      q = 0.0;
    }
    out.masses[j] = q;
    out.total += q;
  }
  return out;
}

ParsevalCheck parseval_check(const FockOperator& rho, const FockOperator& sigma, const OutcomeGrid& grid) {
  require_modes(rho);
  require_modes(sigma);
  if (rho.modes != sigma.modes || rho.cutoff != sigma.cutoff) {
    throw InvalidInput("parseval_check: operators live on different spaces");
  }
  require_same_dim(rho.modes, grid.modes(), "parseval_check");
  ParsevalCheck out;
  out.lhs = (rho.matrix * sigma.matrix.adjoint()).trace().real();
  cplx acc = 0.0;
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const CVector w = grid.point(i);
    std::vector<CMatrix> factors;
    for (int k = 0; k < rho.modes; ++k) factors.push_back(displacement_elements(w(k), rho.cutoff, rho.cutoff));
    const CMatrix d = kron_all(factors);
    const cplx chi_rho = (rho.matrix.transpose().cwiseProduct(d)).sum();
    const cplx chi_sigma = (sigma.matrix.transpose().cwiseProduct(d)).sum();
    acc += chi_rho * std::conj(chi_sigma);
  }
  out.rhs = acc.real() * grid.cell_weight();
  const double gap = std::abs(out.lhs - out.rhs);
  out.residual = std::abs(out.lhs) < 1e-8 ? gap : gap / std::abs(out.lhs);
  return out;
}

FockOperator gauge_average(const FockOperator& rho, int n_phases) {
  require_modes(rho);
  if (n_phases < 2) throw InvalidInput("gauge_average needs at least two phases");
  const RVector levels = number_operator(rho.modes, rho.cutoff).matrix.diagonal().real();
  FockOperator out{rho.modes, rho.cutoff, CMatrix::Zero(rho.total_dim(), rho.total_dim())};
  for (int k = 0; k < n_phases; ++k) {
    const double phi = 2.0 * kPi * k / n_phases;
    CVector u(levels.size());
    for (Eigen::Index i = 0; i < levels.size(); ++i) u(i) = std::exp(cplx(0.0, phi * levels(i)));
    out.matrix += u.conjugate().asDiagonal() * rho.matrix * u.asDiagonal();
  }
  out.matrix /= static_cast<double>(n_phases);
  return out;
}

HermitianMatrix covariance_of(const FockOperator& rho) {
  require_modes(rho);
  const auto a = ladder_operators(rho.modes, rho.cutoff);
  CMatrix cov(rho.modes, rho.modes);
  for (int j = 0; j < rho.modes; ++j) {
    const CMatrix left = a[static_cast<std::size_t>(j)].matrix * rho.matrix;
    for (int k = 0; k < rho.modes; ++k) {
      cov(j, k) = (left * a[static_cast<std::size_t>(k)].matrix.adjoint()).trace();
    }
  }
  return HermitianMatrix(0.5 * (cov + cov.adjoint()));
}

CVector mean_of(const FockOperator& rho) {
  require_modes(rho);
  const auto a = ladder_operators(rho.modes, rho.cutoff);
  CVector mean(rho.modes);
  for (int j = 0; j < rho.modes; ++j) mean(j) = (a[static_cast<std::size_t>(j)].matrix * rho.matrix).trace();
  return mean;
}

}  // namespace gaussmax
