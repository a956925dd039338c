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

// Truncated Fock-space representation of states, displacements and
// measurements, used as a brute-force oracle for the analytic formulas.
//
// Each of the s modes keeps levels 0..d-1; multimode operators act on the
// D = d^s dimensional tensor product with mode 0 as the most significant
// index. Truncation is never hidden: every constructor returns the leakage or
// defect it incurred next to the matrix.

#pragma once

#include <vector>

#include "gaussmax/duality.hpp"
#include "gaussmax/gaussian.hpp"
#include "gaussmax/linalg.hpp"

namespace gaussmax {

struct FockOperator {
  int modes = 0;
  int cutoff = 0;
  CMatrix matrix;

  Eigen::Index total_dim() const { return matrix.rows(); }
};

/// d^s; raises InvalidInput when s < 1, d < 2 or the dimension overflows.
Eigen::Index fock_dimension(int modes, int cutoff);

/// Lowering operators a_1..a_s.
std::vector<FockOperator> ladder_operators(int modes, int cutoff);

/// Total number operator sum_k a_k^dagger a_k.
FockOperator number_operator(int modes, int cutoff);

struct Displacement {
  FockOperator op;
  /// ||D D^dagger - I||_F.
  double unitarity_defect = 0.0;
  /// Whether d >= |z_k|^2 + 6|z_k| holds for every mode.
  bool within_cutoff_heuristic = true;
};

/// D(z) = exp(a^dagger z - z^* a), exponentiated through the Hermitian
/// eigendecomposition of i(a^dagger z - z^* a) mode by mode.
Displacement displacement_matrix(const CVector& z, int cutoff);

/// Exact single-mode matrix elements <m|D(alpha)|n>, m < rows, n < cols, from
/// the associated Laguerre closed form. Independent of any truncated
/// exponential.
CMatrix displacement_elements(cplx alpha, int rows, int cols);

struct CoherentState {
  CVector amplitudes;
  /// 1 - ||amplitudes||^2.
  double leakage = 0.0;
};

CoherentState coherent_state(const CVector& z, int cutoff);

struct TruncatedState {
  FockOperator rho;
  /// 1 - Tr rho.
  double trace_defect = 0.0;
};

enum class StateMethod { kEigenproduct, kPQuadrature };

/// Gauge-invariant Gaussian state rho_Lambda. kEigenproduct needs diagonal
/// Lambda and builds the thermal product; kPQuadrature integrates the
/// P-representation with a tensor Gauss-Hermite rule of `order` points per real
/// axis (order^{2s} nodes) and needs nondegenerate Lambda.
TruncatedState gaussian_state_fock(const HermitianMatrix& cov, int cutoff, StateMethod method,
                                   int order = 40);

/// D(z) rho_N D(z)^dagger for diagonal N, built from exact displacement
/// elements so neither D nor rho_N is truncated before the product.
TruncatedState displaced_thermal(const HermitianMatrix& noise, const CVector& z, int cutoff);

struct InvSqrtCoherent {
  CVector numeric;
  CVector analytic;
  /// ||numeric - analytic|| / ||analytic||.
  double deviation = 0.0;
  /// Leakage of the truncated coherent state at sqrt(I + Lambda^{-1}) z.
  double leakage = 0.0;
};

/// rho_Lambda^{-1/2}|z> computed two ways: numerically from the truncated
/// state, and as sqrt(det(Lambda + I)) exp(z^* Lambda^{-1} z / 2)
/// |sqrt(I + Lambda^{-1}) z>. Lambda must be diagonal and nondegenerate.
InvSqrtCoherent inv_sqrt_coherent(const HermitianMatrix& cov, const CVector& z, int cutoff);

/// Square grid on C^s: every real and imaginary coordinate runs over
/// {-L, -L + h, ..., L}.
class OutcomeGrid {
 public:
  OutcomeGrid(int modes, double extent, double spacing);

  int modes() const { return modes_; }
  double extent() const { return extent_; }
  double spacing() const { return spacing_; }
  const std::vector<double>& axis() const { return axis_; }
  /// Number of grid points, axis().size()^{2s}.
  std::size_t size() const { return size_; }
  CVector point(std::size_t index) const;
  /// Cell mass under mu, h^{2s} / pi^s.
  double cell_weight() const;
  /// Whether the grid reaches 5 standard deviations of every real coordinate
  /// of a centred complex Gaussian with covariance `cov`.
  bool covers(const HermitianMatrix& cov) const;

 private:
  int modes_;
  double extent_;
  double spacing_;
  std::vector<double> axis_;
  std::size_t size_;
};

struct DiscretizedPOVM {
  DiscretePOVM povm;
  std::vector<CVector> outcomes;
  /// ||sum_i m_i mu_i - I||_F on the full truncated space.
  double completeness_defect = 0.0;
};

/// Elements m(z_i) = D(K z_i) rho_N D(K z_i)^dagger |det K|^2 on the grid with
/// weights mu_i = cell_weight(). For s >= 2 the noise must be diagonal.
DiscretizedPOVM discretize_povm(const GaussianObservable& obs, const OutcomeGrid& grid, int cutoff);

/// Completeness defect restricted to basis states whose every mode level is
/// <= max_level.
double block_completeness_defect(const DiscretePOVM& povm, int modes, int cutoff, int max_level);

struct OutputDistribution {
  std::vector<double> masses;
  double total = 0.0;
  /// Sum of the negative parts removed by clipping.
  double clipped = 0.0;
};

/// q_i = Tr(rho m_i) mu_i, clipped at 0.
OutputDistribution fock_output_distribution(const FockOperator& rho, const DiscretePOVM& povm);

struct ParsevalCheck {
  double lhs = 0.0;
  double rhs = 0.0;
  /// |lhs - rhs| / |lhs|, or the absolute gap when |lhs| < 1e-8.
  double residual = 0.0;
};

/// Tr rho sigma^dagger against the grid quadrature of
/// Tr(rho D(w)) conj(Tr(sigma D(w))) over mu.
ParsevalCheck parseval_check(const FockOperator& rho, const FockOperator& sigma, const OutcomeGrid& grid);

/// Average of U_phi^* rho U_phi over phi = 2 pi k / n_phases.
FockOperator gauge_average(const FockOperator& rho, int n_phases);

/// Second-moment matrix with entries Tr(a_j rho a_k^dagger), mean included.
HermitianMatrix covariance_of(const FockOperator& rho);

/// Tr(a_j rho).
CVector mean_of(const FockOperator& rho);

/// Re Tr(rho m).
double trace_overlap(const CMatrix& rho, const CMatrix& m);

}  // namespace gaussmax
