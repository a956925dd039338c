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

#include "instances.hpp"

#include <cmath>
#include <stdexcept>

namespace gaussmax::testing {

CMatrix random_complex(Rng& rng, int rows, int cols) {
  std::normal_distribution<double> normal;
  CMatrix g(rows, cols);
  for (int i = 0; i < rows; ++i) {
    for (int j = 0; j < cols; ++j) {
      const double re = normal(rng);
      g(i, j) = cplx(re, normal(rng));
    }
  }
  return g;
}

CMatrix random_unitary(Rng& rng, int dim) {
  Eigen::HouseholderQR<CMatrix> qr(random_complex(rng, dim, dim));
  return qr.householderQ() * CMatrix::Identity(dim, dim);
}

HermitianMatrix random_pd(Rng& rng, int dim, double lo, double hi) {
  std::uniform_real_distribution<double> u(lo, hi);
  RVector ev(dim);
  for (int i = 0; i < dim; ++i) ev(i) = u(rng);
  const CMatrix q = random_unitary(rng, dim);
  return HermitianMatrix(q * ev.cast<cplx>().asDiagonal() * q.adjoint());
}

HermitianMatrix random_psd(Rng& rng, int dim, int rank) {
  const CMatrix g = random_complex(rng, dim, rank);
  return HermitianMatrix(g * g.adjoint());
}

CMatrix random_density(Rng& rng, int dim, int rank) {
  const CMatrix g = random_complex(rng, dim, rank);
  CMatrix rho = g * g.adjoint();
  rho /= rho.trace().real();
  return 0.5 * (rho + rho.adjoint());
}

CMatrix random_invertible(Rng& rng, int dim) {
  for (;;) {
    CMatrix k = random_complex(rng, dim, dim);
    if (Eigen::JacobiSVD<CMatrix>(k).singularValues().minCoeff() > 0.1) return k;
  }
}

double lu_log_abs_det(const CMatrix& a) { return std::log(std::abs(a.partialPivLu().determinant())); }

cplx coherent_overlap(cplx z, cplx w) { return std::exp(-0.5 * (std::norm(z) + std::norm(w)) + std::conj(z) * w); }

ActiveSetSolution waterfill_by_enumeration(const std::vector<double>& omega, const std::vector<double>& noise,
                                           double budget) {
  const std::size_t n = omega.size();
  ActiveSetSolution best;
  best.capacity = -1.0;
  for (unsigned mask = 1; mask < (1u << n); ++mask) {
    // Stationarity on the active set: omega_j (n_j + 1 + s_j) = nu.
    double sum_inv = 0.0;
    double sum_base = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
      if (mask & (1u << j)) {
        sum_inv += 1.0;
        sum_base += omega[j] * (noise[j] + 1.0);
      }
    }
    const double nu = (budget + sum_base) / sum_inv;
    std::vector<double> s(n, 0.0);
    bool feasible = true;
    double cap = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
      if (mask & (1u << j)) {
        s[j] = nu / omega[j] - noise[j] - 1.0;
        if (s[j] < 0.0) feasible = false;
      }
      cap += std::log1p(s[j] / (noise[j] + 1.0));
    }
    if (feasible && cap > best.capacity) best = {nu, s, cap};
  }
  if (best.capacity < 0.0) throw std::logic_error("no feasible active set");
  return best;
}

}  // namespace gaussmax::testing
