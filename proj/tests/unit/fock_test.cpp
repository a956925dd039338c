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

#include <cmath>
#include <complex>
#include <vector>

#include "gtest/gtest.h"

#include "gaussmax/errors.hpp"
#include "gaussmax/gaussian.hpp"
#include "instances.hpp"

using namespace gaussmax;
using gaussmax::testing::Rng;

namespace {

CVector single(cplx z) {
  CVector v(1);
  v << z;
  return v;
}

}  // namespace

TEST(fock_space, dimension_limits) {
  EXPECT_EQ(fock_dimension(2, 5), 25);
  EXPECT_THROW(fock_dimension(0, 5), InvalidInput);
  EXPECT_THROW(fock_dimension(1, 1), InvalidInput);
  EXPECT_THROW(fock_dimension(10, 100), InvalidInput);
}

TEST(fock_space, ladder_commutator_in_low_block) {
  const auto a = ladder_operators(2, 6);
  ASSERT_EQ(a.size(), 2u);
  const CMatrix comm = a[0].matrix * a[0].matrix.adjoint() - a[0].matrix.adjoint() * a[0].matrix;
  // Exact away from the top level of mode 0.
  for (Eigen::Index i = 0; i < 30; ++i) EXPECT_NEAR(std::abs(comm(i, i) - 1.0), 0.0, 1e-14);
  const CMatrix cross = a[0].matrix * a[1].matrix - a[1].matrix * a[0].matrix;
  EXPECT_NEAR(cross.norm(), 0.0, 1e-14);
  const FockOperator n = number_operator(2, 6);
  EXPECT_NEAR(n.matrix(7, 7).real(), 2.0, 0.0);  // |1, 1>
}

TEST(displacement_elements, frozen_reference_values) {
  const CMatrix d = displacement_elements(cplx(1.3, -0.7), 16, 16);
  EXPECT_NEAR(std::abs(d(0, 0) - 0.33621649370673333395), 0.0, 1e-15);
  EXPECT_NEAR(std::abs(d(3, 1) - cplx(0.13506365184102360454, -0.20484653862555243056)), 0.0, 1e-15);
  EXPECT_NEAR(std::abs(d(1, 4) - cplx(-0.035723237833480537418, -0.40045000172775679998)), 0.0, 1e-15);
  EXPECT_NEAR(std::abs(d(7, 7) - 0.17591720666900540494), 0.0, 1e-15);
  EXPECT_NEAR(std::abs(d(12, 5) - cplx(-0.324396044191299148, 0.10606212460507026681)), 0.0, 1e-15);
  EXPECT_NEAR(std::abs(d(2, 15) - cplx(-0.0048739594804587421763, -0.00067716965593686058872)), 0.0, 1e-15);

  const CMatrix big = displacement_elements(cplx(4.0, 3.0), 25, 25);
  EXPECT_NEAR(std::abs(big(20, 3) - cplx(-0.0089639590204498479305, -0.15974486103546435067)), 0.0, 1e-14);
  EXPECT_NEAR(std::abs(big(0, 24) - cplx(-0.27223267347892446533, -0.073568491615519358128)), 0.0, 1e-14);
  EXPECT_NEAR(std::abs(big(24, 24) - (-0.10036430549437424134)), 0.0, 1e-14);
}

TEST(displacement_elements, vacuum_column_is_coherent_state_and_inverse_is_adjoint) {
  const cplx alpha(0.8, 0.4);
  const CMatrix d = displacement_elements(alpha, 30, 30);
  for (int m = 0; m < 30; ++m) {
    const double log_mag = -0.5 * std::norm(alpha) + m * std::log(std::abs(alpha)) - 0.5 * std::lgamma(m + 1.0);
    EXPECT_NEAR(std::abs(d(m, 0)), std::exp(log_mag), 1e-15);
  }
  const CMatrix dm = displacement_elements(-alpha, 30, 30);
  EXPECT_NEAR((dm.topLeftCorner(10, 10) - d.adjoint().topLeftCorner(10, 10)).norm(), 0.0, 1e-13);
  EXPECT_THROW(displacement_elements(alpha, 0, 3), InvalidInput);
}

TEST(displacement_matrix, agrees_with_exact_elements_in_low_block) {
  const Displacement d = displacement_matrix(single(cplx(0.7, -0.2)), 60);
  EXPECT_TRUE(d.within_cutoff_heuristic);
  EXPECT_LT(d.unitarity_defect, 1e-10);
  const CMatrix exact = displacement_elements(cplx(0.7, -0.2), 15, 15);
  EXPECT_NEAR((d.op.matrix.topLeftCorner(15, 15) - exact).norm(), 0.0, 1e-12);
  EXPECT_FALSE(displacement_matrix(single(cplx(3.0, 0.0)), 10).within_cutoff_heuristic);
}

TEST(displacement_matrix, two_mode_tensor_product) {
  CVector z(2);
  z << cplx(0.3, 0.1), cplx(-0.2, 0.4);
  const Displacement d = displacement_matrix(z, 30);
  const CMatrix d0 = displacement_elements(z(0), 30, 30);
  const CMatrix d1 = displacement_elements(z(1), 30, 30);
  // <m0 m1|D|n0 n1> = <m0|D0|n0><m1|D1|n1> at low levels.
  for (int m0 = 0; m0 < 4; ++m0)
    for (int m1 = 0; m1 < 4; ++m1)
      for (int n0 = 0; n0 < 4; ++n0)
        for (int n1 = 0; n1 < 4; ++n1)
          EXPECT_NEAR(std::abs(d.op.matrix(m0 * 30 + m1, n0 * 30 + n1) - d0(m0, n0) * d1(m1, n1)), 0.0, 1e-12);
}

TEST(coherent_state, amplitudes_overlap_and_leakage) {
  const CoherentState a = coherent_state(single(cplx(1.0, 0.5)), 40);
  const CoherentState b = coherent_state(single(cplx(-0.3, 0.2)), 40);
  EXPECT_LT(a.leakage, 1e-14);
  const cplx overlap = a.amplitudes.dot(b.amplitudes);
  EXPECT_NEAR(std::abs(overlap - gaussmax::testing::coherent_overlap(cplx(1.0, 0.5), cplx(-0.3, 0.2))), 0.0, 1e-14);
  const CoherentState far = coherent_state(single(cplx(3.0, 0.0)), 5);
  EXPECT_GT(far.leakage, 0.5);
}

TEST(gaussian_state_fock, thermal_populations) {
  const double n = 0.7;
  const TruncatedState t = gaussian_state_fock(HermitianMatrix::diagonal({n}), 60, StateMethod::kEigenproduct);
  for (int k = 0; k < 10; ++k) {
    EXPECT_NEAR(t.rho.matrix(k, k).real(), std::pow(n, k) / std::pow(n + 1.0, k + 1.0), 1e-15);
  }
  EXPECT_LT(std::abs(t.trace_defect), 1e-13);
  CMatrix coupled = CMatrix::Identity(2, 2) * 0.5;
  coupled(0, 1) = coupled(1, 0) = 0.1;
  EXPECT_THROW(gaussian_state_fock(HermitianMatrix(coupled), 10, StateMethod::kEigenproduct), InvalidInput);
}

TEST(gaussian_state_fock, quadrature_matches_eigenproduct_and_moments) {
  const HermitianMatrix cov = HermitianMatrix::diagonal({0.6});
  const TruncatedState exact = gaussian_state_fock(cov, 20, StateMethod::kEigenproduct);
  const TruncatedState quad = gaussian_state_fock(cov, 20, StateMethod::kPQuadrature, 40);
  EXPECT_NEAR((exact.rho.matrix.topLeftCorner(10, 10) - quad.rho.matrix.topLeftCorner(10, 10)).norm(), 0.0, 1e-10);

  CMatrix c(2, 2);
  c << cplx(0.5, 0.0), cplx(0.1, 0.15), cplx(0.1, -0.15), cplx(0.3, 0.0);
  const TruncatedState two = gaussian_state_fock(HermitianMatrix(c), 12, StateMethod::kPQuadrature, 12);
  EXPECT_LT(std::abs(two.trace_defect), 1e-4);
  EXPECT_NEAR((covariance_of(two.rho).matrix() - c).norm(), 0.0, 1e-3);
  EXPECT_LT(mean_of(two.rho).norm(), 1e-12);
}

TEST(displaced_thermal, first_and_second_moments) {
  CVector z = single(cplx(0.8, -0.3));
  const TruncatedState s = displaced_thermal(HermitianMatrix::diagonal({0.4}), z, 40);
  EXPECT_LT(std::abs(s.trace_defect), 1e-10);
  EXPECT_NEAR(std::abs(mean_of(s.rho)(0) - z(0)), 0.0, 1e-10);
  EXPECT_NEAR(covariance_of(s.rho)(0, 0).real(), 0.4 + std::norm(z(0)), 1e-9);
  CMatrix offdiag = CMatrix::Identity(2, 2);
  offdiag(0, 1) = 0.1;
  offdiag(1, 0) = 0.1;
  EXPECT_THROW(displaced_thermal(HermitianMatrix(offdiag), CVector::Zero(2), 5), UnsupportedInput);
}

TEST(inv_sqrt_coherent, numeric_route_matches_closed_form) {
  const InvSqrtCoherent r = inv_sqrt_coherent(HermitianMatrix::diagonal({0.8}), single(cplx(0.3, 0.2)), 40);
  EXPECT_LT(r.deviation, 1e-8);
  EXPECT_LT(r.leakage, 1e-12);
}

TEST(outcome_grid, layout_and_validation) {
  const OutcomeGrid g(1, 1.0, 0.5);
  EXPECT_EQ(g.axis().size(), 5u);
  EXPECT_EQ(g.size(), 25u);
  EXPECT_EQ(g.point(0)(0), cplx(-1.0, -1.0));
  EXPECT_EQ(g.point(1)(0), cplx(-1.0, -0.5));
  EXPECT_EQ(g.point(24)(0), cplx(1.0, 1.0));
  EXPECT_NEAR(g.cell_weight(), 0.25 / std::acos(-1.0), 1e-16);
  EXPECT_THROW(OutcomeGrid(1, 1.0, 0.3), InvalidInput);
  EXPECT_THROW(OutcomeGrid(1, 1.0, 0.0), InvalidInput);
  EXPECT_THROW(g.point(25), InvalidInput);
  EXPECT_TRUE(OutcomeGrid(1, 6.0, 0.25).covers(HermitianMatrix::diagonal({2.0})));
  EXPECT_FALSE(OutcomeGrid(1, 2.0, 0.25).covers(HermitianMatrix::diagonal({2.0})));
  EXPECT_EQ(OutcomeGrid(2, 1.0, 1.0).size(), 81u);
}

TEST(discretize_povm, completeness_and_output_law) {
  constexpr int kCutoff = 20;
  const GaussianObservable obs(HermitianMatrix::diagonal({0.3}));
  const OutcomeGrid grid(1, 6.0, 0.25);
  const DiscretizedPOVM povm = discretize_povm(obs, grid, kCutoff);
  EXPECT_EQ(povm.outcomes.size(), grid.size());
  EXPECT_LT(block_completeness_defect(povm.povm, 1, kCutoff, 8), 1e-6);

  const TruncatedState rho = gaussian_state_fock(HermitianMatrix::diagonal({0.5}), kCutoff, StateMethod::kEigenproduct);
  const OutputDistribution q = fock_output_distribution(rho.rho, povm.povm);
  EXPECT_NEAR(q.total, 1.0, 1e-6);
  EXPECT_LT(q.clipped, 1e-12);
  const GaussianState state(HermitianMatrix::diagonal({0.5}));
  double worst = 0.0;
  for (std::size_t i = 0; i < grid.size(); ++i) {
    worst = std::max(worst, std::abs(q.masses[i] - output_density(state, obs, povm.outcomes[i]) * grid.cell_weight()));
  }
  EXPECT_LT(worst, 1e-5);
}

TEST(parseval, trace_inner_product_from_characteristic_functions) {
  Rng rng(97);
  constexpr int kCutoff = 8;
  const FockOperator rho{1, kCutoff, gaussmax::testing::random_density(rng, kCutoff, 3)};
  const FockOperator sigma{1, kCutoff, gaussmax::testing::random_density(rng, kCutoff, 2)};
  const ParsevalCheck c = parseval_check(rho, sigma, OutcomeGrid(1, 8.0, 0.2));
  EXPECT_LT(c.residual, 1e-3);
  EXPECT_NEAR(c.lhs, (rho.matrix * sigma.matrix.adjoint()).trace().real(), 1e-14);
  const FockOperator other{1, 5, CMatrix::Identity(5, 5) / 5.0};
  EXPECT_THROW(parseval_check(rho, other, OutcomeGrid(1, 1.0, 0.5)), InvalidInput);
}

TEST(gauge_average, removes_coherences) {
  const CoherentState c = coherent_state(single(cplx(0.6, 0.3)), 10);
  const FockOperator rho{1, 10, c.amplitudes * c.amplitudes.adjoint()};
  const FockOperator avg = gauge_average(rho, 32);
  EXPECT_NEAR((avg.matrix - CMatrix(avg.matrix.diagonal().asDiagonal())).norm(), 0.0, 1e-14);
  EXPECT_NEAR((avg.matrix.diagonal() - rho.matrix.diagonal()).norm(), 0.0, 1e-14);
  EXPECT_THROW(gauge_average(rho, 1), InvalidInput);
}

TEST(trace_overlap, matches_trace_of_product) {
  Rng rng(3);
  const CMatrix a = gaussmax::testing::random_density(rng, 4, 2);
  const CMatrix b = gaussmax::testing::random_psd(rng, 4, 3).matrix();
  EXPECT_NEAR(trace_overlap(a, b), (a * b).trace().real(), 1e-14);
}
