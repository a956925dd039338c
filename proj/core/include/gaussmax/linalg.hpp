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

#pragma once

#include <complex>
#include <span>
#include <string_view>

#include <Eigen/Dense>

namespace gaussmax {

using cplx = std::complex<double>;
using CMatrix = Eigen::MatrixXcd;
using CVector = Eigen::VectorXcd;
using RVector = Eigen::VectorXd;

/// Hermiticity tolerance, relative to max(1, largest entry magnitude).
inline constexpr double kHermitianTol = 1e-12;
/// Eigenvalues in [-kPsdTol, 0) are accepted as zero; below that, rejected.
inline constexpr double kPsdTol = 1e-12;
/// Smallest eigenvalue accepted for Sigma and N where strict positivity is
/// required (accessible information, dual observable).
inline constexpr double kMinEig = 1e-8;
/// Smallest |det K| accepted for an observable rescaling.
inline constexpr double kMinDet = 1e-12;

/// Dense complex Hermitian matrix. Construction checks Hermiticity and then
/// stores the exactly symmetrized matrix (A + A*)/2, so every instance is
/// Hermitian to the last bit.
class HermitianMatrix {
 public:
  HermitianMatrix() = default;
  explicit HermitianMatrix(const CMatrix& m);

  static HermitianMatrix identity(int dim);
  static HermitianMatrix zero(int dim);
  static HermitianMatrix diagonal(std::span<const double> entries);
  static HermitianMatrix diagonal(std::initializer_list<double> entries);

  int dim() const { return static_cast<int>(m_.rows()); }
  const CMatrix& matrix() const { return m_; }
  cplx operator()(int j, int k) const { return m_(j, k); }

  RVector eigenvalues() const;
  double min_eigenvalue() const;
  bool is_psd(double tol = kPsdTol) const;
  bool is_diagonal(double tol = 0.0) const;
  double trace() const { return m_.trace().real(); }

  HermitianMatrix operator+(const HermitianMatrix& other) const;
  HermitianMatrix operator-(const HermitianMatrix& other) const;
  HermitianMatrix scaled(double c) const;

 private:
  CMatrix m_;
};

struct HermitianEigen {
  RVector values;   // ascending
  CMatrix vectors;  // columns are orthonormal eigenvectors
};

HermitianEigen eigh(const HermitianMatrix& a);

/// Max |A(j,k) - conj(A(k,j))|.
double hermiticity_defect(const CMatrix& a);

/// Applies f to the spectrum: U diag(f(lambda)) U*.
template <typename F>
HermitianMatrix spectral_map(const HermitianMatrix& a, F&& f) {
  const HermitianEigen e = eigh(a);
  RVector mapped(e.values.size());
  for (Eigen::Index i = 0; i < e.values.size(); ++i) mapped(i) = f(e.values(i));
  return HermitianMatrix(e.vectors * mapped.asDiagonal() * e.vectors.adjoint());
}

/// Principal square root with negative eigenvalues clipped to zero.
HermitianMatrix sqrtm(const HermitianMatrix& a);
/// A^{-1/2}; throws InvalidInput unless A is positive definite.
HermitianMatrix inv_sqrtm(const HermitianMatrix& a);
/// A^{-1}; throws InvalidInput unless A is positive definite.
HermitianMatrix inverse(const HermitianMatrix& a);
/// log det A as a sum of log eigenvalues; throws InvalidInput unless A > 0.
double log_det(const HermitianMatrix& a);

/// log det(I + B^{-1} S) evaluated as log det(I + B^{-1/2} S B^{-1/2}).
/// B must be positive definite, S PSD.
double log_det_identity_plus(const HermitianMatrix& base, const HermitianMatrix& s);

/// A H A* as a Hermitian matrix.
HermitianMatrix congruence(const CMatrix& a, const HermitianMatrix& h);

/// PSD check with clipping: eigenvalues >= -kPsdTol are clipped to 0, lower
/// ones raise InvalidInput naming `what`.
HermitianMatrix require_psd(const HermitianMatrix& a, std::string_view what);

/// Raises UnsupportedInput unless every eigenvalue of `a` is >= min_eig.
void require_nondegenerate(const HermitianMatrix& a, double min_eig, std::string_view what);

/// Raises InvalidInput when the two dimensions differ.
void require_same_dim(Eigen::Index a, Eigen::Index b, std::string_view what);

}  // namespace gaussmax
