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

#include "gaussmax/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>
#include <string>

#include <Eigen/Eigenvalues>

#include "gaussmax/errors.hpp"

namespace gaussmax {

namespace {

std::string describe(std::string_view what, double value) {
  std::ostringstream os;
  os << what << " (" << value << ")";
  return os.str();
}

}  // namespace

double hermiticity_defect(const CMatrix& a) {
  if (a.rows() != a.cols()) return std::numeric_limits<double>::infinity();
  if (a.size() == 0) return 0.0;
  return (a - a.adjoint()).cwiseAbs().maxCoeff();
}

HermitianMatrix::HermitianMatrix(const CMatrix& m) {
  if (m.rows() != m.cols()) {
    throw InvalidInput("Hermitian matrix must be square");
  }
  if (m.size() > 0) {
    if (!m.allFinite()) throw InvalidInput("Hermitian matrix has non-finite entries");
    const double scale = std::max(1.0, m.cwiseAbs().maxCoeff());
    const double defect = hermiticity_defect(m);
    if (defect > kHermitianTol * scale) {
      throw InvalidInput(describe("matrix is not Hermitian: max |A - A*|", defect));
    }
  }
  m_ = 0.5 * (m + m.adjoint());
}

HermitianMatrix HermitianMatrix::identity(int dim) {
  return HermitianMatrix(CMatrix::Identity(dim, dim));
}

HermitianMatrix HermitianMatrix::zero(int dim) { return HermitianMatrix(CMatrix::Zero(dim, dim)); }

HermitianMatrix HermitianMatrix::diagonal(std::span<const double> entries) {
  const auto n = static_cast<Eigen::Index>(entries.size());
  CMatrix m = CMatrix::Zero(n, n);
  for (Eigen::Index i = 0; i < n; ++i) m(i, i) = entries[static_cast<std::size_t>(i)];
  return HermitianMatrix(m);
}

HermitianMatrix HermitianMatrix::diagonal(std::initializer_list<double> entries) {
  return diagonal(std::span<const double>(entries.begin(), entries.size()));
}

RVector HermitianMatrix::eigenvalues() const {
  if (m_.size() == 0) return RVector();
  Eigen::SelfAdjointEigenSolver<CMatrix> solver(m_, Eigen::EigenvaluesOnly);
  return solver.eigenvalues();
}

double HermitianMatrix::min_eigenvalue() const {
  const RVector ev = eigenvalues();
  return ev.size() == 0 ? 0.0 : ev.minCoeff();
}

bool HermitianMatrix::is_psd(double tol) const { return min_eigenvalue() >= -tol; }

bool HermitianMatrix::is_diagonal(double tol) const {
  for (Eigen::Index j = 0; j < m_.rows(); ++j) {
    for (Eigen::Index k = 0; k < m_.cols(); ++k) {
      if (j != k && std::abs(m_(j, k)) > tol) return false;
    }
  }
  return true;
}

HermitianMatrix HermitianMatrix::operator+(const HermitianMatrix& other) const {
  require_same_dim(dim(), other.dim(), "matrix sum");
  return HermitianMatrix(m_ + other.m_);
}

HermitianMatrix HermitianMatrix::operator-(const HermitianMatrix& other) const {
  require_same_dim(dim(), other.dim(), "matrix difference");
  return HermitianMatrix(m_ - other.m_);
}

HermitianMatrix HermitianMatrix::scaled(double c) const { return HermitianMatrix(c * m_); }

HermitianEigen eigh(const HermitianMatrix& a) {
  if (a.dim() == 0) return {};
  Eigen::SelfAdjointEigenSolver<CMatrix> solver(a.matrix());
  if (solver.info() != Eigen::Success) throw NumericalFailure("Hermitian eigendecomposition failed");
  return {solver.eigenvalues(), solver.eigenvectors()};
}

HermitianMatrix sqrtm(const HermitianMatrix& a) {
  return spectral_map(a, [](double x) { return std::sqrt(std::max(x, 0.0)); });
}

namespace {

void require_positive_definite(const HermitianMatrix& a, std::string_view op) {
  const double lo = a.min_eigenvalue();
  if (!(lo > 0.0)) throw InvalidInput(describe(std::string(op) + ": matrix is not positive definite, min eigenvalue", lo));
}

}  // namespace

HermitianMatrix inv_sqrtm(const HermitianMatrix& a) {
  require_positive_definite(a, "inv_sqrtm");
  return spectral_map(a, [](double x) { return 1.0 / std::sqrt(x); });
}

HermitianMatrix inverse(const HermitianMatrix& a) {
  require_positive_definite(a, "inverse");
  return spectral_map(a, [](double x) { return 1.0 / x; });
}

double log_det(const HermitianMatrix& a) {
  const RVector ev = a.eigenvalues();
  double acc = 0.0;
  for (Eigen::Index i = 0; i < ev.size(); ++i) {
    if (!(ev(i) > 0.0)) throw InvalidInput(describe("log_det: matrix is not positive definite, eigenvalue", ev(i)));
    acc += std::log(ev(i));
  }
  return acc;
}

double log_det_identity_plus(const HermitianMatrix& base, const HermitianMatrix& s) {
  require_same_dim(base.dim(), s.dim(), "log_det_identity_plus");
  const HermitianMatrix w = inv_sqrtm(base);
  const HermitianMatrix inner = congruence(w.matrix(), s);
  const RVector ev = inner.eigenvalues();
  double acc = 0.0;
  for (Eigen::Index i = 0; i < ev.size(); ++i) acc += std::log1p(ev(i));
  return acc;
}

HermitianMatrix congruence(const CMatrix& a, const HermitianMatrix& h) {
  if (a.cols() != h.dim()) throw InvalidInput("congruence: dimension mismatch");
  return HermitianMatrix(a * h.matrix() * a.adjoint());
}

HermitianMatrix require_psd(const HermitianMatrix& a, std::string_view what) {
  if (a.dim() == 0) return a;
  const HermitianEigen e = eigh(a);
  if (e.values.minCoeff() < -kPsdTol) {
    throw InvalidInput(describe(std::string(what) + " is not positive semidefinite: min eigenvalue",
                                e.values.minCoeff()));
  }
  if (e.values.minCoeff() >= 0.0) return a;
  const RVector clipped = e.values.cwiseMax(0.0);
  return HermitianMatrix(e.vectors * clipped.asDiagonal() * e.vectors.adjoint());
}

void require_nondegenerate(const HermitianMatrix& a, double min_eig, std::string_view what) {
  const double lo = a.min_eigenvalue();
  if (!(lo >= min_eig)) {
    std::ostringstream os;
    os << what << " is degenerate: min eigenvalue " << lo << " < " << min_eig;
    throw UnsupportedInput(os.str());
  }
}

void require_same_dim(Eigen::Index a, Eigen::Index b, std::string_view what) {
  if (a != b) {
    std::ostringstream os;
    os << what << ": dimension mismatch (" << a << " vs " << b << ")";
    throw InvalidInput(os.str());
  }
}

}  // namespace gaussmax
