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

// Energy-constrained capacity sup_{Sigma >= 0, Sp(eps Sigma) <= E} log det(I + (N+I)^{-1} Sigma).
// hbar is absorbed into the mode frequencies.

#pragma once

#include <span>
#include <vector>

#include "gaussmax/errors.hpp"
#include "gaussmax/linalg.hpp"

namespace gaussmax {

/// Quadratic Hamiltonian a^dagger eps a with mean-energy budget E.
class EnergyConstraint {
 public:
  EnergyConstraint(HermitianMatrix hamiltonian, double budget);

  const HermitianMatrix& hamiltonian() const { return hamiltonian_; }
  double budget() const { return budget_; }
  /// Sp(eps Sigma).
  double energy(const HermitianMatrix& sigma) const;

 private:
  HermitianMatrix hamiltonian_;
  double budget_;
};

struct WaterfillResult {
  double water_level = 0.0;          // nu
  std::vector<double> allocations;   // s_j = (nu / omega_j - n_j - 1)_+
  std::vector<int> active;           // indices with s_j > 0
  double capacity = 0.0;             // sum_j log(1 + s_j / (n_j + 1))
};

/// Diagonal water-filling. The water level solves
/// sum_j omega_j (nu / omega_j - n_j - 1)_+ = E; it is bracketed and bisected,
/// then snapped to the exact solution of the active set found.
WaterfillResult waterfill_diagonal(std::span<const double> freqs, std::span<const double> noise_diag,
                                   double budget);

struct AscentOptions {
  int max_iterations = 10000;
  double initial_step = 1.0;
  /// Stop when an accepted step improves the objective by less than this.
  double objective_tol = 1e-14;
  /// Stop when the projected-gradient step moves X by less than this (Frobenius).
  double step_tol = 1e-12;
  /// Commutator norm below which eps and N are treated as commuting.
  double commute_tol = 1e-10;
};

struct ConstrainedCapacity {
  HermitianMatrix optimal_cov;
  double capacity = 0.0;
  /// True when the closed-form diagonal water-filling was used.
  bool closed_form = false;
  /// Water-filling details when closed_form is set.
  WaterfillResult waterfill;
  int iterations = 0;
  /// Objective after every accepted iterate (ascent path only).
  std::vector<double> objective_trace;
};

/// Raised when projected ascent exhausts its iterations; carries the best
/// iterate found.
class AscentNonConvergence : public NumericalFailure {
 public:
  AscentNonConvergence(const std::string& what, ConstrainedCapacity best)
      : NumericalFailure(what), best_(std::move(best)) {}
  const ConstrainedCapacity& best() const { return best_; }

 private:
  ConstrainedCapacity best_;
};

/// Maximizes log det(I + (N+I)^{-1} Sigma) under the energy constraint.
/// Commuting (eps, N) reduce to waterfill_diagonal in a common eigenbasis;
/// otherwise projected gradient ascent is run in the whitened variable
/// X = eps^{1/2} Sigma eps^{1/2}, whose feasible set {X >= 0, tr X <= E} has
/// an exact Euclidean projection (eigenvalue projection onto the simplex).
ConstrainedCapacity constrained_capacity(const EnergyConstraint& constraint, const HermitianMatrix& noise,
                                         const AscentOptions& options = {});

/// The objective log det(I + (N+I)^{-1} Sigma).
double capacity_objective(const HermitianMatrix& noise, const HermitianMatrix& sigma);

/// Euclidean projection of a real vector onto {x >= 0, sum x <= total}.
std::vector<double> project_capped_simplex(std::span<const double> x, double total);

}  // namespace gaussmax
