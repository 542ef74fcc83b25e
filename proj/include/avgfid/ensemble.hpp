// Copyright 2026 The avgfid Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <cstdint>
#include <initializer_list>
#include <random>
#include <span>
#include <vector>

#include "avgfid/linalg.hpp"

namespace avgfid {

/// Tolerances for accepting a matrix as a density matrix.
inline constexpr double kTraceTol = 1e-10;
inline constexpr double kPsdTol = 1e-10;
/// Tolerance on the sum of a probability vector.
inline constexpr double kSimplexTol = 1e-12;

using Rng = std::mt19937_64;

/// Generator for an independent stream identified by `seed` and a path of
/// indices (for example a lambda index and a trial index). The mapping is
/// fixed, so parallel and serial runs see the same draws.
Rng make_rng(std::uint64_t seed, std::initializer_list<std::uint64_t> stream = {});

/// PSD, unit-trace Hermitian matrix.
class DensityMatrix {
 public:
  /// Validates trace and positivity; throws InvariantViolation.
  explicit DensityMatrix(HermitianMatrix m);

  /// Skips validation. For values that are density matrices by construction,
  /// such as the output of a trace normalization of a PSD sum.
  static DensityMatrix unchecked(HermitianMatrix m);

  static DensityMatrix maximally_mixed(int d);
  /// |psi><psi| / <psi|psi>.
  static DensityMatrix pure(const ComplexVector& psi);
  /// diag(p) for a probability vector p.
  static DensityMatrix diagonal(std::span<const double> p);

  int dim() const { return m_.dim(); }
  const HermitianMatrix& hermitian() const { return m_; }
  const ComplexMatrix& matrix() const { return m_.matrix(); }

  friend bool operator==(const DensityMatrix& a, const DensityMatrix& b) { return a.m_ == b.m_; }

 private:
  struct Unchecked {};
  DensityMatrix(HermitianMatrix m, Unchecked) : m_(std::move(m)) {}

  HermitianMatrix m_;
};

/// Point of the probability simplex.
class ProbabilityVector {
 public:
  /// Throws InvariantViolation for negative or non-finite entries or a sum
  /// further than kSimplexTol from one.
  explicit ProbabilityVector(std::vector<double> weights);

  static ProbabilityVector uniform(std::size_t n);

  std::size_t size() const { return w_.size(); }
  double operator[](std::size_t i) const { return w_[i]; }
  std::span<const double> weights() const { return w_; }

  friend bool operator==(const ProbabilityVector&, const ProbabilityVector&) = default;

 private:
  std::vector<double> w_;
};

/// Weighted finite collection of states of a common dimension.
class Ensemble {
 public:
  Ensemble(std::vector<DensityMatrix> states, ProbabilityVector probs);

  std::size_t size() const { return states_.size(); }
  int dim() const { return states_.front().dim(); }
  const std::vector<DensityMatrix>& states() const { return states_; }
  const DensityMatrix& state(std::size_t i) const { return states_[i]; }
  const ProbabilityVector& probs() const { return probs_; }
  double prob(std::size_t i) const { return probs_[i]; }

  friend bool operator==(const Ensemble&, const Ensemble&) = default;

 private:
  std::vector<DensityMatrix> states_;
  ProbabilityVector probs_;
};

/// F(rho, sigma) = ||rho^{1/2} sigma^{1/2}||_1, clamped to [0, 1]. Overshoot
/// beyond 1 + 1e-9 throws NumericalInstability.
double fidelity(const DensityMatrix& rho, const DensityMatrix& sigma);

/// Fidelity from precomputed square roots.
double fidelity_from_roots(const HermitianMatrix& sqrt_rho, const HermitianMatrix& sqrt_sigma);

/// sum_i p_i F(rho_i, sigma).
double average_fidelity(const Ensemble& e, const DensityMatrix& sigma);

/// (1 - eps) rho + eps I / d for eps in [0, 1].
DensityMatrix depolarize(const DensityMatrix& rho, double eps);
Ensemble depolarize(const Ensemble& e, double eps);

/// Smallest eigenvalue strictly above kPdFloor * ||rho||.
bool is_full_rank(const DensityMatrix& rho);

/// G G^dagger / Tr(G G^dagger) with G a d x rank complex Ginibre matrix.
DensityMatrix random_density(int d, int rank, Rng& rng);

/// Flat Dirichlet sample: normalized independent standard exponentials.
ProbabilityVector random_simplex(std::size_t n, Rng& rng);

/// Haar-random unitary from the QR decomposition of a Ginibre matrix with
/// the phases of R's diagonal absorbed.
ComplexMatrix random_unitary(int d, Rng& rng);

/// n random states of the given rank with flat Dirichlet weights.
Ensemble random_ensemble(int d, std::size_t n, int rank, Rng& rng);

/// Pairwise-commuting ensemble: states U diag(q_i) U^dagger with random
/// simplex spectra q_i. With `random_basis` false, U is the identity.
Ensemble random_commuting_ensemble(int d, std::size_t n, bool random_basis, Rng& rng);

}  // namespace avgfid
