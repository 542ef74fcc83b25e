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

// Simulated Bayesian tomography with the lambda proxy: particles are drawn as
// lambda * rho_T + (1 - lambda) * rho_i' around a random true state rho_T and
// weighted by their fidelity with it. lambda = 0 plays the role of no data,
// lambda = 1 of unlimited data.

#include <cstdint>
#include <span>
#include <string_view>
#include <vector>

#include "avgfid/ensemble.hpp"
#include "avgfid/estimators.hpp"

namespace avgfid {

struct TomographyTrial {
  int d = 0;
  std::size_t n = 0;
  double lambda = 0.0;
  std::uint64_t seed = 0;
  DensityMatrix true_state;
  Ensemble particles;
};

/// Draws rho_T and each rho_i' as full-rank Ginibre states and weights the
/// particles with posterior_weights. `seed` is recorded, not used for drawing.
TomographyTrial make_trial(int d, std::size_t n, double lambda, Rng& rng, std::uint64_t seed = 0);

/// p_i proportional to F(rho_i, rho_T). Throws DegenerateWeights when every
/// particle is (numerically) orthogonal to rho_T.
ProbabilityVector posterior_weights(std::span<const DensityMatrix> particles, const DensityMatrix& true_state);

/// p_i proportional to prior_i * likelihood_i.
ProbabilityVector bayes_update(const ProbabilityVector& prior, std::span<const double> likelihoods);

enum class Estimator { bayes, commuting, mean };
std::string_view to_string(Estimator e);
Estimator parse_estimator(std::string_view name);

struct SweepRecord {
  double lambda = 0.0;
  std::size_t lambda_index = 0;
  std::size_t trial = 0;
  Estimator estimator = Estimator::mean;
  /// 1 - F(estimate, rho_T).
  double infidelity = 0.0;
  /// Zero for the closed-form estimators.
  long solve_iterations = 0;
  double wall_time_s = 0.0;
};

struct SweepConfig {
  int d = 2;
  std::size_t n = 20;
  std::vector<double> lambdas;
  std::size_t trials = 50;
  std::vector<Estimator> estimators{Estimator::bayes, Estimator::commuting, Estimator::mean};
  /// Applied to every particle before estimating, so the Bayes solve sees
  /// full-rank input even at lambda = 1.
  double depolarize_eps = 1e-6;
  std::uint64_t seed = 1;
  unsigned threads = 1;
  SolveConfig solve;
};

/// Runs every (lambda, trial) pair. Trial (l, t) draws from
/// make_rng(seed, {l, t}), so the output does not depend on `threads`.
/// Records are ordered by lambda index, trial, then estimator order.
std::vector<SweepRecord> run_sweep(const SweepConfig& cfg);

}  // namespace avgfid
