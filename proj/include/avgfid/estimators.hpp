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

#include <optional>
#include <string>
#include <string_view>

#include "avgfid/ensemble.hpp"

namespace avgfid {

/// Fixed-point map driving solve().
enum class Method { lambda, omega };

/// Starting state for the fixed-point iteration.
enum class Init { commuting, mean, maximally_mixed, custom };

std::string_view to_string(Method m);
std::string_view to_string(Init i);
/// Accepts "lambda" / "omega". Throws OutOfRange otherwise.
Method parse_method(std::string_view name);
/// Accepts "commuting", "mean", "mixed" and "maximally_mixed".
Init parse_init(std::string_view name);

struct SolveConfig {
  Method method = Method::omega;
  double tol = 1e-5;
  long max_iters = 100000;
  Init init = Init::commuting;
  std::optional<DensityMatrix> custom_init;
  /// When set and some state is rank deficient, every state is depolarized
  /// by this strength before solving. Unset means rank deficiency is an error.
  std::optional<double> auto_depolarize;
};

struct SolveResult {
  std::string method;
  DensityMatrix state;
  double value = 0.0;
  long iterations = 0;
  /// Spectral norm of the last step; NaN when no step was taken.
  double residual = 0.0;
  bool converged = false;
  double wall_time_s = 0.0;
  /// Depolarizing strength applied by auto_depolarize, zero otherwise.
  double depolarized_by = 0.0;
};

/// sigma_M = sum_i p_i rho_i.
DensityMatrix mean_estimator(const Ensemble& e);

/// Gamma((sum_i p_i rho_i^{1/2})^2). Exactly optimal for commuting ensembles.
DensityMatrix commuting_estimator(const Ensemble& e);

/// Gamma(sum_i p_i |rho_i^{1/2} sigma^{1/2}|), each term evaluated as
/// sqrt(sigma^{1/2} rho_i sigma^{1/2}). Throws SingularState for singular sigma.
DensityMatrix lambda_step(const Ensemble& e, const DensityMatrix& sigma);

/// Gamma(sigma^{-1/2} (sum_i p_i sqrt(sigma^{1/2} rho_i sigma^{1/2}))^2 sigma^{-1/2}).
DensityMatrix omega_step(const Ensemble& e, const DensityMatrix& sigma);

/// Spectral-norm distance between sigma and lambda_step(e, sigma); zero
/// exactly at the optimum.
double fixed_point_residual(const Ensemble& e, const DensityMatrix& sigma);

/// Iterates the configured map from the configured start until successive
/// iterates differ by less than cfg.tol in spectral norm, or max_iters steps.
/// Hitting max_iters is reported through `converged`, not thrown.
/// Throws SingularState if any ensemble state is rank deficient and
/// cfg.auto_depolarize is unset, OutOfRange for an invalid config.
SolveResult solve(const Ensemble& e, const SolveConfig& cfg = {});

/// Closed-form estimate wrapped as a SolveResult with zero iterations.
/// `which` is "mean" or "commuting".
SolveResult closed_form(const Ensemble& e, std::string_view which);

/// Throws SingularState naming the first rank-deficient state, with a hint
/// to depolarize.
void require_full_rank(const Ensemble& e);

/// Result JSON: method, value, iterations, residual, converged, wall_time_s, state.
std::string solve_result_to_json(const SolveResult& r);

}  // namespace avgfid
