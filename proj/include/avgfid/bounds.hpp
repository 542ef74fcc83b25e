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

#include "avgfid/ensemble.hpp"
#include "avgfid/estimators.hpp"

namespace avgfid {

/// Upper bounds on the optimal average fidelity, and the two closed-form
/// estimators' average fidelities as lower bounds.
struct BoundsReport {
  double product_bound = 0.0;
  double average_bound = 0.0;
  double commuting_lower = 0.0;
  double mean_lower = 0.0;
  std::optional<double> optimal_value;
};

/// Symmetric n x n matrix of F(rho_i, rho_j) with unit diagonal. Each
/// off-diagonal pair is evaluated once.
Eigen::MatrixXd pairwise_fidelities(const Ensemble& e);

/// sqrt(sum_{i,j} p_i p_j F(rho_i, rho_j)). Valid for rank-deficient states.
double product_bound(const Ensemble& e);

/// sqrt(f(sigma_M)).
double average_bound(const Ensemble& e);

/// All four closed-form quantities; with `with_optimal`, also the optimum
/// from solve(e, cfg). Solver errors propagate.
BoundsReport bounds_report(const Ensemble& e, bool with_optimal, const SolveConfig& cfg = {});

std::string bounds_report_to_json(const BoundsReport& r);

}  // namespace avgfid
