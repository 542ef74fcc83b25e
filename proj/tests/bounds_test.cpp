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

#include "avgfid/bounds.hpp"

#include <cmath>

#include "gtest/gtest.h"

#include "avgfid/errors.hpp"
#include "oracles.hpp"

using namespace avgfid;

namespace {

DensityMatrix diag_state(std::initializer_list<double> values) {
  std::vector<double> v(values);
  return DensityMatrix::diagonal(v);
}

DensityMatrix plus_state() {
  ComplexVector v(2);
  v << 1.0, 1.0;
  return DensityMatrix::pure(v);
}

Ensemble zero_plus() { return Ensemble({diag_state({1, 0}), plus_state()}, ProbabilityVector::uniform(2)); }
Ensemble basis_pair() { return Ensemble({diag_state({1, 0}), diag_state({0, 1})}, ProbabilityVector::uniform(2)); }

}  // namespace

TEST(product_bound, examples) {
  Rng rng = make_rng(1);
  EXPECT_DOUBLE_EQ(product_bound(Ensemble({random_density(3, 2, rng)}, ProbabilityVector({1.0}))), 1.0);
  EXPECT_NEAR(product_bound(basis_pair()), 1.0 / std::sqrt(2.0), 1e-12);
  EXPECT_NEAR(product_bound(basis_pair()), average_fidelity(basis_pair(), commuting_estimator(basis_pair())), 1e-12);
  // sqrt(1/4 + 1/4 + 2 * 1/4 * F), F(|0>, |+>) = 1/sqrt(2).
  EXPECT_NEAR(product_bound(zero_plus()), std::sqrt(0.5 + 0.5 / std::sqrt(2.0)), 1e-12);
  EXPECT_NEAR(product_bound(zero_plus()), 0.923880, 1e-6);
}

TEST(pairwise_fidelities, symmetric_with_unit_diagonal) {
  Rng rng = make_rng(2);
  const Ensemble e = random_ensemble(3, 5, 2, rng);
  const Eigen::MatrixXd f = pairwise_fidelities(e);
  for (Eigen::Index i = 0; i < 5; ++i) {
    EXPECT_EQ(f(i, i), 1.0);
    for (Eigen::Index j = 0; j < 5; ++j) {
      EXPECT_EQ(f(i, j), f(j, i));
      EXPECT_NEAR(f(i, j), fidelity(e.state(static_cast<std::size_t>(i)), e.state(static_cast<std::size_t>(j))), 1e-12);
    }
  }
}

TEST(average_bound, examples) {
  Rng rng = make_rng(3);
  EXPECT_NEAR(average_bound(Ensemble({random_density(2, 2, rng)}, ProbabilityVector({1.0}))), 1.0, 1e-12);
  EXPECT_NEAR(average_bound(basis_pair()), std::pow(2.0, -0.25), 1e-12);
  EXPECT_NEAR(average_bound(basis_pair()), 0.840896, 1e-6);
  // Both pure-state terms equal sqrt(<psi|sigma_M|psi>) = sqrt(0.75).
  EXPECT_NEAR(average_fidelity(zero_plus(), mean_estimator(zero_plus())), std::sqrt(0.75), 1e-12);
  EXPECT_NEAR(average_bound(zero_plus()), std::pow(0.75, 0.25), 1e-12);
  EXPECT_NEAR(average_bound(zero_plus()), 0.930605, 1e-6);
}

TEST(bounds_report, commuting_ensemble_saturates) {
  Rng rng = make_rng(4);
  const Ensemble e = random_commuting_ensemble(4, 5, true, rng);
  const BoundsReport r = bounds_report(e, true);
  ASSERT_TRUE(r.optimal_value);
  EXPECT_NEAR(r.commuting_lower, *r.optimal_value, 1e-6);
  EXPECT_NEAR(r.product_bound, *r.optimal_value, 1e-6);
}

TEST(bounds_report, single_state) {
  Rng rng = make_rng(5);
  const BoundsReport r = bounds_report(Ensemble({random_density(3, 3, rng)}, ProbabilityVector({1.0})), true);
  for (double v : {r.product_bound, r.average_bound, r.commuting_lower, r.mean_lower, *r.optimal_value}) {
    EXPECT_NEAR(v, 1.0, 1e-9);
  }
}

TEST(bounds_report, ordering_on_random_ensemble) {
  Rng rng = make_rng(3);
  const Ensemble e = random_ensemble(4, 10, 4, rng);
  const BoundsReport r = bounds_report(e, true);
  const double opt = *r.optimal_value;
  EXPECT_LE(r.mean_lower, opt + 1e-6);
  EXPECT_LE(r.commuting_lower, opt + 1e-6);
  EXPECT_LE(opt, r.product_bound + 1e-6);
  EXPECT_LE(r.product_bound, r.average_bound + 1e-9);
}

TEST(bounds_report, without_optimum_and_rank_deficient) {
  const BoundsReport r = bounds_report(zero_plus(), false);
  EXPECT_FALSE(r.optimal_value);
  EXPECT_THROW(bounds_report(zero_plus(), true), SingularState);
  SolveConfig cfg;
  cfg.auto_depolarize = 1e-6;
  EXPECT_TRUE(bounds_report(zero_plus(), true, cfg).optimal_value);
  const std::string text = bounds_report_to_json(r);
  EXPECT_NE(text.find("\"optimal_value\": null"), std::string::npos);
  EXPECT_NE(text.find("\"product_bound\": "), std::string::npos);
}

TEST(bounds, product_below_average) {
  Rng rng = make_rng(6);
  for (int trial = 0; trial < 40; ++trial) {
    const int d = 2 + trial % 6;
    const Ensemble e = random_ensemble(d, 1 + trial % 9, 1 + trial % d, rng);
    EXPECT_LE(product_bound(e), average_bound(e) + 1e-9);
  }
}

TEST(bounds, sandwich_on_full_rank) {
  Rng rng = make_rng(7);
  for (int trial = 0; trial < 20; ++trial) {
    const int d = 2 + trial % 7;
    const Ensemble e = random_ensemble(d, 2 + trial % 9, d, rng);
    const double opt = solve(e).value;
    EXPECT_LE(average_fidelity(e, commuting_estimator(e)), opt + 1e-6);
    EXPECT_LE(opt, product_bound(e) + 1e-6);
  }
}

TEST(bounds, commuting_saturation) {
  Rng rng = make_rng(8);
  for (int trial = 0; trial < 30; ++trial) {
    const Ensemble e = oracle::random_diagonal_ensemble(2 + trial % 7, 2 + trial % 9, rng);
    EXPECT_LE(product_bound(e) - average_fidelity(e, commuting_estimator(e)), 1e-8);
  }
}

// Gap J(eps) of the product bound on a depolarized rank-deficient qubit
// ensemble. The eps = 0 optimum comes from the Bloch-ball grid, which can
// only underestimate it.
TEST(bounds, depolarization_continuity) {
  Rng rng = make_rng(9);
  const Ensemble pure = random_ensemble(2, 4, 1, rng);
  for (double eps : {0.1, 0.01, 0.001}) {
    const Ensemble e = depolarize(pure, eps);
    EXPECT_GE(product_bound(e) - solve(e, SolveConfig{.tol = 1e-8}).value, -1e-8) << eps;
  }
  const double grid = oracle::bloch_grid_max(pure, 0.01).value;
  EXPECT_GE(product_bound(pure) - grid, -1e-8);
}
