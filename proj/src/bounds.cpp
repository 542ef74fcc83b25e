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

#include <algorithm>
#include <cmath>
#include <vector>

#include "avgfid/ensemble_io.hpp"

namespace avgfid {

Eigen::MatrixXd pairwise_fidelities(const Ensemble& e) {
  const auto n = static_cast<Eigen::Index>(e.size());
  std::vector<HermitianMatrix> roots;
  roots.reserve(e.size());
  for (const auto& s : e.states()) roots.push_back(psd_sqrt(s.hermitian()));

  Eigen::MatrixXd f = Eigen::MatrixXd::Identity(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = i + 1; j < n; ++j) {
      f(i, j) = f(j, i) = fidelity_from_roots(roots[i], roots[j]);
    }
  }
  return f;
}

double product_bound(const Ensemble& e) {
  const Eigen::MatrixXd f = pairwise_fidelities(e);
  std::vector<double> terms;
  terms.reserve(e.size() * e.size());
  for (std::size_t i = 0; i < e.size(); ++i) {
    for (std::size_t j = 0; j < e.size(); ++j) {
      terms.push_back(e.prob(i) * e.prob(j) *
                      f(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)));
    }
  }
  return std::min(1.0, std::sqrt(tree_sum(std::span<const double>(terms))));
}

double average_bound(const Ensemble& e) {
  return std::sqrt(average_fidelity(e, mean_estimator(e)));
}

BoundsReport bounds_report(const Ensemble& e, bool with_optimal, const SolveConfig& cfg) {
  BoundsReport report;
  report.product_bound = product_bound(e);
  report.average_bound = average_bound(e);
  report.commuting_lower = average_fidelity(e, commuting_estimator(e));
  report.mean_lower = average_fidelity(e, mean_estimator(e));
  if (with_optimal) report.optimal_value = solve(e, cfg).value;
  return report;
}

std::string bounds_report_to_json(const BoundsReport& r) {
  std::string out = "{\n";
  out += "  \"product_bound\": " + json_format::number(r.product_bound) + ",\n";
  out += "  \"average_bound\": " + json_format::number(r.average_bound) + ",\n";
  out += "  \"commuting_lower\": " + json_format::number(r.commuting_lower) + ",\n";
  out += "  \"mean_lower\": " + json_format::number(r.mean_lower) + ",\n";
  out += "  \"optimal_value\": " + (r.optimal_value ? json_format::number(*r.optimal_value) : "null") + "\n";
  return out + "}\n";
}

}  // namespace avgfid
