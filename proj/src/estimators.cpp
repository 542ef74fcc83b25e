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

#include "avgfid/estimators.hpp"

#include <chrono>
#include <cmath>
#include <limits>
#include <vector>

#include "avgfid/ensemble_io.hpp"
#include "avgfid/errors.hpp"

namespace avgfid {
namespace {

PsdRoots roots_of_iterate(const DensityMatrix& sigma) {
  try {
    return psd_roots(sigma.hermitian());
  } catch (const SingularMatrix& err) {
    throw SingularState(std::string("iterate is not full rank: ") + err.what());
  }
}

// sum_i p_i sqrt(sigma^{1/2} rho_i sigma^{1/2}), reduced in tree order.
HermitianMatrix fidelity_sum(const Ensemble& e, const HermitianMatrix& sqrt_sigma) {
  if (e.dim() != sqrt_sigma.dim()) throw DimensionMismatch("state dimension does not match ensemble");
  std::vector<HermitianMatrix> terms;
  terms.reserve(e.size());
  for (std::size_t i = 0; i < e.size(); ++i) {
    terms.push_back(e.prob(i) * psd_sqrt(congruence(sqrt_sigma, e.state(i).hermitian())));
  }
  return tree_sum(std::span<const HermitianMatrix>(terms));
}

DensityMatrix gamma(const HermitianMatrix& m) {
  return DensityMatrix::unchecked(normalize_trace(m));
}

DensityMatrix omega_from_roots(const Ensemble& e, const PsdRoots& roots) {
  const ComplexMatrix sum = fidelity_sum(e, roots.sqrt).matrix();
  const ComplexMatrix& inv = roots.inv_sqrt.matrix();
  return gamma(HermitianMatrix(inv * sum * sum * inv));
}

DensityMatrix initial_state(const Ensemble& e, const SolveConfig& cfg) {
  switch (cfg.init) {
    case Init::commuting: {
      DensityMatrix start = commuting_estimator(e);
      return is_full_rank(start) ? start : DensityMatrix::maximally_mixed(e.dim());
    }
    case Init::mean:
      return mean_estimator(e);
    case Init::maximally_mixed:
      return DensityMatrix::maximally_mixed(e.dim());
    case Init::custom:
      if (!cfg.custom_init) throw OutOfRange("init=custom requires custom_init");
      if (cfg.custom_init->dim() != e.dim()) throw DimensionMismatch("custom init has the wrong dimension");
      if (!is_full_rank(*cfg.custom_init)) throw SingularState("custom initial state is not full rank");
      return *cfg.custom_init;
  }
  throw OutOfRange("unknown init");
}

}  // namespace

std::string_view to_string(Method m) {
  return m == Method::lambda ? "lambda" : "omega";
}

std::string_view to_string(Init i) {
  switch (i) {
    case Init::commuting: return "commuting";
    case Init::mean: return "mean";
    case Init::maximally_mixed: return "mixed";
    case Init::custom: return "custom";
  }
  return "unknown";
}

Method parse_method(std::string_view name) {
  if (name == "lambda") return Method::lambda;
  if (name == "omega") return Method::omega;
  throw OutOfRange("unknown fixed-point method '" + std::string(name) + "'");
}

Init parse_init(std::string_view name) {
  if (name == "commuting") return Init::commuting;
  if (name == "mean") return Init::mean;
  if (name == "mixed" || name == "maximally_mixed") return Init::maximally_mixed;
  throw OutOfRange("unknown init '" + std::string(name) + "'");
}

DensityMatrix mean_estimator(const Ensemble& e) {
  std::vector<HermitianMatrix> terms;
  terms.reserve(e.size());
  for (std::size_t i = 0; i < e.size(); ++i) terms.push_back(e.prob(i) * e.state(i).hermitian());
  return DensityMatrix::unchecked(tree_sum(std::span<const HermitianMatrix>(terms)));
}

DensityMatrix commuting_estimator(const Ensemble& e) {
  std::vector<HermitianMatrix> terms;
  terms.reserve(e.size());
  for (std::size_t i = 0; i < e.size(); ++i) terms.push_back(e.prob(i) * psd_sqrt(e.state(i).hermitian()));
  const ComplexMatrix root_mean = tree_sum(std::span<const HermitianMatrix>(terms)).matrix();
  return gamma(HermitianMatrix(root_mean * root_mean));
}

DensityMatrix lambda_step(const Ensemble& e, const DensityMatrix& sigma) {
  return gamma(fidelity_sum(e, roots_of_iterate(sigma).sqrt));
}

DensityMatrix omega_step(const Ensemble& e, const DensityMatrix& sigma) {
  return omega_from_roots(e, roots_of_iterate(sigma));
}

double fixed_point_residual(const Ensemble& e, const DensityMatrix& sigma) {
  return spectral_norm(sigma.hermitian() - lambda_step(e, sigma).hermitian());
}

void require_full_rank(const Ensemble& e) {
  for (std::size_t i = 0; i < e.size(); ++i) {
    if (!is_full_rank(e.state(i))) {
      throw SingularState("state " + std::to_string(i) +
                          " is rank deficient; the fixed-point maps need full-rank states. "
                          "Depolarize the ensemble first (e.g. --auto-depolarize 1e-6).");
    }
  }
}

SolveResult solve(const Ensemble& e, const SolveConfig& cfg) {
  if (!(cfg.tol > 0.0)) throw OutOfRange("tol must be positive");
  if (cfg.max_iters < 1) throw OutOfRange("max_iters must be >= 1");
  const auto start = std::chrono::steady_clock::now();

  double depolarized_by = 0.0;
  std::optional<Ensemble> depolarized;
  try {
    require_full_rank(e);
  } catch (const SingularState&) {
    if (!cfg.auto_depolarize) throw;
    const double eps = *cfg.auto_depolarize;
    if (!(eps > 0.0 && eps <= 1.0)) throw OutOfRange("auto_depolarize must be in (0, 1]");
    depolarized = depolarize(e, eps);
    depolarized_by = eps;
    require_full_rank(*depolarized);
  }
  const Ensemble& work = depolarized ? *depolarized : e;

  DensityMatrix sigma = initial_state(work, cfg);
  long iterations = 0;
  double residual = std::numeric_limits<double>::quiet_NaN();
  bool converged = false;
  while (iterations < cfg.max_iters) {
    DensityMatrix next = cfg.method == Method::omega ? omega_step(work, sigma) : lambda_step(work, sigma);
    residual = spectral_norm(next.hermitian() - sigma.hermitian());
    sigma = std::move(next);
    ++iterations;
    if (residual < cfg.tol) {
      converged = true;
      break;
    }
  }
  const double value = average_fidelity(work, sigma);
  const std::chrono::duration<double> elapsed = std::chrono::steady_clock::now() - start;
  return SolveResult{std::string(to_string(cfg.method)), std::move(sigma), value, iterations, residual,
                     converged, elapsed.count(), depolarized_by};
}

SolveResult closed_form(const Ensemble& e, std::string_view which) {
  const auto start = std::chrono::steady_clock::now();
  DensityMatrix state = [&] {
    if (which == "mean") return mean_estimator(e);
    if (which == "commuting") return commuting_estimator(e);
    throw OutOfRange("unknown closed-form estimator '" + std::string(which) + "'");
  }();
  const double value = average_fidelity(e, state);
  const double residual =
      is_full_rank(state) ? fixed_point_residual(e, state) : std::numeric_limits<double>::quiet_NaN();
  const std::chrono::duration<double> elapsed = std::chrono::steady_clock::now() - start;
  return SolveResult{std::string(which), std::move(state), value, 0, residual, true, elapsed.count(), 0.0};
}

std::string solve_result_to_json(const SolveResult& r) {
  std::string out = "{\n";
  out += "  \"method\": \"" + r.method + "\",\n";
  out += "  \"value\": " + json_format::number(r.value) + ",\n";
  out += "  \"iterations\": " + std::to_string(r.iterations) + ",\n";
  out += "  \"residual\": " + json_format::number(r.residual) + ",\n";
  out += std::string("  \"converged\": ") + (r.converged ? "true" : "false") + ",\n";
  out += "  \"wall_time_s\": " + json_format::number(r.wall_time_s) + ",\n";
  out += "  \"state\": " + json_format::matrix(r.state.matrix()) + "\n";
  return out + "}\n";
}

}  // namespace avgfid
