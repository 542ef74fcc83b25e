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

#include "avgfid/tomography.hpp"

#include <chrono>
#include <cmath>
#include <string>

#include "avgfid/errors.hpp"
#include "avgfid/parallel.hpp"

namespace avgfid {
namespace {

constexpr double kDegenerateWeightSum = 1e-12;

ProbabilityVector normalized(std::vector<double> w, const char* what) {
  const double total = tree_sum(std::span<const double>(w));
  if (!(total >= kDegenerateWeightSum)) {
    throw DegenerateWeights(std::string(what) + ": total weight " + std::to_string(total) + " is degenerate");
  }
  for (auto& x : w) x /= total;
  return ProbabilityVector(std::move(w));
}

double seconds_since(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

}  // namespace

ProbabilityVector posterior_weights(std::span<const DensityMatrix> particles, const DensityMatrix& true_state) {
  if (particles.empty()) throw OutOfRange("no particles");
  const HermitianMatrix sqrt_true = psd_sqrt(true_state.hermitian());
  std::vector<double> w(particles.size());
  for (std::size_t i = 0; i < particles.size(); ++i) {
    if (particles[i].dim() != true_state.dim()) throw DimensionMismatch("particle dimension differs from true state");
    w[i] = fidelity_from_roots(psd_sqrt(particles[i].hermitian()), sqrt_true);
  }
  return normalized(std::move(w), "posterior weights");
}

ProbabilityVector bayes_update(const ProbabilityVector& prior, std::span<const double> likelihoods) {
  if (likelihoods.size() != prior.size()) throw DimensionMismatch("prior and likelihood lengths differ");
  std::vector<double> w(prior.size());
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (!(likelihoods[i] >= 0.0) || !std::isfinite(likelihoods[i])) {
      throw OutOfRange("likelihood " + std::to_string(i) + " must be finite and non-negative");
    }
    w[i] = prior[i] * likelihoods[i];
  }
  return normalized(std::move(w), "posterior");
}

TomographyTrial make_trial(int d, std::size_t n, double lambda, Rng& rng, std::uint64_t seed) {
  if (d < 2) throw OutOfRange("tomography needs d >= 2");
  if (n < 1) throw OutOfRange("tomography needs n >= 1");
  if (!(lambda >= 0.0 && lambda <= 1.0)) throw OutOfRange("lambda must be in [0, 1]");

  DensityMatrix truth = random_density(d, d, rng);
  std::vector<DensityMatrix> particles;
  particles.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    const DensityMatrix raw = random_density(d, d, rng);
    particles.push_back(
        DensityMatrix::unchecked(truth.hermitian() * lambda + raw.hermitian() * (1.0 - lambda)));
  }
  ProbabilityVector weights = posterior_weights(particles, truth);
  return TomographyTrial{d, n, lambda, seed, std::move(truth), Ensemble(std::move(particles), std::move(weights))};
}

std::string_view to_string(Estimator e) {
  switch (e) {
    case Estimator::bayes: return "bayes";
    case Estimator::commuting: return "commuting";
    case Estimator::mean: return "mean";
  }
  return "unknown";
}

Estimator parse_estimator(std::string_view name) {
  if (name == "bayes") return Estimator::bayes;
  if (name == "commuting") return Estimator::commuting;
  if (name == "mean") return Estimator::mean;
  throw OutOfRange("unknown estimator '" + std::string(name) + "'");
}

std::vector<SweepRecord> run_sweep(const SweepConfig& cfg) {
  if (cfg.trials < 1) throw OutOfRange("trials must be >= 1");
  if (cfg.lambdas.empty()) throw OutOfRange("lambda grid is empty");
  for (double l : cfg.lambdas) {
    if (!(l >= 0.0 && l <= 1.0)) throw OutOfRange("lambda grid values must be in [0, 1]");
  }
  if (cfg.estimators.empty()) throw OutOfRange("no estimators selected");
  if (!(cfg.depolarize_eps >= 0.0 && cfg.depolarize_eps <= 1.0)) throw OutOfRange("depolarize_eps must be in [0, 1]");

  const std::size_t per_trial = cfg.estimators.size();
  const std::size_t jobs = cfg.lambdas.size() * cfg.trials;
  std::vector<SweepRecord> records(jobs * per_trial);

  parallel_for(jobs, cfg.threads, [&](std::size_t job) {
    const std::size_t li = job / cfg.trials;
    const std::size_t t = job % cfg.trials;
    Rng rng = make_rng(cfg.seed, {li, t});
    const TomographyTrial trial = make_trial(cfg.d, cfg.n, cfg.lambdas[li], rng, cfg.seed);
    const Ensemble particles = depolarize(trial.particles, cfg.depolarize_eps);

    for (std::size_t k = 0; k < per_trial; ++k) {
      const Estimator which = cfg.estimators[k];
      const auto start = std::chrono::steady_clock::now();
      long iterations = 0;
      const DensityMatrix estimate = [&] {
        switch (which) {
          case Estimator::bayes: {
            SolveResult r = solve(particles, cfg.solve);
            iterations = r.iterations;
            return std::move(r.state);
          }
          case Estimator::commuting:
            return commuting_estimator(particles);
          case Estimator::mean:
            break;
        }
        return mean_estimator(particles);
      }();
      const double elapsed = seconds_since(start);
      records[job * per_trial + k] = SweepRecord{cfg.lambdas[li], li, t, which,
                                                 1.0 - fidelity(estimate, trial.true_state), iterations, elapsed};
    }
  });
  return records;
}

}  // namespace avgfid
