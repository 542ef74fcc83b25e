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

#include "avgfid/ensemble.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "avgfid/errors.hpp"

namespace avgfid {
namespace {

// Fidelities above one by less than this are round-off and clamped.
constexpr double kFidelityOvershoot = 1e-9;

ComplexMatrix ginibre(int rows, int cols, Rng& rng) {
  std::normal_distribution<double> normal(0.0, 1.0);
  ComplexMatrix g(rows, cols);
  // Fill row-major so the draw order is independent of Eigen's storage order.
  for (int i = 0; i < rows; ++i) {
    for (int j = 0; j < cols; ++j) {
      const double re = normal(rng);
      const double im = normal(rng);
      g(i, j) = Complex(re, im);
    }
  }
  return g;
}

double clamp_fidelity(double value) {
  if (!(value <= 1.0 + kFidelityOvershoot)) {
    throw NumericalInstability("fidelity " + std::to_string(value) + " exceeds 1");
  }
  return std::clamp(value, 0.0, 1.0);
}

}  // namespace

Rng make_rng(std::uint64_t seed, std::initializer_list<std::uint64_t> stream) {
  std::vector<std::uint32_t> words;
  words.reserve(2 + 2 * stream.size());
  auto push = [&words](std::uint64_t v) {
    words.push_back(static_cast<std::uint32_t>(v & 0xffffffffu));
    words.push_back(static_cast<std::uint32_t>(v >> 32));
  };
  push(seed);
  for (std::uint64_t s : stream) push(s);
  std::seed_seq seq(words.begin(), words.end());
  return Rng(seq);
}

DensityMatrix::DensityMatrix(HermitianMatrix m) : m_(std::move(m)) {
  const double tr = m_.trace();
  if (!(std::abs(tr - 1.0) <= kTraceTol)) {
    throw InvariantViolation("density matrix trace is " + std::to_string(tr) + ", expected 1");
  }
  const double lowest = herm_eig(m_).eigenvalues(0);
  if (lowest < -kPsdTol) {
    throw InvariantViolation("density matrix has negative eigenvalue " + std::to_string(lowest));
  }
}

DensityMatrix DensityMatrix::unchecked(HermitianMatrix m) {
  return DensityMatrix(std::move(m), Unchecked{});
}

DensityMatrix DensityMatrix::maximally_mixed(int d) {
  return unchecked(HermitianMatrix::identity(d) * (1.0 / d));
}

DensityMatrix DensityMatrix::pure(const ComplexVector& psi) {
  const double norm2 = psi.squaredNorm();
  if (!(norm2 > 0.0)) throw InvariantViolation("pure state vector has zero norm");
  return unchecked(HermitianMatrix(psi * psi.adjoint() / norm2));
}

DensityMatrix DensityMatrix::diagonal(std::span<const double> p) {
  return DensityMatrix(HermitianMatrix::diagonal(p));
}

ProbabilityVector::ProbabilityVector(std::vector<double> weights) : w_(std::move(weights)) {
  if (w_.empty()) throw InvariantViolation("probability vector is empty");
  for (std::size_t i = 0; i < w_.size(); ++i) {
    if (!std::isfinite(w_[i]) || w_[i] < 0.0) {
      throw InvariantViolation("probability " + std::to_string(i) + " is " + std::to_string(w_[i]));
    }
  }
  const double total = tree_sum(std::span<const double>(w_));
  if (!(std::abs(total - 1.0) <= kSimplexTol)) {
    throw InvariantViolation("probabilities sum to " + std::to_string(total) + ", expected 1");
  }
}

ProbabilityVector ProbabilityVector::uniform(std::size_t n) {
  if (n == 0) throw OutOfRange("uniform distribution needs n >= 1");
  return ProbabilityVector(std::vector<double>(n, 1.0 / static_cast<double>(n)));
}

Ensemble::Ensemble(std::vector<DensityMatrix> states, ProbabilityVector probs)
    : states_(std::move(states)), probs_(std::move(probs)) {
  if (states_.empty()) throw InvariantViolation("ensemble has no states");
  if (states_.size() != probs_.size()) {
    throw DimensionMismatch("ensemble has " + std::to_string(states_.size()) + " states but " +
                            std::to_string(probs_.size()) + " probabilities");
  }
  for (const auto& s : states_) {
    if (s.dim() != states_.front().dim()) throw DimensionMismatch("ensemble states differ in dimension");
  }
}

double fidelity_from_roots(const HermitianMatrix& sqrt_rho, const HermitianMatrix& sqrt_sigma) {
  if (sqrt_rho.dim() != sqrt_sigma.dim()) throw DimensionMismatch("fidelity of states of different dimension");
  return clamp_fidelity(trace_norm(sqrt_rho.matrix() * sqrt_sigma.matrix()));
}

double fidelity(const DensityMatrix& rho, const DensityMatrix& sigma) {
  if (rho.dim() != sigma.dim()) throw DimensionMismatch("fidelity of states of different dimension");
  return fidelity_from_roots(psd_sqrt(rho.hermitian()), psd_sqrt(sigma.hermitian()));
}

double average_fidelity(const Ensemble& e, const DensityMatrix& sigma) {
  if (e.dim() != sigma.dim()) throw DimensionMismatch("state dimension does not match ensemble");
  const HermitianMatrix sqrt_sigma = psd_sqrt(sigma.hermitian());
  std::vector<double> terms(e.size());
  for (std::size_t i = 0; i < e.size(); ++i) {
    terms[i] = e.prob(i) * fidelity_from_roots(psd_sqrt(e.state(i).hermitian()), sqrt_sigma);
  }
  return clamp_fidelity(tree_sum(std::span<const double>(terms)));
}

DensityMatrix depolarize(const DensityMatrix& rho, double eps) {
  if (!(eps >= 0.0 && eps <= 1.0)) throw OutOfRange("depolarizing strength must be in [0, 1]");
  const int d = rho.dim();
  return DensityMatrix::unchecked(rho.hermitian() * (1.0 - eps) +
                                  HermitianMatrix::identity(d) * (eps / d));
}

Ensemble depolarize(const Ensemble& e, double eps) {
  std::vector<DensityMatrix> states;
  states.reserve(e.size());
  for (const auto& s : e.states()) states.push_back(depolarize(s, eps));
  return Ensemble(std::move(states), e.probs());
}

bool is_full_rank(const DensityMatrix& rho) {
  const RealVector ev = herm_eig(rho.hermitian()).eigenvalues;
  const double norm = std::max(std::abs(ev(0)), std::abs(ev(ev.size() - 1)));
  return norm > 0.0 && ev(0) > kPdFloor * norm;
}

DensityMatrix random_density(int d, int rank, Rng& rng) {
  if (d < 1) throw OutOfRange("dimension must be >= 1");
  if (rank < 1 || rank > d) throw OutOfRange("rank must be in [1, d]");
  const ComplexMatrix g = ginibre(d, rank, rng);
  return DensityMatrix::unchecked(normalize_trace(HermitianMatrix(g * g.adjoint())));
}

ProbabilityVector random_simplex(std::size_t n, Rng& rng) {
  if (n < 1) throw OutOfRange("simplex dimension must be >= 1");
  std::exponential_distribution<double> exponential(1.0);
  std::vector<double> w(n);
  for (auto& x : w) x = exponential(rng);
  const double total = tree_sum(std::span<const double>(w));
  for (auto& x : w) x /= total;
  return ProbabilityVector(std::move(w));
}

ComplexMatrix random_unitary(int d, Rng& rng) {
  if (d < 1) throw OutOfRange("dimension must be >= 1");
  const ComplexMatrix z = ginibre(d, d, rng);
  Eigen::HouseholderQR<ComplexMatrix> qr(z);
  ComplexMatrix q = qr.householderQ();
  const ComplexMatrix& r = qr.matrixQR();
  for (int j = 0; j < d; ++j) {
    const Complex rjj = r(j, j);
    const double mag = std::abs(rjj);
    if (mag > 0.0) q.col(j) *= rjj / mag;
  }
  return q;
}

Ensemble random_ensemble(int d, std::size_t n, int rank, Rng& rng) {
  std::vector<DensityMatrix> states;
  states.reserve(n);
  for (std::size_t i = 0; i < n; ++i) states.push_back(random_density(d, rank, rng));
  return Ensemble(std::move(states), random_simplex(n, rng));
}

Ensemble random_commuting_ensemble(int d, std::size_t n, bool random_basis, Rng& rng) {
  const ComplexMatrix basis = random_basis ? random_unitary(d, rng) : ComplexMatrix::Identity(d, d);
  std::vector<DensityMatrix> states;
  states.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    const ProbabilityVector spectrum = random_simplex(static_cast<std::size_t>(d), rng);
    const ComplexMatrix diag = HermitianMatrix::diagonal(spectrum.weights()).matrix();
    states.push_back(DensityMatrix::unchecked(HermitianMatrix(basis * diag * basis.adjoint())));
  }
  return Ensemble(std::move(states), random_simplex(n, rng));
}

}  // namespace avgfid
