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

// Reference computations for tests. These deliberately avoid the library's
// eigendecomposition path: closed forms for qubits and commuting states, and
// Eigen's Schur-based matrix square root.

#include <algorithm>
#include <cmath>
#include <vector>

#include <unsupported/Eigen/MatrixFunctions>

#include "avgfid/ensemble.hpp"

namespace avgfid::oracle {

/// Tr sqrt(sqrt(sigma) rho sqrt(sigma)) via Schur-based square roots.
inline double fidelity_schur(const ComplexMatrix& rho, const ComplexMatrix& sigma) {
  const ComplexMatrix root_sigma = sigma.sqrt();
  const ComplexMatrix inner = root_sigma * rho * root_sigma;
  return inner.sqrt().trace().real();
}

/// Qubit closed form: F^2 = Tr(rho sigma) + 2 sqrt(det rho det sigma).
inline double qubit_fidelity(const ComplexMatrix& rho, const ComplexMatrix& sigma) {
  const double overlap = (rho * sigma).trace().real();
  const double det_rho = std::max(0.0, rho.determinant().real());
  const double det_sigma = std::max(0.0, sigma.determinant().real());
  return std::sqrt(std::max(0.0, overlap + 2.0 * std::sqrt(det_rho * det_sigma)));
}

/// Commuting (diagonal) states: F = sum_k sqrt(p_k q_k).
inline double diagonal_fidelity(const ComplexMatrix& rho, const ComplexMatrix& sigma) {
  double f = 0.0;
  for (Eigen::Index k = 0; k < rho.rows(); ++k) f += std::sqrt(std::max(0.0, rho(k, k).real() * sigma(k, k).real()));
  return f;
}

/// Density matrix (I + x X + y Y + z Z) / 2.
inline ComplexMatrix bloch_state(double x, double y, double z) {
  ComplexMatrix m(2, 2);
  m << Complex(0.5 * (1 + z), 0), Complex(0.5 * x, -0.5 * y), Complex(0.5 * x, 0.5 * y), Complex(0.5 * (1 - z), 0);
  return m;
}

/// Bloch vector of a qubit state.
inline Eigen::Vector3d bloch_vector(const ComplexMatrix& m) {
  return {2.0 * m(1, 0).real(), 2.0 * m(1, 0).imag(), (m(0, 0) - m(1, 1)).real()};
}

/// Maximum average fidelity over a grid of step `step` on [-1, 1]^3
/// restricted to the Bloch ball. Uses the qubit closed form in Bloch
/// coordinates: Tr(rho sigma) = (1 + r.s) / 2 and det = (1 - |r|^2) / 4.
struct GridMax {
  double value = 0.0;
  Eigen::Vector3d point = Eigen::Vector3d::Zero();
};

inline GridMax bloch_grid_max(const Ensemble& e, double step) {
  const std::size_t n = e.size();
  std::vector<Eigen::Vector3d> r(n);
  std::vector<double> root_det(n);
  for (std::size_t i = 0; i < n; ++i) {
    r[i] = bloch_vector(e.state(i).matrix());
    root_det[i] = std::sqrt(std::max(0.0, (1.0 - r[i].squaredNorm()) / 4.0));
  }
  const int half = static_cast<int>(std::lround(1.0 / step));
  GridMax best;
  for (int a = -half; a <= half; ++a) {
    const double x = a * step;
    for (int b = -half; b <= half; ++b) {
      const double y = b * step;
      const double xy = x * x + y * y;
      if (xy > 1.0) continue;
      for (int c = -half; c <= half; ++c) {
        const double z = c * step;
        const double s2 = xy + z * z;
        if (s2 > 1.0) continue;
        const double root_det_sigma = std::sqrt((1.0 - s2) / 4.0);
        double f = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
          const double overlap = 0.5 * (1.0 + r[i].x() * x + r[i].y() * y + r[i].z() * z);
          f += e.prob(i) * std::sqrt(std::max(0.0, overlap + 2.0 * root_det[i] * root_det_sigma));
        }
        if (f > best.value) {
          best.value = f;
          best.point = {x, y, z};
        }
      }
    }
  }
  return best;
}

inline bool pairwise_commute(const Ensemble& e, double tol) {
  for (std::size_t i = 0; i < e.size(); ++i) {
    for (std::size_t j = i + 1; j < e.size(); ++j) {
      const ComplexMatrix& a = e.state(i).matrix();
      const ComplexMatrix& b = e.state(j).matrix();
      if ((a * b - b * a).cwiseAbs().maxCoeff() > tol) return false;
    }
  }
  return true;
}

/// Random diagonal ensemble with flat-Dirichlet spectra and weights.
inline Ensemble random_diagonal_ensemble(int d, std::size_t n, Rng& rng) {
  return random_commuting_ensemble(d, n, false, rng);
}

inline ComplexMatrix conjugate(const ComplexMatrix& u, const ComplexMatrix& m) { return u * m * u.adjoint(); }

}  // namespace avgfid::oracle
