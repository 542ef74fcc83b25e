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

#include "avgfid/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "avgfid/errors.hpp"

namespace avgfid {
namespace {

double max_abs_eigenvalue(const RealVector& eigenvalues) {
  return std::max(std::abs(eigenvalues(0)), std::abs(eigenvalues(eigenvalues.size() - 1)));
}

// Magnitude below which a computed eigenvalue is indistinguishable from zero.
double roundoff_floor(int d, double norm) {
  return 16.0 * d * std::numeric_limits<double>::epsilon() * norm;
}

Eigen::JacobiSVD<ComplexMatrix> singular_values_of(const ComplexMatrix& a) {
  if (a.size() == 0) throw DimensionMismatch("empty matrix");
  if (!all_finite(a)) throw DecompositionFailure("matrix has non-finite entries");
  return Eigen::JacobiSVD<ComplexMatrix>(a);
}

template <typename T, typename Add>
T tree_reduce(std::span<const T> terms, Add add) {
  if (terms.size() == 1) return terms[0];
  const std::size_t half = terms.size() / 2;
  return add(tree_reduce(terms.first(half), add), tree_reduce(terms.subspan(half), add));
}

}  // namespace

HermitianMatrix::HermitianMatrix(const ComplexMatrix& a) {
  if (a.rows() == 0 || a.rows() != a.cols()) {
    throw DimensionMismatch("Hermitian matrix must be square and non-empty, got " +
                            std::to_string(a.rows()) + "x" + std::to_string(a.cols()));
  }
  if (!all_finite(a)) throw InvariantViolation("matrix has non-finite entries");
  m_ = (a + a.adjoint()) * 0.5;
}

HermitianMatrix HermitianMatrix::identity(int d) {
  return HermitianMatrix(ComplexMatrix::Identity(d, d));
}

HermitianMatrix HermitianMatrix::zero(int d) {
  return HermitianMatrix(ComplexMatrix::Zero(d, d));
}

HermitianMatrix HermitianMatrix::diagonal(std::span<const double> diag) {
  const auto d = static_cast<Eigen::Index>(diag.size());
  ComplexMatrix m = ComplexMatrix::Zero(d, d);
  for (Eigen::Index i = 0; i < d; ++i) m(i, i) = diag[i];
  return HermitianMatrix(m);
}

HermitianMatrix& HermitianMatrix::operator+=(const HermitianMatrix& other) {
  if (dim() != other.dim()) throw DimensionMismatch("Hermitian sum of different dimensions");
  m_ += other.m_;
  return *this;
}

HermitianMatrix& HermitianMatrix::operator-=(const HermitianMatrix& other) {
  if (dim() != other.dim()) throw DimensionMismatch("Hermitian difference of different dimensions");
  m_ -= other.m_;
  return *this;
}

HermitianMatrix& HermitianMatrix::operator*=(double s) {
  m_ *= s;
  return *this;
}

double hermiticity_defect(const ComplexMatrix& a) {
  if (a.rows() != a.cols()) return std::numeric_limits<double>::infinity();
  return (a - a.adjoint()).cwiseAbs().maxCoeff();
}

bool all_finite(const ComplexMatrix& a) {
  for (Eigen::Index j = 0; j < a.cols(); ++j) {
    for (Eigen::Index i = 0; i < a.rows(); ++i) {
      if (!std::isfinite(a(i, j).real()) || !std::isfinite(a(i, j).imag())) return false;
    }
  }
  return true;
}

EigenDecomposition herm_eig(const HermitianMatrix& a) {
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(a.matrix());
  if (solver.info() != Eigen::Success) {
    throw DecompositionFailure("Hermitian eigensolver did not converge (d=" +
                               std::to_string(a.dim()) + ")");
  }
  return {solver.eigenvalues(), solver.eigenvectors()};
}

HermitianMatrix psd_sqrt(const HermitianMatrix& p, double clip_tol) {
  const EigenDecomposition eig = herm_eig(p);
  const double norm = max_abs_eigenvalue(eig.eigenvalues);
  const double lowest = eig.eigenvalues(0);
  if (lowest < -clip_tol * norm) {
    throw NotPSD("eigenvalue " + std::to_string(lowest) + " below clipping tolerance");
  }
  const double zero_below = roundoff_floor(p.dim(), norm);
  return spectral_function(eig, [zero_below](double x) { return x <= zero_below ? 0.0 : std::sqrt(x); });
}

HermitianMatrix psd_inv_sqrt(const HermitianMatrix& p, double pd_floor) {
  return psd_roots(p, pd_floor).inv_sqrt;
}

PsdRoots psd_roots(const HermitianMatrix& p, double pd_floor) {
  const EigenDecomposition eig = herm_eig(p);
  const double norm = max_abs_eigenvalue(eig.eigenvalues);
  const double lowest = eig.eigenvalues(0);
  if (norm == 0.0 || lowest <= pd_floor * norm) {
    throw SingularMatrix("smallest eigenvalue " + std::to_string(lowest) +
                         " is not above the positive-definite floor");
  }
  return {spectral_function(eig, [](double x) { return std::sqrt(x); }),
          spectral_function(eig, [](double x) { return 1.0 / std::sqrt(x); }), lowest};
}

double trace_norm(const ComplexMatrix& a) {
  return singular_values_of(a).singularValues().sum();
}

double spectral_norm(const ComplexMatrix& a) {
  return singular_values_of(a).singularValues()(0);
}

double spectral_norm(const HermitianMatrix& a) {
  return max_abs_eigenvalue(herm_eig(a).eigenvalues);
}

double trace_distance(const HermitianMatrix& a, const HermitianMatrix& b) {
  const RealVector eigenvalues = herm_eig(a - b).eigenvalues;
  return 0.5 * eigenvalues.cwiseAbs().sum();
}

ComplexMatrix polar_unitary(const ComplexMatrix& a, double pd_floor) {
  if (a.rows() != a.cols()) throw DimensionMismatch("polar decomposition needs a square matrix");
  if (!all_finite(a)) throw DecompositionFailure("matrix has non-finite entries");
  Eigen::JacobiSVD<ComplexMatrix> svd(a, Eigen::ComputeFullU | Eigen::ComputeFullV);
  const RealVector& s = svd.singularValues();
  if (s(0) == 0.0 || s(s.size() - 1) <= pd_floor * s(0)) {
    throw RankDeficient("polar factor is not unique: smallest singular value " +
                        std::to_string(s(s.size() - 1)));
  }
  return svd.matrixU() * svd.matrixV().adjoint();
}

HermitianMatrix normalize_trace(const HermitianMatrix& a) {
  const double tr = a.trace();
  if (!(std::abs(tr) > 1e-14)) throw ZeroTrace("cannot normalize a matrix with trace " + std::to_string(tr));
  return HermitianMatrix(a.matrix() / tr);
}

HermitianMatrix congruence(const HermitianMatrix& b, const HermitianMatrix& a) {
  if (a.dim() != b.dim()) throw DimensionMismatch("congruence of different dimensions");
  return HermitianMatrix(b.matrix() * a.matrix() * b.matrix());
}

HermitianMatrix tree_sum(std::span<const HermitianMatrix> terms) {
  if (terms.empty()) throw DimensionMismatch("empty sum");
  return tree_reduce(terms, [](const HermitianMatrix& x, const HermitianMatrix& y) { return x + y; });
}

double tree_sum(std::span<const double> terms) {
  if (terms.empty()) return 0.0;
  return tree_reduce(terms, [](double x, double y) { return x + y; });
}

}  // namespace avgfid
