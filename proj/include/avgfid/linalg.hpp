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

// Dense complex Hermitian linear algebra. Every matrix function goes through a
// full Hermitian eigendecomposition; norms and polar factors go through SVD.

#include <complex>
#include <span>
#include <vector>

#include <Eigen/Dense>

namespace avgfid {

using Complex = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;
using ComplexVector = Eigen::VectorXcd;
using RealVector = Eigen::VectorXd;

/// Default tolerance on |A_ij - conj(A_ji)| for Hermitian inputs.
inline constexpr double kHermTol = 1e-10;
/// Eigenvalues in [-kClipTol * ||P||, 0) are treated as round-off and clipped.
inline constexpr double kClipTol = 1e-10;
/// Relative floor below which an eigenvalue or singular value counts as zero.
inline constexpr double kPdFloor = 1e-12;

/// Dense d x d complex Hermitian matrix. Construction symmetrizes the input
/// as (A + A^dagger) / 2, so the stored matrix is exactly Hermitian.
class HermitianMatrix {
 public:
  HermitianMatrix() = default;
  explicit HermitianMatrix(const ComplexMatrix& a);

  static HermitianMatrix identity(int d);
  static HermitianMatrix zero(int d);
  static HermitianMatrix diagonal(std::span<const double> diag);

  int dim() const { return static_cast<int>(m_.rows()); }
  const ComplexMatrix& matrix() const { return m_; }
  Complex operator()(int i, int j) const { return m_(i, j); }
  double trace() const { return m_.trace().real(); }

  HermitianMatrix& operator+=(const HermitianMatrix& other);
  HermitianMatrix& operator-=(const HermitianMatrix& other);
  HermitianMatrix& operator*=(double s);

  friend HermitianMatrix operator+(HermitianMatrix a, const HermitianMatrix& b) { return a += b; }
  friend HermitianMatrix operator-(HermitianMatrix a, const HermitianMatrix& b) { return a -= b; }
  friend HermitianMatrix operator*(double s, HermitianMatrix a) { return a *= s; }
  friend HermitianMatrix operator*(HermitianMatrix a, double s) { return a *= s; }

  friend bool operator==(const HermitianMatrix& a, const HermitianMatrix& b) {
    return a.m_.rows() == b.m_.rows() && a.m_ == b.m_;
  }

 private:
  ComplexMatrix m_;
};

/// max_ij |A_ij - conj(A_ji)|; the raw deviation of an unsymmetrized matrix.
double hermiticity_defect(const ComplexMatrix& a);

/// True if every real and imaginary component is finite.
bool all_finite(const ComplexMatrix& a);

struct EigenDecomposition {
  RealVector eigenvalues;     // ascending
  ComplexMatrix eigenvectors;  // unitary, columns are eigenvectors
};

EigenDecomposition herm_eig(const HermitianMatrix& a);

/// V f(Lambda) V^dagger for a real function applied to the spectrum.
template <typename F>
HermitianMatrix spectral_function(const EigenDecomposition& eig, F&& f) {
  RealVector mapped = eig.eigenvalues.unaryExpr(std::forward<F>(f));
  return HermitianMatrix(eig.eigenvectors * mapped.asDiagonal() * eig.eigenvectors.adjoint());
}

/// Unique PSD square root. Eigenvalues down to -clip_tol * ||P|| are clipped
/// to zero; anything more negative throws NotPSD. Eigenvalues whose magnitude
/// is at eigensolver round-off level are also zeroed so rank-deficient inputs
/// keep their exact rank.
HermitianMatrix psd_sqrt(const HermitianMatrix& p, double clip_tol = kClipTol);

/// P^{-1/2}. Throws SingularMatrix if any eigenvalue is <= pd_floor * ||P||.
HermitianMatrix psd_inv_sqrt(const HermitianMatrix& p, double pd_floor = kPdFloor);

/// P^{1/2} and P^{-1/2} from a single eigendecomposition.
struct PsdRoots {
  HermitianMatrix sqrt;
  HermitianMatrix inv_sqrt;
  double min_eigenvalue = 0.0;
};
PsdRoots psd_roots(const HermitianMatrix& p, double pd_floor = kPdFloor);

/// Sum of singular values.
double trace_norm(const ComplexMatrix& a);
/// Largest singular value.
double spectral_norm(const ComplexMatrix& a);
/// Largest |eigenvalue|; equals the spectral norm for Hermitian input.
double spectral_norm(const HermitianMatrix& a);

/// 0.5 * ||A - B||_1.
double trace_distance(const HermitianMatrix& a, const HermitianMatrix& b);

/// Unitary factor U of the right polar decomposition A = U |A|, via
/// A = W S V^dagger => U = W V^dagger. Throws RankDeficient when the smallest
/// singular value is below pd_floor * ||A||.
ComplexMatrix polar_unitary(const ComplexMatrix& a, double pd_floor = kPdFloor);

/// A / Tr(A). Throws ZeroTrace if |Tr(A)| <= 1e-14.
HermitianMatrix normalize_trace(const HermitianMatrix& a);

/// B A B for Hermitian A, B. The product is Hermitian up to round-off.
HermitianMatrix congruence(const HermitianMatrix& b, const HermitianMatrix& a);

/// Sums in a fixed balanced-tree order so the result does not depend on how
/// the terms were produced.
HermitianMatrix tree_sum(std::span<const HermitianMatrix> terms);
double tree_sum(std::span<const double> terms);

}  // namespace avgfid
