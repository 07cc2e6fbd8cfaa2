// Copyright 2026 The quatdyn authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <Eigen/Dense>
#include <complex>
#include <stdexcept>

namespace quatdyn {

using Complex = std::complex<double>;
using CMatrix = Eigen::MatrixXcd;

/// Thrown when a matrix that must be inverted is numerically singular
/// (condition number of its complex adjoint representation above 1e12).
class SingularMatrixError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A real quaternion q = a + b i + c j + d k.
///
/// The symplectic split used throughout the library is
///   q = z_alpha + j z_beta,   z_alpha = a + b i,   z_beta = c - d i,
/// which is the unique split compatible with the commutation rule
/// j z = conj(z) j for complex z.
struct Quaternion {
  double a = 0.0;
  double b = 0.0;
  double c = 0.0;
  double d = 0.0;

  static Quaternion from_symplectic(Complex alpha, Complex beta) {
    return {alpha.real(), alpha.imag(), beta.real(), -beta.imag()};
  }

  Complex alpha() const { return {a, b}; }
  Complex beta() const { return {c, -d}; }

  Quaternion conjugate() const { return {a, -b, -c, -d}; }
  double norm() const;

  friend Quaternion operator+(const Quaternion& p, const Quaternion& q) {
    return {p.a + q.a, p.b + q.b, p.c + q.c, p.d + q.d};
  }
  friend Quaternion operator-(const Quaternion& p, const Quaternion& q) {
    return {p.a - q.a, p.b - q.b, p.c - q.c, p.d - q.d};
  }
  friend Quaternion operator*(double s, const Quaternion& q) {
    return {s * q.a, s * q.b, s * q.c, s * q.d};
  }
  /// Hamilton product; not commutative.
  friend Quaternion operator*(const Quaternion& p, const Quaternion& q) {
    return {p.a * q.a - p.b * q.b - p.c * q.c - p.d * q.d,
            p.a * q.b + p.b * q.a + p.c * q.d - p.d * q.c,
            p.a * q.c - p.b * q.d + p.c * q.a + p.d * q.b,
            p.a * q.d + p.b * q.c - p.c * q.b + p.d * q.a};
  }
};

/// Dense quaternionic matrix M = alpha + j beta stored as the symplectic
/// pair (alpha, beta) of complex matrices.
///
/// M is Hermitian iff alpha = alpha^dagger and beta = -beta^T, and
/// anti-Hermitian iff alpha = -alpha^dagger and beta = beta^T.
/// Values are immutable in practice: all operations return new matrices.
class QMatrix {
 public:
  QMatrix() = default;

  /// alpha and beta must have the same shape.
  QMatrix(CMatrix alpha, CMatrix beta);

  /// A purely complex matrix (beta = 0).
  explicit QMatrix(CMatrix alpha);

  static QMatrix zero(Eigen::Index rows, Eigen::Index cols);
  static QMatrix identity(Eigen::Index n);
  /// The purely quaternionic matrix j * beta.
  static QMatrix pure_j(CMatrix beta);
  /// Reads the (alpha, beta) blocks of a 2n x 2m chi-form matrix.
  static QMatrix from_chi(const CMatrix& chi);

  Eigen::Index rows() const { return alpha_.rows(); }
  Eigen::Index cols() const { return alpha_.cols(); }
  bool is_square() const { return rows() == cols(); }

  const CMatrix& alpha() const { return alpha_; }
  const CMatrix& beta() const { return beta_; }
  Quaternion quat(Eigen::Index i, Eigen::Index j) const {
    return Quaternion::from_symplectic(alpha_(i, j), beta_(i, j));
  }

  /// Conjugate transpose: (alpha^dagger, -beta^T).
  QMatrix dagger() const;

  /// Complex adjoint representation chi(M) = [[alpha, -conj(beta)],
  /// [beta, conj(alpha)]]; an algebra homomorphism with chi(M^dagger) =
  /// chi(M)^dagger. Used for inversion and spectra.
  CMatrix chi() const;

  /// Largest entry magnitude, max_ij |M_ij| over quaternion norms.
  double max_abs() const;

  QMatrix operator-() const { return {-alpha_, -beta_}; }
  QMatrix& operator+=(const QMatrix& rhs);
  QMatrix& operator-=(const QMatrix& rhs);
  QMatrix& operator*=(double s);

  friend QMatrix operator+(QMatrix lhs, const QMatrix& rhs) { return lhs += rhs; }
  friend QMatrix operator-(QMatrix lhs, const QMatrix& rhs) { return lhs -= rhs; }
  friend QMatrix operator*(QMatrix lhs, double s) { return lhs *= s; }
  friend QMatrix operator*(double s, QMatrix rhs) { return rhs *= s; }
  /// Quaternionic matrix product via the symplectic product rule
  ///   (AB)_alpha = A_alpha B_alpha - conj(A_beta) B_beta
  ///   (AB)_beta  = conj(A_alpha) B_beta + A_beta B_alpha.
  friend QMatrix operator*(const QMatrix& lhs, const QMatrix& rhs);

 private:
  CMatrix alpha_;
  CMatrix beta_;
};

/// Complex projection P[M] = (M - i M i)/2 = alpha.
CMatrix complex_projection(const QMatrix& m);

/// Re tr M = Re tr(alpha); cyclic: Re tr(AB) = Re tr(BA). Requires square.
double re_trace(const QMatrix& m);

/// Inverse through the chi representation. Throws SingularMatrixError when
/// cond(chi(m)) exceeds 1e12.
QMatrix inverse(const QMatrix& m);

/// Eigenvalues of chi(m) for Hermitian m, ascending. For quaternionic
/// Hermitian matrices every eigenvalue appears with even multiplicity.
Eigen::VectorXd hermitian_eigenvalues(const QMatrix& m);

struct PositivityResult {
  bool positive = false;
  double min_eigenvalue = 0.0;
};

/// Positive-semidefiniteness test for a Hermitian quaternionic matrix:
/// all chi eigenvalues >= -tol * |lambda|_max. Throws std::invalid_argument
/// for non-Hermitian input.
PositivityResult is_positive(const QMatrix& m, double tol = 1e-10);

bool is_hermitian(const QMatrix& m, double tol = 1e-12);
bool is_anti_hermitian(const QMatrix& m, double tol = 1e-12);

/// max_ij |A_ij - B_ij| over the symplectic components.
double max_abs_diff(const QMatrix& a, const QMatrix& b);

}  // namespace quatdyn
