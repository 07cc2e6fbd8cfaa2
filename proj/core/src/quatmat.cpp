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

#include "quatdyn/quatmat.hpp"

#include <cmath>
#include <limits>
#include <sstream>

namespace quatdyn {

namespace {

constexpr double kConditionCap = 1e12;

double scale_of(const QMatrix& m) { return std::max(1.0, m.max_abs()); }

}  // namespace

double Quaternion::norm() const { return std::sqrt(a * a + b * b + c * c + d * d); }

QMatrix::QMatrix(CMatrix alpha, CMatrix beta)
    : alpha_(std::move(alpha)), beta_(std::move(beta)) {
  if (alpha_.rows() != beta_.rows() || alpha_.cols() != beta_.cols()) {
    throw std::invalid_argument("QMatrix: alpha and beta blocks must have the same shape");
  }
}

QMatrix::QMatrix(CMatrix alpha)
    : alpha_(std::move(alpha)), beta_(CMatrix::Zero(alpha_.rows(), alpha_.cols())) {}

QMatrix QMatrix::zero(Eigen::Index rows, Eigen::Index cols) {
  return {CMatrix::Zero(rows, cols), CMatrix::Zero(rows, cols)};
}

QMatrix QMatrix::identity(Eigen::Index n) {
  return {CMatrix::Identity(n, n), CMatrix::Zero(n, n)};
}

QMatrix QMatrix::pure_j(CMatrix beta) {
  CMatrix alpha = CMatrix::Zero(beta.rows(), beta.cols());
  return {std::move(alpha), std::move(beta)};
}

QMatrix QMatrix::from_chi(const CMatrix& chi) {
  if (chi.rows() % 2 != 0 || chi.cols() % 2 != 0) {
    throw std::invalid_argument("from_chi: dimensions must be even");
  }
  const Eigen::Index n = chi.rows() / 2;
  const Eigen::Index m = chi.cols() / 2;
  return {chi.topLeftCorner(n, m), chi.bottomLeftCorner(n, m)};
}

QMatrix QMatrix::dagger() const { return {alpha_.adjoint(), -beta_.transpose()}; }

CMatrix QMatrix::chi() const {
  CMatrix out(2 * rows(), 2 * cols());
  out.topLeftCorner(rows(), cols()) = alpha_;
  out.topRightCorner(rows(), cols()) = -beta_.conjugate();
  out.bottomLeftCorner(rows(), cols()) = beta_;
  out.bottomRightCorner(rows(), cols()) = alpha_.conjugate();
  return out;
}

double QMatrix::max_abs() const {
  if (rows() == 0 || cols() == 0) return 0.0;
  return std::max(alpha_.cwiseAbs().maxCoeff(), beta_.cwiseAbs().maxCoeff());
}

QMatrix& QMatrix::operator+=(const QMatrix& rhs) {
  alpha_ += rhs.alpha_;
  beta_ += rhs.beta_;
  return *this;
}

QMatrix& QMatrix::operator-=(const QMatrix& rhs) {
  alpha_ -= rhs.alpha_;
  beta_ -= rhs.beta_;
  return *this;
}

QMatrix& QMatrix::operator*=(double s) {
  alpha_ *= s;
  beta_ *= s;
  return *this;
}

QMatrix operator*(const QMatrix& lhs, const QMatrix& rhs) {
  if (lhs.cols() != rhs.rows()) {
    std::ostringstream msg;
    msg << "QMatrix product: inner dimensions mismatch (" << lhs.rows() << "x" << lhs.cols()
        << " times " << rhs.rows() << "x" << rhs.cols() << ")";
    throw std::invalid_argument(msg.str());
  }
  CMatrix alpha = lhs.alpha_ * rhs.alpha_ - lhs.beta_.conjugate() * rhs.beta_;
  CMatrix beta = lhs.alpha_.conjugate() * rhs.beta_ + lhs.beta_ * rhs.alpha_;
  return {std::move(alpha), std::move(beta)};
}

CMatrix complex_projection(const QMatrix& m) { return m.alpha(); }

double re_trace(const QMatrix& m) {
  if (!m.is_square()) {
    throw std::invalid_argument("re_trace requires a square matrix");
  }
  return m.alpha().trace().real();
}

QMatrix inverse(const QMatrix& m) {
  if (!m.is_square()) {
    throw std::invalid_argument("inverse requires a square matrix");
  }
  const CMatrix x = m.chi();
  const Eigen::JacobiSVD<CMatrix> svd(x);
  const double smax = svd.singularValues()(0);
  const double smin = svd.singularValues()(svd.singularValues().size() - 1);
  if (smin <= 0.0 || smax / smin > kConditionCap) {
    std::ostringstream msg;
    msg << "singular quaternionic matrix: cond(chi) = "
        << (smin > 0.0 ? smax / smin : std::numeric_limits<double>::infinity());
    throw SingularMatrixError(msg.str());
  }
  return QMatrix::from_chi(x.partialPivLu().inverse());
}

Eigen::VectorXd hermitian_eigenvalues(const QMatrix& m) {
  if (!m.is_square()) {
    throw std::invalid_argument("hermitian_eigenvalues requires a square matrix");
  }
  Eigen::SelfAdjointEigenSolver<CMatrix> solver(m.chi(), Eigen::EigenvaluesOnly);
  return solver.eigenvalues();
}

PositivityResult is_positive(const QMatrix& m, double tol) {
  if (!is_hermitian(m, 1e-10)) {
    throw std::invalid_argument("is_positive requires a Hermitian matrix");
  }
  const Eigen::VectorXd eigs = hermitian_eigenvalues(m);
  const double min_eig = eigs(0);
  const double abs_max = std::max(std::abs(eigs(0)), std::abs(eigs(eigs.size() - 1)));
  return {min_eig >= -tol * abs_max, min_eig};
}

bool is_hermitian(const QMatrix& m, double tol) {
  if (!m.is_square()) return false;
  return max_abs_diff(m, m.dagger()) <= tol * scale_of(m);
}

bool is_anti_hermitian(const QMatrix& m, double tol) {
  if (!m.is_square()) return false;
  return max_abs_diff(m, -m.dagger()) <= tol * scale_of(m);
}

double max_abs_diff(const QMatrix& a, const QMatrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) {
    throw std::invalid_argument("max_abs_diff: shape mismatch");
  }
  if (a.rows() == 0 || a.cols() == 0) return 0.0;
  return std::max((a.alpha() - b.alpha()).cwiseAbs().maxCoeff(),
                  (a.beta() - b.beta()).cwiseAbs().maxCoeff());
}

}  // namespace quatdyn
