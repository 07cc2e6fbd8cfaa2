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

#include "quatdyn/rng.hpp"

#include <cmath>
#include <numbers>

namespace quatdyn {

double Rng::uniform() {
  // 53 random bits -> [0, 1).
  return static_cast<double>(gen_() >> 11) * 0x1.0p-53;
}

double Rng::normal() {
  if (has_spare_) {
    has_spare_ = false;
    return spare_;
  }
  double u1 = uniform();
  while (u1 <= 0.0) u1 = uniform();
  const double u2 = uniform();
  const double r = std::sqrt(-2.0 * std::log(u1));
  const double phi = 2.0 * std::numbers::pi * u2;
  spare_ = r * std::sin(phi);
  has_spare_ = true;
  return r * std::cos(phi);
}

Complex Rng::normal_complex() {
  const double re = normal();
  const double im = normal();
  return {re, im};
}

CMatrix Rng::complex_gaussian(Eigen::Index rows, Eigen::Index cols) {
  CMatrix out(rows, cols);
  for (Eigen::Index i = 0; i < rows; ++i) {
    for (Eigen::Index j = 0; j < cols; ++j) out(i, j) = normal_complex();
  }
  return out;
}

QMatrix Rng::quaternion_gaussian(Eigen::Index rows, Eigen::Index cols) {
  CMatrix alpha = complex_gaussian(rows, cols);
  CMatrix beta = complex_gaussian(rows, cols);
  return {std::move(alpha), std::move(beta)};
}

QMatrix Rng::hermitian(Eigen::Index n) {
  const QMatrix g = quaternion_gaussian(n, n);
  return 0.5 * (g + g.dagger());
}

QMatrix Rng::anti_hermitian(Eigen::Index n) {
  const QMatrix g = quaternion_gaussian(n, n);
  return 0.5 * (g - g.dagger());
}

QMatrix Rng::density(Eigen::Index n) {
  const QMatrix g = quaternion_gaussian(n, n);
  QMatrix rho = g * g.dagger();
  rho *= 1.0 / re_trace(rho);
  return rho;
}

QMatrix Rng::complex_positive(Eigen::Index n) {
  const CMatrix g = complex_gaussian(n, n);
  CMatrix eta = g * g.adjoint();
  // Shift by a fraction of the trace to keep the conditioning moderate.
  eta += (0.5 * eta.trace().real() / static_cast<double>(n)) * CMatrix::Identity(n, n);
  eta *= static_cast<double>(n) / eta.trace().real();
  return QMatrix(std::move(eta));
}

QMatrix Rng::unitary(Eigen::Index n) {
  const QMatrix g = quaternion_gaussian(n, n);
  const CMatrix x = g.chi();
  // Polar factor x (x^dagger x)^(-1/2): unique, so it stays chi-form.
  Eigen::SelfAdjointEigenSolver<CMatrix> es(x.adjoint() * x);
  const CMatrix u = x * (es.eigenvectors() *
                         es.eigenvalues().cwiseSqrt().cwiseInverse().asDiagonal() *
                         es.eigenvectors().adjoint());
  return QMatrix::from_chi(u);
}

}  // namespace quatdyn
