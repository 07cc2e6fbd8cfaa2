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

#include "quatdyn/scenarios.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

namespace quatdyn::sec4 {

namespace {

constexpr double kPi = std::numbers::pi;

double clamped_sqrt(double v) { return std::sqrt(std::max(0.0, v)); }

}  // namespace

void validate(const Params& p) {
  if (std::abs(p.discriminant()) < 1e-8) {
    std::ostringstream msg;
    msg << "sec4: degenerate metric, xy - |z|^2 = " << p.discriminant();
    throw std::invalid_argument(msg.str());
  }
}

CMatrix metric_root(const Params& p) {
  validate(p);
  CMatrix t(2, 2);
  t << p.x, p.z, std::conj(p.z), p.y;
  return t;
}

CMatrix metric_root_inv(const Params& p) {
  validate(p);
  CMatrix t(2, 2);
  t << p.y, -p.z, -std::conj(p.z), p.x;
  return t / p.discriminant();
}

QMatrix eta(const Params& p) {
  validate(p);
  const double zz = std::norm(p.z);
  CMatrix e(2, 2);
  e << p.x * p.x + zz, (p.x + p.y) * p.z, (p.x + p.y) * std::conj(p.z), p.y * p.y + zz;
  return QMatrix(std::move(e));
}

Metric metric(const Params& p) {
  return {eta(p), QMatrix(metric_root(p))};
}

QMatrix unitary(double t, const Params& p) {
  const double s2 = std::pow(std::sin(2.0 * t), 2);
  const double qa = clamped_sqrt(1.0 - s2 * s2);
  const Complex qb = std::exp(Complex(0.0, -p.theta)) * s2;
  CMatrix alpha(2, 2), beta(2, 2);
  alpha << qa, 0.0, 0.0, 1.0;
  beta << qb, 0.0, 0.0, 0.0;
  return {std::move(alpha), std::move(beta)};
}

QMatrix unitary_generator(double t, const Params& p) {
  const double s = std::sin(2.0 * t);
  const double c = std::cos(2.0 * t);
  if (std::abs(c) < 1e-12) {
    std::ostringstream msg;
    msg << "sec4: generator undefined at breakpoint t = " << t << " (cos 2t = 0)";
    throw std::domain_error(msg.str());
  }
  const Complex g = std::exp(Complex(0.0, -p.theta)) *
                    (-4.0 * s * c / (std::abs(c) * std::sqrt(1.0 + s * s)));
  CMatrix beta(2, 2);
  beta << g, 0.0, 0.0, 0.0;
  return QMatrix::pure_j(std::move(beta));
}

QMatrix hamiltonian(double t, const Params& p) {
  validate(p);
  const double s = std::sin(2.0 * t);
  const double c = std::cos(2.0 * t);
  if (std::abs(c) < 1e-12) {
    std::ostringstream msg;
    msg << "sec4: Hamiltonian undefined at breakpoint t = " << t << " (cos 2t = 0)";
    throw std::domain_error(msg.str());
  }
  const Complex g = std::exp(Complex(0.0, -p.theta)) *
                    (-4.0 * s * c /
                     (p.discriminant() * std::abs(c) * std::sqrt(1.0 + s * s)));
  CMatrix block(2, 2);
  block << p.y * p.x, p.y * p.z, -p.z * p.x, -p.z * p.z;
  return QMatrix::pure_j(g * block);
}

QMatrix evolution_operator(double t, const Params& p) {
  validate(p);
  const double d = p.discriminant();
  const double zz = std::norm(p.z);
  const double s2 = std::pow(std::sin(2.0 * t), 2);
  const double qa = clamped_sqrt(1.0 - s2 * s2);
  const Complex qb = std::exp(Complex(0.0, -p.theta)) * s2;
  CMatrix alpha(2, 2), beta(2, 2);
  alpha << p.x * p.y * qa - zz, p.y * (qa - 1.0) * p.z,
      -p.x * (qa - 1.0) * std::conj(p.z), -qa * zz + p.x * p.y;
  beta << p.x * p.y, p.y * p.z, -p.x * p.z, -p.z * p.z;
  return {alpha / d, (qb / d) * beta};
}

GeneralizedDensity initial_state(const Params& p) {
  validate(p);
  const double d = p.discriminant();
  const double zz = std::norm(p.z);
  const Complex phase = std::exp(Complex(0.0, -p.theta));
  CMatrix beta(2, 2);
  beta << -(p.x + p.y) * std::conj(p.z), -(zz + p.y * p.y), zz + p.x * p.x,
      (p.x + p.y) * p.z;
  QMatrix rho_tilde(0.5 * CMatrix::Identity(2, 2), (phase / (2.0 * d)) * beta);
  return GeneralizedDensity::from_rho_tilde(std::move(rho_tilde), metric(p));
}

QMatrix state_at(double t, const Params& p) {
  validate(p);
  const double d = p.discriminant();
  const double zz = std::norm(p.z);
  const double s2 = std::pow(std::sin(2.0 * t), 2);
  const double root = clamped_sqrt(1.0 - s2 * s2);
  const Complex phase = std::exp(Complex(0.0, -p.theta));
  const Complex zc = std::conj(p.z);
  CMatrix alpha_dev(2, 2), beta(2, 2);
  alpha_dev << p.y * zc - p.x * p.z, p.y * p.y - p.z * p.z, p.x * p.x - zc * zc,
      -p.y * zc + p.x * p.z;
  beta << -zc * (p.x + p.y), -(zz + p.y * p.y), zz + p.x * p.x, p.z * (p.x + p.y);
  return {0.5 * CMatrix::Identity(2, 2) + (s2 / (2.0 * d)) * alpha_dev,
          (phase * root / (2.0 * d)) * beta};
}

std::vector<double> breakpoints_in(double t_lo, double t_hi) {
  // cos 2t = 0 at t = pi/4 + k pi/2.
  std::vector<double> out;
  const double first = std::ceil((t_lo - kPi / 4.0) / (kPi / 2.0));
  for (double k = first;; k += 1.0) {
    const double t = kPi / 4.0 + k * kPi / 2.0;
    if (t > t_hi) break;
    if (t >= t_lo) out.push_back(t);
  }
  return out;
}

GeneratorSource generator_source(const Params& p, double t_lo, double t_hi) {
  validate(p);
  const Params params = p;
  return GeneratorSource::closed_form(
      GeneratorSource::Role::anti_hermitian, 2,
      [params](double t) { return unitary_generator(t, params); },
      breakpoints_in(t_lo, t_hi));
}

SemigroupGap semigroup_gap(double t, double t_prime, const Params& p) {
  validate(p);
  if (!(0.0 < t_prime && t_prime < t)) {
    throw std::invalid_argument("sec4: semigroup gap needs 0 < t' < t");
  }
  const QMatrix rho_tilde0 = initial_state(p).rho_tilde();

  const QMatrix v_t = evolution_operator(t, p);
  const CMatrix direct = complex_projection(v_t * rho_tilde0 * inverse(v_t));

  const QMatrix v_first = evolution_operator(t_prime, p);
  const QMatrix v_second = evolution_operator(t - t_prime, p);
  const QMatrix inner = v_first * rho_tilde0 * inverse(v_first);
  const CMatrix composed = complex_projection(v_second * inner * inverse(v_second));

  SemigroupGap out;
  out.direct = direct(1, 0);
  out.composed = composed(1, 0);
  out.gap = std::abs(out.direct - out.composed);
  const double s_direct = std::sin(2.0 * t);
  const double c_leg = std::cos(2.0 * (t - t_prime));
  const double s_leg = std::sin(2.0 * t_prime);
  out.paper_direct = s_direct * s_direct;
  out.paper_composed =
      c_leg * c_leg * s_leg * s_leg -
      std::sqrt((1.0 - std::pow(c_leg, 4)) * (1.0 - std::pow(s_leg, 4)));
  return out;
}

}  // namespace quatdyn::sec4
