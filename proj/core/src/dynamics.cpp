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

#include "quatdyn/dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

namespace quatdyn {

namespace {

constexpr double kSymmetryTol = 1e-12;

double scale_of(const QMatrix& m) { return std::max(1.0, m.max_abs()); }

void validate_role(const QMatrix& value, GeneratorSource::Role role, double t) {
  switch (role) {
    case GeneratorSource::Role::anti_hermitian:
      if (!is_anti_hermitian(value, kSymmetryTol)) {
        std::ostringstream msg;
        msg << "generator source: value at t = " << t << " is not anti-Hermitian";
        throw std::runtime_error(msg.str());
      }
      break;
    case GeneratorSource::Role::metric:
      if (!is_hermitian(value, kSymmetryTol)) {
        std::ostringstream msg;
        msg << "generator source: value at t = " << t << " is not Hermitian";
        throw std::runtime_error(msg.str());
      }
      break;
    case GeneratorSource::Role::dressed:
      break;
  }
}

}  // namespace

GeneratorSource GeneratorSource::closed_form(Role role, Eigen::Index dim,
                                             std::function<QMatrix(double)> eval,
                                             std::vector<double> breakpoints,
                                             std::function<QMatrix(double)> exact_derivative) {
  if (!eval) throw std::invalid_argument("generator source: evaluator must be callable");
  GeneratorSource src;
  src.kind_ = Kind::closed_form;
  src.role_ = role;
  src.dim_ = dim;
  src.eval_ = std::move(eval);
  src.exact_derivative_ = std::move(exact_derivative);
  std::sort(breakpoints.begin(), breakpoints.end());
  breakpoints.erase(std::unique(breakpoints.begin(), breakpoints.end()), breakpoints.end());
  src.breakpoints_ = std::move(breakpoints);
  return src;
}

GeneratorSource GeneratorSource::sampled(Role role, std::vector<double> times,
                                         std::vector<QMatrix> values) {
  if (times.size() < 2 || times.size() != values.size()) {
    throw std::invalid_argument("generator source: need >= 2 samples with matching times");
  }
  for (std::size_t k = 1; k < times.size(); ++k) {
    if (!(times[k] > times[k - 1])) {
      throw std::invalid_argument("generator source: sample times must be strictly increasing");
    }
  }
  const Eigen::Index n = values.front().rows();
  const Eigen::Index m = values.front().cols();
  for (const QMatrix& v : values) {
    if (v.rows() != n || v.cols() != m) {
      throw std::invalid_argument("generator source: inconsistent sample shapes");
    }
  }
  GeneratorSource src;
  src.kind_ = Kind::sampled;
  src.role_ = role;
  src.dim_ = n;
  src.sample_times_ = std::move(times);
  src.sample_values_ = std::move(values);
  return src;
}

QMatrix GeneratorSource::operator()(double t) const {
  QMatrix value;
  if (kind_ == Kind::closed_form) {
    value = eval_(t);
  } else {
    if (t < sample_times_.front() - 1e-12 || t > sample_times_.back() + 1e-12) {
      std::ostringstream msg;
      msg << "generator source: t = " << t << " outside sampled range ["
          << sample_times_.front() << ", " << sample_times_.back() << "]";
      throw std::invalid_argument(msg.str());
    }
    const double tc = std::clamp(t, sample_times_.front(), sample_times_.back());
    const auto upper = std::upper_bound(sample_times_.begin(), sample_times_.end(), tc);
    const std::size_t hi = std::min<std::size_t>(
        std::max<std::ptrdiff_t>(1, upper - sample_times_.begin()), sample_times_.size() - 1);
    const std::size_t lo = hi - 1;
    const double span = sample_times_[hi] - sample_times_[lo];
    const double w = (tc - sample_times_[lo]) / span;
    value = (1.0 - w) * sample_values_[lo] + w * sample_values_[hi];
  }
  validate_role(value, role_, t);
  return value;
}

QMatrix GeneratorSource::exact_derivative(double t) const {
  if (!exact_derivative_) {
    throw std::logic_error("generator source: no exact derivative supplied");
  }
  return exact_derivative_(t);
}

std::pair<double, double> GeneratorSource::smooth_interval(double t) const {
  double lo = -std::numeric_limits<double>::infinity();
  double hi = std::numeric_limits<double>::infinity();
  for (double b : breakpoints_) {
    if (b <= t) {
      lo = b;
    } else {
      hi = b;
      break;
    }
  }
  return {lo, hi};
}

UnitaryPropagation propagate_unitary(const GeneratorSource& src, std::span<const double> grid,
                                     const PropagationOptions& opts) {
  if (src.role() != GeneratorSource::Role::anti_hermitian) {
    throw std::invalid_argument("propagate_unitary: source must be anti-Hermitian");
  }
  if (grid.empty()) throw std::invalid_argument("propagate_unitary: empty grid");
  for (std::size_t k = 1; k < grid.size(); ++k) {
    if (!(grid[k] > grid[k - 1])) {
      throw std::invalid_argument("propagate_unitary: grid must be strictly increasing");
    }
  }
  if (!(opts.step > 0.0)) throw std::invalid_argument("propagate_unitary: step must be > 0");

  const Eigen::Index n = src.dim();
  UnitaryPropagation out;
  out.times.assign(grid.begin(), grid.end());
  out.unitaries.reserve(grid.size());
  out.unitarity_drift.reserve(grid.size());

  CMatrix u = CMatrix::Identity(2 * n, 2 * n);
  const CMatrix id = CMatrix::Identity(2 * n, 2 * n);

  auto record = [&](CMatrix& uc) {
    if (opts.renormalize) {
      // Polar factor uc (uc^dagger uc)^(-1/2); unique, hence still chi-form.
      Eigen::SelfAdjointEigenSolver<CMatrix> es(uc.adjoint() * uc);
      uc = uc * (es.eigenvectors() *
                 es.eigenvalues().cwiseSqrt().cwiseInverse().asDiagonal() *
                 es.eigenvectors().adjoint());
    }
    out.unitaries.push_back(QMatrix::from_chi(uc));
    out.unitarity_drift.push_back((uc.adjoint() * uc - id).cwiseAbs().maxCoeff());
  };

  record(u);

  for (std::size_t seg = 1; seg < grid.size(); ++seg) {
    const double a = grid[seg - 1];
    const double b = grid[seg];
    const double delta = b - a;
    const double snap = 1e-9 * std::max({1.0, std::abs(a), std::abs(b)});

    const auto [lo, hi] = src.smooth_interval(0.5 * (a + b));
    if (lo > a + snap || hi < b - snap) {
      std::ostringstream msg;
      msg << "propagate_unitary: grid segment [" << a << ", " << b
          << "] crosses a generator breakpoint; split the grid at the breakpoint";
      throw std::runtime_error(msg.str());
    }
    const double nudge = 1e-12 * std::max({1.0, std::abs(a), std::abs(b)});
    auto rhs_at = [&](double t) -> CMatrix {
      if (std::isfinite(lo)) t = std::max(t, lo + nudge);
      if (std::isfinite(hi)) t = std::min(t, hi - nudge);
      return -src(t).chi();
    };

    const long n_sub = std::max<long>(1, std::lround(delta / opts.step));
    const double h = delta / static_cast<double>(n_sub);
    for (long k = 0; k < n_sub; ++k) {
      const double t = a + static_cast<double>(k) * h;
      const CMatrix k1 = rhs_at(t) * u;
      const CMatrix mid = rhs_at(t + 0.5 * h);
      const CMatrix k2 = mid * (u + (0.5 * h) * k1);
      const CMatrix k3 = mid * (u + (0.5 * h) * k2);
      const CMatrix k4 = rhs_at(t + h) * (u + h * k3);
      u += (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
    }
    record(u);
  }
  return out;
}

QMatrix dress(const QMatrix& x, const Metric& m) {
  return m.root_inv() * x * m.root();
}

QMatrix evolve_generalized(const QMatrix& rho_tilde0, const QMatrix& v) {
  return v * rho_tilde0 * inverse(v);
}

QMatrix evolve_generalized(const GeneralizedDensity& state, const QMatrix& v) {
  return evolve_generalized(state.rho_tilde(), v);
}

QMatrix evolve_rho(const QMatrix& rho0, const QMatrix& v) {
  return v * rho0 * v.dagger();
}

QMatrix liouville_rhs(const QMatrix& h, const QMatrix& rho_tilde) {
  return rho_tilde * h - h * rho_tilde;
}

QMatrix quasistationarity_residual(const GeneratorSource& eta_src,
                                   const GeneratorSource& h_src, double t, double h) {
  if (eta_src.role() != GeneratorSource::Role::metric) {
    throw std::invalid_argument("quasistationarity_residual: eta source must have metric role");
  }
  if (!(h > 0.0)) throw std::invalid_argument("quasistationarity_residual: h must be > 0");

  const QMatrix eta = eta_src(t);
  const QMatrix eta_inv = inverse(eta);  // SingularMatrixError when eta(t) singular
  const QMatrix deta = eta_src.has_exact_derivative()
                           ? eta_src.exact_derivative(t)
                           : (1.0 / (2.0 * h)) * (eta_src(t + h) - eta_src(t - h));
  const QMatrix ham = h_src(t);
  return deta * eta_inv - ham.dagger() - eta * ham * eta_inv;
}

GeneratorSource hamiltonian_from_factor(const GeneratorSource& f_src, const Metric& m) {
  if (!m.is_positive()) {
    throw std::invalid_argument("hamiltonian_from_factor: eta must be positive");
  }
  if (f_src.role() != GeneratorSource::Role::anti_hermitian) {
    throw std::invalid_argument("hamiltonian_from_factor: F source must be anti-Hermitian");
  }
  const Metric metric = m;
  const GeneratorSource factor = f_src;
  auto eval = [metric, factor](double t) -> QMatrix {
    const QMatrix f = factor(t);  // anti-Hermiticity enforced by the source role
    const QMatrix direct = f * metric.eta();
    // Root route: H = T^-1 (T F T) T with T = eta^(1/2).
    const QMatrix dressed_route =
        metric.root_inv() * (metric.root() * f * metric.root()) * metric.root();
    const double tol = 1e-10 * std::max(1.0, direct.max_abs());
    if (max_abs_diff(direct, dressed_route) > tol) {
      throw std::runtime_error(
          "hamiltonian_from_factor: factor and root construction routes disagree");
    }
    const ResidualCheck check = is_pseudo_anti_hermitian(direct, metric, tol);
    if (!check.ok) {
      throw std::runtime_error(
          "hamiltonian_from_factor: H = F eta failed the pseudoanti-Hermiticity check");
    }
    return direct;
  };
  return GeneratorSource::closed_form(GeneratorSource::Role::dressed, f_src.dim(),
                                      std::move(eval), f_src.breakpoints());
}

std::vector<double> linspace(double a, double b, int n) {
  if (n < 2) throw std::invalid_argument("linspace: need at least two points");
  if (!(a < b)) throw std::invalid_argument("linspace: need a < b");
  std::vector<double> out(static_cast<std::size_t>(n));
  const double step = (b - a) / static_cast<double>(n - 1);
  for (int i = 0; i < n; ++i) out[static_cast<std::size_t>(i)] = a + step * i;
  out.back() = b;
  return out;
}

}  // namespace quatdyn
