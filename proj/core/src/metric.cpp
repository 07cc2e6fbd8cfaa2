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

#include "quatdyn/metric.hpp"

#include <cmath>
#include <iostream>
#include <sstream>

namespace quatdyn {

namespace {

constexpr double kHermTol = 1e-12;
constexpr double kRootTol = 1e-10;
constexpr double kConditionCap = 1e12;

double scale_of(const QMatrix& m) { return std::max(1.0, m.max_abs()); }

}  // namespace

void Metric::validate_eta() {
  if (!eta_.is_square()) {
    throw std::invalid_argument("metric: eta must be square");
  }
  const double herm_residual = max_abs_diff(eta_, eta_.dagger());
  if (herm_residual > kHermTol * scale_of(eta_)) {
    std::ostringstream msg;
    msg << "metric: eta is not Hermitian (residual " << herm_residual << ")";
    throw std::invalid_argument(msg.str());
  }
  const Eigen::VectorXd eigs = hermitian_eigenvalues(eta_);
  const double abs_min = eigs.cwiseAbs().minCoeff();
  const double abs_max = eigs.cwiseAbs().maxCoeff();
  if (abs_min <= 0.0 || abs_max / abs_min > kConditionCap) {
    throw std::invalid_argument("metric: eta is singular");
  }
  is_positive_ = eigs(0) > 0.0;
  is_complex_ = eta_.beta().cwiseAbs().maxCoeff() <= kHermTol * scale_of(eta_);
  eta_inv_ = inverse(eta_);
}

void Metric::compute_principal_root() {
  if (is_complex_) {
    // Complex eta: root stays complex; solve in the n x n block directly.
    Eigen::SelfAdjointEigenSolver<CMatrix> solver(eta_.alpha());
    const Eigen::VectorXd sqrt_eigs = solver.eigenvalues().cwiseSqrt();
    const CMatrix root = solver.eigenvectors() * sqrt_eigs.asDiagonal() *
                         solver.eigenvectors().adjoint();
    const CMatrix root_inv = solver.eigenvectors() * sqrt_eigs.cwiseInverse().asDiagonal() *
                             solver.eigenvectors().adjoint();
    root_ = QMatrix(root);
    root_inv_ = QMatrix(root_inv);
  } else {
    // The principal root of chi(eta) is itself a chi-form matrix (it is the
    // unique Hermitian positive square root), so its blocks reassemble into
    // the quaternionic root.
    Eigen::SelfAdjointEigenSolver<CMatrix> solver(eta_.chi());
    const Eigen::VectorXd sqrt_eigs = solver.eigenvalues().cwiseSqrt();
    root_ = QMatrix::from_chi(solver.eigenvectors() * sqrt_eigs.asDiagonal() *
                              solver.eigenvectors().adjoint());
    root_inv_ = QMatrix::from_chi(solver.eigenvectors() *
                                  sqrt_eigs.cwiseInverse().asDiagonal() *
                                  solver.eigenvectors().adjoint());
  }
  root_source_ = RootSource::principal;
}

Metric::Metric(QMatrix eta) : eta_(std::move(eta)) {
  validate_eta();
  if (is_positive_) {
    compute_principal_root();
  }
}

Metric::Metric(QMatrix eta, QMatrix user_root) : eta_(std::move(eta)) {
  validate_eta();
  if (user_root.rows() != dim() || user_root.cols() != dim()) {
    throw std::invalid_argument("metric: user root dimension mismatch");
  }
  if (!is_hermitian(user_root, kHermTol)) {
    throw std::invalid_argument("metric: user root is not Hermitian");
  }
  const double residual = max_abs_diff(user_root * user_root, eta_);
  if (residual > kRootTol * scale_of(eta_)) {
    std::ostringstream msg;
    msg << "metric: user root inconsistent with eta (||T^2 - eta|| = " << residual << ")";
    throw std::invalid_argument(msg.str());
  }
  root_ = std::move(user_root);
  root_inv_ = inverse(root_);
  root_source_ = RootSource::user_supplied;
}

const QMatrix& Metric::root() const {
  if (!has_root()) {
    throw std::logic_error(
        "metric: no root available (eta is not positive and no user root was supplied)");
  }
  return root_;
}

const QMatrix& Metric::root_inv() const {
  if (!has_root()) {
    throw std::logic_error(
        "metric: no root available (eta is not positive and no user root was supplied)");
  }
  return root_inv_;
}

QMatrix pseudo_adjoint(const QMatrix& op, const Metric& m) {
  if (op.rows() != m.dim() || op.cols() != m.dim()) {
    throw std::invalid_argument("pseudo_adjoint: operator dimension mismatch");
  }
  return m.eta_inv() * op.dagger() * m.eta();
}

ResidualCheck is_pseudo_hermitian(const QMatrix& op, const Metric& m, double tol) {
  if (op.rows() != m.dim() || op.cols() != m.dim()) {
    throw std::invalid_argument("is_pseudo_hermitian: operator dimension mismatch");
  }
  const double residual = max_abs_diff(m.eta() * op * m.eta_inv(), op.dagger());
  const bool ok = residual <= tol;
  if (ok) {
    // eta O eta^-1 = O^dagger forces eta*O Hermitian; verify the identity
    // carried over numerically.
    const QMatrix eta_op = m.eta() * op;
    const double herm = max_abs_diff(eta_op, eta_op.dagger());
    if (herm > std::max(1e-8, 1e3 * tol) * scale_of(eta_op)) {
      throw std::logic_error("is_pseudo_hermitian: eta*O failed the Hermiticity identity");
    }
  }
  return {ok, residual};
}

ResidualCheck is_pseudo_anti_hermitian(const QMatrix& h, const Metric& m, double tol) {
  if (h.rows() != m.dim() || h.cols() != m.dim()) {
    throw std::invalid_argument("is_pseudo_anti_hermitian: operator dimension mismatch");
  }
  const double residual = max_abs_diff(m.eta() * h * m.eta_inv(), -h.dagger());
  return {residual <= tol, residual};
}

ResidualCheck is_eta_unitary(const QMatrix& v, const Metric& m, double tol) {
  if (v.rows() != m.dim() || v.cols() != m.dim()) {
    throw std::invalid_argument("is_eta_unitary: operator dimension mismatch");
  }
  const double residual = max_abs_diff(v.dagger() * m.eta() * v, m.eta());
  return {residual <= tol, residual};
}

GeneralizedDensity::GeneralizedDensity(QMatrix rho_tilde, Metric metric, double raw)
    : rho_tilde_(std::move(rho_tilde)), metric_(std::move(metric)), raw_re_trace_(raw) {}

GeneralizedDensity GeneralizedDensity::from_rho(const QMatrix& rho, Metric metric) {
  if (rho.rows() != metric.dim() || rho.cols() != metric.dim()) {
    throw std::invalid_argument("generalized density: rho dimension mismatch");
  }
  if (!is_hermitian(rho, 1e-10)) {
    throw std::invalid_argument("generalized density: rho is not Hermitian");
  }
  const PositivityResult pos = is_positive(rho);
  if (!pos.positive) {
    std::ostringstream msg;
    msg << "generalized density: rho is not positive (min eigenvalue " << pos.min_eigenvalue
        << ")";
    throw std::invalid_argument(msg.str());
  }
  QMatrix rho_tilde = rho * metric.eta();
  const double raw = re_trace(rho_tilde);
  if (std::abs(raw) < 1e-12) {
    throw std::invalid_argument("generalized density: Re tr(rho * eta) vanishes");
  }
  rho_tilde *= 1.0 / raw;
  return {std::move(rho_tilde), std::move(metric), raw};
}

GeneralizedDensity GeneralizedDensity::from_rho_tilde(QMatrix rho_tilde, Metric metric) {
  if (rho_tilde.rows() != metric.dim() || rho_tilde.cols() != metric.dim()) {
    throw std::invalid_argument("generalized density: rho_tilde dimension mismatch");
  }
  const QMatrix rho = rho_tilde * metric.eta_inv();
  if (!is_hermitian(rho, 1e-8)) {
    throw std::invalid_argument(
        "generalized density: rho_tilde * eta^-1 is not Hermitian "
        "(state is not eta-pseudo-Hermitian)");
  }
  const PositivityResult pos = is_positive(rho, 1e-8);
  if (!pos.positive) {
    std::ostringstream msg;
    msg << "generalized density: rho_tilde * eta^-1 is not positive (min eigenvalue "
        << pos.min_eigenvalue << ")";
    throw std::invalid_argument(msg.str());
  }
  const double raw = re_trace(rho_tilde);
  if (std::abs(raw) < 1e-12) {
    throw std::invalid_argument("generalized density: Re tr rho_tilde vanishes");
  }
  rho_tilde *= 1.0 / raw;
  return {std::move(rho_tilde), std::move(metric), raw};
}

double expectation(const QMatrix& op, const GeneralizedDensity& state) {
  if (op.rows() != state.metric().dim() || op.cols() != state.metric().dim()) {
    throw std::invalid_argument("expectation: operator dimension mismatch");
  }
  const ResidualCheck check = is_pseudo_hermitian(op, state.metric(), 1e-8);
  if (!check.ok) {
    std::cerr << "quatdyn: warning: expectation of a non-pseudo-Hermitian operator "
              << "(residual " << check.residual << ")\n";
  }
  return re_trace(state.rho_tilde() * op);
}

}  // namespace quatdyn
