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

#include "quatdyn/projection.hpp"

#include <cmath>
#include <sstream>

#include "quatdyn/rng.hpp"

namespace quatdyn {

namespace {

void require_complex_positive(const Metric& m, const char* who) {
  if (!m.is_complex() || !m.is_positive()) {
    std::ostringstream msg;
    msg << who << ": requires a complex positive metric (is_complex=" << m.is_complex()
        << ", is_positive=" << m.is_positive() << ")";
    throw std::invalid_argument(msg.str());
  }
}

/// ||eta P eta^-1 - P^dagger||_max with P embedded as a complex QMatrix;
/// quaternion arithmetic so that quaternionic metrics are handled too.
double projection_hermiticity_residual(const CMatrix& projected, const Metric& m) {
  const QMatrix embedded{projected};
  return max_abs_diff(m.eta() * embedded * m.eta_inv(), embedded.dagger());
}

}  // namespace

CMatrix project_map_finite(const QMatrix& rho0, const SplitOperator& v, const Metric& m) {
  require_complex_positive(m, "project_map_finite");
  if (rho0.rows() != m.dim() || rho0.cols() != m.dim()) {
    throw std::invalid_argument("project_map_finite: rho dimension mismatch");
  }
  const CMatrix& ra = rho0.alpha();
  const CMatrix& rb = rho0.beta();
  const CMatrix& va = v.alpha;
  const CMatrix& vb = v.beta;
  const CMatrix rho_alpha_t = va * ra * va.adjoint() +
                              vb.conjugate() * ra.conjugate() * vb.transpose() +
                              va * rb.conjugate() * vb.transpose() -
                              vb.conjugate() * rb * va.adjoint();
  return rho_alpha_t * m.eta().alpha();
}

CMatrix project_map_w_form(const CMatrix& rt_alpha0, const CMatrix& rt_beta0,
                           const SplitOperator& v, const SplitOperator& w) {
  const QMatrix product = v.to_qmatrix() * w.to_qmatrix();
  const double residual = max_abs_diff(product, QMatrix::identity(product.rows()));
  if (residual > 1e-8 * std::max(1.0, product.max_abs())) {
    std::ostringstream msg;
    msg << "project_map_w_form: W is not the inverse split of V (||V W - 1|| = " << residual
        << ")";
    throw std::invalid_argument(msg.str());
  }
  return v.alpha * rt_alpha0 * w.alpha - v.beta.conjugate() * rt_alpha0.conjugate() * w.beta -
         v.alpha * rt_beta0.conjugate() * w.beta - v.beta.conjugate() * rt_beta0 * w.alpha;
}

CMatrix project_rhs_infinitesimal(const SplitOperator& h, const CMatrix& rt_alpha,
                                  const CMatrix& rt_beta) {
  return rt_alpha * h.alpha - h.alpha * rt_alpha + h.beta.conjugate() * rt_beta -
         rt_beta.conjugate() * h.beta;
}

PropertyICheck check_property_i(const QMatrix& rho_tilde, const Metric& m, double tol) {
  if (!m.is_positive()) {
    throw std::invalid_argument("check_property_i: metric must be positive");
  }
  const ResidualCheck input = is_pseudo_hermitian(rho_tilde, m, 1e-8);
  if (!input.ok) {
    std::ostringstream msg;
    msg << "check_property_i: state is not eta-quasi-Hermitian (residual " << input.residual
        << ")";
    throw std::invalid_argument(msg.str());
  }
  const double residual = projection_hermiticity_residual(complex_projection(rho_tilde), m);
  return {residual <= tol, residual};
}

PropertyIICheck check_property_ii(const QMatrix& rho_tilde, const Metric& m, double tol) {
  require_complex_positive(m, "check_property_ii");
  const ResidualCheck input = is_pseudo_hermitian(rho_tilde, m, 1e-8);
  if (!input.ok) {
    throw std::invalid_argument("check_property_ii: state is not eta-quasi-Hermitian");
  }
  const double trace = re_trace(rho_tilde);
  if (std::abs(trace - 1.0) > 1e-8) {
    throw std::invalid_argument("check_property_ii: state is not normalized to Re tr = 1");
  }
  // Positivity through the Hermitian form T rt_alpha T^-1 = T rho_alpha T^dagger.
  const CMatrix projected = complex_projection(rho_tilde);
  const CMatrix& t = m.root().alpha();
  const CMatrix& t_inv = m.root_inv().alpha();
  const CMatrix form = t * projected * t_inv;
  Eigen::SelfAdjointEigenSolver<CMatrix> solver(0.5 * (form + form.adjoint()),
                                                Eigen::EigenvaluesOnly);
  const double min_eig = solver.eigenvalues()(0);
  const double proj_trace = projected.trace().real();
  const bool holds = min_eig >= -tol && std::abs(proj_trace - 1.0) <= tol;
  return {holds, min_eig, proj_trace};
}

CounterexampleSearch find_projection_counterexample(const Metric& m, int draws,
                                                    std::uint64_t seed, double threshold) {
  if (!m.is_positive()) {
    throw std::invalid_argument("find_projection_counterexample: metric must be positive");
  }
  if (draws <= 0) {
    throw std::invalid_argument("find_projection_counterexample: draws must be positive");
  }
  Rng rng(seed);
  CounterexampleSearch result;
  result.draws = draws;
  result.seed = seed;
  for (int k = 0; k < draws; ++k) {
    QMatrix rho_tilde = rng.density(m.dim()) * m.eta();
    rho_tilde *= 1.0 / re_trace(rho_tilde);
    const double residual =
        projection_hermiticity_residual(complex_projection(rho_tilde), m);
    result.worst_residual = std::max(result.worst_residual, residual);
  }
  result.found = result.worst_residual > threshold;
  return result;
}

ProjectedState ProjectedState::create(const QMatrix& rho_tilde, const Metric& m, double tol) {
  const PropertyICheck quasi = check_property_i(rho_tilde, m, std::max(tol, 1e-10));
  if (!quasi.holds) {
    std::ostringstream msg;
    msg << "projected state: projection is not eta-quasi-Hermitian (residual "
        << quasi.residual << ")";
    throw std::invalid_argument(msg.str());
  }
  const PropertyIICheck positive = check_property_ii(rho_tilde, m, tol);
  if (!positive.holds) {
    std::ostringstream msg;
    msg << "projected state: projection failed positivity/trace (min eigenvalue "
        << positive.min_eigenvalue << ", Re tr " << positive.re_trace << ")";
    throw std::invalid_argument(msg.str());
  }
  return {complex_projection(rho_tilde), positive.min_eigenvalue};
}

}  // namespace quatdyn
