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

#include <cstdint>

#include "quatdyn/metric.hpp"
#include "quatdyn/quatmat.hpp"

namespace quatdyn {

/// The symplectic blocks of an operator (V, V^-1 or H), used by the
/// projected-map formulas. For an eta-unitary V with complex eta and
/// W = V^-1 the blocks satisfy
///   V_alpha^dagger eta = eta W_alpha,   -V_beta^T eta = conj(eta) W_beta.
struct SplitOperator {
  CMatrix alpha;
  CMatrix beta;

  static SplitOperator from(const QMatrix& m) { return {m.alpha(), m.beta()}; }
  QMatrix to_qmatrix() const { return {alpha, beta}; }
};

/// Finite-time projected map in terms of the initial ordinary density
/// rho(0) = rho_alpha + j rho_beta:
///
///   rho_tilde_alpha(t) = (V_a rho_a V_a^dag + conj(V_b) conj(rho_a) V_b^T
///                         + V_a conj(rho_b) V_b^T - conj(V_b) rho_b V_a^dag) eta.
///
/// Requires a complex positive metric (the projection theorems fail
/// otherwise) and eta-unitary V. Agrees with P[V rho_tilde(0) V^-1].
CMatrix project_map_finite(const QMatrix& rho0, const SplitOperator& v, const Metric& m);

/// The same map rewritten in terms of rho_tilde(0) and W = V^-1:
///
///   rho_tilde_alpha(t) = V_a rt_a W_a - conj(V_b) conj(rt_a) W_b
///                        - V_a conj(rt_b) W_b - conj(V_b) rt_b W_a.
///
/// Validates that W is the split of V^-1 (product check).
CMatrix project_map_w_form(const CMatrix& rt_alpha0, const CMatrix& rt_beta0,
                           const SplitOperator& v, const SplitOperator& w);

/// Infinitesimal projected equation:
///   d rho_tilde_alpha/dt = -[H_alpha, rt_alpha] + conj(H_beta) rt_beta
///                          - conj(rt_beta) H_beta.
CMatrix project_rhs_infinitesimal(const SplitOperator& h, const CMatrix& rt_alpha,
                                  const CMatrix& rt_beta);

struct PropertyICheck {
  bool holds = false;
  double residual = 0.0;  ///< ||eta P[rt] eta^-1 - P[rt]^dagger||_max
};

/// Is the complex projection of rt still eta-quasi-Hermitian? Holds for
/// every quasi-Hermitian rt exactly when the entries of eta are complex.
/// rt itself must be eta-quasi-Hermitian (throws otherwise); the metric
/// must be positive.
PropertyICheck check_property_i(const QMatrix& rho_tilde, const Metric& m, double tol = 1e-10);

struct PropertyIICheck {
  bool holds = false;
  double min_eigenvalue = 0.0;  ///< of the Hermitian form T P[rt] T^-1
  double re_trace = 0.0;        ///< Re tr P[rt]
};

/// Positivity and trace of the projected state, tested on the similarity
/// transform T rt_alpha T^-1 = T rho_alpha T^dagger as in the proof of the
/// property. Requires a complex positive metric and a normalized
/// quasi-Hermitian rt.
PropertyIICheck check_property_ii(const QMatrix& rho_tilde, const Metric& m, double tol = 1e-8);

struct CounterexampleSearch {
  bool found = false;
  double worst_residual = 0.0;
  int draws = 0;
  std::uint64_t seed = 0;
};

/// Randomized search for a quasi-Hermitian rho_tilde whose complex
/// projection fails quasi-Hermiticity. Succeeds for genuinely quaternionic
/// Hermitian positive metrics; never succeeds for complex ones. Draws are
/// uniform rho = G G^dagger states normalized to Re tr rho = 1.
CounterexampleSearch find_projection_counterexample(const Metric& m, int draws,
                                                    std::uint64_t seed,
                                                    double threshold = 1e-3);

/// A validated complex projected state: quasi-Hermitian, positive, unit
/// Re tr (properties i and ii both enforced at construction).
class ProjectedState {
 public:
  static ProjectedState create(const QMatrix& rho_tilde, const Metric& m, double tol = 1e-8);

  const CMatrix& rho_tilde_alpha() const { return rho_tilde_alpha_; }
  double min_eigenvalue() const { return min_eigenvalue_; }

 private:
  ProjectedState(CMatrix alpha, double min_eig)
      : rho_tilde_alpha_(std::move(alpha)), min_eigenvalue_(min_eig) {}

  CMatrix rho_tilde_alpha_;
  double min_eigenvalue_ = 0.0;
};

}  // namespace quatdyn
