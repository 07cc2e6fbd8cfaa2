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

#include <functional>
#include <span>
#include <utility>
#include <vector>

#include "quatdyn/metric.hpp"
#include "quatdyn/quatmat.hpp"

namespace quatdyn {

/// A time-dependent operator source: a closed-form evaluator or a sampled
/// table (piecewise-linear in t). Breakpoints mark known discontinuities;
/// evaluation exactly at a breakpoint is the caller's responsibility to
/// avoid (the propagator clamps its stage times into the current smooth
/// interval).
class GeneratorSource {
 public:
  enum class Kind { closed_form, sampled };

  /// What the source represents, which fixes the validation applied on
  /// every evaluation:
  ///   anti_hermitian - an undressed generator (frak-H) or factor F;
  ///                    eval(t)^dagger = -eval(t) enforced to 1e-12.
  ///   dressed        - a dressed Hamiltonian H(t); no symmetry enforced.
  ///   metric         - a time-dependent eta(t); Hermiticity enforced.
  enum class Role { anti_hermitian, dressed, metric };

  static GeneratorSource closed_form(Role role, Eigen::Index dim,
                                     std::function<QMatrix(double)> eval,
                                     std::vector<double> breakpoints = {},
                                     std::function<QMatrix(double)> exact_derivative = {});

  static GeneratorSource sampled(Role role, std::vector<double> times,
                                 std::vector<QMatrix> values);

  /// Evaluates at t with role validation.
  QMatrix operator()(double t) const;

  Kind kind() const { return kind_; }
  Role role() const { return role_; }
  Eigen::Index dim() const { return dim_; }
  const std::vector<double>& breakpoints() const { return breakpoints_; }

  bool has_exact_derivative() const { return static_cast<bool>(exact_derivative_); }
  QMatrix exact_derivative(double t) const;

  /// The closed interval between the breakpoints surrounding t
  /// (+-infinity when unbounded).
  std::pair<double, double> smooth_interval(double t) const;

 private:
  GeneratorSource() = default;

  Kind kind_ = Kind::closed_form;
  Role role_ = Role::anti_hermitian;
  Eigen::Index dim_ = 0;
  std::function<QMatrix(double)> eval_;
  std::function<QMatrix(double)> exact_derivative_;
  std::vector<double> breakpoints_;
  std::vector<double> sample_times_;
  std::vector<QMatrix> sample_values_;
};

struct PropagationOptions {
  /// Requested integrator substep; each grid segment uses the nearest
  /// integer number of equal substeps.
  double step = 1e-4;
  /// Re-projects U onto its polar unitary factor at every grid point.
  /// Off by default: drift is a diagnostic, not something to hide.
  bool renormalize = false;
};

struct UnitaryPropagation {
  std::vector<double> times;
  std::vector<QMatrix> unitaries;      ///< U at each grid point, U[0] = I
  std::vector<double> unitarity_drift; ///< ||U^dagger U - 1||_max per point
};

/// Integrates dU/dt = -frak_H(t) U, U(grid[0]) = 1, with the classical
/// fixed-step 4th-order Runge-Kutta scheme applied to chi(U).
///
/// Every interior breakpoint of the source must coincide with a grid point
/// (the run is pieced together from smooth intervals); otherwise this
/// throws. Stage evaluations are clamped into the open smooth interval of
/// the current segment, so one-sided limits are used at breakpoints.
UnitaryPropagation propagate_unitary(const GeneratorSource& src, std::span<const double> grid,
                                     const PropagationOptions& opts = {});

/// Similarity transform by the metric root: T^-1 X T.
QMatrix dress(const QMatrix& x, const Metric& m);

/// rho_tilde(t) = V rho_tilde(0) V^-1. Throws SingularMatrixError for
/// singular V. Preserves Re tr, and eta-pseudo-Hermiticity when V is
/// eta-unitary.
QMatrix evolve_generalized(const QMatrix& rho_tilde0, const QMatrix& v);
QMatrix evolve_generalized(const GeneralizedDensity& state, const QMatrix& v);

/// rho(t) = V rho(0) V^dagger.
QMatrix evolve_rho(const QMatrix& rho0, const QMatrix& v);

/// Liouville-von Neumann right-hand side -[H, rho_tilde].
QMatrix liouville_rhs(const QMatrix& h, const QMatrix& rho_tilde);

/// Residual of the time-dependent-metric criterion
///   R(t) = (d eta/dt) eta^-1 - H^dagger - eta H eta^-1.
/// R = 0 with constant eta certifies that H is eta-pseudoanti-Hermitian.
/// d eta/dt uses the source's exact derivative when available, otherwise a
/// central difference with step h.
QMatrix quasistationarity_residual(const GeneratorSource& eta_src,
                                   const GeneratorSource& h_src, double t, double h = 1e-5);

/// Builds the quasistationary Hamiltonian H(t) = F(t) eta from an
/// anti-Hermitian factor F(t) and a positive metric. Each evaluation also
/// computes the root route T^-1 (T F T) T and cross-checks the two to
/// 1e-10 relative, and verifies eta-pseudoanti-Hermiticity.
GeneratorSource hamiltonian_from_factor(const GeneratorSource& f_src, const Metric& m);

/// Per-step record of an evolved trajectory.
struct Trajectory {
  std::vector<double> times;
  std::vector<QMatrix> unitaries;        ///< U(t)
  std::vector<QMatrix> evolutions;       ///< V(t) = T^-1 U(t) T
  std::vector<QMatrix> rho_tilde;        ///< V rho_tilde(0) V^-1
  std::vector<CMatrix> rho_tilde_alpha;  ///< projected state (map route)

  struct Diagnostics {
    double re_trace = 0.0;
    double eta_unitarity_residual = 0.0;
    double pseudo_hermiticity_residual = 0.0;
    double min_eig_projection = 0.0;
    double projection_hermiticity_residual = 0.0;  ///< property-i residual
    double projection_re_trace = 0.0;
    double unitarity_drift = 0.0;
  };
  std::vector<Diagnostics> diagnostics;
};

/// n evenly spaced points from a to b inclusive (n >= 2, a < b).
std::vector<double> linspace(double a, double b, int n);

}  // namespace quatdyn
