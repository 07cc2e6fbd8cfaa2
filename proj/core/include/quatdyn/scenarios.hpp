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

#include "quatdyn/dynamics.hpp"
#include "quatdyn/metric.hpp"
#include "quatdyn/quatmat.hpp"

// Closed-form two-level scenario family: a quaternionic deformation of a
// unitary map dressed by the most general 2x2 complex positive metric
// eta = T^2, T = [[x, z], [conj(z), y]]. Serves as the analytic ground
// truth for the propagator and the projected dynamics, including the
// failure of the semigroup composition law.
namespace quatdyn::sec4 {

struct Params {
  double x = 1.0;
  double y = 1.0;
  Complex z = 0.0;
  double theta = 0.0;

  /// xy - |z|^2; the family is degenerate when it vanishes.
  double discriminant() const { return x * y - std::norm(z); }
};

/// Throws std::invalid_argument when |xy - |z|^2| < 1e-8.
void validate(const Params& p);

/// The Hermitian root T (generally not the principal root of eta).
CMatrix metric_root(const Params& p);
CMatrix metric_root_inv(const Params& p);

/// eta = T^2 as an explicit complex-entried QMatrix.
QMatrix eta(const Params& p);

/// Metric built with the scenario's own root T (user-supplied mode).
Metric metric(const Params& p);

/// U(t) = diag(q, 1), q = sqrt(1 - sin^4 2t) + j e^{-i theta} sin^2 2t;
/// exactly unitary for every t.
QMatrix unitary(double t, const Params& p);

/// The anti-Hermitian generator of U, -(dU/dt) U^dagger. Undefined at the
/// breakpoints cos 2t = 0 (throws std::domain_error there).
QMatrix unitary_generator(double t, const Params& p);

/// Dressed Hamiltonian H(t) = T^-1 (generator) T in closed form;
/// eta-pseudoanti-Hermitian for the scenario metric.
QMatrix hamiltonian(double t, const Params& p);

/// V(t) = T^-1 U(t) T in closed form; eta-unitary.
QMatrix evolution_operator(double t, const Params& p);

/// The initial pure generalized state; Re tr = 1, eta-pseudo-Hermitian.
GeneralizedDensity initial_state(const Params& p);

/// Closed-form rho_tilde(t) = V(t) rho_tilde(0) V(t)^-1.
QMatrix state_at(double t, const Params& p);

/// Breakpoints of the generator (cos 2t = 0) inside [t_lo, t_hi].
std::vector<double> breakpoints_in(double t_lo, double t_hi);

/// Generator source for the propagator, with breakpoints declared over
/// [t_lo, t_hi].
GeneratorSource generator_source(const Params& p, double t_lo, double t_hi);

struct SemigroupGap {
  Complex direct;          ///< P[(V(t) rt0 V^-1(t))]_21, computed
  Complex composed;        ///< the two-leg composition, computed
  double gap = 0.0;        ///< |direct - composed|
  double paper_direct = 0.0;    ///< the quoted closed form (sin 2t)^2
  double paper_composed = 0.0;  ///< the quoted two-leg closed form
};

/// Compares the one-leg and two-leg projected (2,1) entries at (t, t');
/// the two disagree, so the projected dynamics is no semigroup. Also
/// evaluates the closed-form expressions quoted for this computation;
/// those differ from the first-principles values (by a parameter-dependent
/// factor on the direct leg), which is reported, not reconciled.
SemigroupGap semigroup_gap(double t, double t_prime, const Params& p);

}  // namespace quatdyn::sec4
