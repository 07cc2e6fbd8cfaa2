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

#include "quatdyn/quatmat.hpp"

namespace quatdyn {

/// A validated metric operator eta: Hermitian and nonsingular, with cached
/// classification flags and (when available) a Hermitian root T with
/// T^2 = eta.
///
/// Two root modes exist. The principal root (Hermitian positive, from the
/// eigendecomposition of chi(eta)) is computed automatically for positive
/// eta. A user-supplied Hermitian root covers closed-form scenarios whose
/// formulas depend on a specific non-principal T. Non-positive Hermitian
/// eta is accepted, but operations that need a root fail for it unless a
/// user root is given.
///
/// All fields are computed at construction; instances are immutable and
/// safe to share across threads.
class Metric {
 public:
  enum class RootSource { principal, user_supplied, none };

  /// Validates eta and, when eta is positive, computes the principal root.
  explicit Metric(QMatrix eta);

  /// Validates eta and a user-supplied Hermitian root with root^2 = eta.
  Metric(QMatrix eta, QMatrix user_root);

  const QMatrix& eta() const { return eta_; }
  const QMatrix& eta_inv() const { return eta_inv_; }
  Eigen::Index dim() const { return eta_.rows(); }

  /// True when eta has no quaternionic part (beta block is zero).
  bool is_complex() const { return is_complex_; }
  /// True when all eigenvalues of chi(eta) are strictly positive.
  bool is_positive() const { return is_positive_; }

  bool has_root() const { return root_source_ != RootSource::none; }
  RootSource root_source() const { return root_source_; }

  /// The cached root T (throws std::logic_error when no root exists:
  /// eta not positive and no user root supplied).
  const QMatrix& root() const;
  const QMatrix& root_inv() const;

 private:
  void validate_eta();
  void compute_principal_root();

  QMatrix eta_;
  QMatrix eta_inv_;
  QMatrix root_;
  QMatrix root_inv_;
  bool is_complex_ = false;
  bool is_positive_ = false;
  RootSource root_source_ = RootSource::none;
};

/// Pseudo-adjoint with respect to eta: O' = eta^-1 O^dagger eta.
/// An involution whose fixed points are the eta-pseudo-Hermitian operators.
QMatrix pseudo_adjoint(const QMatrix& op, const Metric& m);

struct ResidualCheck {
  bool ok = false;
  double residual = 0.0;
};

/// Residual of eta O eta^-1 = O^dagger. When the check passes, eta*O is
/// additionally verified Hermitian (an identity the definition implies).
ResidualCheck is_pseudo_hermitian(const QMatrix& op, const Metric& m, double tol = 1e-10);

/// Residual of eta H eta^-1 = -H^dagger.
ResidualCheck is_pseudo_anti_hermitian(const QMatrix& h, const Metric& m, double tol = 1e-10);

/// Residual of V^dagger eta V = eta.
ResidualCheck is_eta_unitary(const QMatrix& v, const Metric& m, double tol = 1e-10);

/// A generalized density matrix rho_tilde = rho * eta, normalized so that
/// Re tr rho_tilde = 1. rho must be an ordinary density matrix (Hermitian,
/// positive); equivalently rho_tilde is eta-pseudo-Hermitian.
class GeneralizedDensity {
 public:
  /// Builds rho_tilde = rho * eta from a Hermitian positive rho.
  static GeneralizedDensity from_rho(const QMatrix& rho, Metric metric);

  /// Accepts a ready-made rho_tilde; validates that rho_tilde * eta^-1 is
  /// Hermitian positive.
  static GeneralizedDensity from_rho_tilde(QMatrix rho_tilde, Metric metric);

  const QMatrix& rho_tilde() const { return rho_tilde_; }
  QMatrix rho() const { return rho_tilde_ * metric_.eta_inv(); }
  const Metric& metric() const { return metric_; }

  /// Re tr of rho_tilde before the normalization applied at construction.
  double raw_re_trace() const { return raw_re_trace_; }

 private:
  GeneralizedDensity(QMatrix rho_tilde, Metric metric, double raw);

  QMatrix rho_tilde_;
  Metric metric_;
  double raw_re_trace_ = 0.0;
};

/// Expectation value Re tr(rho_tilde O). Warns on stderr when O is not
/// eta-pseudo-Hermitian (the value is still computed).
double expectation(const QMatrix& op, const GeneralizedDensity& state);

}  // namespace quatdyn
