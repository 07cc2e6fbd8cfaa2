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

#include "quatdyn/checks.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

#include "quatdyn/dynamics.hpp"
#include "quatdyn/metric.hpp"
#include "quatdyn/projection.hpp"
#include "quatdyn/quatmat.hpp"
#include "quatdyn/rng.hpp"
#include "quatdyn/scenarios.hpp"

namespace quatdyn {

namespace {

constexpr double kPi = std::numbers::pi;
const double kNan = std::numeric_limits<double>::quiet_NaN();

/// Reference parameter set for the closed-form scenario: well-conditioned
/// metric with xy - |z|^2 = 1.75.
sec4::Params reference_params() { return {2.0, 1.0, Complex(0.5, 0.0), 0.0}; }

CheckResult at_most(std::string name, double value, double threshold, double t_at_worst = kNan,
                    std::string note = {}) {
  return {std::move(name), value <= threshold, value,          threshold,
          CheckResult::Cmp::at_most, t_at_worst, std::move(note)};
}

CheckResult at_least(std::string name, double value, double threshold, double t_at_worst = kNan,
                     std::string note = {}) {
  return {std::move(name), value >= threshold, value,           threshold,
          CheckResult::Cmp::at_least, t_at_worst, std::move(note)};
}

struct Worst {
  double value = 0.0;
  double t = kNan;
  void update(double v, double at) {
    if (v > value) {
      value = v;
      t = at;
    }
  }
};

// ---------------------------------------------------------------------------
// algebra: randomized identities of the quaternionic layer, n <= 4.

std::vector<CheckResult> algebra_bundle(const BundleOptions& opts) {
  Rng rng(opts.seed);
  constexpr int kDraws = 200;
  constexpr double kTol = 1e-12;

  double worst_hom = 0.0;
  double worst_dagger = 0.0;
  double worst_cyclic = 0.0;
  double worst_projection = 0.0;
  double worst_pairing = 0.0;

  for (int draw = 0; draw < kDraws; ++draw) {
    const Eigen::Index n = 1 + static_cast<Eigen::Index>(rng.uniform() * 4.0) % 4;
    QMatrix a = rng.quaternion_gaussian(n, n);
    QMatrix b = rng.quaternion_gaussian(n, n);
    a *= 1.0 / a.max_abs();
    b *= 1.0 / b.max_abs();

    const QMatrix ab = a * b;
    worst_hom = std::max(worst_hom,
                         (ab.chi() - a.chi() * b.chi()).cwiseAbs().maxCoeff());
    worst_dagger = std::max(worst_dagger, max_abs_diff(ab.dagger(), b.dagger() * a.dagger()));
    worst_dagger = std::max(worst_dagger, max_abs_diff(a.dagger().dagger(), a));
    worst_cyclic = std::max(worst_cyclic, std::abs(re_trace(a * b) - re_trace(b * a)));

    // P[M] = (M - i M i)/2 recomputed entrywise in scalar quaternion
    // arithmetic against the stored alpha block.
    const Quaternion unit_i{0.0, 1.0, 0.0, 0.0};
    for (Eigen::Index r = 0; r < n; ++r) {
      for (Eigen::Index c = 0; c < n; ++c) {
        const Quaternion q = a.quat(r, c);
        const Quaternion projected = 0.5 * (q - unit_i * q * unit_i);
        worst_projection =
            std::max({worst_projection, std::abs(projected.alpha() - a.alpha()(r, c)),
                      std::abs(projected.c), std::abs(projected.d)});
      }
    }

    const QMatrix h = 0.5 * (a + a.dagger());
    const Eigen::VectorXd eigs = hermitian_eigenvalues(h);
    for (Eigen::Index k = 0; k + 1 < eigs.size(); k += 2) {
      worst_pairing = std::max(worst_pairing, std::abs(eigs(k + 1) - eigs(k)));
    }
  }

  std::ostringstream note;
  note << kDraws << " draws, seed " << opts.seed;
  return {
      at_most("chi_homomorphism", worst_hom, 1e-12, kNan, note.str()),
      at_most("dagger_anti_automorphism", worst_dagger, kTol),
      at_most("re_trace_cyclicity", worst_cyclic, kTol),
      at_most("projection_identity", worst_projection, kTol),
      at_most("hermitian_eigenvalue_pairing", worst_pairing, 1e-10),
  };
}

// ---------------------------------------------------------------------------
// sec4: propagated trajectory against the closed forms.

struct Sec4Trajectory {
  std::vector<double> times;
  std::vector<QMatrix> evolutions;
  std::vector<QMatrix> rho_tilde;
};

Sec4Trajectory propagate_reference(const sec4::Params& p, double t_end, int samples,
                                   double step) {
  const std::vector<double> grid = linspace(0.0, t_end, samples);
  const GeneratorSource src = sec4::generator_source(p, -0.5, t_end + 0.5);
  const UnitaryPropagation prop = propagate_unitary(src, grid, {.step = step});
  const Metric m = sec4::metric(p);
  const QMatrix rho_tilde0 = sec4::initial_state(p).rho_tilde();

  Sec4Trajectory out;
  out.times = prop.times;
  out.evolutions.reserve(grid.size());
  out.rho_tilde.reserve(grid.size());
  for (const QMatrix& u : prop.unitaries) {
    QMatrix v = dress(u, m);
    out.rho_tilde.push_back(evolve_generalized(rho_tilde0, v));
    out.evolutions.push_back(std::move(v));
  }
  return out;
}

std::vector<CheckResult> sec4_bundle(const BundleOptions& opts) {
  const sec4::Params p = reference_params();
  const Metric m = sec4::metric(p);
  const double t_end = 3.0 * kPi / 8.0;
  const Sec4Trajectory traj = propagate_reference(p, t_end, 100, opts.step);

  Worst reproduction;
  Worst trace;
  Worst unitarity;
  Worst pseudo_herm;
  for (std::size_t k = 0; k < traj.times.size(); ++k) {
    const double t = traj.times[k];
    reproduction.update(max_abs_diff(traj.rho_tilde[k], sec4::state_at(t, p)), t);
    trace.update(std::abs(re_trace(traj.rho_tilde[k]) - 1.0), t);
    unitarity.update(is_eta_unitary(traj.evolutions[k], m, 1.0).residual, t);
    pseudo_herm.update(is_pseudo_hermitian(traj.rho_tilde[k], m, 1.0).residual, t);
  }

  // Order-of-convergence probe at t = pi/8, inside the first smooth
  // interval. The two steps sit where truncation still dominates roundoff;
  // at the production step the error floor is ~1e-14 and ratios are noise.
  const double coarse = 0.02;
  auto error_at = [&](double step) {
    const std::vector<double> grid{0.0, kPi / 8.0};
    const GeneratorSource src = sec4::generator_source(p, -0.5, 1.0);
    const UnitaryPropagation prop = propagate_unitary(src, grid, {.step = step});
    const QMatrix v = dress(prop.unitaries.back(), m);
    return max_abs_diff(evolve_generalized(sec4::initial_state(p).rho_tilde(), v),
                        sec4::state_at(kPi / 8.0, p));
  };
  const double err_coarse = error_at(coarse);
  const double err_fine = error_at(coarse / 2.0);
  const double ratio = err_coarse / std::max(err_fine, 1e-300);
  std::ostringstream order_note;
  order_note << "error " << err_coarse << " at step " << coarse << " vs " << err_fine
             << " at step " << coarse / 2.0;

  // Quasistationarity criterion: the scenario pair (constant eta) gives
  // R = 0; the time-dependent metric e^{2t} 1 with an anti-Hermitian H
  // gives R = 2.
  const GeneratorSource eta_const = GeneratorSource::closed_form(
      GeneratorSource::Role::metric, 2, [&m](double) { return m.eta(); });
  const GeneratorSource h_sec4 = GeneratorSource::closed_form(
      GeneratorSource::Role::dressed, 2, [p](double t) { return sec4::hamiltonian(t, p); },
      sec4::breakpoints_in(-0.5, 2.0));
  Worst quasi_const;
  for (double t : {0.05, 0.3, kPi / 8.0, 0.7, 1.1}) {
    quasi_const.update(quasistationarity_residual(eta_const, h_sec4, t).max_abs(), t);
  }

  Rng rng(opts.seed);
  const QMatrix anti_h = rng.anti_hermitian(2);
  const GeneratorSource eta_growing = GeneratorSource::closed_form(
      GeneratorSource::Role::metric, 2,
      [](double t) { return std::exp(2.0 * t) * QMatrix::identity(2); });
  const GeneratorSource h_fixed = GeneratorSource::closed_form(
      GeneratorSource::Role::dressed, 2, [anti_h](double) { return anti_h; });
  Worst quasi_growing;
  const QMatrix two_id = 2.0 * QMatrix::identity(2);
  for (double t : {0.0, 0.25, 0.5}) {
    quasi_growing.update(
        max_abs_diff(quasistationarity_residual(eta_growing, h_fixed, t), two_id), t);
  }

  return {
      at_most("closed_form_reproduction", reproduction.value, 1e-8, reproduction.t),
      at_least("integrator_order_ratio", ratio, 12.0, kNan, order_note.str()),
      at_most("trace_conservation", trace.value, 1e-8, trace.t),
      at_most("eta_unitarity", unitarity.value, 1e-8, unitarity.t),
      at_most("pseudo_hermiticity", pseudo_herm.value, 1e-8, pseudo_herm.t),
      at_most("quasistationarity_constant_eta", quasi_const.value, 1e-8, quasi_const.t),
      at_most("quasistationarity_growing_eta", quasi_growing.value, 1e-8, quasi_growing.t),
  };
}

// ---------------------------------------------------------------------------
// properties: stochasticity of the projected trajectory + the necessity
// counterexample for a genuinely quaternionic metric.

std::vector<CheckResult> properties_bundle(const BundleOptions& opts) {
  const sec4::Params p = reference_params();
  const Metric m = sec4::metric(p);
  const Sec4Trajectory traj = propagate_reference(p, 3.0 * kPi / 8.0, 100, opts.step);

  Worst quasi_herm;
  Worst negativity;
  Worst trace_dev;
  for (std::size_t k = 0; k < traj.times.size(); ++k) {
    const double t = traj.times[k];
    const PropertyICheck quasi = check_property_i(traj.rho_tilde[k], m, 1.0);
    quasi_herm.update(quasi.residual, t);
    const PropertyIICheck positive = check_property_ii(traj.rho_tilde[k], m, 1.0);
    negativity.update(std::max(0.0, -positive.min_eigenvalue), t);
    trace_dev.update(std::abs(positive.re_trace - 1.0), t);
  }

  // Hermitian positive eta with a genuine quaternionic part.
  CMatrix beta(2, 2);
  beta << 0.0, 0.5, -0.5, 0.0;
  const Metric quaternionic_metric{QMatrix(CMatrix::Identity(2, 2), beta)};
  const CounterexampleSearch search =
      find_projection_counterexample(quaternionic_metric, 10000, opts.seed);
  std::ostringstream note;
  note << search.draws << " draws, seed " << search.seed;

  return {
      at_most("projection_quasi_hermiticity", quasi_herm.value, 1e-8, quasi_herm.t),
      at_most("projection_positivity", negativity.value, 1e-8, negativity.t),
      at_most("projection_trace", trace_dev.value, 1e-8, trace_dev.t),
      at_least("necessity_counterexample", search.worst_residual, 1e-3, kNan, note.str()),
  };
}

// ---------------------------------------------------------------------------
// semigroup: the projected dynamics is not a semigroup.

std::vector<CheckResult> semigroup_bundle(const BundleOptions&) {
  const sec4::Params p = reference_params();
  const sec4::SemigroupGap gap = sec4::semigroup_gap(kPi / 4.0, kPi / 8.0, p);

  std::ostringstream note;
  note << "direct=" << gap.direct.real() << ", composed=" << gap.composed.real()
       << "; quoted closed forms give " << gap.paper_direct << " and " << gap.paper_composed
       << " (gap " << std::abs(gap.paper_direct - gap.paper_composed)
       << "); the quoted direct entry differs from the first-principles value "
       << "by a parameter-dependent factor - logged, acceptance rests on the gap";

  const double quoted_dev = std::max(std::abs(gap.paper_direct - 1.0),
                                     std::abs(gap.paper_composed - (-0.5)));
  return {
      at_least("semigroup_violation_gap", gap.gap, 0.1, kNan, note.str()),
      at_most("semigroup_quoted_forms", quoted_dev, 1e-12, kNan,
              "quoted expressions at (pi/4, pi/8) evaluate to 1 and -1/2"),
  };
}

// ---------------------------------------------------------------------------
// factorization: H = F eta vs the root route.

std::vector<CheckResult> factorization_bundle(const BundleOptions& opts) {
  Rng rng(opts.seed);
  Worst disagreement;
  Worst pseudo_anti;
  for (Eigen::Index n : {2, 3}) {
    const Metric m{rng.complex_positive(n)};
    for (int draw = 0; draw < 25; ++draw) {
      QMatrix f = rng.anti_hermitian(n);
      f *= 1.0 / f.max_abs();
      const QMatrix direct = f * m.eta();
      const QMatrix via_root = m.root_inv() * (m.root() * f * m.root()) * m.root();
      const double scale = std::max(1.0, direct.max_abs());
      disagreement.update(max_abs_diff(direct, via_root) / scale, static_cast<double>(n));
      pseudo_anti.update(is_pseudo_anti_hermitian(direct, m, 1.0).residual / scale,
                         static_cast<double>(n));
    }
  }
  std::ostringstream note;
  note << "50 draws over n = 2, 3; seed " << opts.seed << "; worst at n = ";
  return {
      at_most("factorization_routes_agree", disagreement.value, 1e-10, disagreement.t,
              note.str() + std::to_string(static_cast<int>(disagreement.t))),
      at_most("factorization_pseudo_anti_hermitian", pseudo_anti.value, 1e-10, pseudo_anti.t),
  };
}

}  // namespace

std::vector<std::string> bundle_names() {
  return {"algebra", "sec4", "properties", "semigroup", "factorization", "all"};
}

std::vector<CheckResult> run_bundle(const std::string& name, const BundleOptions& opts) {
  if (name == "algebra") return algebra_bundle(opts);
  if (name == "sec4") return sec4_bundle(opts);
  if (name == "properties") return properties_bundle(opts);
  if (name == "semigroup") return semigroup_bundle(opts);
  if (name == "factorization") return factorization_bundle(opts);
  if (name == "all") {
    std::vector<CheckResult> all;
    for (const char* bundle : {"algebra", "sec4", "properties", "semigroup", "factorization"}) {
      std::vector<CheckResult> one = run_bundle(bundle, opts);
      all.insert(all.end(), std::make_move_iterator(one.begin()),
                 std::make_move_iterator(one.end()));
    }
    return all;
  }
  throw std::invalid_argument("unknown verification bundle: " + name);
}

bool all_passed(const std::vector<CheckResult>& results) {
  return std::all_of(results.begin(), results.end(),
                     [](const CheckResult& r) { return r.passed; });
}

}  // namespace quatdyn
