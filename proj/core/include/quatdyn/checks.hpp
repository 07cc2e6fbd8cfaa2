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
#include <string>
#include <vector>

namespace quatdyn {

/// Outcome of one verification check. `value` is the measured quantity
/// (worst residual, ratio or gap) compared against `threshold` in the
/// direction given by `cmp`.
struct CheckResult {
  enum class Cmp { at_most, at_least };

  std::string name;
  bool passed = false;
  double value = 0.0;
  double threshold = 0.0;
  Cmp cmp = Cmp::at_most;
  double t_at_worst = 0.0;  ///< NaN when not location-bound
  std::string note;
};

struct BundleOptions {
  std::uint64_t seed = 42;
  double step = 1e-4;  ///< integrator substep for trajectory-based bundles
};

/// Named verification bundles:
///   algebra       - chi homomorphism, dagger anti-automorphism, Re-trace
///                   cyclicity, projection identity (randomized, n <= 4)
///   sec4          - closed-form reproduction, integrator order,
///                   conservation laws, quasistationarity criterion
///   properties    - projected-state stochasticity along the trajectory
///                   and the quaternionic-metric counterexample search
///   semigroup     - one-leg vs two-leg projected evolution gap
///   factorization - H = F eta vs the root route, pseudoanti-Hermiticity
///   all           - everything above
std::vector<std::string> bundle_names();

/// Runs one bundle; throws std::invalid_argument for unknown names.
std::vector<CheckResult> run_bundle(const std::string& name, const BundleOptions& opts = {});

bool all_passed(const std::vector<CheckResult>& results);

}  // namespace quatdyn
