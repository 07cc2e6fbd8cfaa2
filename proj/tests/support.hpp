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

#include <numbers>

#include "quatdyn/metric.hpp"
#include "quatdyn/quatmat.hpp"
#include "quatdyn/rng.hpp"

namespace qtest {

inline constexpr double kPi = std::numbers::pi;

inline quatdyn::CMatrix cmat2(quatdyn::Complex a, quatdyn::Complex b, quatdyn::Complex c,
                              quatdyn::Complex d) {
  quatdyn::CMatrix m(2, 2);
  m << a, b, c, d;
  return m;
}

/// The 1x1 quaternion unit j as a QMatrix.
inline quatdyn::QMatrix unit_j() {
  return quatdyn::QMatrix::pure_j(quatdyn::CMatrix::Ones(1, 1));
}

/// An eta-unitary matrix for the given metric: the dressing T^-1 Q T of a
/// random unitary Q.
inline quatdyn::QMatrix random_eta_unitary(quatdyn::Rng& rng, const quatdyn::Metric& m) {
  return m.root_inv() * rng.unitary(m.dim()) * m.root();
}

}  // namespace qtest
