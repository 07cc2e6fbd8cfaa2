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
#include <random>

#include "quatdyn/quatmat.hpp"

namespace quatdyn {

/// Seeded random source for the randomized checks. Gaussians use an
/// explicit Box-Muller transform on top of mt19937_64 so that streams are
/// reproducible across standard libraries.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : seed_(seed), gen_(seed) {}

  std::uint64_t seed() const { return seed_; }

  /// Uniform in [0, 1).
  double uniform();
  double normal();
  Complex normal_complex();

  CMatrix complex_gaussian(Eigen::Index rows, Eigen::Index cols);
  QMatrix quaternion_gaussian(Eigen::Index rows, Eigen::Index cols);

  QMatrix hermitian(Eigen::Index n);
  QMatrix anti_hermitian(Eigen::Index n);

  /// G G^dagger normalized to Re tr = 1; Hermitian positive semidefinite.
  QMatrix density(Eigen::Index n);

  /// A well-conditioned complex positive Hermitian matrix (as a QMatrix
  /// with zero beta block).
  QMatrix complex_positive(Eigen::Index n);

  /// A quaternionic unitary (the polar factor of a Gaussian draw).
  QMatrix unitary(Eigen::Index n);

 private:
  std::uint64_t seed_;
  std::mt19937_64 gen_;
  bool has_spare_ = false;
  double spare_ = 0.0;
};

}  // namespace quatdyn
