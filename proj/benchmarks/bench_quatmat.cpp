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

#include <benchmark/benchmark.h>

#include "quatdyn/quatmat.hpp"
#include "quatdyn/rng.hpp"

namespace {

using quatdyn::QMatrix;
using quatdyn::Rng;

void BM_QuaternionProduct(benchmark::State& state) {
  Rng rng(7);
  const auto n = static_cast<Eigen::Index>(state.range(0));
  const QMatrix a = rng.quaternion_gaussian(n, n);
  const QMatrix b = rng.quaternion_gaussian(n, n);
  for (auto _ : state) {
    QMatrix c = a * b;
    benchmark::DoNotOptimize(c);
  }
}
BENCHMARK(BM_QuaternionProduct)->Arg(2)->Arg(4)->Arg(8)->Arg(16);

void BM_ChiInverse(benchmark::State& state) {
  Rng rng(7);
  const auto n = static_cast<Eigen::Index>(state.range(0));
  const QMatrix a = rng.quaternion_gaussian(n, n) + 4.0 * QMatrix::identity(n);
  for (auto _ : state) {
    QMatrix inv = quatdyn::inverse(a);
    benchmark::DoNotOptimize(inv);
  }
}
BENCHMARK(BM_ChiInverse)->Arg(2)->Arg(4)->Arg(8);

void BM_PositivityTest(benchmark::State& state) {
  Rng rng(7);
  const auto n = static_cast<Eigen::Index>(state.range(0));
  const QMatrix rho = rng.density(n);
  for (auto _ : state) {
    auto result = quatdyn::is_positive(rho);
    benchmark::DoNotOptimize(result);
  }
}
BENCHMARK(BM_PositivityTest)->Arg(2)->Arg(4)->Arg(8);

}  // namespace
