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

#include <numbers>

#include "quatdyn/dynamics.hpp"
#include "quatdyn/projection.hpp"
#include "quatdyn/scenarios.hpp"

namespace {

namespace sec4 = quatdyn::sec4;
constexpr double kPi = std::numbers::pi;

void BM_PropagateUnitary(benchmark::State& state) {
  const sec4::Params p{2.0, 1.0, {0.5, 0.0}, 0.0};
  const quatdyn::GeneratorSource src = sec4::generator_source(p, -0.5, 1.0);
  const std::vector<double> grid{0.0, kPi / 8.0};
  const double step = 1.0 / static_cast<double>(state.range(0));
  for (auto _ : state) {
    auto prop = quatdyn::propagate_unitary(src, grid, {.step = step});
    benchmark::DoNotOptimize(prop);
  }
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_PropagateUnitary)->RangeMultiplier(4)->Range(64, 16384)->Complexity();

void BM_ProjectedMap(benchmark::State& state) {
  const sec4::Params p{2.0, 1.0, {0.5, 0.0}, 0.0};
  const quatdyn::Metric m = sec4::metric(p);
  const quatdyn::QMatrix rho0 = sec4::initial_state(p).rho();
  const quatdyn::SplitOperator v =
      quatdyn::SplitOperator::from(sec4::evolution_operator(kPi / 8.0, p));
  for (auto _ : state) {
    quatdyn::CMatrix projected = quatdyn::project_map_finite(rho0, v, m);
    benchmark::DoNotOptimize(projected);
  }
}
BENCHMARK(BM_ProjectedMap);

void BM_SemigroupGap(benchmark::State& state) {
  const sec4::Params p{2.0, 1.0, {0.5, 0.0}, 0.0};
  for (auto _ : state) {
    auto gap = sec4::semigroup_gap(kPi / 4.0, kPi / 8.0, p);
    benchmark::DoNotOptimize(gap);
  }
}
BENCHMARK(BM_SemigroupGap);

}  // namespace
