// SPDX-License-Identifier: Apache-2.0
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <benchmark/benchmark.h>

#include "structcs/rip.hpp"
#include "structcs/sensing_matrix.hpp"

using namespace structcs;

static void BM_DeltaExhaustive(benchmark::State& state) {
  const auto m = sample_iid(32, 64, {DistributionKind::Bernoulli, 32}, 1);
  const auto order = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(delta_exhaustive(m.entries(), order));
}

static void BM_DeltaMonteCarlo(benchmark::State& state) {
  const auto m = sample_iid(128, 512, {DistributionKind::Bernoulli, 128}, 1);
  for (auto _ : state) benchmark::DoNotOptimize(delta_monte_carlo(m.entries(), 10, 1000, 7));
}

BENCHMARK(BM_DeltaExhaustive)->Arg(2)->Arg(3)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_DeltaMonteCarlo)->Unit(benchmark::kMillisecond);
