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

#include "structcs/bench.hpp"
#include "structcs/recovery.hpp"
#include "structcs/sensing_matrix.hpp"

using namespace structcs;

namespace {

void run(benchmark::State& state, bool structured) {
  const Eigen::Index n = state.range(0);
  const auto spec = structured ? toeplitz_block_spec(512, n, 1, 1, {DistributionKind::Bernoulli, n}, 5)
                               : iid_spec(n, 512, {DistributionKind::Bernoulli, n}, 5);
  const auto m = build_structured(spec);
  const auto op = structured ? LinearOperator::from_matrix(m) : LinearOperator::dense(m.entries());
  const Eigen::VectorXd y = m.entries() * generate_sparse_signal(512, 10, 6).to_dense();
  for (auto _ : state) benchmark::DoNotOptimize(basis_pursuit(op, y));
}

void BM_BasisPursuitDense(benchmark::State& state) { run(state, false); }
void BM_BasisPursuitToeplitz(benchmark::State& state) { run(state, true); }

void BM_Omp(benchmark::State& state) {
  const auto m = sample_iid(128, 512, {DistributionKind::Bernoulli, 128}, 5);
  const auto op = LinearOperator::dense(m.entries());
  const Eigen::VectorXd y = m.entries() * generate_sparse_signal(512, 10, 6).to_dense();
  for (auto _ : state) benchmark::DoNotOptimize(omp(op, y, 10));
}

}  // namespace

BENCHMARK(BM_BasisPursuitDense)->Arg(80)->Arg(160)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_BasisPursuitToeplitz)->Arg(80)->Arg(160)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_Omp)->Unit(benchmark::kMillisecond);
