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

#include "structcs/fast_ops.hpp"
#include "structcs/rng.hpp"
#include "structcs/sensing_matrix.hpp"

using namespace structcs;

namespace {

// Scalar Toeplitz, k*e = N columns, l*d = N/4 rows.
SensingMatrix toeplitz(Eigen::Index N) {
  return build_structured(toeplitz_block_spec(N, N / 4, 1, 1, {DistributionKind::Gaussian, N / 4}, 1));
}

Eigen::VectorXd random_vector(Eigen::Index n) {
  Rng rng(2);
  Eigen::VectorXd x(n);
  for (Eigen::Index i = 0; i < n; ++i) x(i) = rng.normal();
  return x;
}

void BM_DenseMatvec(benchmark::State& state) {
  const auto m = toeplitz(state.range(0));
  const auto x = random_vector(m.cols());
  for (auto _ : state) benchmark::DoNotOptimize(dense_matvec(m, x));
}

void BM_FastMatvec(benchmark::State& state) {
  const auto m = toeplitz(state.range(0));
  const StructuredOperator op(m);
  const auto x = random_vector(m.cols());
  for (auto _ : state) benchmark::DoNotOptimize(op.apply(x));
}

void BM_FastAdjoint(benchmark::State& state) {
  const auto m = toeplitz(state.range(0));
  const StructuredOperator op(m);
  const auto y = random_vector(m.rows());
  for (auto _ : state) benchmark::DoNotOptimize(op.apply_adjoint(y));
}

void BM_BlockFastMatvec(benchmark::State& state) {
  const auto m = build_structured(toeplitz_block_spec(512, 32, 8, 8, {DistributionKind::Bernoulli, 256}, 3));
  const StructuredOperator op(m);
  const auto x = random_vector(m.cols());
  for (auto _ : state) benchmark::DoNotOptimize(op.apply(x));
}

}  // namespace

BENCHMARK(BM_DenseMatvec)->RangeMultiplier(2)->Range(1024, 8192);
BENCHMARK(BM_FastMatvec)->RangeMultiplier(2)->Range(1024, 8192);
BENCHMARK(BM_FastAdjoint)->Arg(4096);
BENCHMARK(BM_BlockFastMatvec);
