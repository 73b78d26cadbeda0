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

#include "structcs/rip.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

#include <algorithm>
#include <cmath>
#include <vector>

#include "structcs/combinatorics.hpp"
#include "structcs/error.hpp"
#include "structcs/parallel.hpp"
#include "structcs/rng.hpp"

namespace structcs {

namespace {

void check_support(const Eigen::MatrixXd& phi, const SupportSet& t) {
  if (t.size() < 1) throw InvalidArgument("empty support");
  if (t.indices().back() >= phi.cols()) throw InvalidArgument("support index out of range");
  if (t.size() > phi.rows()) throw InvalidArgument("support larger than the row count");
}

double delta_from_gram(const Eigen::MatrixXd& gram) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(gram, Eigen::EigenvaluesOnly);
  if (eig.info() != Eigen::Success) throw NumericalError("Gram eigen-decomposition failed");
  const auto& ev = eig.eigenvalues();
  return std::max(ev(ev.size() - 1) - 1.0, 1.0 - ev(0));
}

void check_order(const Eigen::MatrixXd& phi, Eigen::Index m) {
  if (m < 1 || m > phi.cols()) throw InvalidArgument("RIP order must lie in [1, N]");
  if (m > phi.rows()) throw InvalidArgument("RIP order exceeds the row count");
}

}  // namespace

double delta_for_support(const Eigen::MatrixXd& phi, const SupportSet& t) {
  check_support(phi, t);
  const Eigen::MatrixXd sub = columns_of(phi, t);
  return delta_from_gram(sub.transpose() * sub);
}

double delta_for_support_svd(const Eigen::MatrixXd& phi, const SupportSet& t) {
  check_support(phi, t);
  const Eigen::MatrixXd sub = columns_of(phi, t);
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(sub);
  const auto& sv = svd.singularValues();
  const double smax = sv(0), smin = sv(sv.size() - 1);
  return std::max(smax * smax - 1.0, 1.0 - smin * smin);
}

RipEstimate delta_exhaustive(const Eigen::MatrixXd& phi, Eigen::Index m, std::size_t threads,
                             std::uint64_t guard) {
  check_order(phi, m);
  const int N = static_cast<int>(phi.cols());
  const int k = static_cast<int>(m);
  const std::uint64_t total = binomial(static_cast<std::uint64_t>(N), static_cast<std::uint64_t>(k));
  if (total > guard)
    throw GuardExceeded("C(" + std::to_string(N) + ", " + std::to_string(k) + ") = " +
                        std::to_string(total) + " supports exceeds the exhaustive guard of " +
                        std::to_string(guard));

  // Full Gram once; every support's Gram is a principal submatrix.
  const Eigen::MatrixXd gram = phi.transpose() * phi;

  struct Best {
    double delta = -1.0;
    std::vector<int> support;
  };
  threads = resolve_threads(threads);
  const std::uint64_t chunks = std::min<std::uint64_t>(total, threads * 8);
  std::vector<Best> partial(static_cast<std::size_t>(chunks));

  parallel_for(static_cast<std::size_t>(chunks), threads, [&](std::size_t c) {
    const std::uint64_t begin = total * c / chunks, end = total * (c + 1) / chunks;
    std::vector<int> combo = unrank_combination(N, k, begin);
    Eigen::MatrixXd sub(k, k);
    Best best;
    for (std::uint64_t r = begin; r < end; ++r) {
      for (int a = 0; a < k; ++a)
        for (int b = 0; b < k; ++b) sub(a, b) = gram(combo[static_cast<std::size_t>(a)], combo[static_cast<std::size_t>(b)]);
      const double d = delta_from_gram(sub);
      if (d > best.delta) {
        best.delta = d;
        best.support = combo;
      }
      next_combination(combo, N);
    }
    partial[c] = std::move(best);
  });

  // Chunks are in lexicographic order; strict '>' keeps the first maximiser.
  Best best;
  for (auto& p : partial)
    if (p.delta > best.delta) best = std::move(p);

  RipEstimate out;
  out.order = m;
  out.delta = best.delta;
  out.method = RipMethod::Exhaustive;
  out.samples = total;
  out.worst_support =
      SupportSet(std::vector<Eigen::Index>(best.support.begin(), best.support.end()), phi.cols());
  return out;
}

RipEstimate delta_monte_carlo(const Eigen::MatrixXd& phi, Eigen::Index m, std::uint64_t samples,
                              std::uint64_t seed) {
  check_order(phi, m);
  if (samples < 1) throw InvalidArgument("need at least one sample");
  Rng rng(seed);
  std::vector<Eigen::Index> pool(static_cast<std::size_t>(phi.cols()));
  for (std::size_t i = 0; i < pool.size(); ++i) pool[i] = static_cast<Eigen::Index>(i);

  RipEstimate out;
  out.order = m;
  out.method = RipMethod::MonteCarlo;
  out.samples = samples;
  out.delta = -1.0;
  for (std::uint64_t s = 0; s < samples; ++s) {
    // Partial Fisher-Yates: the first m slots become a uniform m-subset.
    for (Eigen::Index i = 0; i < m; ++i) {
      const auto j = static_cast<std::size_t>(i) +
                     static_cast<std::size_t>(rng.below(pool.size() - static_cast<std::size_t>(i)));
      std::swap(pool[static_cast<std::size_t>(i)], pool[j]);
    }
    SupportSet t(std::vector<Eigen::Index>(pool.begin(), pool.begin() + m), phi.cols());
    const double d = delta_for_support(phi, t);
    if (d > out.delta || (d == out.delta && t < out.worst_support)) {
      out.delta = d;
      out.worst_support = std::move(t);
    }
  }
  return out;
}

double coherence(const Eigen::MatrixXd& phi) {
  if (phi.cols() < 2) throw InvalidArgument("coherence needs at least two columns");
  const Eigen::VectorXd norms = phi.colwise().norm().transpose();
  for (Eigen::Index j = 0; j < norms.size(); ++j)
    if (norms(j) == 0.0) throw InvalidArgument("coherence: column " + std::to_string(j) + " is zero");
  const Eigen::MatrixXd gram = phi.transpose() * phi;
  double mu = 0.0;
  for (Eigen::Index i = 0; i < gram.rows(); ++i)
    for (Eigen::Index j = i + 1; j < gram.cols(); ++j)
      mu = std::max(mu, std::abs(gram(i, j)) / (norms(i) * norms(j)));
  return mu;
}

}  // namespace structcs
