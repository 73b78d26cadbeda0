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

#include "structcs/deterministic.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <limits>
#include <unordered_map>

#include "structcs/combinatorics.hpp"
#include "structcs/error.hpp"
#include "structcs/parallel.hpp"

namespace structcs {

bool is_prime(std::int64_t p) {
  if (p < 2) return false;
  for (std::int64_t f = 2; f * f <= p; ++f)
    if (p % f == 0) return false;
  return true;
}

std::int64_t polynomial_count(std::int64_t p, std::int64_t r) {
  std::int64_t count = 1;
  for (std::int64_t i = 0; i <= r; ++i) {
    if (count > std::numeric_limits<std::int64_t>::max() / p)
      throw InvalidArgument("p^(r+1) overflows");
    count *= p;
  }
  return count;
}

std::vector<Coefficients> enumerate_polynomials(std::int64_t p, std::int64_t r,
                                                std::int64_t count) {
  if (p < 2 || r < 0) throw InvalidArgument("need p >= 2 and r >= 0");
  if (count < 0 || count > polynomial_count(p, r))
    throw InvalidArgument("requested more polynomials than p^(r+1)");
  std::vector<Coefficients> out;
  out.reserve(static_cast<std::size_t>(count));
  for (std::int64_t i = 0; i < count; ++i) {
    Coefficients a(static_cast<std::size_t>(r + 1));
    std::int64_t rest = i;
    for (std::int64_t j = 0; j <= r; ++j) {
      a[static_cast<std::size_t>(j)] = rest % p;
      rest /= p;
    }
    out.push_back(std::move(a));
  }
  return out;
}

std::int64_t evaluate_mod(std::int64_t p, const Coefficients& coeffs, std::int64_t x) {
  std::int64_t acc = 0;
  for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) acc = (acc * x + *it) % p;
  return ((acc % p) + p) % p;
}

GraphVector graph_vector(std::int64_t p, const Coefficients& coeffs) {
  if (p < 2) throw InvalidArgument("p must be >= 2");
  for (std::int64_t a : coeffs)
    if (a < 0 || a >= p) throw InvalidArgument("coefficients must lie in Z_p");
  GraphVector g;
  g.coeffs = coeffs;
  g.bits.assign(static_cast<std::size_t>(p * p), 0);
  for (std::int64_t x = 0; x < p; ++x) g.bits[static_cast<std::size_t>(x * p + evaluate_mod(p, coeffs, x))] = 1;
  return g;
}

void validate(const PolySpec& spec) {
  if (!is_prime(spec.p)) throw InvalidArgument("p = " + std::to_string(spec.p) + " is not prime");
  if (spec.r <= 0 || spec.r >= spec.p) throw InvalidArgument("need 0 < r < p");
  if (spec.t < 1 || spec.s < 1 || spec.block_cols < 1)
    throw InvalidArgument("t, s and block_cols must be >= 1");
  const std::int64_t total = polynomial_count(spec.p, spec.r);
  if (spec.t * spec.block_cols > total)
    throw InvalidArgument("t * block_cols exceeds the p^(r+1) available polynomials");
  const double entries = static_cast<double>(spec.s) * static_cast<double>(spec.p * spec.p) *
                         static_cast<double>(spec.t * spec.block_cols);
  if (entries > 2e8) throw InvalidArgument("deterministic matrix too large to materialise");
}

std::int64_t available_blocks(const PolySpec& spec) {
  return polynomial_count(spec.p, spec.r) / spec.block_cols;
}

Eigen::MatrixXi devore_pattern(const PolySpec& spec) {
  validate(spec);
  const std::int64_t p = spec.p;
  const Eigen::Index p2 = p * p;
  const std::int64_t slices = available_blocks(spec);
  const Eigen::Index bands = spec.t + spec.s - 1;
  const auto polys = enumerate_polynomials(p, spec.r, std::min<std::int64_t>(slices, bands) * spec.block_cols);

  Eigen::MatrixXi pattern = Eigen::MatrixXi::Zero(spec.s * p2, spec.t * spec.block_cols);
  for (Eigen::Index x = 0; x < spec.s; ++x) {
    for (Eigen::Index J = 0; J < spec.t; ++J) {
      const Eigen::Index band = spec.t - 1 + x - J;
      const Eigen::Index slice = band % slices;
      for (Eigen::Index c = 0; c < spec.block_cols; ++c) {
        const auto& f = polys[static_cast<std::size_t>(slice * spec.block_cols + c)];
        for (std::int64_t a = 0; a < p; ++a)
          pattern(x * p2 + a * p + evaluate_mod(p, f, a), J * spec.block_cols + c) = 1;
      }
    }
  }
  return pattern;
}

SensingMatrix build_devore_block(const PolySpec& spec) {
  const Eigen::MatrixXi pattern = devore_pattern(spec);
  const double scale = 1.0 / std::sqrt(static_cast<double>(spec.s * spec.p));

  BlockStructureSpec bs;
  bs.kind = MatrixKind::Deterministic;
  bs.k = spec.t;
  bs.l = spec.s;
  bs.d = spec.p * spec.p;
  bs.e = spec.block_cols;
  bs.poly = spec;
  bs.distribution.scale_rows = bs.full_rows();
  return SensingMatrix(pattern.cast<double>() * scale, variable_layout(bs), bs);
}

SensingMatrix build_devore(std::int64_t p, std::int64_t r, Eigen::Index n_cols) {
  PolySpec spec;
  spec.p = p;
  spec.r = r;
  spec.t = 1;
  spec.s = 1;
  spec.block_cols = n_cols;
  return build_devore_block(spec);
}

// ---------------------------------------------------------------------------
// Exhaustive check

namespace {

constexpr int kMaxOrder = 24;
constexpr std::uint64_t kDenseMemoLimit = 1ULL << 22;

// Eigen-delta of G = I + R/(s p), memoised by the base-(s r + 1) code of the
// upper-triangular raw inner products.
class PatternMemo {
 public:
  PatternMemo(int m, std::int64_t base, double scale) : m_(m), base_(base), scale_(scale) {
    const int pairs = m * (m - 1) / 2;
    double size = 1.0;
    for (int i = 0; i < pairs; ++i) size *= static_cast<double>(base);
    if (size <= static_cast<double>(kDenseMemoLimit))
      dense_.assign(static_cast<std::size_t>(size), std::numeric_limits<double>::quiet_NaN());
    enabled_ = size < 1.8e19;
  }

  double delta(std::uint64_t code, const std::int64_t* raw_upper) {
    if (!enabled_) return compute(raw_upper);
    if (!dense_.empty()) {
      double& slot = dense_[static_cast<std::size_t>(code)];
      if (std::isnan(slot)) slot = compute(raw_upper);
      return slot;
    }
    auto [it, inserted] = sparse_.try_emplace(code, 0.0);
    if (inserted) it->second = compute(raw_upper);
    return it->second;
  }

 private:
  double compute(const std::int64_t* raw_upper) const {
    Eigen::MatrixXd g = Eigen::MatrixXd::Identity(m_, m_);
    int idx = 0;
    for (int a = 0; a < m_; ++a)
      for (int b = a + 1; b < m_; ++b) {
        g(a, b) = g(b, a) = static_cast<double>(raw_upper[idx]) * scale_;
        ++idx;
      }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(g, Eigen::EigenvaluesOnly);
    if (eig.info() != Eigen::Success) throw NumericalError("Gram eigen-decomposition failed");
    const auto& ev = eig.eigenvalues();
    return std::max(ev(m_ - 1) - 1.0, 1.0 - ev(0));
  }

  int m_;
  std::int64_t base_;
  double scale_;
  bool enabled_ = true;
  std::vector<double> dense_;
  std::unordered_map<std::uint64_t, double> sparse_;
};

struct SweepResult {
  std::uint64_t supports = 0;
  double worst_delta = -1.0;
  std::int64_t worst_rowsum = -1;
  std::vector<int> worst_support;
  std::string failure;
};

// Depth-first sweep over supports whose first element is `first`, keeping the
// pair code and the integer row sums incremental.
void sweep_from(int first, int N, int m, const Eigen::MatrixXi& raw, std::int64_t rowsum_limit,
                double bound, double scale, PatternMemo& memo, SweepResult& out) {
  constexpr double kEps = 1e-12;
  int support[kMaxOrder];
  std::uint64_t code[kMaxOrder];
  std::int64_t rowsum[kMaxOrder][kMaxOrder];
  std::int64_t upper[kMaxOrder * (kMaxOrder - 1) / 2];
  std::uint64_t weight[kMaxOrder][kMaxOrder];

  // weight[a][b] = base^(index of pair (a, b)), pairs ordered (0,1),(0,2),...
  {
    std::uint64_t w = 1;
    const auto base = static_cast<std::uint64_t>(raw.maxCoeff() + 1);
    for (int a = 0; a < m; ++a)
      for (int b = a + 1; b < m; ++b) {
        weight[a][b] = w;
        w *= base;
      }
  }
  auto pair_index = [m](int a, int b) { return a * (2 * m - a - 1) / 2 + (b - a - 1); };

  support[0] = first;
  code[0] = 0;
  rowsum[0][0] = 0;
  int depth = 1;
  int next = first + 1;

  auto evaluate_leaf = [&] {
    ++out.supports;
    std::int64_t worst_row = 0;
    for (int a = 0; a < m; ++a) worst_row = std::max(worst_row, rowsum[m - 1][a]);
    for (int a = 0; a < m; ++a)
      for (int b = a + 1; b < m; ++b) upper[pair_index(a, b)] = raw(support[a], support[b]);
    const double d = m == 1 ? 0.0 : memo.delta(code[m - 1], upper);
    const double rs_delta = static_cast<double>(worst_row) * scale;

    if (out.failure.empty()) {
      if (worst_row > rowsum_limit)
        out.failure = "off-diagonal row sum exceeds (m-1) r / p";
      else if (d > bound + kEps)
        out.failure = "Gram eigenvalues leave [1 - delta, 1 + delta]";
      else if (d > rs_delta + kEps)
        out.failure = "eigen delta exceeds the row-sum (Gershgorin) delta";
      if (!out.failure.empty()) out.worst_support.assign(support, support + m);
    }
    if (d > out.worst_delta) {
      out.worst_delta = d;
      if (out.failure.empty()) out.worst_support.assign(support, support + m);
    }
    out.worst_rowsum = std::max(out.worst_rowsum, worst_row);
  };

  if (m == 1) {
    evaluate_leaf();
    return;
  }

  for (;;) {
    if (next >= N - (m - depth - 1)) {
      // Exhausted this level: backtrack.
      if (--depth < 1) return;
      next = support[depth] + 1;
      continue;
    }
    const int c = next;
    support[depth] = c;
    std::uint64_t cd = code[depth - 1];
    std::int64_t total = 0;
    for (int a = 0; a < depth; ++a) {
      const int v = raw(support[a], c);
      cd += static_cast<std::uint64_t>(v) * weight[a][depth];
      rowsum[depth][a] = rowsum[depth - 1][a] + v;
      total += v;
    }
    rowsum[depth][depth] = total;
    code[depth] = cd;

    if (depth == m - 1) {
      evaluate_leaf();
      next = c + 1;
    } else {
      ++depth;
      next = c + 1;
    }
  }
}

}  // namespace

Theorem3Report verify_theorem3(const PolySpec& spec, Eigen::Index m, std::size_t threads,
                               std::uint64_t guard) {
  validate(spec);
  if (m < 1) throw InvalidArgument("order m must be >= 1");
  if ((m - 1) * spec.r >= spec.p) throw InvalidArgument("need m < p/r + 1");
  if (m > kMaxOrder) throw InvalidArgument("order too large for the exhaustive sweep");

  const Eigen::MatrixXi pattern = devore_pattern(spec);
  const int N = static_cast<int>(pattern.cols());
  if (m > N) throw InvalidArgument("order exceeds the column count");
  const std::uint64_t total = binomial(static_cast<std::uint64_t>(N), static_cast<std::uint64_t>(m));
  if (total > guard)
    throw GuardExceeded("C(" + std::to_string(N) + ", " + std::to_string(m) + ") = " +
                        std::to_string(total) + " supports exceeds the guard of " +
                        std::to_string(guard));

  Eigen::MatrixXi raw = pattern.transpose() * pattern;
  const std::int64_t ones = spec.s * spec.p;
  Theorem3Report report;
  report.order = m;
  report.bound = static_cast<double>((m - 1) * spec.r) / static_cast<double>(spec.p);
  report.pair_bound = spec.s * spec.r;
  report.supports = total;

  for (Eigen::Index j = 0; j < N; ++j) {
    if (raw(j, j) != ones) {
      report.pass = false;
      report.failure = "column " + std::to_string(j) + " does not have s*p ones";
      return report;
    }
    raw(j, j) = 0;
  }
  report.max_pair_inner = N > 1 ? raw.maxCoeff() : 0;
  if (report.max_pair_inner > report.pair_bound) {
    report.pass = false;
    report.failure = "a column pair shares more than s*r graph points";
  }

  const double scale = 1.0 / static_cast<double>(ones);
  const std::int64_t rowsum_limit = (m - 1) * spec.s * spec.r;
  const auto mm = static_cast<int>(m);
  const int firsts = N - mm + 1;

  threads = resolve_threads(threads);
  std::vector<SweepResult> partial(static_cast<std::size_t>(firsts));
  const std::size_t workers = std::min<std::size_t>(threads, static_cast<std::size_t>(firsts));
  // One memo per worker; each worker owns a contiguous stripe of first
  // elements so results can be merged in lexicographic order.
  parallel_for(workers, workers, [&](std::size_t w) {
    PatternMemo memo(mm, raw.maxCoeff() + 1, scale);
    for (int f = static_cast<int>(w); f < firsts; f += static_cast<int>(workers))
      sweep_from(f, N, mm, raw, rowsum_limit, report.bound, scale, memo,
                 partial[static_cast<std::size_t>(f)]);
  });

  double worst = -1.0;
  std::int64_t worst_row = 0;
  std::vector<int> worst_support;
  for (const auto& p : partial) {
    if (report.failure.empty() && !p.failure.empty()) {
      report.failure = p.failure;
      worst_support = p.worst_support;
    }
    if (p.worst_delta > worst) {
      worst = p.worst_delta;
      if (report.failure.empty()) worst_support = p.worst_support;
    }
    worst_row = std::max(worst_row, p.worst_rowsum);
  }
  report.pass = report.failure.empty();
  report.worst_delta = std::max(worst, 0.0);
  report.worst_rowsum_delta = static_cast<double>(worst_row) * scale;
  report.worst_support = SupportSet(std::vector<Eigen::Index>(worst_support.begin(), worst_support.end()), N);
  return report;
}

}  // namespace structcs
