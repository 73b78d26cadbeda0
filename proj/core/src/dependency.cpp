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

#include "structcs/dependency.hpp"

#include <algorithm>
#include <unordered_map>

#include "structcs/error.hpp"

namespace structcs {

std::vector<Eigen::Index> dependent_rows(const SensingMatrix& m, const SupportSet& t,
                                         Eigen::Index row) {
  if (row < 0 || row >= m.rows()) throw InvalidArgument("row index out of range");
  if (t.indices().back() >= m.cols()) throw InvalidArgument("support index out of range");
  const VarIdMatrix& ids = m.var_id();
  std::vector<Eigen::Index> out;
  for (Eigen::Index j = 0; j < m.rows(); ++j) {
    if (j == row) continue;
    bool shared = false;
    for (Eigen::Index a : t) {
      for (Eigen::Index b : t) {
        if (ids(row, a) == ids(j, b)) {
          shared = true;
          break;
        }
      }
      if (shared) break;
    }
    if (shared) out.push_back(j);
  }
  return out;
}

Eigen::Index lemma1_bound(Eigen::Index support_size, Eigen::Index l) {
  const Eigen::Index pairs = support_size * (support_size - 1);
  return pairs < l ? pairs : l - 1;
}

std::pair<Eigen::Index, DependencyRegime> dependency_bound(const BlockStructureSpec& spec,
                                                           Eigen::Index support_size) {
  const Eigen::Index all_rows = spec.n() - 1;
  const Eigen::Index pairs = support_size * (support_size - 1);
  auto block_row_bound = [&](Eigen::Index l) -> std::pair<Eigen::Index, DependencyRegime> {
    if (pairs < l) return {pairs, DependencyRegime::PairCount};
    return {l - 1, DependencyRegime::BlockRows};
  };

  switch (spec.kind) {
    case MatrixKind::IID:
    case MatrixKind::Deterministic:
      return {0, DependencyRegime::Independent};
    case MatrixKind::ToeplitzBlock:
      return block_row_bound(spec.l);
    case MatrixKind::CirculantBlock:
      if (spec.l > spec.k) return {spec.l - 1, DependencyRegime::BlockRows};
      return block_row_bound(spec.l);
    case MatrixKind::CirculantCirculant: {
      // Rows inside an outer block share scalars, so only the shift-pair count
      // applies, and only while neither circulant wraps around.
      const bool wraps = spec.l > spec.k || spec.nested->l > spec.nested->k;
      if (wraps || pairs >= all_rows) return {all_rows, DependencyRegime::AllRows};
      return {pairs, DependencyRegime::PairCount};
    }
    case MatrixKind::CirculantCirculantBlock: {
      const Eigen::Index l_eff = spec.effective_l();
      const bool wraps = spec.l > spec.k || spec.nested->l > spec.nested->k;
      if (wraps) return {l_eff - 1, DependencyRegime::BlockRows};
      return block_row_bound(l_eff);
    }
  }
  return {all_rows, DependencyRegime::AllRows};
}

DependencyGraph dependency_graph(const SensingMatrix& m, const SupportSet& t) {
  if (t.indices().back() >= m.cols()) throw InvalidArgument("support index out of range");
  const VarIdMatrix& ids = m.var_id();
  const Eigen::Index n = m.rows();

  std::unordered_map<std::int64_t, std::vector<Eigen::Index>> rows_of;
  rows_of.reserve(static_cast<std::size_t>(n * t.size()));
  for (Eigen::Index c : t)
    for (Eigen::Index i = 0; i < n; ++i) rows_of[ids(i, c)].push_back(i);

  DependencyGraph g;
  g.adjacency.assign(static_cast<std::size_t>(n), {});
  for (auto& [label, rows] : rows_of) {
    std::sort(rows.begin(), rows.end());
    rows.erase(std::unique(rows.begin(), rows.end()), rows.end());
    for (Eigen::Index a : rows)
      for (Eigen::Index b : rows)
        if (a != b) g.adjacency[static_cast<std::size_t>(a)].push_back(b);
  }
  for (auto& adj : g.adjacency) {
    std::sort(adj.begin(), adj.end());
    adj.erase(std::unique(adj.begin(), adj.end()), adj.end());
  }
  return g;
}

Eigen::Index DependencyGraph::max_degree() const {
  Eigen::Index best = 0;
  for (const auto& adj : adjacency) best = std::max(best, static_cast<Eigen::Index>(adj.size()));
  return best;
}

bool DependencyGraph::adjacent(Eigen::Index a, Eigen::Index b) const {
  const auto& adj = adjacency[static_cast<std::size_t>(a)];
  return std::binary_search(adj.begin(), adj.end(), b);
}

namespace {

DependencyReport report_from_graph(const SupportSet& t, DependencyGraph g,
                                   std::pair<Eigen::Index, DependencyRegime> bound) {
  DependencyReport report;
  report.support = t;
  for (Eigen::Index i = 0; i < g.size(); ++i) {
    for (Eigen::Index j : g.adjacency[static_cast<std::size_t>(i)]) {
      if (j == i) throw NumericalError("dependency set contains its own row");
      if (!g.adjacent(j, i)) throw NumericalError("dependency relation is not symmetric");
    }
  }
  report.max_size = g.max_degree();
  report.per_row = std::move(g.adjacency);
  report.bound = bound.first;
  report.regime = bound.second;
  report.pass = report.max_size <= report.bound;
  return report;
}

}  // namespace

DependencyReport dependency_report(const SensingMatrix& m, const SupportSet& t) {
  return report_from_graph(t, dependency_graph(m, t), dependency_bound(m.spec(), t.size()));
}

DependencyReport verify_lemma1(const SensingMatrix& m, const SupportSet& t) {
  if (m.spec().kind != MatrixKind::ToeplitzBlock)
    throw InvalidArgument("verify_lemma1 needs a toeplitz-block matrix, got " +
                          std::string(to_string(m.spec().kind)));
  const Eigen::Index l = m.spec().l;
  const Eigen::Index pairs = t.size() * (t.size() - 1);
  const auto regime = pairs < l ? DependencyRegime::PairCount : DependencyRegime::BlockRows;
  return report_from_graph(t, dependency_graph(m, t), {lemma1_bound(t.size(), l), regime});
}

CirculantDependencyCount circulant_dependency_bound(Eigen::Index p, Eigen::Index q,
                                                   const SupportSet& t) {
  if (p < 1 || q < 1 || p > q) throw InvalidArgument("circulant dims need 1 <= p <= q");
  if (t.indices().back() >= q || t.size() > q) throw InvalidArgument("support exceeds q columns");

  std::vector<int> indicator(static_cast<std::size_t>(q), 0);
  for (Eigen::Index j : t) indicator[static_cast<std::size_t>(j)] = 1;

  // Row s of the shift matrix is sigma^s(t) with (sigma t)_j = t_{j-1}.
  // Restricted to T, row 0 is all ones, so the Hamming distance of row s to
  // row 0 is |T| minus the number of ones row s keeps on T.
  CirculantDependencyCount out;
  out.bound = t.size() * (t.size() - 1);
  for (Eigen::Index s = 1; s < p; ++s) {
    Eigen::Index kept = 0;
    for (Eigen::Index j : t) kept += indicator[static_cast<std::size_t>(((j - s) % q + q) % q)];
    const Eigen::Index hamming = t.size() - kept;
    if (hamming < t.size()) ++out.count;
  }
  return out;
}

}  // namespace structcs
