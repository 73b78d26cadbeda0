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

#include <doctest.h>

#include <algorithm>
#include <set>

#include "structcs/coloring.hpp"
#include "structcs/combinatorics.hpp"
#include "structcs/dependency.hpp"
#include "structcs/error.hpp"

using namespace structcs;

namespace {

// Rows j != i whose label sets on T intersect row i's.
std::vector<Eigen::Index> label_scan(const SensingMatrix& m, const SupportSet& t, Eigen::Index i) {
  std::set<std::int64_t> mine;
  for (Eigen::Index c : t) mine.insert(m.var_id()(i, c));
  std::vector<Eigen::Index> out;
  for (Eigen::Index j = 0; j < m.rows(); ++j) {
    if (j == i) continue;
    for (Eigen::Index c : t)
      if (mine.count(m.var_id()(j, c))) {
        out.push_back(j);
        break;
      }
  }
  return out;
}

}  // namespace

TEST_SUITE("dependency") {

TEST_CASE("support sets are sorted, distinct and in range") {
  const SupportSet t({5, 1, 3}, 6);
  CHECK(t.indices() == std::vector<Eigen::Index>{1, 3, 5});
  CHECK(t.to_string() == "{1,3,5}");
  CHECK_THROWS_AS(SupportSet({1, 1}, 4), InvalidArgument);
  CHECK_THROWS_AS(SupportSet({4}, 4), InvalidArgument);
  CHECK_THROWS_AS(SupportSet(std::vector<Eigen::Index>{}, 4), InvalidArgument);
}

TEST_CASE("iid rows are independent") {
  const auto m = sample_iid(6, 8, {DistributionKind::Gaussian, 6}, 1);
  const SupportSet t({0, 4, 7}, 8);
  for (Eigen::Index i = 0; i < 6; ++i) CHECK(dependent_rows(m, t, i).empty());
  const auto rep = dependency_report(m, t);
  CHECK(rep.max_size == 0);
  CHECK(rep.pass);
}

TEST_CASE("l = 1 toeplitz block rows are independent") {
  const auto m = build_structured(toeplitz_block_spec(5, 1, 4, 2, {DistributionKind::Gaussian, 4}, 2));
  const SupportSet t({0, 3, 9}, 10);
  for (Eigen::Index i = 0; i < 4; ++i) CHECK(dependent_rows(m, t, i).empty());
}

TEST_CASE("4x4 scalar toeplitz, T = {1, 2}, row 1 matches the label scan") {
  const auto m = build_structured(toeplitz_block_spec(4, 4, 1, 1, {DistributionKind::Gaussian, 4}, 3));
  const SupportSet t({1, 2}, 4);
  const auto got = dependent_rows(m, t, 1);
  CHECK(got == label_scan(m, t, 1));
  // Row 1 holds bands {1, 0} on columns {1, 2}; row 0 holds {0, -1}, row 2 {2, 1}.
  CHECK(got == std::vector<Eigen::Index>{0, 2});
  CHECK_THROWS_AS(dependent_rows(m, t, 4), InvalidArgument);
}

TEST_CASE("dependency bound regimes") {
  CHECK(lemma1_bound(3, 2) == 1);     // 6 >= l: l - 1
  CHECK(lemma1_bound(3, 100) == 6);   // 6 < l: |T|(|T|-1)
  CHECK(lemma1_bound(1, 5) == 0);
  const auto small = build_structured(toeplitz_block_spec(6, 2, 2, 1, {}, 1));
  const auto rep = verify_lemma1(small, SupportSet({0, 2, 5}, 6));
  CHECK(rep.bound == 1);
  CHECK(rep.regime == DependencyRegime::BlockRows);
  CHECK(rep.pass);
  const auto big = build_structured(toeplitz_block_spec(6, 100, 1, 1, {}, 1));
  const auto rep2 = verify_lemma1(big, SupportSet({0, 2, 5}, 6));
  CHECK(rep2.bound == 6);
  CHECK(rep2.regime == DependencyRegime::PairCount);
  CHECK(rep2.pass);
  CHECK_THROWS_AS(verify_lemma1(sample_iid(3, 3, {}, 1), SupportSet({0}, 3)), InvalidArgument);
}

TEST_CASE("dependency bound holds on every small support, brute-force cross-checked") {
  for (Eigen::Index l : {1, 2, 3, 5}) {
    const auto m = build_structured(toeplitz_block_spec(5, l, 2, 2, {}, 4));
    for (int size = 1; size <= 3; ++size) {
      std::vector<int> combo(static_cast<std::size_t>(size));
      for (int i = 0; i < size; ++i) combo[static_cast<std::size_t>(i)] = i;
      do {
        const SupportSet t(std::vector<Eigen::Index>(combo.begin(), combo.end()), 10);
        const auto rep = verify_lemma1(m, t);
        CHECK(rep.pass);
        for (Eigen::Index i = 0; i < m.rows(); ++i)
          CHECK(rep.per_row[static_cast<std::size_t>(i)] == label_scan(m, t, i));
      } while (next_combination(combo, 10));
    }
  }
}

TEST_CASE("report symmetry and irreflexivity") {
  const auto m = build_structured(circulant_block_spec(4, 7, 1, 2, {}, 5));
  const auto rep = dependency_report(m, SupportSet({1, 4, 6}, 8));
  for (std::size_t i = 0; i < rep.per_row.size(); ++i)
    for (Eigen::Index j : rep.per_row[i]) {
      CHECK(j != static_cast<Eigen::Index>(i));
      const auto& back = rep.per_row[static_cast<std::size_t>(j)];
      CHECK(std::find(back.begin(), back.end(), static_cast<Eigen::Index>(i)) != back.end());
    }
}

TEST_CASE("circulant block dependency stays within the toeplitz count") {
  // The count for circulant blocks is claimed to match the Toeplitz case;
  // checked here on every support of size <= 3 with l <= k.
  for (Eigen::Index l : {2, 3, 4}) {
    const auto m = build_structured(circulant_block_spec(6, l, 1, 1, {}, 6));
    for (int size = 1; size <= 3; ++size) {
      std::vector<int> combo(static_cast<std::size_t>(size));
      for (int i = 0; i < size; ++i) combo[static_cast<std::size_t>(i)] = i;
      do {
        const SupportSet t(std::vector<Eigen::Index>(combo.begin(), combo.end()), 6);
        const auto rep = dependency_report(m, t);
        CHECK(rep.max_size <= lemma1_bound(size, l));
      } while (next_combination(combo, 6));
    }
  }
}

TEST_CASE("circulant shift counts") {
  CHECK(circulant_dependency_bound(5, 5, SupportSet({2}, 5)).count == 0);
  const auto c = circulant_dependency_bound(4, 4, SupportSet({0, 1}, 4));
  // Restricted to T = {0, 1}, the shifts 0110, 0011, 1001 read 01, 00, 10:
  // distances 1, 2, 1 from the all-ones first row.
  CHECK(c.count <= 2);
  CHECK(c.count == 2);
  CHECK(c.pass());
  std::vector<int> combo{0, 1, 2};
  do {
    const SupportSet t(std::vector<Eigen::Index>(combo.begin(), combo.end()), 8);
    CHECK(circulant_dependency_bound(8, 8, t).count <= 6);
  } while (next_combination(combo, 8));
  CHECK_THROWS_AS(circulant_dependency_bound(5, 4, SupportSet({0}, 4)), InvalidArgument);
}

TEST_CASE("circulant shift count matches the label-based count") {
  for (Eigen::Index p : {4, 6, 7}) {
    const auto m = build_structured(circulant_block_spec(p, p, 1, 1, {}, 9));
    std::vector<int> combo{0, 1};
    do {
      const SupportSet t(std::vector<Eigen::Index>(combo.begin(), combo.end()), p);
      const auto c = circulant_dependency_bound(p, p, t);
      CHECK(static_cast<Eigen::Index>(dependent_rows(m, t, 0).size()) == c.count);
    } while (next_combination(combo, static_cast<int>(p)));
  }
}

TEST_CASE("edgeless graph: n = 10, q = 3 gives sizes {4, 3, 3}") {
  DependencyGraph g;
  g.adjacency.assign(10, {});
  const auto part = equitable_coloring(g, 3);
  std::vector<std::size_t> sizes;
  for (const auto& c : part.classes) sizes.push_back(c.size());
  std::sort(sizes.begin(), sizes.end());
  CHECK(sizes == std::vector<std::size_t>{3, 3, 4});
  CHECK(coloring_violation(g, part).empty());
}

TEST_CASE("path on four vertices, q = 2: alternating classes") {
  DependencyGraph g;
  g.adjacency = {{1}, {0, 2}, {1, 3}, {2}};
  auto part = equitable_coloring(g, 2);
  for (auto& c : part.classes) std::sort(c.begin(), c.end());
  std::sort(part.classes.begin(), part.classes.end());
  CHECK(part.classes == std::vector<std::vector<Eigen::Index>>{{0, 2}, {1, 3}});
}

TEST_CASE("scalar toeplitz 64x128, |T| = 3, q = 7") {
  const auto m = build_structured(toeplitz_block_spec(128, 64, 1, 1, {}, 10));
  const SupportSet t({5, 40, 41}, 128);
  const auto g = dependency_graph(m, t);
  CHECK(g.max_degree() <= 6);
  const auto part = equitable_coloring(m, t);
  CHECK(part.q() == 7);
  CHECK(coloring_violation(g, part).empty());
}

TEST_CASE("invalid partitions are reported, impossible colourings throw") {
  DependencyGraph g;
  g.adjacency = {{1}, {0}};
  ColoringPartition bad;
  bad.classes = {{0, 1}};
  CHECK_FALSE(coloring_violation(g, bad).empty());
  // A triangle cannot be 2-coloured.
  DependencyGraph tri;
  tri.adjacency = {{1, 2}, {0, 2}, {0, 1}};
  CHECK_THROWS_AS(equitable_coloring(tri, 2), ColoringFailure);
}

}  // TEST_SUITE
