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

#pragma once

#include <Eigen/Core>
#include <vector>

#include "structcs/sensing_matrix.hpp"
#include "structcs/support.hpp"

namespace structcs {

// Which inequality produced DependencyReport::bound.
enum class DependencyRegime {
  Independent,  // no shared variables are possible (IID, deterministic)
  PairCount,    // |T|(|T|-1), when that is below the number of block rows
  BlockRows,    // one dependent row per other block row: l - 1
  AllRows,      // trivial n - 1 (wrap-around layouts)
};

struct DependencyReport {
  SupportSet support;
  // per_row[i] = D_{T,i}: rows j != i of Phi_T sharing a variable with row i.
  std::vector<std::vector<Eigen::Index>> per_row;
  Eigen::Index max_size = 0;
  Eigen::Index bound = 0;
  DependencyRegime regime = DependencyRegime::Independent;
  bool pass = true;
};

// D_{T,i}, computed exactly from the var_id provenance.
std::vector<Eigen::Index> dependent_rows(const SensingMatrix& m, const SupportSet& t,
                                         Eigen::Index row);

// |T|(|T|-1) if that is < l, otherwise l - 1.
Eigen::Index lemma1_bound(Eigen::Index support_size, Eigen::Index l);

// The bound that applies to a layout, together with its regime.
std::pair<Eigen::Index, DependencyRegime> dependency_bound(const BlockStructureSpec& spec,
                                                           Eigen::Index support_size);

// All D_{T,i} for any layout, checked against dependency_bound. Symmetry and
// irreflexivity are asserted; a violation throws NumericalError.
DependencyReport dependency_report(const SensingMatrix& m, const SupportSet& t);

// Toeplitz-block only: the dependency sets against lemma1_bound(|T|, l).
DependencyReport verify_lemma1(const SensingMatrix& m, const SupportSet& t);

struct CirculantDependencyCount {
  Eigen::Index count = 0;  // rows at Hamming distance < |T| from the first row
  Eigen::Index bound = 0;  // |T|(|T|-1)
  bool pass() const noexcept { return count <= bound; }
};

// Dependent rows of a p x q truncated circulant restricted to T, counted with
// the shift matrix of the indicator tuple of T (right shifts sigma^s,
// s = 1..p-1) and the Hamming distance to the unshifted row. Requires p <= q.
CirculantDependencyCount circulant_dependency_bound(Eigen::Index p, Eigen::Index q,
                                                   const SupportSet& t);

// Undirected row-dependency graph of Phi_T.
struct DependencyGraph {
  std::vector<std::vector<Eigen::Index>> adjacency;

  Eigen::Index size() const noexcept { return static_cast<Eigen::Index>(adjacency.size()); }
  Eigen::Index max_degree() const;
  bool adjacent(Eigen::Index a, Eigen::Index b) const;
};

DependencyGraph dependency_graph(const SensingMatrix& m, const SupportSet& t);

}  // namespace structcs
