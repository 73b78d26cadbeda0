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
#include <string>
#include <vector>

#include "structcs/dependency.hpp"

namespace structcs {

// Disjoint row classes C_1..C_q covering every row, each an independent set
// of the dependency graph, with sizes floor(n/q) or ceil(n/q).
struct ColoringPartition {
  std::vector<std::vector<Eigen::Index>> classes;

  Eigen::Index q() const noexcept { return static_cast<Eigen::Index>(classes.size()); }
};

// Empty string when `p` is a valid equitable colouring of `g`, otherwise a
// description of the first problem found.
std::string coloring_violation(const DependencyGraph& g, const ColoringPartition& p);

// Greedy colouring followed by balancing moves along chains of classes.
// Hajnal-Szemeredi guarantees existence for q >= max_degree + 1 but this
// procedure is not guaranteed to find one; if it gets stuck, or the result
// fails the post-hoc check, ColoringFailure is thrown.
ColoringPartition equitable_coloring(const DependencyGraph& g, Eigen::Index q);

// q = |T|(|T|-1) + 1 colours on the row-dependency graph of Phi_T.
ColoringPartition equitable_coloring(const SensingMatrix& m, const SupportSet& t);

}  // namespace structcs
