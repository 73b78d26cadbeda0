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

#include "structcs/coloring.hpp"

#include <algorithm>
#include <deque>
#include <limits>

#include "structcs/error.hpp"

namespace structcs {

namespace {

using Classes = std::vector<std::vector<Eigen::Index>>;

bool has_neighbour_in(const DependencyGraph& g, Eigen::Index v, const std::vector<int>& color,
                      int c) {
  for (Eigen::Index u : g.adjacency[static_cast<std::size_t>(v)])
    if (color[static_cast<std::size_t>(u)] == c) return true;
  return false;
}

// A vertex of class `from` that can move to class `to`, or -1.
Eigen::Index movable(const DependencyGraph& g, const Classes& classes,
                     const std::vector<int>& color, int from, int to) {
  for (Eigen::Index v : classes[static_cast<std::size_t>(from)])
    if (!has_neighbour_in(g, v, color, to)) return v;
  return -1;
}

void move_vertex(Classes& classes, std::vector<int>& color, Eigen::Index v, int to) {
  auto& src = classes[static_cast<std::size_t>(color[static_cast<std::size_t>(v)])];
  src.erase(std::find(src.begin(), src.end(), v));
  classes[static_cast<std::size_t>(to)].push_back(v);
  color[static_cast<std::size_t>(v)] = to;
}

}  // namespace

std::string coloring_violation(const DependencyGraph& g, const ColoringPartition& p) {
  const Eigen::Index n = g.size();
  if (p.q() < 1) return "no colour classes";
  std::vector<int> seen(static_cast<std::size_t>(n), -1);
  for (Eigen::Index c = 0; c < p.q(); ++c) {
    for (Eigen::Index v : p.classes[static_cast<std::size_t>(c)]) {
      if (v < 0 || v >= n) return "vertex out of range";
      if (seen[static_cast<std::size_t>(v)] != -1) return "vertex in two classes";
      seen[static_cast<std::size_t>(v)] = static_cast<int>(c);
    }
  }
  for (Eigen::Index v = 0; v < n; ++v)
    if (seen[static_cast<std::size_t>(v)] == -1) return "vertex " + std::to_string(v) + " uncoloured";
  for (Eigen::Index v = 0; v < n; ++v)
    for (Eigen::Index u : g.adjacency[static_cast<std::size_t>(v)])
      if (seen[static_cast<std::size_t>(u)] == seen[static_cast<std::size_t>(v)])
        return "dependent rows " + std::to_string(v) + " and " + std::to_string(u) + " share a class";
  const Eigen::Index lo = n / p.q(), hi = (n + p.q() - 1) / p.q();
  for (const auto& cls : p.classes) {
    const auto size = static_cast<Eigen::Index>(cls.size());
    if (size < lo || size > hi) return "class size " + std::to_string(size) + " is not equitable";
  }
  return {};
}

ColoringPartition equitable_coloring(const DependencyGraph& g, Eigen::Index q) {
  if (q < 1) throw InvalidArgument("need at least one colour");
  const Eigen::Index n = g.size();
  const int colors = static_cast<int>(q);
  Classes classes(static_cast<std::size_t>(q));
  std::vector<int> color(static_cast<std::size_t>(n), -1);

  // Greedy: smallest conflict-free class, lowest index on ties.
  for (Eigen::Index v = 0; v < n; ++v) {
    int best = -1;
    for (int c = 0; c < colors; ++c) {
      if (has_neighbour_in(g, v, color, c)) continue;
      if (best == -1 || classes[static_cast<std::size_t>(c)].size() <
                            classes[static_cast<std::size_t>(best)].size())
        best = c;
    }
    if (best == -1)
      throw ColoringFailure("row " + std::to_string(v) + " conflicts with every colour class");
    classes[static_cast<std::size_t>(best)].push_back(v);
    color[static_cast<std::size_t>(v)] = best;
  }

  // Balance: shift one vertex along a chain of classes from a largest class
  // to one at least two smaller. Sizes of inner classes on the chain are
  // unchanged, so sum of squared sizes strictly drops each round.
  for (;;) {
    std::size_t largest = 0, smallest = std::numeric_limits<std::size_t>::max();
    for (const auto& cls : classes) {
      largest = std::max(largest, cls.size());
      smallest = std::min(smallest, cls.size());
    }
    if (largest - smallest <= 1) break;

    std::vector<int> parent(static_cast<std::size_t>(q), -2);
    std::vector<Eigen::Index> via(static_cast<std::size_t>(q), -1);
    std::deque<int> frontier;
    for (int c = 0; c < colors; ++c) {
      if (classes[static_cast<std::size_t>(c)].size() == largest) {
        parent[static_cast<std::size_t>(c)] = -1;
        frontier.push_back(c);
      }
    }
    int target = -1;
    while (!frontier.empty() && target == -1) {
      const int from = frontier.front();
      frontier.pop_front();
      for (int to = 0; to < colors; ++to) {
        if (parent[static_cast<std::size_t>(to)] != -2) continue;
        const Eigen::Index v = movable(g, classes, color, from, to);
        if (v < 0) continue;
        parent[static_cast<std::size_t>(to)] = from;
        via[static_cast<std::size_t>(to)] = v;
        if (classes[static_cast<std::size_t>(to)].size() + 2 <= largest) {
          target = to;
          break;
        }
        frontier.push_back(to);
      }
    }
    if (target == -1)
      throw ColoringFailure("balancing is stuck: no movable chain from a largest class");

    // Walk the chain back from the target, moving each witness forward.
    std::vector<std::pair<Eigen::Index, int>> moves;
    for (int c = target; parent[static_cast<std::size_t>(c)] != -1; c = parent[static_cast<std::size_t>(c)])
      moves.emplace_back(via[static_cast<std::size_t>(c)], c);
    for (auto it = moves.rbegin(); it != moves.rend(); ++it) move_vertex(classes, color, it->first, it->second);
  }

  ColoringPartition out;
  out.classes = std::move(classes);
  for (auto& cls : out.classes) std::sort(cls.begin(), cls.end());
  if (const std::string problem = coloring_violation(g, out); !problem.empty())
    throw ColoringFailure("equitable colouring check failed: " + problem);
  return out;
}

ColoringPartition equitable_coloring(const SensingMatrix& m, const SupportSet& t) {
  const Eigen::Index q = t.size() * (t.size() - 1) + 1;
  return equitable_coloring(dependency_graph(m, t), q);
}

}  // namespace structcs
