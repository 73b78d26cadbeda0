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

#include "lp_oracle.hpp"

#include <cmath>
#include <limits>
#include <vector>

namespace oracle {

namespace {

constexpr double kEps = 1e-11;

// Tableau rows 0..m-1 are constraints, row m is the objective (reduced costs,
// with -objective value in the last column).
struct Tableau {
  Eigen::MatrixXd t;
  std::vector<int> basis;

  int rows() const { return static_cast<int>(t.rows()) - 1; }
  int cols() const { return static_cast<int>(t.cols()) - 1; }

  void pivot(int r, int c) {
    t.row(r) /= t(r, c);
    for (int i = 0; i <= rows(); ++i)
      if (i != r && t(i, c) != 0.0) t.row(i) -= t(i, c) * t.row(r);
    basis[static_cast<std::size_t>(r)] = c;
  }

  // Bland's rule over the columns allowed by `usable`. Returns false when unbounded.
  template <class Usable>
  bool run(Usable usable) {
    for (;;) {
      int enter = -1;
      for (int j = 0; j < cols(); ++j)
        if (usable(j) && t(rows(), j) < -kEps) {
          enter = j;
          break;
        }
      if (enter < 0) return true;
      int leave = -1;
      double best = std::numeric_limits<double>::infinity();
      for (int i = 0; i < rows(); ++i) {
        if (t(i, enter) > kEps) {
          const double ratio = t(i, cols()) / t(i, enter);
          if (ratio < best - kEps ||
              (leave >= 0 && std::abs(ratio - best) <= kEps && basis[static_cast<std::size_t>(i)] <
                                                     basis[static_cast<std::size_t>(leave)])) {
            best = ratio;
            leave = i;
          }
        }
      }
      if (leave < 0) return false;
      pivot(leave, enter);
    }
  }
};

}  // namespace

LpSolution l1_minimize(const Eigen::MatrixXd& a, const Eigen::VectorXd& y) {
  const int m = static_cast<int>(a.rows());
  const int N = static_cast<int>(a.cols());
  const int vars = 2 * N;       // u, v
  const int total = vars + m;   // plus artificials

  Tableau tab;
  tab.t = Eigen::MatrixXd::Zero(m + 1, total + 1);
  tab.basis.assign(static_cast<std::size_t>(m), 0);
  for (int i = 0; i < m; ++i) {
    const double sign = y(i) < 0.0 ? -1.0 : 1.0;
    tab.t.block(i, 0, 1, N) = sign * a.row(i);
    tab.t.block(i, N, 1, N) = -sign * a.row(i);
    tab.t(i, vars + i) = 1.0;
    tab.t(i, total) = sign * y(i);
    tab.basis[static_cast<std::size_t>(i)] = vars + i;
  }

  // Phase 1: minimise the sum of artificials.
  for (int i = 0; i < m; ++i) tab.t.row(m) -= tab.t.row(i);
  for (int i = 0; i < m; ++i) tab.t(m, vars + i) = 0.0;
  tab.run([](int) { return true; });

  LpSolution sol;
  if (-tab.t(m, total) > 1e-9 * std::max(1.0, y.lpNorm<1>())) return sol;
  sol.feasible = true;

  // Drive remaining zero-level artificials out of the basis.
  for (int i = 0; i < m; ++i) {
    if (tab.basis[static_cast<std::size_t>(i)] < vars) continue;
    for (int j = 0; j < vars; ++j)
      if (std::abs(tab.t(i, j)) > 1e-9) {
        tab.pivot(i, j);
        break;
      }
  }

  // Phase 2: objective sum(u) + sum(v), artificials barred from entering.
  tab.t.row(m).setZero();
  tab.t.block(m, 0, 1, vars).setOnes();
  for (int i = 0; i < m; ++i) {
    const int b = tab.basis[static_cast<std::size_t>(i)];
    if (b < vars) tab.t.row(m) -= tab.t.row(i);
  }
  tab.run([vars](int j) { return j < vars; });

  Eigen::VectorXd z = Eigen::VectorXd::Zero(total);
  for (int i = 0; i < m; ++i) z(tab.basis[static_cast<std::size_t>(i)]) = tab.t(i, total);
  sol.x = z.head(N) - z.segment(N, N);
  sol.objective = sol.x.lpNorm<1>();
  return sol;
}

}  // namespace oracle
