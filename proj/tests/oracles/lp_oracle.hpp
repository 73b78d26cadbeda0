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

namespace oracle {

struct LpSolution {
  bool feasible = false;
  double objective = 0.0;
  Eigen::VectorXd x;
};

// min ||x||_1 subject to A x = y, through the standard split x = u - v with
// u, v >= 0, solved by a dense two-phase simplex with Bland's rule. Meant for
// small instances only (a few dozen columns).
LpSolution l1_minimize(const Eigen::MatrixXd& a, const Eigen::VectorXd& y);

}  // namespace oracle
