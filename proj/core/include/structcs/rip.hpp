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
#include <cstdint>

#include "structcs/support.hpp"

namespace structcs {

enum class RipMethod { Exhaustive, MonteCarlo };

struct RipEstimate {
  Eigen::Index order = 0;
  double delta = 0.0;
  RipMethod method = RipMethod::Exhaustive;
  std::uint64_t samples = 0;  // supports evaluated
  SupportSet worst_support;
};

// Default cap on C(N, m) for the exhaustive sweep.
inline constexpr std::uint64_t kExhaustiveGuard = 1'000'000;

// max(lambda_max - 1, 1 - lambda_min) of the Gram matrix Phi_T^T Phi_T.
double delta_for_support(const Eigen::MatrixXd& phi, const SupportSet& t);

// Same quantity from the extreme singular values of Phi_T (independent route).
double delta_for_support_svd(const Eigen::MatrixXd& phi, const SupportSet& t);

// Exact delta_m: maximum over every support of size exactly m. Ties resolve
// to the lexicographically first support, so any thread count gives the same
// answer. Throws GuardExceeded when C(N, m) > guard.
RipEstimate delta_exhaustive(const Eigen::MatrixXd& phi, Eigen::Index m, std::size_t threads = 1,
                             std::uint64_t guard = kExhaustiveGuard);

// Maximum over `samples` uniformly random size-m supports; a lower bound on
// delta_m.
RipEstimate delta_monte_carlo(const Eigen::MatrixXd& phi, Eigen::Index m, std::uint64_t samples,
                              std::uint64_t seed);

// max_{i != j} |<c_i, c_j>| / (|c_i| |c_j|). Throws on a zero column.
double coherence(const Eigen::MatrixXd& phi);

}  // namespace structcs
