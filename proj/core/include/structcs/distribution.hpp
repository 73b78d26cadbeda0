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
#include <string_view>

#include "structcs/rng.hpp"

namespace structcs {

enum class DistributionKind { Gaussian, Bernoulli, SparseTernary };

// One of the three zero-mean entry laws with variance 1/scale_rows:
//   Gaussian       N(0, 1/n)
//   Bernoulli      +-1/sqrt(n), each with probability 1/2
//   SparseTernary  +-sqrt(3/n) with probability 1/6 each, 0 with probability 2/3
struct EntryDistribution {
  DistributionKind kind = DistributionKind::Bernoulli;
  Eigen::Index scale_rows = 1;

  double sample(Rng& rng) const;
  void validate() const;

  friend bool operator==(const EntryDistribution&, const EntryDistribution&) = default;
};

std::string_view to_string(DistributionKind kind);
// Accepts "gaussian", "bernoulli", "sparse-ternary" (and "ternary").
DistributionKind parse_distribution_kind(std::string_view name);

}  // namespace structcs
