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

#include "structcs/distribution.hpp"

#include <cmath>

#include "structcs/error.hpp"

namespace structcs {

double EntryDistribution::sample(Rng& rng) const {
  const double n = static_cast<double>(scale_rows);
  switch (kind) {
    case DistributionKind::Gaussian:
      return rng.normal() / std::sqrt(n);
    case DistributionKind::Bernoulli:
      return (rng() >> 63) ? 1.0 / std::sqrt(n) : -1.0 / std::sqrt(n);
    case DistributionKind::SparseTernary: {
      const std::uint64_t u = rng.below(6);
      if (u == 0) return std::sqrt(3.0 / n);
      if (u == 1) return -std::sqrt(3.0 / n);
      return 0.0;
    }
  }
  return 0.0;
}

void EntryDistribution::validate() const {
  if (scale_rows < 1) throw InvalidArgument("distribution scale_rows must be >= 1");
}

std::string_view to_string(DistributionKind kind) {
  switch (kind) {
    case DistributionKind::Gaussian: return "gaussian";
    case DistributionKind::Bernoulli: return "bernoulli";
    case DistributionKind::SparseTernary: return "sparse-ternary";
  }
  return "unknown";
}

DistributionKind parse_distribution_kind(std::string_view name) {
  if (name == "gaussian") return DistributionKind::Gaussian;
  if (name == "bernoulli") return DistributionKind::Bernoulli;
  if (name == "sparse-ternary" || name == "ternary") return DistributionKind::SparseTernary;
  throw InvalidArgument("unknown distribution '" + std::string(name) + "'");
}

}  // namespace structcs
