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

#include "structcs/combinatorics.hpp"

#include <limits>

#include "structcs/error.hpp"

namespace structcs {

__extension__ typedef unsigned __int128 uint128;

std::uint64_t binomial(std::uint64_t n, std::uint64_t k) noexcept {
  if (k > n) return 0;
  if (k > n - k) k = n - k;
  constexpr auto kMax = std::numeric_limits<std::uint64_t>::max();
  uint128 acc = 1;
  for (std::uint64_t i = 1; i <= k; ++i) {
    acc = acc * (n - k + i) / i;
    if (acc > kMax) return kMax;
  }
  return static_cast<std::uint64_t>(acc);
}

std::vector<int> unrank_combination(int n, int k, std::uint64_t rank) {
  if (k < 0 || k > n) throw InvalidArgument("unrank_combination: k out of range");
  std::vector<int> combo;
  combo.reserve(static_cast<std::size_t>(k));
  int next = 0;
  for (int slot = 0; slot < k; ++slot) {
    for (int v = next; v < n; ++v) {
      const std::uint64_t below = binomial(static_cast<std::uint64_t>(n - v - 1),
                                           static_cast<std::uint64_t>(k - slot - 1));
      if (rank < below) {
        combo.push_back(v);
        next = v + 1;
        break;
      }
      rank -= below;
    }
  }
  if (static_cast<int>(combo.size()) != k)
    throw InvalidArgument("unrank_combination: rank out of range");
  return combo;
}

bool next_combination(std::vector<int>& combo, int n) {
  const int k = static_cast<int>(combo.size());
  int i = k - 1;
  while (i >= 0 && combo[i] == n - k + i) --i;
  if (i < 0) return false;
  ++combo[i];
  for (int j = i + 1; j < k; ++j) combo[j] = combo[j - 1] + 1;
  return true;
}

}  // namespace structcs
