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

#include <cstdint>
#include <vector>

namespace structcs {

// C(n, k), saturating at UINT64_MAX instead of overflowing.
std::uint64_t binomial(std::uint64_t n, std::uint64_t k) noexcept;

// The combination of rank `rank` (0-based, lexicographic order) among all
// k-subsets of {0, ..., n-1}.
std::vector<int> unrank_combination(int n, int k, std::uint64_t rank);

// Advances `combo` to the next k-subset in lexicographic order. Returns false
// after the last one.
bool next_combination(std::vector<int>& combo, int n);

}  // namespace structcs
