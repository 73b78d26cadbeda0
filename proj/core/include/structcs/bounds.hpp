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
#include <optional>
#include <string_view>

namespace structcs {

// Constants and sizes for the closed-form recovery bounds. `delta` is the
// isometry constant of order 3m; `l` the number of block rows (l1*l2 for the
// nested circulant layout).
struct BoundParams {
  double c0 = 0.0;
  double c2 = 0.0;
  double delta = 0.5;
  std::int64_t m = 1;
  std::int64_t N = 1;
  std::int64_t n = 1;
  std::int64_t l = 1;
  std::int64_t d = 1;

  // Throws InvalidArgument unless delta in (0,1), counts >= 1, 0 < c2 < c0.
  void validate() const;
};

// c0(delta) = delta^2/16 - delta^3/48, the concentration constant imported
// for the three entry laws. Not derived here; callers may override it.
double default_c0(double delta);
// c0 / 10.
double default_c2(double c0);

// Params with c0/c2 filled from the defaults when not given.
BoundParams make_bound_params(double delta, std::int64_t m, std::int64_t N, std::int64_t n,
                              std::int64_t l, std::optional<double> c0 = std::nullopt,
                              std::optional<double> c2 = std::nullopt);

// f(n, m, delta) = c0 n - m ln(12/delta) - ln 2.
double concentration_exponent(double n, double m, double delta, double c0);

// max(0, 1 - exp(-f(d, m, delta) + ln l)): one order-m support, l block rows.
double lemma2_probability(double d, double m, double delta, double l, double c0);

// q = m(m-1) + 1; max(0, 1 - exp(-f(floor(n/q), m, delta) + ln q)).
double lemma3_probability(std::int64_t n, std::int64_t m, double delta, double c0);

enum class BoundRegime { SmallL, LargeL };
std::string_view to_string(BoundRegime regime);

struct BoundResult {
  BoundRegime regime = BoundRegime::SmallL;
  double c1 = 0.0;
  // Exponent of the guarantee: -c2 n / l (SmallL) or -c2 n / m^2 (LargeL).
  double exponent = 0.0;
  // 1 - exp(exponent) when n >= n_required, else 0.
  double prob_lower = 0.0;
  std::int64_t n_required = 0;
  // True when n < n_required, i.e. the guarantee does not apply.
  bool vacuous = false;
};

// Regime SmallL when l <= 3m(3m-1):
//   c1 = (3 ln(12/delta) + 15) / (c0 - c2), n_required = ceil(c1 l m ln(N/m)).
// Regime LargeL otherwise:
//   c3 = ln(12/delta) + ln 2 + c0 + 4, c1 = 27 c3 / (c0 - 9 c2) taken as a
//   strict lower limit, n_required = floor(c1 m^3 ln(N/m)) + 1.
// Throws InvalidArgument if c0 <= c2 (SmallL) or c0 <= 9 c2 (LargeL).
BoundResult theorem1_bound(const BoundParams& params);

// theorem1_bound with l = l1 * l2.
BoundResult corollary_bound(BoundParams params, std::int64_t l1, std::int64_t l2);

}  // namespace structcs
