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

#include "structcs/bounds.hpp"

#include <cmath>
#include <limits>

#include "structcs/error.hpp"

namespace structcs {

void BoundParams::validate() const {
  if (!(delta > 0.0 && delta < 1.0)) throw InvalidArgument("delta must lie in (0, 1)");
  if (m < 1 || N < 1 || n < 1 || l < 1 || d < 1)
    throw InvalidArgument("m, N, n, l, d must all be >= 1");
  if (m > N) throw InvalidArgument("sparsity m cannot exceed N");
  if (!(c0 > 0.0)) throw InvalidArgument("c0 must be positive");
  if (!(c2 > 0.0 && c2 < c0)) throw InvalidArgument("c2 must lie in (0, c0)");
}

double default_c0(double delta) {
  return delta * delta / 16.0 - delta * delta * delta / 48.0;
}

double default_c2(double c0) { return c0 / 10.0; }

BoundParams make_bound_params(double delta, std::int64_t m, std::int64_t N, std::int64_t n,
                              std::int64_t l, std::optional<double> c0,
                              std::optional<double> c2) {
  BoundParams p;
  p.delta = delta;
  p.m = m;
  p.N = N;
  p.n = n;
  p.l = l;
  p.d = l > 0 && n >= l ? n / l : 1;
  p.c0 = c0.value_or(default_c0(delta));
  p.c2 = c2.value_or(default_c2(p.c0));
  p.validate();
  return p;
}

double concentration_exponent(double n, double m, double delta, double c0) {
  return c0 * n - m * std::log(12.0 / delta) - std::log(2.0);
}

namespace {

double clamp_probability(double one_minus) {
  if (!(one_minus > 0.0)) return 0.0;
  return one_minus > 1.0 ? 1.0 : one_minus;
}

}  // namespace

double lemma2_probability(double d, double m, double delta, double l, double c0) {
  return clamp_probability(1.0 - std::exp(-concentration_exponent(d, m, delta, c0) + std::log(l)));
}

double lemma3_probability(std::int64_t n, std::int64_t m, double delta, double c0) {
  const std::int64_t q = m * (m - 1) + 1;
  const auto rows = static_cast<double>(n / q);
  return clamp_probability(
      1.0 - std::exp(-concentration_exponent(rows, static_cast<double>(m), delta, c0) +
                     std::log(static_cast<double>(q))));
}

std::string_view to_string(BoundRegime regime) {
  return regime == BoundRegime::SmallL ? "small_l" : "large_l";
}

BoundResult theorem1_bound(const BoundParams& params) {
  params.validate();
  const double m = static_cast<double>(params.m);
  const double n = static_cast<double>(params.n);
  const double l = static_cast<double>(params.l);
  const double log_ratio = std::log(static_cast<double>(params.N) / m);
  const double log12 = std::log(12.0 / params.delta);

  BoundResult out;
  if (params.l <= 3 * params.m * (3 * params.m - 1)) {
    out.regime = BoundRegime::SmallL;
    out.c1 = (3.0 * log12 + 15.0) / (params.c0 - params.c2);
    out.exponent = -params.c2 * n / l;
    out.n_required = static_cast<std::int64_t>(std::ceil(out.c1 * l * m * log_ratio));
  } else {
    if (!(params.c0 > 9.0 * params.c2))
      throw InvalidArgument("large-l regime needs c0 > 9 c2");
    out.regime = BoundRegime::LargeL;
    const double c3 = log12 + std::log(2.0) + params.c0 + 4.0;
    out.c1 = 27.0 * c3 / (params.c0 - 9.0 * params.c2);
    out.exponent = -params.c2 * n / (m * m);
    out.n_required = static_cast<std::int64_t>(std::floor(out.c1 * m * m * m * log_ratio)) + 1;
  }
  out.vacuous = params.n < out.n_required;
  out.prob_lower = out.vacuous ? 0.0 : clamp_probability(1.0 - std::exp(out.exponent));
  return out;
}

BoundResult corollary_bound(BoundParams params, std::int64_t l1, std::int64_t l2) {
  if (l1 < 1 || l2 < 1) throw InvalidArgument("l1 and l2 must be >= 1");
  params.l = l1 * l2;
  return theorem1_bound(params);
}

}  // namespace structcs
