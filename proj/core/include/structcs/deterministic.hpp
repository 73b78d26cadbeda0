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
#include <string>
#include <vector>

#include "structcs/sensing_matrix.hpp"
#include "structcs/support.hpp"

namespace structcs {

// Polynomial coefficients (a_0, ..., a_r) over Z_p.
using Coefficients = std::vector<std::int64_t>;

bool is_prime(std::int64_t p);

// p^(r+1), the number of polynomials of degree <= r. Throws on overflow.
std::int64_t polynomial_count(std::int64_t p, std::int64_t r);

// The first `count` polynomials of degree <= r, ordered lexicographically on
// (a_r, ..., a_0): a_r is the most significant coefficient. Index i therefore
// has a_j = floor(i / p^j) mod p.
std::vector<Coefficients> enumerate_polynomials(std::int64_t p, std::int64_t r,
                                                std::int64_t count);

// f(x) mod p by Horner's rule.
std::int64_t evaluate_mod(std::int64_t p, const Coefficients& coeffs, std::int64_t x);

// Indicator of the graph {(x, f(x))} in Z_p x Z_p, indexed x * p + y.
struct GraphVector {
  Coefficients coeffs;
  std::vector<std::uint8_t> bits;
};

GraphVector graph_vector(std::int64_t p, const Coefficients& coeffs);

// Checks p prime, 0 < r < p, t*block_cols <= p^(r+1), and a sane size.
void validate(const PolySpec& spec);

// Number of distinct p^2 x block_cols blocks that can be cut from the
// p^(r+1) graph vectors without reusing a polynomial.
std::int64_t available_blocks(const PolySpec& spec);

// The 0/1 matrix Psi_0 (s p^2 x t block_cols). Band b of the Toeplitz-block
// layout holds the graph vectors of polynomials
// [(b mod B) * block_cols, (b mod B + 1) * block_cols), B = available_blocks.
// When t + s - 1 <= B every band is a fresh slice; otherwise slices repeat with
// period B >= t, which keeps the t blocks of each block row distinct.
Eigen::MatrixXi devore_pattern(const PolySpec& spec);

// (1/sqrt(s p)) Psi_0 with unit-norm columns.
SensingMatrix build_devore_block(const PolySpec& spec);

// The plain construction: p^2 x n_cols, scaled by 1/sqrt(p).
SensingMatrix build_devore(std::int64_t p, std::int64_t r, Eigen::Index n_cols);

struct Theorem3Report {
  bool pass = true;
  Eigen::Index order = 0;
  double bound = 0.0;               // (m-1) r / p
  double worst_delta = 0.0;         // max over T of max(lmax - 1, 1 - lmin) of G_T
  double worst_rowsum_delta = 0.0;  // max over T of the largest off-diagonal row sum
  std::int64_t max_pair_inner = 0;  // largest raw integer column inner product
  std::int64_t pair_bound = 0;      // s r
  std::uint64_t supports = 0;
  SupportSet worst_support;
  std::string failure;              // first violated check, empty when passing
};

inline constexpr std::uint64_t kTheorem3Guard = 2'000'000'000;

// For every support of size m: off-diagonal row sums of G_T (exact integers)
// against (m-1) r / p, extreme eigenvalues of G_T inside [1 - delta, 1 + delta],
// and the Gershgorin consistency eigen-delta <= row-sum delta. Eigenvalues are
// memoised per integer Gram pattern, so the check stays exact while the
// number of eigen-solves is bounded by the number of distinct patterns.
// Requires (m - 1) r < p.
Theorem3Report verify_theorem3(const PolySpec& spec, Eigen::Index m, std::size_t threads = 1,
                               std::uint64_t guard = kTheorem3Guard);

}  // namespace structcs
