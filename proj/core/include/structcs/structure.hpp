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
#include <optional>
#include <string>
#include <string_view>

#include "structcs/distribution.hpp"

namespace structcs {

enum class MatrixKind {
  IID,
  ToeplitzBlock,
  CirculantBlock,
  CirculantCirculant,
  CirculantCirculantBlock,
  Deterministic,
};

std::string_view to_string(MatrixKind kind);
MatrixKind parse_matrix_kind(std::string_view name);

// Inner circulant-block grid of a circulant-circulant matrix: each outer
// block is itself a circulant-block arrangement of k x l IID blocks of size
// d x e. The plain circulant-circulant case is d = e = 1 (scalar circulant
// with k free values and l rows).
struct NestedSpec {
  Eigen::Index k = 1;
  Eigen::Index l = 1;
  Eigen::Index d = 1;
  Eigen::Index e = 1;

  friend bool operator==(const NestedSpec&, const NestedSpec&) = default;
};

// Parameters of the polynomial construction over Z_p. Columns are graph
// vectors of polynomials of degree <= r; t x s blocks of `block_cols`
// columns each.
struct PolySpec {
  std::int64_t p = 2;
  std::int64_t r = 1;
  Eigen::Index t = 1;
  Eigen::Index s = 1;
  Eigen::Index block_cols = 1;

  friend bool operator==(const PolySpec&, const PolySpec&) = default;
};

// Declarative description of a sensing matrix.
//
// The block grid has l block-rows and k block-columns of d x e blocks, so the
// full matrix is (l*d) x (k*e). `rows`, when set, keeps only the first rows of
// the full grid (truncation).
struct BlockStructureSpec {
  MatrixKind kind = MatrixKind::IID;
  Eigen::Index k = 1;
  Eigen::Index l = 1;
  Eigen::Index d = 1;
  Eigen::Index e = 1;
  std::optional<NestedSpec> nested;
  std::optional<PolySpec> poly;
  EntryDistribution distribution;
  std::uint64_t seed = 0;
  std::optional<Eigen::Index> rows;

  Eigen::Index full_rows() const noexcept { return l * d; }
  Eigen::Index n() const noexcept { return rows.value_or(full_rows()); }
  Eigen::Index N() const noexcept { return k * e; }

  // Number of distinct outer blocks the layout draws from.
  Eigen::Index distinct_blocks() const;
  // Number of underlying scalar random variables.
  Eigen::Index variable_count() const;
  // Block-rows seen by the dependency analysis (l, or l1*l2 when nested).
  Eigen::Index effective_l() const;

  // Throws InvalidArgument when the dimensions are inconsistent.
  void validate() const;

  friend bool operator==(const BlockStructureSpec&, const BlockStructureSpec&) = default;
};

// Id (0-based) of the outer block at (block_row, block_col).
//   ToeplitzBlock: k - 1 + i - j, in [0, k + l - 2]
//   circulant kinds: (k - 1 + i - j) mod k
Eigen::Index block_id(const BlockStructureSpec& spec, Eigen::Index block_row,
                      Eigen::Index block_col);

// Maps a matrix column to its block column (col / e).
Eigen::Index column_block_of(const BlockStructureSpec& spec, Eigen::Index col);

// Spec helpers for the common layouts.
BlockStructureSpec iid_spec(Eigen::Index n, Eigen::Index N, EntryDistribution dist,
                            std::uint64_t seed);
BlockStructureSpec toeplitz_block_spec(Eigen::Index k, Eigen::Index l, Eigen::Index d,
                                       Eigen::Index e, EntryDistribution dist,
                                       std::uint64_t seed);
BlockStructureSpec circulant_block_spec(Eigen::Index k, Eigen::Index l, Eigen::Index d,
                                        Eigen::Index e, EntryDistribution dist,
                                        std::uint64_t seed);

}  // namespace structcs
