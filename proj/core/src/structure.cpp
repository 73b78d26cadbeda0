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

#include "structcs/structure.hpp"

#include <string>

#include "structcs/error.hpp"

namespace structcs {

std::string_view to_string(MatrixKind kind) {
  switch (kind) {
    case MatrixKind::IID: return "iid";
    case MatrixKind::ToeplitzBlock: return "toeplitz-block";
    case MatrixKind::CirculantBlock: return "circulant-block";
    case MatrixKind::CirculantCirculant: return "circulant-circulant";
    case MatrixKind::CirculantCirculantBlock: return "circulant-circulant-block";
    case MatrixKind::Deterministic: return "deterministic";
  }
  return "unknown";
}

MatrixKind parse_matrix_kind(std::string_view name) {
  if (name == "iid") return MatrixKind::IID;
  if (name == "toeplitz-block" || name == "toeplitz") return MatrixKind::ToeplitzBlock;
  if (name == "circulant-block" || name == "circulant") return MatrixKind::CirculantBlock;
  if (name == "circulant-circulant") return MatrixKind::CirculantCirculant;
  if (name == "circulant-circulant-block") return MatrixKind::CirculantCirculantBlock;
  if (name == "deterministic" || name == "devore") return MatrixKind::Deterministic;
  throw InvalidArgument("unknown matrix kind '" + std::string(name) + "'");
}

namespace {

Eigen::Index positive_mod(Eigen::Index a, Eigen::Index m) {
  const Eigen::Index r = a % m;
  return r < 0 ? r + m : r;
}

}  // namespace

Eigen::Index BlockStructureSpec::distinct_blocks() const {
  switch (kind) {
    case MatrixKind::IID: return 1;
    case MatrixKind::ToeplitzBlock: return k + l - 1;
    case MatrixKind::CirculantBlock: return k;
    case MatrixKind::CirculantCirculant:
    case MatrixKind::CirculantCirculantBlock: return k;
    case MatrixKind::Deterministic: return poly ? k + l - 1 : 1;
  }
  return 1;
}

Eigen::Index BlockStructureSpec::variable_count() const {
  switch (kind) {
    case MatrixKind::IID:
    case MatrixKind::Deterministic: return full_rows() * N();
    case MatrixKind::ToeplitzBlock:
    case MatrixKind::CirculantBlock: return distinct_blocks() * d * e;
    case MatrixKind::CirculantCirculant:
    case MatrixKind::CirculantCirculantBlock:
      return k * nested->k * nested->d * nested->e;
  }
  return 0;
}

Eigen::Index BlockStructureSpec::effective_l() const {
  if ((kind == MatrixKind::CirculantCirculant || kind == MatrixKind::CirculantCirculantBlock) &&
      nested)
    return l * nested->l;
  return l;
}

void BlockStructureSpec::validate() const {
  if (k < 1 || l < 1 || d < 1 || e < 1)
    throw InvalidArgument("block counts and block dims must be >= 1");
  distribution.validate();
  if (rows && (*rows < 1 || *rows > full_rows()))
    throw InvalidArgument("truncated row count must lie in [1, l*d]");

  const bool nested_kind =
      kind == MatrixKind::CirculantCirculant || kind == MatrixKind::CirculantCirculantBlock;
  if (nested_kind) {
    if (!nested) throw InvalidArgument(std::string(to_string(kind)) + " requires a nested spec");
    const NestedSpec& in = *nested;
    if (in.k < 1 || in.l < 1 || in.d < 1 || in.e < 1)
      throw InvalidArgument("nested block counts and dims must be >= 1");
    if (d != in.l * in.d || e != in.k * in.e)
      throw InvalidArgument("outer block dims must equal nested l*d x k*e");
    if (kind == MatrixKind::CirculantCirculant && (in.d != 1 || in.e != 1))
      throw InvalidArgument("circulant-circulant requires scalar inner blocks (nested d = e = 1)");
  } else if (nested) {
    throw InvalidArgument(std::string(to_string(kind)) + " does not take a nested spec");
  }

  if (kind == MatrixKind::Deterministic && !poly)
    throw InvalidArgument("deterministic kind requires polynomial parameters");
}

Eigen::Index block_id(const BlockStructureSpec& spec, Eigen::Index block_row,
                      Eigen::Index block_col) {
  if (block_row < 0 || block_row >= spec.l || block_col < 0 || block_col >= spec.k)
    throw InvalidArgument("block position out of range");
  const Eigen::Index band = spec.k - 1 + block_row - block_col;
  switch (spec.kind) {
    case MatrixKind::IID: return 0;
    case MatrixKind::ToeplitzBlock:
    case MatrixKind::Deterministic: return band;
    case MatrixKind::CirculantBlock:
    case MatrixKind::CirculantCirculant:
    case MatrixKind::CirculantCirculantBlock: return positive_mod(band, spec.k);
  }
  return 0;
}

Eigen::Index column_block_of(const BlockStructureSpec& spec, Eigen::Index col) {
  if (col < 0 || col >= spec.N()) throw InvalidArgument("column index out of range");
  return col / spec.e;
}

BlockStructureSpec iid_spec(Eigen::Index n, Eigen::Index N, EntryDistribution dist,
                            std::uint64_t seed) {
  BlockStructureSpec s;
  s.kind = MatrixKind::IID;
  s.k = 1;
  s.l = 1;
  s.d = n;
  s.e = N;
  s.distribution = dist;
  s.seed = seed;
  return s;
}

BlockStructureSpec toeplitz_block_spec(Eigen::Index k, Eigen::Index l, Eigen::Index d,
                                       Eigen::Index e, EntryDistribution dist,
                                       std::uint64_t seed) {
  BlockStructureSpec s;
  s.kind = MatrixKind::ToeplitzBlock;
  s.k = k;
  s.l = l;
  s.d = d;
  s.e = e;
  s.distribution = dist;
  s.seed = seed;
  return s;
}

BlockStructureSpec circulant_block_spec(Eigen::Index k, Eigen::Index l, Eigen::Index d,
                                        Eigen::Index e, EntryDistribution dist,
                                        std::uint64_t seed) {
  BlockStructureSpec s = toeplitz_block_spec(k, l, d, e, dist, seed);
  s.kind = MatrixKind::CirculantBlock;
  return s;
}

}  // namespace structcs
