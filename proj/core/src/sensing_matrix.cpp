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

#include "structcs/sensing_matrix.hpp"

#include <utility>
#include <vector>

#include "structcs/error.hpp"
#include "structcs/rng.hpp"

namespace structcs {

SensingMatrix::SensingMatrix(Eigen::MatrixXd entries, VarIdMatrix var_id,
                             BlockStructureSpec spec)
    : entries_(std::move(entries)), var_id_(std::move(var_id)), spec_(std::move(spec)) {
  if (entries_.rows() != var_id_.rows() || entries_.cols() != var_id_.cols())
    throw InvalidArgument("entries and var_id must have the same shape");
}

SensingMatrix SensingMatrix::truncated(Eigen::Index n) const {
  if (n < 1 || n > rows()) throw InvalidArgument("truncation must keep between 1 and n rows");
  BlockStructureSpec spec = spec_;
  spec.rows = n;
  return SensingMatrix(entries_.topRows(n), var_id_.topRows(n), std::move(spec));
}

namespace {

Eigen::Index positive_mod(Eigen::Index a, Eigen::Index m) {
  const Eigen::Index r = a % m;
  return r < 0 ? r + m : r;
}

// Label of entry (i, j) of the full (untruncated) grid.
std::int64_t label_at(const BlockStructureSpec& s, Eigen::Index i, Eigen::Index j) {
  if (s.kind == MatrixKind::IID || s.kind == MatrixKind::Deterministic)
    return static_cast<std::int64_t>(i * s.N() + j);

  const Eigen::Index bi = i / s.d, r = i % s.d;
  const Eigen::Index bj = j / s.e, c = j % s.e;
  const Eigen::Index outer = block_id(s, bi, bj);

  if (s.kind == MatrixKind::ToeplitzBlock || s.kind == MatrixKind::CirculantBlock)
    return static_cast<std::int64_t>((outer * s.d + r) * s.e + c);

  // Nested circulant-block inside each outer block.
  const NestedSpec& in = *s.nested;
  const Eigen::Index ii = r / in.d, r2 = r % in.d;
  const Eigen::Index jj = c / in.e, c2 = c % in.e;
  const Eigen::Index inner = positive_mod(in.k - 1 + ii - jj, in.k);
  return static_cast<std::int64_t>(((outer * in.k + inner) * in.d + r2) * in.e + c2);
}

}  // namespace

VarIdMatrix variable_layout(const BlockStructureSpec& spec) {
  spec.validate();
  const Eigen::Index n = spec.full_rows(), N = spec.N();
  VarIdMatrix ids(n, N);
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < N; ++j) ids(i, j) = label_at(spec, i, j);
  return ids;
}

SensingMatrix sample_iid(Eigen::Index rows, Eigen::Index cols, const EntryDistribution& dist,
                         std::uint64_t seed) {
  if (rows < 1 || cols < 1) throw InvalidArgument("sample_iid: dimensions must be >= 1");
  return build_structured(iid_spec(rows, cols, dist, seed));
}

SensingMatrix build_structured(const BlockStructureSpec& spec) {
  spec.validate();
  if (spec.kind == MatrixKind::Deterministic)
    throw InvalidArgument("deterministic matrices are built by build_devore_block");

  const VarIdMatrix full_ids = variable_layout(spec);

  // Values for every scalar variable, drawn block by block. For nested kinds
  // the unit of sampling is the inner block (outer id * k2 + inner id).
  const Eigen::Index var_count = spec.variable_count();
  Eigen::Index block_size = var_count;
  if (spec.kind == MatrixKind::ToeplitzBlock || spec.kind == MatrixKind::CirculantBlock)
    block_size = spec.d * spec.e;
  else if (spec.nested)
    block_size = spec.nested->d * spec.nested->e;

  const Rng root(spec.seed);
  std::vector<double> values(static_cast<std::size_t>(var_count));
  for (Eigen::Index b = 0; b * block_size < var_count; ++b) {
    Rng stream = root.substream(static_cast<std::uint64_t>(b));
    for (Eigen::Index v = 0; v < block_size; ++v)
      values[static_cast<std::size_t>(b * block_size + v)] = spec.distribution.sample(stream);
  }

  const Eigen::Index n = spec.n();
  Eigen::MatrixXd entries(n, spec.N());
  for (Eigen::Index j = 0; j < spec.N(); ++j)
    for (Eigen::Index i = 0; i < n; ++i)
      entries(i, j) = values[static_cast<std::size_t>(full_ids(i, j))];
  return SensingMatrix(std::move(entries), full_ids.topRows(n), spec);
}

}  // namespace structcs
