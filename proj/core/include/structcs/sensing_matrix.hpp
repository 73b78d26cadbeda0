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

#include "structcs/structure.hpp"

namespace structcs {

using VarIdMatrix = Eigen::Matrix<std::int64_t, Eigen::Dynamic, Eigen::Dynamic>;

// A materialised n x N sensing matrix together with the spec that produced it
// and, per entry, the label of the scalar random variable it copies. Entries
// with equal labels are bitwise equal. Immutable after construction.
class SensingMatrix {
 public:
  SensingMatrix(Eigen::MatrixXd entries, VarIdMatrix var_id, BlockStructureSpec spec);

  const Eigen::MatrixXd& entries() const noexcept { return entries_; }
  const VarIdMatrix& var_id() const noexcept { return var_id_; }
  const BlockStructureSpec& spec() const noexcept { return spec_; }

  Eigen::Index rows() const noexcept { return entries_.rows(); }
  Eigen::Index cols() const noexcept { return entries_.cols(); }
  double operator()(Eigen::Index i, Eigen::Index j) const { return entries_(i, j); }

  // Keeps the first `n` rows; the returned spec records the truncation.
  SensingMatrix truncated(Eigen::Index n) const;

 private:
  Eigen::MatrixXd entries_;
  VarIdMatrix var_id_;
  BlockStructureSpec spec_;
};

// rows x cols matrix of independent draws from `dist`.
SensingMatrix sample_iid(Eigen::Index rows, Eigen::Index cols, const EntryDistribution& dist,
                         std::uint64_t seed);

// Builds any random structured layout (everything except Deterministic, which
// lives in deterministic.hpp). Each distinct block is drawn from its own
// substream of spec.seed, so the result is independent of sampling order.
SensingMatrix build_structured(const BlockStructureSpec& spec);

// The provenance label layout alone (no sampling).
VarIdMatrix variable_layout(const BlockStructureSpec& spec);

}  // namespace structcs
