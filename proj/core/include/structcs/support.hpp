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
#include <initializer_list>
#include <string>
#include <vector>

namespace structcs {

// A non-empty, sorted set of distinct 0-based column indices T.
class SupportSet {
 public:
  SupportSet() = default;
  // Sorts and validates; throws InvalidArgument on duplicates, empty input or
  // indices outside [0, columns).
  SupportSet(std::vector<Eigen::Index> indices, Eigen::Index columns);
  SupportSet(std::initializer_list<Eigen::Index> indices, Eigen::Index columns);

  const std::vector<Eigen::Index>& indices() const noexcept { return indices_; }
  Eigen::Index size() const noexcept { return static_cast<Eigen::Index>(indices_.size()); }
  Eigen::Index operator[](Eigen::Index i) const { return indices_[static_cast<std::size_t>(i)]; }
  auto begin() const noexcept { return indices_.begin(); }
  auto end() const noexcept { return indices_.end(); }

  std::string to_string() const;

  friend bool operator==(const SupportSet&, const SupportSet&) = default;
  friend auto operator<=>(const SupportSet&, const SupportSet&) = default;

 private:
  std::vector<Eigen::Index> indices_;
};

// Phi_T: the columns of `m` listed in `t`.
Eigen::MatrixXd columns_of(const Eigen::MatrixXd& m, const SupportSet& t);

}  // namespace structcs
