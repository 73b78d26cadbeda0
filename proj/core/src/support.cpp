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

#include "structcs/support.hpp"

#include <algorithm>
#include <sstream>

#include "structcs/error.hpp"

namespace structcs {

SupportSet::SupportSet(std::vector<Eigen::Index> indices, Eigen::Index columns)
    : indices_(std::move(indices)) {
  if (indices_.empty()) throw InvalidArgument("support set must not be empty");
  std::sort(indices_.begin(), indices_.end());
  if (std::adjacent_find(indices_.begin(), indices_.end()) != indices_.end())
    throw InvalidArgument("support set has duplicate indices");
  if (indices_.front() < 0 || indices_.back() >= columns)
    throw InvalidArgument("support index out of range");
}

SupportSet::SupportSet(std::initializer_list<Eigen::Index> indices, Eigen::Index columns)
    : SupportSet(std::vector<Eigen::Index>(indices), columns) {}

std::string SupportSet::to_string() const {
  std::ostringstream os;
  os << '{';
  for (std::size_t i = 0; i < indices_.size(); ++i) os << (i ? "," : "") << indices_[i];
  os << '}';
  return os.str();
}

Eigen::MatrixXd columns_of(const Eigen::MatrixXd& m, const SupportSet& t) {
  Eigen::MatrixXd sub(m.rows(), t.size());
  for (Eigen::Index c = 0; c < t.size(); ++c) {
    if (t[c] >= m.cols()) throw InvalidArgument("support index out of range");
    sub.col(c) = m.col(t[c]);
  }
  return sub;
}

}  // namespace structcs
