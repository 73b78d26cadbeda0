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

#include "structcs/linear_operator.hpp"

#include <utility>

#include "structcs/error.hpp"
#include "structcs/fast_ops.hpp"

namespace structcs {

LinearOperator::LinearOperator(Eigen::Index rows, Eigen::Index cols, Apply forward,
                               Apply adjoint)
    : rows_(rows), cols_(cols), forward_(std::move(forward)), adjoint_(std::move(adjoint)) {
  if (rows < 1 || cols < 1) throw InvalidArgument("operator dimensions must be >= 1");
  if (!forward_ || !adjoint_) throw InvalidArgument("operator needs forward and adjoint maps");
}

LinearOperator LinearOperator::dense(Eigen::MatrixXd matrix) {
  auto shared = std::make_shared<const Eigen::MatrixXd>(std::move(matrix));
  return LinearOperator(
      shared->rows(), shared->cols(),
      [shared](const Eigen::VectorXd& x) -> Eigen::VectorXd { return *shared * x; },
      [shared](const Eigen::VectorXd& y) -> Eigen::VectorXd {
        return shared->transpose() * y;
      });
}

LinearOperator LinearOperator::from_matrix(const SensingMatrix& m) {
  if (!supports_fast_path(m.spec())) return dense(m.entries());
  auto op = std::make_shared<const StructuredOperator>(m);
  return LinearOperator(
      op->rows(), op->cols(), [op](const Eigen::VectorXd& x) { return op->apply(x); },
      [op](const Eigen::VectorXd& y) { return op->apply_adjoint(y); });
}

Eigen::VectorXd LinearOperator::forward(const Eigen::VectorXd& x) const {
  if (x.size() != cols_) throw InvalidArgument("forward: dimension mismatch");
  return forward_(x);
}

Eigen::VectorXd LinearOperator::adjoint(const Eigen::VectorXd& y) const {
  if (y.size() != rows_) throw InvalidArgument("adjoint: dimension mismatch");
  return adjoint_(y);
}

Eigen::VectorXd LinearOperator::column(Eigen::Index j) const {
  if (j < 0 || j >= cols_) throw InvalidArgument("column index out of range");
  Eigen::VectorXd unit = Eigen::VectorXd::Zero(cols_);
  unit(j) = 1.0;
  return forward_(unit);
}

}  // namespace structcs
