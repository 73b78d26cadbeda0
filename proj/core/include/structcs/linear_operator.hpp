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
#include <functional>
#include <memory>

#include "structcs/sensing_matrix.hpp"

namespace structcs {

// An n x N linear map given by its forward and adjoint actions. Solvers only
// talk to this interface, so a structured (FFT) operator and a dense matrix
// are interchangeable.
class LinearOperator {
 public:
  using Apply = std::function<Eigen::VectorXd(const Eigen::VectorXd&)>;

  LinearOperator(Eigen::Index rows, Eigen::Index cols, Apply forward, Apply adjoint);

  static LinearOperator dense(Eigen::MatrixXd matrix);
  // FFT operator when the layout allows it, dense otherwise.
  static LinearOperator from_matrix(const SensingMatrix& m);

  Eigen::Index rows() const noexcept { return rows_; }
  Eigen::Index cols() const noexcept { return cols_; }

  Eigen::VectorXd forward(const Eigen::VectorXd& x) const;
  Eigen::VectorXd adjoint(const Eigen::VectorXd& y) const;

  // Column j, i.e. forward(e_j).
  Eigen::VectorXd column(Eigen::Index j) const;

 private:
  Eigen::Index rows_;
  Eigen::Index cols_;
  Apply forward_;
  Apply adjoint_;
};

}  // namespace structcs
