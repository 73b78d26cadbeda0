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
#include <string>
#include <vector>

#include "structcs/linear_operator.hpp"

namespace structcs {

enum class RecoveryStatus { Converged, MaxIter, Infeasible };

std::string to_string(RecoveryStatus status);

struct RecoveryResult {
  Eigen::VectorXd estimate;
  Eigen::Index iterations = 0;
  double residual_norm = 0.0;  // ||op(estimate) - y||, recomputed on return
  RecoveryStatus status = RecoveryStatus::Converged;
};

struct BasisPursuitOptions {
  double tol = 1e-7;            // feasibility: ||Ax - y|| <= tol ||y||
  Eigen::Index max_iter = 20000;
  double gap_tol = 1e-9;        // relative primal-dual gap that stops the solver
  Eigen::Index polish_every = 10;
  double rho = 1.0;
  double relaxation = 1.6;
};

// min ||x||_1 subject to ||Ax - y|| <= tol ||y||, by ADMM on the split
// x (affine projection) / z (soft threshold). Only forward and adjoint
// applications of `op` are used. Iterates are periodically polished by a
// least-squares fit on the current support and certified with a dual
// feasible point; the solver stops once the duality gap closes.
RecoveryResult basis_pursuit(const LinearOperator& op, const Eigen::VectorXd& y,
                             const BasisPursuitOptions& options = {});
RecoveryResult basis_pursuit(const LinearOperator& op, const Eigen::VectorXd& y, double tol,
                             Eigen::Index max_iter);

// Orthogonal matching pursuit: at most m greedy steps, each adding the column
// most correlated with the residual and refitting by least squares.
RecoveryResult omp(const LinearOperator& op, const Eigen::VectorXd& y, Eigen::Index m,
                   double tol = 1e-10);

struct SparseSignal {
  Eigen::Index N = 0;
  std::vector<Eigen::Index> support;  // sorted
  std::vector<double> values;         // aligned with support

  Eigen::VectorXd to_dense() const;
};

// ||estimate - truth|| / max(||truth||, eps) <= rel_tol.
bool is_exact_recovery(const SparseSignal& truth, const RecoveryResult& result,
                       double rel_tol = 1e-5);

}  // namespace structcs
