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

#include "structcs/recovery.hpp"

#include <Eigen/Cholesky>
#include <Eigen/Eigenvalues>
#include <Eigen/QR>

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>

#include "structcs/error.hpp"

namespace structcs {

std::string to_string(RecoveryStatus status) {
  switch (status) {
    case RecoveryStatus::Converged: return "converged";
    case RecoveryStatus::MaxIter: return "max-iter";
    case RecoveryStatus::Infeasible: return "infeasible";
  }
  return "unknown";
}

namespace {

void check_inputs(const LinearOperator& op, const Eigen::VectorXd& y) {
  if (y.size() != op.rows())
    throw InvalidArgument("measurement length " + std::to_string(y.size()) +
                          " does not match operator rows " + std::to_string(op.rows()));
  if (!y.allFinite()) throw InvalidArgument("measurements contain non-finite values");
}

// Solves (A A^T) w = v. Cholesky when A has full row rank, otherwise an
// eigenvalue pseudo-inverse.
class GramSolver {
 public:
  explicit GramSolver(const LinearOperator& op) {
    const Eigen::Index n = op.rows();
    Eigen::MatrixXd g(n, n);
    Eigen::VectorXd e = Eigen::VectorXd::Zero(n);
    for (Eigen::Index i = 0; i < n; ++i) {
      e(i) = 1.0;
      g.col(i) = op.forward(op.adjoint(e));
      e(i) = 0.0;
    }
    g = 0.5 * (g + g.transpose()).eval();
    llt_.compute(g);
    const double scale = std::max(g.diagonal().maxCoeff(), 1e-300);
    bool ok = llt_.info() == Eigen::Success;
    if (ok) {
      const Eigen::VectorXd d = llt_.matrixLLT().diagonal();
      ok = d.minCoeff() * d.minCoeff() > 1e-12 * scale;
    }
    if (!ok) {
      use_pinv_ = true;
      Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(g);
      if (eig.info() != Eigen::Success) throw NumericalError("Gram eigen-decomposition failed");
      Eigen::VectorXd inv = eig.eigenvalues();
      const double cut = 1e-12 * std::max(inv.maxCoeff(), 1e-300);
      for (Eigen::Index i = 0; i < inv.size(); ++i) inv(i) = inv(i) > cut ? 1.0 / inv(i) : 0.0;
      pinv_ = eig.eigenvectors() * inv.asDiagonal() * eig.eigenvectors().transpose();
    }
  }

  Eigen::VectorXd solve(const Eigen::VectorXd& v) const {
    return use_pinv_ ? Eigen::VectorXd(pinv_ * v) : Eigen::VectorXd(llt_.solve(v));
  }

 private:
  Eigen::LLT<Eigen::MatrixXd> llt_;
  bool use_pinv_ = false;
  Eigen::MatrixXd pinv_;
};

// Lazily materialised columns of the operator.
class ColumnCache {
 public:
  explicit ColumnCache(const LinearOperator& op) : op_(op), cols_(static_cast<std::size_t>(op.cols())) {}

  Eigen::MatrixXd gather(const std::vector<Eigen::Index>& idx) {
    Eigen::MatrixXd out(op_.rows(), static_cast<Eigen::Index>(idx.size()));
    for (std::size_t k = 0; k < idx.size(); ++k) {
      auto& c = cols_[static_cast<std::size_t>(idx[k])];
      if (!c) c = op_.column(idx[k]);
      out.col(static_cast<Eigen::Index>(k)) = *c;
    }
    return out;
  }

 private:
  const LinearOperator& op_;
  std::vector<std::optional<Eigen::VectorXd>> cols_;
};

// Dual objective for a candidate multiplier: lambda^T b / ||A^T lambda||_inf.
double dual_bound(const LinearOperator& op, const Eigen::VectorXd& lambda, const Eigen::VectorXd& b) {
  const double norm = op.adjoint(lambda).lpNorm<Eigen::Infinity>();
  if (!(norm > 0.0) || !std::isfinite(norm)) return 0.0;
  return std::max(0.0, lambda.dot(b) / norm);
}

}  // namespace

RecoveryResult basis_pursuit(const LinearOperator& op, const Eigen::VectorXd& y,
                             const BasisPursuitOptions& opt) {
  check_inputs(op, y);
  if (!(opt.tol > 0.0)) throw InvalidArgument("tol must be > 0");
  if (opt.max_iter < 1) throw InvalidArgument("max_iter must be >= 1");

  const Eigen::Index N = op.cols();
  const Eigen::Index n = op.rows();
  RecoveryResult result;
  const double ynorm = y.norm();
  if (ynorm == 0.0) {
    result.estimate = Eigen::VectorXd::Zero(N);
    return result;
  }
  const Eigen::VectorXd b = y / ynorm;

  const GramSolver gram(op);
  ColumnCache columns(op);
  auto project = [&](const Eigen::VectorXd& v) -> Eigen::VectorXd {
    return v - op.adjoint(gram.solve(op.forward(v) - b));
  };

  Eigen::VectorXd x = project(Eigen::VectorXd::Zero(N));
  if ((op.forward(x) - b).norm() > opt.tol) {
    result.estimate = x * ynorm;
    result.residual_norm = (op.forward(result.estimate) - y).norm();
    result.status = RecoveryStatus::Infeasible;
    return result;
  }

  Eigen::VectorXd z = x;
  Eigen::VectorXd u = Eigen::VectorXd::Zero(N);
  double rho = opt.rho;
  const double alpha = opt.relaxation;

  Eigen::VectorXd best = x;
  double upper = x.lpNorm<1>();
  double lower = 0.0;
  bool certified = false;

  auto close_gap = [&] { return upper - lower <= opt.gap_tol * std::max(upper, 1e-300); };

  auto polish = [&] {
    std::vector<Eigen::Index> support;
    for (Eigen::Index i = 0; i < N; ++i)
      if (z(i) != 0.0) support.push_back(i);
    if (support.empty()) return;
    if (static_cast<Eigen::Index>(support.size()) > n) {
      // A basic solution has at most n nonzeros: keep the n largest.
      std::stable_sort(support.begin(), support.end(),
                       [&](Eigen::Index a, Eigen::Index b) { return std::abs(z(a)) > std::abs(z(b)); });
      support.resize(static_cast<std::size_t>(n));
      std::sort(support.begin(), support.end());
    }
    const Eigen::MatrixXd as = columns.gather(support);
    Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(as);
    if (qr.rank() < as.cols()) return;
    const Eigen::VectorXd xs = qr.solve(b);
    if (!xs.allFinite() || (as * xs - b).norm() > opt.tol) return;
    Eigen::VectorXd cand = Eigen::VectorXd::Zero(N);
    for (std::size_t k = 0; k < support.size(); ++k) cand(support[k]) = xs(static_cast<Eigen::Index>(k));
    const double obj = xs.lpNorm<1>();
    if (obj < upper) {
      upper = obj;
      best = cand;
    }
    // Minimum-norm multiplier whose correlation with the support equals sign(x_S).
    const Eigen::VectorXd sgn = xs.unaryExpr([](double v) { return v > 0.0 ? 1.0 : (v < 0.0 ? -1.0 : 0.0); });
    const Eigen::VectorXd w = (as.transpose() * as).ldlt().solve(sgn);
    if (w.allFinite()) lower = std::max(lower, dual_bound(op, as * w, b));
  };

  constexpr Eigen::Index kAdaptUntil = 500;
  Eigen::Index it = 0;
  for (it = 1; it <= opt.max_iter; ++it) {
    x = project(z - u);
    const Eigen::VectorXd zold = z;
    const Eigen::VectorXd xhat = alpha * x + (1.0 - alpha) * zold;
    const Eigen::VectorXd v = xhat + u;
    const double thr = 1.0 / rho;
    z = v.unaryExpr([thr](double a) { return a > thr ? a - thr : (a < -thr ? a + thr : 0.0); });
    u = v - z;

    const double primal = (x - z).norm();
    const double dual = rho * (z - zold).norm();

    if (it % opt.polish_every == 0 || it == 1) {
      const double xobj = x.lpNorm<1>();
      if (xobj < upper) {
        upper = xobj;
        best = x;
      }
      // rho*u is a subgradient of ||z||_1; its least-squares preimage under A^T
      // gives a dual candidate.
      lower = std::max(lower, dual_bound(op, gram.solve(op.forward(rho * u)), b));
      polish();
      if (close_gap()) {
        certified = true;
        break;
      }
    }

    if (primal < 1e-13 && dual < 1e-13) break;

    // Residual balancing during warm-up only; a fixed rho afterwards keeps the
    // iteration convergent. The projection does not depend on rho.
    if (it <= kAdaptUntil && it % opt.polish_every == 0) {
      if (primal > 10.0 * dual) {
        rho *= 2.0;
        u /= 2.0;
      } else if (dual > 10.0 * primal) {
        rho /= 2.0;
        u *= 2.0;
      }
    }
  }

  if (!certified) {
    const double xobj = x.lpNorm<1>();
    if (xobj < upper) {
      upper = xobj;
      best = x;
    }
    polish();
    certified = close_gap();
  }

  result.iterations = std::min(it, opt.max_iter);
  result.estimate = best * ynorm;
  result.residual_norm = (op.forward(result.estimate) - y).norm();
  if (result.residual_norm > opt.tol * ynorm)
    result.status = RecoveryStatus::Infeasible;
  else
    result.status = certified || it <= opt.max_iter ? RecoveryStatus::Converged : RecoveryStatus::MaxIter;
  return result;
}

RecoveryResult basis_pursuit(const LinearOperator& op, const Eigen::VectorXd& y, double tol,
                             Eigen::Index max_iter) {
  BasisPursuitOptions opt;
  opt.tol = tol;
  opt.max_iter = max_iter;
  return basis_pursuit(op, y, opt);
}

RecoveryResult omp(const LinearOperator& op, const Eigen::VectorXd& y, Eigen::Index m, double tol) {
  check_inputs(op, y);
  if (m < 0 || m > op.rows()) throw InvalidArgument("need 0 <= m <= n");
  if (!(tol >= 0.0)) throw InvalidArgument("tol must be >= 0");

  const Eigen::Index N = op.cols();
  RecoveryResult result;
  result.estimate = Eigen::VectorXd::Zero(N);
  const double ynorm = y.norm();
  if (ynorm == 0.0) return result;

  ColumnCache columns(op);
  std::vector<Eigen::Index> support;
  std::vector<char> chosen(static_cast<std::size_t>(N), 0);
  Eigen::VectorXd residual = y;
  Eigen::VectorXd coeffs;

  while (static_cast<Eigen::Index>(support.size()) < m && residual.norm() > tol * ynorm) {
    const Eigen::VectorXd corr = op.adjoint(residual);
    Eigen::Index pick = -1;
    double top = -1.0;
    for (Eigen::Index j = 0; j < N; ++j) {
      if (chosen[static_cast<std::size_t>(j)]) continue;
      if (std::abs(corr(j)) > top) {
        top = std::abs(corr(j));
        pick = j;
      }
    }
    if (pick < 0) break;
    chosen[static_cast<std::size_t>(pick)] = 1;
    support.push_back(pick);
    ++result.iterations;

    const Eigen::MatrixXd as = columns.gather(support);
    Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(as);
    if (qr.rank() < as.cols()) {
      result.status = RecoveryStatus::Infeasible;
      break;
    }
    coeffs = qr.solve(y);
    residual = y - as * coeffs;
  }

  for (std::size_t k = 0; k < support.size() && k < static_cast<std::size_t>(coeffs.size()); ++k)
    result.estimate(support[k]) = coeffs(static_cast<Eigen::Index>(k));
  result.residual_norm = (op.forward(result.estimate) - y).norm();
  if (result.status != RecoveryStatus::Infeasible)
    result.status = result.residual_norm <= std::max(tol, 1e-12) * ynorm ? RecoveryStatus::Converged
                                                                          : RecoveryStatus::MaxIter;
  return result;
}

Eigen::VectorXd SparseSignal::to_dense() const {
  if (support.size() != values.size()) throw InvalidArgument("support and values differ in length");
  Eigen::VectorXd x = Eigen::VectorXd::Zero(N);
  for (std::size_t k = 0; k < support.size(); ++k) {
    if (support[k] < 0 || support[k] >= N) throw InvalidArgument("support index out of range");
    x(support[k]) = values[k];
  }
  return x;
}

bool is_exact_recovery(const SparseSignal& truth, const RecoveryResult& result, double rel_tol) {
  const Eigen::VectorXd x = truth.to_dense();
  if (result.estimate.size() != x.size()) return false;
  if (!result.estimate.allFinite()) return false;
  constexpr double eps = std::numeric_limits<double>::min();
  return (result.estimate - x).norm() / std::max(x.norm(), eps) <= rel_tol;
}

}  // namespace structcs
