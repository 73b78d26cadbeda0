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
#include <complex>
#include <vector>

#include "structcs/sensing_matrix.hpp"

namespace structcs {

enum class MatvecPath { Fft, DenseFallback };

// The d x e blocks along the block band of a band-constant layout: blocks[t]
// sits at every block position (i, j) with k - 1 + i - j == t, for
// t in [0, k + l - 2]. Circulant layouts simply repeat with period k.
struct BlockSequence {
  Eigen::Index d = 0;
  Eigen::Index e = 0;
  std::vector<Eigen::MatrixXd> blocks;
};

struct MatvecResult {
  Eigen::VectorXd value;
  MatvecPath path = MatvecPath::Fft;
};

// True for every layout whose blocks are constant along block bands
// (Toeplitz-block, all circulant kinds, the polynomial block construction).
bool supports_fast_path(const BlockStructureSpec& spec);

// Reads the band blocks from a matrix built with a band-constant spec.
// Truncated matrices are rebuilt from their spec first.
BlockSequence extract_blocks(const SensingMatrix& m);

// Dense reference products.
Eigen::VectorXd dense_matvec(const SensingMatrix& m, const Eigen::VectorXd& x);
Eigen::VectorXd dense_adjoint_matvec(const SensingMatrix& m, const Eigen::VectorXd& y);

// FFT products from a spec and its band blocks. The block axis is embedded in
// a zero-padded circular convolution of length next_pow2(k + l - 1).
// Throws InvalidArgument for layouts without a fast path.
Eigen::VectorXd fast_matvec(const BlockStructureSpec& spec, const BlockSequence& blocks,
                            const Eigen::VectorXd& x);
Eigen::VectorXd fast_adjoint_matvec(const BlockStructureSpec& spec, const BlockSequence& blocks,
                                    const Eigen::VectorXd& y);

// Matrix-level entry points; IID layouts take the dense route and report it.
MatvecResult fast_matvec(const SensingMatrix& m, const Eigen::VectorXd& x);
MatvecResult fast_adjoint_matvec(const SensingMatrix& m, const Eigen::VectorXd& y);

// Precomputes the block spectra once so repeated products (iterative
// solvers) only pay for the vector transforms. Thread-safe for concurrent
// apply calls; each call uses its own scratch.
class StructuredOperator {
 public:
  StructuredOperator(const BlockStructureSpec& spec, const BlockSequence& blocks);
  explicit StructuredOperator(const SensingMatrix& m);

  Eigen::Index rows() const noexcept { return rows_; }
  Eigen::Index cols() const noexcept { return k_ * e_; }
  Eigen::Index fft_length() const noexcept { return fft_len_; }

  Eigen::VectorXd apply(const Eigen::VectorXd& x) const;
  Eigen::VectorXd apply_adjoint(const Eigen::VectorXd& y) const;

 private:
  Eigen::Index k_ = 0, l_ = 0, d_ = 0, e_ = 0, rows_ = 0, fft_len_ = 0;
  // spectrum_[w] is the d x e transfer matrix at frequency w.
  std::vector<Eigen::MatrixXcd> spectrum_;
};

}  // namespace structcs
