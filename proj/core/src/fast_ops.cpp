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

#include "structcs/fast_ops.hpp"

#include <unsupported/Eigen/FFT>

#include <algorithm>

#include "structcs/error.hpp"

namespace structcs {

namespace {

using Complex = std::complex<double>;

Eigen::Index next_pow2(Eigen::Index v) {
  Eigen::Index p = 1;
  while (p < v) p <<= 1;
  return p;
}

// Plans (twiddle tables) are cached per transform length inside the FFT
// object, so keep one per thread.
Eigen::FFT<double>& thread_fft() {
  thread_local Eigen::FFT<double> fft;
  return fft;
}

void check_length(Eigen::Index got, Eigen::Index want, const char* what) {
  if (got != want)
    throw InvalidArgument(std::string(what) + ": vector length " + std::to_string(got) +
                          " does not match " + std::to_string(want));
}

}  // namespace

bool supports_fast_path(const BlockStructureSpec& spec) {
  return spec.kind != MatrixKind::IID;
}

BlockSequence extract_blocks(const SensingMatrix& m) {
  const BlockStructureSpec& spec = m.spec();
  if (!supports_fast_path(spec))
    throw InvalidArgument(std::string(to_string(spec.kind)) + " has no block band structure");
  if (m.rows() != spec.full_rows()) {
    if (spec.kind == MatrixKind::Deterministic)
      throw InvalidArgument("extract_blocks: truncated deterministic matrices are not supported");
    BlockStructureSpec full = spec;
    full.rows.reset();
    return extract_blocks(build_structured(full));
  }

  BlockSequence seq;
  seq.d = spec.d;
  seq.e = spec.e;
  const Eigen::Index bands = spec.k + spec.l - 1;
  seq.blocks.reserve(static_cast<std::size_t>(bands));
  for (Eigen::Index t = 0; t < bands; ++t) {
    const Eigen::Index i = std::max<Eigen::Index>(0, t - (spec.k - 1));
    const Eigen::Index j = spec.k - 1 + i - t;
    seq.blocks.emplace_back(m.entries().block(i * spec.d, j * spec.e, spec.d, spec.e));
  }
  return seq;
}

Eigen::VectorXd dense_matvec(const SensingMatrix& m, const Eigen::VectorXd& x) {
  check_length(x.size(), m.cols(), "dense_matvec");
  return m.entries() * x;
}

Eigen::VectorXd dense_adjoint_matvec(const SensingMatrix& m, const Eigen::VectorXd& y) {
  check_length(y.size(), m.rows(), "dense_adjoint_matvec");
  return m.entries().transpose() * y;
}

StructuredOperator::StructuredOperator(const BlockStructureSpec& spec,
                                       const BlockSequence& blocks)
    : k_(spec.k), l_(spec.l), d_(spec.d), e_(spec.e), rows_(spec.n()) {
  spec.validate();
  if (!supports_fast_path(spec))
    throw InvalidArgument(std::string(to_string(spec.kind)) + " has no fast path");
  const Eigen::Index bands = k_ + l_ - 1;
  if (blocks.d != d_ || blocks.e != e_ || static_cast<Eigen::Index>(blocks.blocks.size()) != bands)
    throw InvalidArgument("block sequence does not match the spec");
  for (const auto& b : blocks.blocks)
    if (b.rows() != d_ || b.cols() != e_) throw InvalidArgument("block has wrong shape");

  // Length-1 transforms are not supported by the FFT backend.
  fft_len_ = std::max<Eigen::Index>(2, next_pow2(bands));
  spectrum_.assign(static_cast<std::size_t>(fft_len_), Eigen::MatrixXcd(d_, e_));

  Eigen::FFT<double>& fft = thread_fft();
  std::vector<Complex> seq(static_cast<std::size_t>(fft_len_)), out(seq.size());
  for (Eigen::Index r = 0; r < d_; ++r) {
    for (Eigen::Index c = 0; c < e_; ++c) {
      std::fill(seq.begin(), seq.end(), Complex{});
      for (Eigen::Index t = 0; t < bands; ++t)
        seq[static_cast<std::size_t>(t)] = blocks.blocks[static_cast<std::size_t>(t)](r, c);
      fft.fwd(out.data(), seq.data(), fft_len_);
      for (Eigen::Index w = 0; w < fft_len_; ++w)
        spectrum_[static_cast<std::size_t>(w)](r, c) = out[static_cast<std::size_t>(w)];
    }
  }
}

StructuredOperator::StructuredOperator(const SensingMatrix& m)
    : StructuredOperator(m.spec(), extract_blocks(m)) {}

Eigen::VectorXd StructuredOperator::apply(const Eigen::VectorXd& x) const {
  check_length(x.size(), cols(), "fast_matvec");
  const auto L = static_cast<std::size_t>(fft_len_);
  Eigen::FFT<double>& fft = thread_fft();

  // Column-position c of every block column, transformed along the block axis.
  Eigen::MatrixXcd xf(e_, fft_len_);
  std::vector<Complex> seq(L), out(L);
  for (Eigen::Index c = 0; c < e_; ++c) {
    std::fill(seq.begin(), seq.end(), Complex{});
    for (Eigen::Index j = 0; j < k_; ++j) seq[static_cast<std::size_t>(j)] = x(j * e_ + c);
    fft.fwd(out.data(), seq.data(), fft_len_);
    for (std::size_t w = 0; w < L; ++w) xf(c, static_cast<Eigen::Index>(w)) = out[w];
  }

  Eigen::MatrixXcd yf(d_, fft_len_);
  if (d_ == 1 && e_ == 1) {
    for (std::size_t w = 0; w < L; ++w) {
      const auto c = static_cast<Eigen::Index>(w);
      yf(0, c) = spectrum_[w](0, 0) * xf(0, c);
    }
  } else {
    for (std::size_t w = 0; w < L; ++w)
      yf.col(static_cast<Eigen::Index>(w)).noalias() = spectrum_[w] * xf.col(static_cast<Eigen::Index>(w));
  }

  // Output block-row i is the linear convolution sampled at k - 1 + i.
  Eigen::VectorXd y(l_ * d_);
  for (Eigen::Index r = 0; r < d_; ++r) {
    for (std::size_t w = 0; w < L; ++w) seq[w] = yf(r, static_cast<Eigen::Index>(w));
    fft.inv(out.data(), seq.data(), fft_len_);
    for (Eigen::Index i = 0; i < l_; ++i) y(i * d_ + r) = out[static_cast<std::size_t>(k_ - 1 + i)].real();
  }
  if (rows_ < y.size()) return y.head(rows_);
  return y;
}

Eigen::VectorXd StructuredOperator::apply_adjoint(const Eigen::VectorXd& y) const {
  check_length(y.size(), rows_, "fast_adjoint_matvec");
  const auto L = static_cast<std::size_t>(fft_len_);
  Eigen::FFT<double>& fft = thread_fft();

  // Place output block-row i at position k - 1 + i and correlate with the band.
  Eigen::MatrixXcd yf(d_, fft_len_);
  std::vector<Complex> seq(L), out(L);
  for (Eigen::Index r = 0; r < d_; ++r) {
    std::fill(seq.begin(), seq.end(), Complex{});
    for (Eigen::Index i = 0; i < l_; ++i) {
      const Eigen::Index row = i * d_ + r;
      if (row < rows_) seq[static_cast<std::size_t>(k_ - 1 + i)] = y(row);
    }
    fft.fwd(out.data(), seq.data(), fft_len_);
    for (std::size_t w = 0; w < L; ++w) yf(r, static_cast<Eigen::Index>(w)) = out[w];
  }

  Eigen::MatrixXcd xf(e_, fft_len_);
  if (d_ == 1 && e_ == 1) {
    for (std::size_t w = 0; w < L; ++w) {
      const auto c = static_cast<Eigen::Index>(w);
      xf(0, c) = std::conj(spectrum_[w](0, 0)) * yf(0, c);
    }
  } else {
    for (std::size_t w = 0; w < L; ++w)
      xf.col(static_cast<Eigen::Index>(w)).noalias() = spectrum_[w].adjoint() * yf.col(static_cast<Eigen::Index>(w));
  }

  Eigen::VectorXd x(k_ * e_);
  for (Eigen::Index c = 0; c < e_; ++c) {
    for (std::size_t w = 0; w < L; ++w) seq[w] = xf(c, static_cast<Eigen::Index>(w));
    fft.inv(out.data(), seq.data(), fft_len_);
    for (Eigen::Index j = 0; j < k_; ++j) x(j * e_ + c) = out[static_cast<std::size_t>(j)].real();
  }
  return x;
}

Eigen::VectorXd fast_matvec(const BlockStructureSpec& spec, const BlockSequence& blocks,
                            const Eigen::VectorXd& x) {
  return StructuredOperator(spec, blocks).apply(x);
}

Eigen::VectorXd fast_adjoint_matvec(const BlockStructureSpec& spec, const BlockSequence& blocks,
                                    const Eigen::VectorXd& y) {
  return StructuredOperator(spec, blocks).apply_adjoint(y);
}

MatvecResult fast_matvec(const SensingMatrix& m, const Eigen::VectorXd& x) {
  if (!supports_fast_path(m.spec())) return {dense_matvec(m, x), MatvecPath::DenseFallback};
  return {StructuredOperator(m).apply(x), MatvecPath::Fft};
}

MatvecResult fast_adjoint_matvec(const SensingMatrix& m, const Eigen::VectorXd& y) {
  if (!supports_fast_path(m.spec()))
    return {dense_adjoint_matvec(m, y), MatvecPath::DenseFallback};
  return {StructuredOperator(m).apply_adjoint(y), MatvecPath::Fft};
}

}  // namespace structcs
