// SPDX-License-Identifier: Apache-2.0
//
// fdiab — wideband in-band-full-duplex FR2-IAB link-level simulator
// Copyright (C) 2026 fdiab contributors
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
// ------------------------------------------------------------------------

#include "fdiab/codebook.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace fdiab {

namespace {

// exp(j arg(z)) entrywise; arg(0) taken as 0 so the projection stays on the
// unit circle
Eigen::VectorXcd phase_project(const Eigen::VectorXcd& z) {
  Eigen::VectorXcd out(z.size());
  for (int i = 0; i < z.size(); ++i) out(i) = std::polar(1.0, std::arg(z(i)));
  return out;
}

// squared distances of every training column to every codeword column,
// |t|^2 + |c|^2 - 2 Re(t^H c) via one GEMM
Eigen::MatrixXd pairwise_sqdist(const Eigen::MatrixXcd& training, const Eigen::MatrixXcd& entries) {
  const Eigen::VectorXd t2 = training.colwise().squaredNorm();
  const Eigen::VectorXd c2 = entries.colwise().squaredNorm();
  Eigen::MatrixXd d = (-2.0 * (training.adjoint() * entries).real()).eval();
  d.colwise() += t2;
  d.rowwise() += c2.transpose();
  return d;  // T x J, unnormalized
}

}  // namespace

void CodewordLayout::validate() const {
  if (n < 1 || u < 1 || n % u != 0)
    throw std::invalid_argument("CodewordLayout: n must be a positive multiple of u");
}

Eigen::MatrixXcd stacked_to_block_diagonal(const Eigen::VectorXcd& stacked,
                                           const CodewordLayout& layout) {
  layout.validate();
  if (stacked.size() != layout.n)
    throw std::invalid_argument("stacked_to_block_diagonal: wrong length");
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(layout.n, layout.u);
  const int bl = layout.block_len();
  for (int u = 0; u < layout.u; ++u) m.col(u).segment(u * bl, bl) = stacked.segment(u * bl, bl);
  return m;
}

Eigen::MatrixXcd codeword_matrix(const Codebook& book, int index) {
  if (index < 0 || index >= book.size())
    throw std::out_of_range("codeword_matrix: index out of range");
  return stacked_to_block_diagonal(book.entries.col(index), book.layout);
}

double matrix_distance(const Eigen::MatrixXcd& x, const Eigen::MatrixXcd& y) {
  if (x.rows() != y.rows() || x.cols() != y.cols())
    throw std::invalid_argument("matrix_distance: shape mismatch");
  return (x - y).squaredNorm() / static_cast<double>(x.rows() * x.cols());
}

double stacked_distance(const Eigen::VectorXcd& x, const Eigen::VectorXcd& y,
                        const CodewordLayout& layout) {
  return (x - y).squaredNorm() / static_cast<double>(layout.n * layout.u);
}

Eigen::MatrixXcd random_phase_training(const CodewordLayout& layout, int count, RngStream& rng) {
  layout.validate();
  if (count < 1) throw std::invalid_argument("random_phase_training: empty training set");
  Eigen::MatrixXcd t(layout.n, count);
  for (int j = 0; j < count; ++j)
    for (int i = 0; i < layout.n; ++i) t(i, j) = std::polar(1.0, std::arg(rng.cgaussian()));
  return t;
}

Eigen::VectorXcd lbg_init(const Eigen::MatrixXcd& training) {
  if (training.cols() < 1) throw std::invalid_argument("lbg_init: empty training set");
  return phase_project(training.rowwise().mean());
}

Codebook lbg_split(const Codebook& book, double epsilon, RngStream& rng) {
  if (book.size() < 1) throw std::invalid_argument("lbg_split: empty codebook");
  const double keep = std::sqrt(1.0 - epsilon * epsilon);
  Codebook out;
  out.layout = book.layout;
  out.bits = book.bits + 1;
  const int half = book.size();
  out.entries.resize(book.layout.n, 2 * half);
  for (int i = 0; i < half; ++i) {
    Eigen::VectorXcd p(book.layout.n);
    for (int r = 0; r < book.layout.n; ++r) p(r) = std::polar(1.0, std::arg(rng.cgaussian()));
    out.entries.col(i) = phase_project(keep * book.entries.col(i) - epsilon * p);
    out.entries.col(half + i) = phase_project(keep * book.entries.col(i) + epsilon * p);
  }
  return out;
}

std::vector<int> lbg_assign(const Eigen::MatrixXcd& training, const Codebook& book) {
  if (book.size() < 1) throw std::invalid_argument("lbg_assign: empty codebook");
  const Eigen::MatrixXd d = pairwise_sqdist(training, book.entries);
  std::vector<int> labels(training.cols());
  for (int t = 0; t < d.rows(); ++t) {
    int best = 0;
    for (int j = 1; j < d.cols(); ++j)
      if (d(t, j) < d(t, best)) best = j;  // ties keep the lowest index
    labels[static_cast<std::size_t>(t)] = best;
  }
  return labels;
}

void lbg_update(const Eigen::MatrixXcd& training, const std::vector<int>& labels, Codebook& book,
                RngStream& rng) {
  if (static_cast<int>(labels.size()) != training.cols())
    throw std::invalid_argument("lbg_update: label count mismatch");
  const int j_count = book.size();
  Eigen::MatrixXcd sums = Eigen::MatrixXcd::Zero(book.layout.n, j_count);
  Eigen::VectorXi counts = Eigen::VectorXi::Zero(j_count);
  for (int t = 0; t < training.cols(); ++t) {
    sums.col(labels[static_cast<std::size_t>(t)]) += training.col(t);
    counts(labels[static_cast<std::size_t>(t)]) += 1;
  }
  for (int j = 0; j < j_count; ++j) {
    if (counts(j) > 0) {
      book.entries.col(j) = phase_project(sums.col(j));
    } else {
      // empty cluster: re-seed from a random training member
      book.entries.col(j) =
          training.col(static_cast<int>(rng.uniform_index(static_cast<std::uint64_t>(training.cols()))));
    }
  }
}

double lbg_distortion(const Eigen::MatrixXcd& training, const std::vector<int>& labels,
                      const Codebook& book) {
  double total = 0.0;
  const double norm = static_cast<double>(book.layout.n) * book.layout.u;
  for (int t = 0; t < training.cols(); ++t)
    total += (training.col(t) - book.entries.col(labels[static_cast<std::size_t>(t)])).squaredNorm() / norm;
  return total;
}

void LbgConfig::validate() const {
  if (!(epsilon > 0.0 && epsilon < 0.1))
    throw std::invalid_argument("LbgConfig: epsilon must lie in (0, 0.1)");
  if (inner_iterations < 1) throw std::invalid_argument("LbgConfig: inner_iterations must be >= 1");
  if (training_size < 1) throw std::invalid_argument("LbgConfig: training_size must be >= 1");
}

Codebook train_codebook_on(const LbgConfig& cfg, const CodewordLayout& layout, int bits,
                           const Eigen::MatrixXcd& training, RngStream& rng, TrainStats* stats) {
  cfg.validate();
  layout.validate();
  if (bits < 0) throw std::invalid_argument("train_codebook: bits must be >= 0");
  if (training.cols() < (1LL << bits))
    throw std::invalid_argument("train_codebook: training set smaller than the codebook");

  Codebook book;
  book.layout = layout;
  book.bits = 0;
  book.entries = lbg_init(training);
  for (int b = 0; b < bits; ++b) {
    book = lbg_split(book, cfg.epsilon, rng);
    for (int v = 0; v < cfg.inner_iterations; ++v) {
      const std::vector<int> labels = lbg_assign(training, book);
      if (stats) stats->distortion_history.push_back(lbg_distortion(training, labels, book));
      lbg_update(training, labels, book, rng);
    }
  }
  return book;
}

Codebook train_codebook(const LbgConfig& cfg, const CodewordLayout& layout, int bits,
                        RngStream& rng, TrainStats* stats) {
  cfg.validate();
  const Eigen::MatrixXcd training = random_phase_training(layout, cfg.training_size, rng);
  return train_codebook_on(cfg, layout, bits, training, rng, stats);
}

Codebook train_vector_codebook(const LbgConfig& cfg, int block_len, int bits, RngStream& rng,
                               TrainStats* stats) {
  return train_codebook(cfg, CodewordLayout{block_len, 1}, bits, rng, stats);
}

int quantize_index(const Eigen::VectorXcd& stacked, const Codebook& book) {
  if (stacked.size() != book.layout.n)
    throw std::invalid_argument("quantize_index: length mismatch");
  int best = 0;
  double best_d = std::numeric_limits<double>::infinity();
  for (int j = 0; j < book.size(); ++j) {
    const double d = (stacked - book.entries.col(j)).squaredNorm();
    if (d < best_d) {
      best_d = d;
      best = j;
    }
  }
  return best;
}

Eigen::VectorXcd quantize_blockwise(const Eigen::VectorXcd& stacked, const Codebook& vector_book,
                                    const CodewordLayout& layout) {
  layout.validate();
  if (vector_book.layout.n != layout.block_len() || vector_book.layout.u != 1)
    throw std::invalid_argument("quantize_blockwise: codebook is not a matching vector book");
  Eigen::VectorXcd out(layout.n);
  const int bl = layout.block_len();
  for (int u = 0; u < layout.u; ++u) {
    const Eigen::VectorXcd block = stacked.segment(u * bl, bl);
    out.segment(u * bl, bl) = vector_book.entries.col(quantize_index(block, vector_book));
  }
  return out;
}

}  // namespace fdiab
