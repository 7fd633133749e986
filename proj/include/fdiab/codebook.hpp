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
//
// Matrix-wise RF codebook training with the modified MSE-based LBG
// algorithm (split / nearest-neighbor assign / phase-projected centroid
// update), plus the conventional vector-wise LBG baseline.
//
// Codewords are block-diagonal N x U matrices with U blocks of (N/U) x 1;
// in-support entries have unit modulus, off-support entries are exactly
// zero. Internally a codeword is the length-N stacked vector of its block
// entries; codeword_matrix() materializes the block-diagonal form.

#ifndef FDIAB_CODEBOOK_HPP
#define FDIAB_CODEBOOK_HPP

#include <Eigen/Dense>
#include <vector>

#include "fdiab/rng.hpp"

namespace fdiab {

struct CodewordLayout {
  int n = 0;  // total antennas
  int u = 0;  // blocks (RF chains)

  int block_len() const { return n / u; }
  void validate() const;
};

struct Codebook {
  CodewordLayout layout;
  int bits = 0;
  Eigen::MatrixXcd entries;  // n x 2^bits, column j = stacked blocks of codeword j

  int size() const { return static_cast<int>(entries.cols()); }
};

/// Block-diagonal matrix form of codeword `index`.
Eigen::MatrixXcd codeword_matrix(const Codebook& book, int index);

/// Block-diagonal matrix from a stacked length-n vector.
Eigen::MatrixXcd stacked_to_block_diagonal(const Eigen::VectorXcd& stacked,
                                           const CodewordLayout& layout);

/// MSE distance: mean over all N x U entries of |X - Y|^2 (structural zeros
/// included in the count).
double matrix_distance(const Eigen::MatrixXcd& x, const Eigen::MatrixXcd& y);

/// Same distance on stacked support vectors of a given layout.
double stacked_distance(const Eigen::VectorXcd& x, const Eigen::VectorXcd& y,
                        const CodewordLayout& layout);

/// Training set: T stacked vectors with i.i.d. entries exp(j arg(CN(0,1))).
Eigen::MatrixXcd random_phase_training(const CodewordLayout& layout, int count, RngStream& rng);

/// Step 1: initial codeword = exp(j arg(mean of the training set)).
Eigen::VectorXcd lbg_init(const Eigen::MatrixXcd& training);

/// Step 2: split each codeword into exp(j arg(sqrt(1-eps^2) C +- eps P))
/// with P a random phase matrix. Doubles the codebook.
Codebook lbg_split(const Codebook& book, double epsilon, RngStream& rng);

/// Step 3: nearest-neighbor labels (ties to the lowest codeword index).
std::vector<int> lbg_assign(const Eigen::MatrixXcd& training, const Codebook& book);

/// Step 4: phase-projected centroids; empty clusters re-seed from a random
/// training member.
void lbg_update(const Eigen::MatrixXcd& training, const std::vector<int>& labels, Codebook& book,
                RngStream& rng);

/// Total distortion sum_t d(F_t, C_label(t)).
double lbg_distortion(const Eigen::MatrixXcd& training, const std::vector<int>& labels,
                      const Codebook& book);

struct LbgConfig {
  double epsilon = 1e-3;   // split perturbation
  int inner_iterations = 50;
  int training_size = 4096;

  void validate() const;
};

struct TrainStats {
  // distortion after every assign step, concatenated across all bit levels
  std::vector<double> distortion_history;
};

/// Steps 1-6: init, then `bits` rounds of split followed by V inner
/// assign/update iterations. Training entries are angles of CN(0,1) draws.
Codebook train_codebook(const LbgConfig& cfg, const CodewordLayout& layout, int bits,
                        RngStream& rng, TrainStats* stats = nullptr);

/// Same, on a caller-provided training set (columns = stacked entries).
Codebook train_codebook_on(const LbgConfig& cfg, const CodewordLayout& layout, int bits,
                           const Eigen::MatrixXcd& training, RngStream& rng,
                           TrainStats* stats = nullptr);

/// Conventional vector-wise LBG baseline: trains one codebook of
/// (N/U)-element unit-modulus vectors. Layout {block_len, 1}.
Codebook train_vector_codebook(const LbgConfig& cfg, int block_len, int bits, RngStream& rng,
                               TrainStats* stats = nullptr);

/// Index of the nearest codeword.
int quantize_index(const Eigen::VectorXcd& stacked, const Codebook& book);

/// Quantizes a stacked beamformer block-by-block against a vector codebook.
Eigen::VectorXcd quantize_blockwise(const Eigen::VectorXcd& stacked, const Codebook& vector_book,
                                    const CodewordLayout& layout);

}  // namespace fdiab

#endif  // FDIAB_CODEBOOK_HPP
