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
// Beam-pair sweeping over RF codebooks, LS effective-channel estimation
// from orthogonal pilots, synthetic estimation-error injection, and the
// infinite-resolution (eigenvector-phase) RF beamformer baseline.

#ifndef FDIAB_LINK_ESTIMATION_HPP
#define FDIAB_LINK_ESTIMATION_HPP

#include <Eigen/Dense>
#include <vector>

#include "fdiab/channel.hpp"
#include "fdiab/codebook.hpp"
#include "fdiab/rng.hpp"

namespace fdiab {

enum class LinkId { kBackhaul, kSelfInterference, kAccess };

/// U x U orthogonal pilot block with S S^H = zeta I (scaled DFT matrix).
Eigen::MatrixXcd dft_pilot(int u, double zeta);

struct BeamSweepConfig {
  double zeta = 1.0;       // pilot power P_t / (K U)
  double noise_var = 0.0;  // Gaussian noise variance at the receive elements
  double rho = 0.0;        // transmitter HWI factor
  double beta = 0.0;       // receiver HWI factor
  bool draw_impairments = true;
};

struct BeamSweepResult {
  int precoder_index = 0;
  int combiner_index = 0;
  double metric = 0.0;  // sum_k ||Y[k]||_F^2 of the winning pair
};

/// Phase 1: picks argmax_{p,q} sum_k ||Y_k(p,q)||_F^2 with
/// Y_k(p,q) = W_q^H (H[k] F_p (S + E) + Z) + G. Every pair is measured with
/// independent impairment draws; ties resolve to the lowest (p,q) in
/// lexicographic order.
BeamSweepResult beam_sweep_select(const Codebook& precoders, const Codebook& combiners,
                                  const ChannelRealization& channel, const BeamSweepConfig& cfg,
                                  RngStream& rng);

/// W_rf^H H[k] F_rf for all k, optionally scaled (sqrt(eta) on the SI link).
std::vector<Eigen::MatrixXcd> effective_channel(const std::vector<Eigen::MatrixXcd>& h,
                                                const Eigen::MatrixXcd& w_rf,
                                                const Eigen::MatrixXcd& f_rf, double scale = 1.0);

struct LinkEstimate {
  std::vector<Eigen::MatrixXcd> h_eff;  // estimated effective channel per subcarrier
  double error_var = 0.0;               // per-entry variance of Delta
  LinkId link = LinkId::kBackhaul;
};

/// Phase 2: LS estimate H_hat[k] = Y[k] S^H[k] / zeta. The pilots must be
/// orthogonal (S S^H = zeta I); a singular pilot block is rejected.
LinkEstimate estimate_effective_channel(const std::vector<Eigen::MatrixXcd>& received,
                                        const std::vector<Eigen::MatrixXcd>& pilots, double zeta);

/// One received pilot block Y = H_eff (S + E) + Z' + G with the configured
/// impairment statistics (Z' is the RF-combined noise with per-entry
/// variance noise_var * combiner_gain).
Eigen::MatrixXcd simulate_pilot_block(const Eigen::MatrixXcd& h_eff, const Eigen::MatrixXcd& pilot,
                                      const BeamSweepConfig& cfg, double combiner_gain,
                                      RngStream& rng);

/// Synthetic error model: H_hat[k] = H_eff[k] - Delta[k], Delta entries
/// i.i.d. CN(0, error_var). Used by the figure experiments at the stated
/// sigma_e^2 values.
LinkEstimate inject_estimation_error(const std::vector<Eigen::MatrixXcd>& h_eff_true,
                                     double error_var, LinkId link, RngStream& rng);

enum class BeamformerSide { kTransmit, kReceive };

/// Infinite-resolution subarray RF beamformer: per subarray, unit-modulus
/// phases of the dominant eigenvector of the subarray sample covariance
/// (sum over subcarriers). Returns the stacked length-n vector.
Eigen::VectorXcd ideal_rf_beamformer(const std::vector<Eigen::MatrixXcd>& h,
                                     const CodewordLayout& layout, BeamformerSide side);

/// Fully-connected variant: phases of the first U eigenvectors of the whole
/// sample covariance (n x u matrix, no block structure).
Eigen::MatrixXcd ideal_rf_beamformer_full(const std::vector<Eigen::MatrixXcd>& h, int u,
                                          BeamformerSide side);

}  // namespace fdiab

#endif  // FDIAB_LINK_ESTIMATION_HPP
