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
// Wideband cluster-ray FR2 channel generation: steering vectors, close-in
// path loss, raised-cosine pulse shaping, per-subcarrier tap gains, the
// general backhaul/access channel H[k] = A_r Pi[k] A_t^H, and the Rician
// near-field self-interference channel.

#ifndef FDIAB_CHANNEL_HPP
#define FDIAB_CHANNEL_HPP

#include <Eigen/Dense>
#include <complex>
#include <iosfwd>
#include <string>
#include <vector>

#include "fdiab/geometry.hpp"
#include "fdiab/rng.hpp"

namespace fdiab {

/// Steering vector of a UPA for azimuth/elevation (radians). Entry n is
/// (1/sqrt(N)) exp(j (2*pi/lambda) r_n . u), u = [cos(az)cos(el),
/// sin(az)cos(el), sin(el)]. Unit L2 norm by construction.
Eigen::VectorXcd steering_vector(const ArrayGeometry& geometry, double azimuth, double elevation,
                                 double wavelength);

/// Close-in path loss (linear): (4 pi r0 / lambda)^2 (r / r0)^mu.
/// Requires r >= r0 > 0 (the model is undefined inside the reference distance).
double close_in_path_loss(double r, double r0, double wavelength, double exponent);

/// Time-domain raised-cosine pulse, unit peak, Nyquist zeros at k*ts.
/// The removable singularities (t = 0, t = +-ts/(2*rolloff)) evaluate to
/// their analytic limits; arguments within 1e-9*ts of a singularity take the
/// limit value.
double raised_cosine(double t, double ts, double rolloff);

/// Per-subcarrier complex gain of one propagation delay:
/// chi[k] = sum_{d=0}^{D-1} p(d*ts - tau) exp(-j 2 pi k d / K).
std::complex<double> subcarrier_tap_gain(double tau, int k, int n_subcarriers, int n_taps,
                                         double ts, double rolloff = 1.0);

/// Per-path cluster/ray parameters, flattened cluster-major (path index
/// i = c * n_rays + l).
struct ClusterRayParams {
  int n_clusters = 0;
  int n_rays = 0;
  Eigen::ArrayXd aod_azimuth, aod_elevation;  // departure angles per path
  Eigen::ArrayXd aoa_azimuth, aoa_elevation;  // arrival angles per path
  Eigen::ArrayXcd gains;                      // alpha_{c,l} ~ CN(0,1)
  Eigen::ArrayXd delays;                      // tau_{c,l} in [0, delay_span)

  int n_paths() const { return n_clusters * n_rays; }

  /// Draws cluster means uniform on [-pi,pi] (azimuth) x [-pi/2,pi/2]
  /// (elevation), per-ray Laplacian offsets with the given angle spread
  /// (standard deviation, radians), i.i.d. delays uniform on [0, delay_span),
  /// and CN(0,1) gains. Elevation offsets are clamped to keep the total in
  /// [-pi/2, pi/2].
  static ClusterRayParams draw(int n_clusters, int n_rays, double angle_spread, double delay_span,
                               RngStream& rng);

  void validate(double delay_span) const;
};

/// One wideband channel realization together with the factors that produced
/// it, so H[k] can be reconstructed bit-identically as
/// steering_rx * diag(path_gains.col(k)) * steering_tx^H.
struct ChannelRealization {
  std::vector<Eigen::MatrixXcd> per_subcarrier;  // K matrices, n_r x n_t
  ClusterRayParams params;
  double path_loss_linear = 1.0;
  Eigen::MatrixXcd steering_rx;  // n_r x n_paths  (A_r)
  Eigen::MatrixXcd steering_tx;  // n_t x n_paths  (A_t)
  Eigen::MatrixXcd path_gains;   // n_paths x K    (diagonal of Pi[k])

  int n_subcarriers() const { return static_cast<int>(per_subcarrier.size()); }
  Eigen::MatrixXcd reconstruct(int k) const;
};

/// General cluster-ray channel: H[k] = A_r Pi[k] A_t^H with diagonal entry
/// sqrt(n_r n_t / (N_C N_L PL)) * alpha_{c,l} * chi_{c,l}[k].
ChannelRealization generate_general_channel(const ArrayGeometry& tx, const ArrayGeometry& rx,
                                            const ClusterRayParams& params, int n_subcarriers,
                                            int n_taps, double ts, double path_loss_linear,
                                            double wavelength);

/// Convenience: draw parameters and generate in one step.
ChannelRealization draw_general_channel(const ArrayGeometry& tx, const ArrayGeometry& rx,
                                        int n_clusters, int n_rays, double angle_spread,
                                        int n_subcarriers, int n_taps, double ts,
                                        double path_loss_linear, double wavelength,
                                        RngStream& rng);

/// Self-interference channel description. The transceiver panels at the
/// IAB-node sit in parallel planes `separation` apart along -z, with the
/// transmit panel additionally rotated by `separation_angle` about the
/// common y-axis through its own center.
struct SiChannelSpec {
  double rician_factor = 10.0;     // linear
  double separation = 0.1;         // meters between panel centers
  double separation_angle = 0.0;   // radians, set to pi/6 by default config
  int nlos_clusters = 2;
  int nlos_rays = 8;
  double angle_spread = 0.0;       // radians, per-ray Laplacian std dev
};

/// Resolved panel poses for the near-field LOS computation.
struct SiPose {
  std::vector<Eigen::Vector3d> rx_positions;  // global frame, rx center at origin
  std::vector<Eigen::Vector3d> tx_positions;  // global frame
  double aoa_azimuth, aoa_elevation;          // LOS arrival in rx local frame
  double aod_azimuth, aod_elevation;          // LOS departure in tx local frame
};

SiPose compute_si_pose(const ArrayGeometry& tx, const ArrayGeometry& rx, const SiChannelSpec& spec);

/// Near-field LOS matrix H_SI,L = [a_r a_t^H] o R with
/// [R]_{p,q} = (gamma / r_pq) exp(-j 2 pi r_pq / lambda), gamma = sqrt(n_R n_T).
/// Throws if any element pair coincides (r_pq = 0).
Eigen::MatrixXcd si_los_matrix(const ArrayGeometry& tx, const ArrayGeometry& rx,
                               const SiChannelSpec& spec, double wavelength);

struct SiChannelRealization {
  std::vector<Eigen::MatrixXcd> per_subcarrier;  // combined Rician mix
  Eigen::MatrixXcd los;                          // H_SI,L (frequency flat)
  ChannelRealization nlos;                       // NLOS part, unmixed
  double rician_factor = 0.0;
};

/// H_SI[k] = sqrt(k/(k+1)) H_SI,L + sqrt(1/(k+1)) H_SI,N[k]. The NLOS part is
/// a cluster-ray channel normalized so E||H_SI,N||_F^2 = ||H_SI,L||_F^2,
/// which makes the LOS/NLOS power ratio equal the Rician factor.
SiChannelRealization generate_si_channel(const ArrayGeometry& tx, const ArrayGeometry& rx,
                                         const SiChannelSpec& spec, int n_subcarriers, int n_taps,
                                         double ts, double wavelength, RngStream& rng);

/// Regression-fixture dumps: JSON (nested arrays of [re, im] pairs,
/// row-major) and raw binary (header + little-endian doubles, row-major
/// interleaved re/im).
std::string channel_to_json(const ChannelRealization& ch);
void save_channel_binary(const ChannelRealization& ch, std::ostream& os);
std::vector<Eigen::MatrixXcd> load_channel_binary(std::istream& is);

}  // namespace fdiab

#endif  // FDIAB_CHANNEL_HPP
