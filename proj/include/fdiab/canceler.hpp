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
// Multi-tap analog canceler: frequency response, loss profiles (micro-strip
// and optical-domain FBG delay lines), box-constrained least-squares weight
// fitting over the sampled band of interest, and cancellation measurement.

#ifndef FDIAB_CANCELER_HPP
#define FDIAB_CANCELER_HPP

#include <Eigen/Dense>
#include <complex>
#include <cstdint>
#include <vector>

#include "fdiab/rng.hpp"

namespace fdiab {

/// Uniformly sampled band of interest [omega0, omega1] (angular frequency).
struct BandGrid {
  double omega0 = 0.0;
  double omega1 = 0.0;
  int n_points = 0;

  Eigen::ArrayXd omegas() const;

  /// Grid centered on carrier_hz spanning bandwidth_hz, sampled every
  /// step_hz (default 1 MHz). 400 MHz at 28 GHz gives the 401-point
  /// [27.8, 28.2] GHz grid.
  static BandGrid boi(double carrier_hz, double bandwidth_hz, double step_hz = 1e6);
};

struct Canceler {
  Eigen::ArrayXd delays;        // tau_m, strictly increasing, seconds
  double coupler_loss = 1.0;    // alpha_hat, linear amplitude
  Eigen::ArrayXd prop_loss;     // alpha_m, linear amplitude per tap
  Eigen::ArrayXd tap_coupling;  // beta_m, linear amplitude per tap
  Eigen::ArrayXd w_i, w_q;      // tunable weights, each in [-1, 1]
  BandGrid band;

  int taps() const { return static_cast<int>(delays.size()); }
  /// Per-tap amplitude ceiling alpha_hat * alpha_m * beta_m.
  Eigen::ArrayXd envelope() const { return coupler_loss * prop_loss * tap_coupling; }
  void validate() const;
};

/// h_can(omega) = alpha_hat * sum_m alpha_m beta_m (w_I,m + j w_Q,m) e^{-j omega tau_m}.
std::complex<double> canceler_response(const Canceler& c, double omega);
Eigen::ArrayXcd canceler_response_grid(const Canceler& c);

/// Tap hardware family. Loss per tap accumulates from the physical line
/// length (delay times propagation speed) plus a fixed per-tap through loss
/// (couplers for micro-strip, grating transmission for FBG).
struct LossProfile {
  enum class Kind { kMicrostrip, kFbg };
  Kind kind = Kind::kFbg;
  double per_meter_loss_db = 0.461;
  double coupler_db = 20.0;
  double propagation_speed = 2.0435967e8;  // m/s
  double per_tap_through_db = 0.1;

  static LossProfile microstrip();
  static LossProfile fbg();
};

/// Builds an unweighted canceler whose taps uniformly cover the delay span:
/// tau_m = (m - 1/2) * span / M (the minimum realizable delay is half a
/// pitch). alpha_m follows the cumulative physical path loss of the profile.
Canceler apply_loss_profile(const LossProfile& profile, int taps, double delay_span,
                            const BandGrid& band);

struct FitResult {
  double residual = 0.0;       // sum over the grid of |target - response|^2
  double zero_residual = 0.0;  // target energy (residual of the all-zero weights)
  bool box_active = false;
  int iterations = 0;
};

/// Fits (w_I, w_Q) by least squares over the band grid subject to the
/// [-1, 1] box. Exact when the unconstrained optimum is interior; otherwise
/// solved as a bounded-variable LS on per-tap rescaled variables. Writes the
/// weights into `c`. Requires at least 2M grid points.
FitResult fit_weights(const Eigen::ArrayXcd& target, Canceler& c);

/// 10 log10( sum |h_SI|^2 / sum |h_SI - h_can|^2 ), capped at 200 dB.
/// Throws on a zero-energy target.
double cancellation_db(const Eigen::ArrayXcd& target, const Canceler& fitted);

/// Scalar SI channel seen by one canceler: Rician mix of a LOS tap at
/// separation/c and NLOS paths with i.i.d. delays over the delay spread.
/// Response level is `level_db` (total energy, dB) relative to the canceler
/// weight full scale.
struct ScalarSiModel {
  double delay_spread = 200e-9;
  int n_paths = 16;              // NLOS paths (clusters x rays)
  double rician_factor = 10.0;   // linear
  double los_delay = 0.1 / 3e8;  // seconds
  double level_db = -32.0;
};

Eigen::ArrayXcd scalar_si_response(const ScalarSiModel& model, const BandGrid& band,
                                   RngStream& rng);

/// Mean cancellation (dB) over seeded trials for each (bandwidth, taps)
/// cell. Rows follow `bandwidths`, columns follow `tap_counts`.
Eigen::MatrixXd sweep_taps_bandwidth(const LossProfile& profile,
                                     const std::vector<int>& tap_counts,
                                     const std::vector<double>& bandwidths_hz, double carrier_hz,
                                     double grid_step_hz, const ScalarSiModel& si_model,
                                     int trials, std::uint64_t seed);

}  // namespace fdiab

#endif  // FDIAB_CANCELER_HPP
