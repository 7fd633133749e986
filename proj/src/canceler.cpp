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

#include "fdiab/canceler.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "fdiab/bvls.hpp"

namespace fdiab {

namespace {
constexpr double kTwoPi = 2.0 * M_PI;
constexpr double kCancellationCapDb = 200.0;

double db_to_amplitude(double db) { return std::pow(10.0, -db / 20.0); }
}  // namespace

Eigen::ArrayXd BandGrid::omegas() const {
  if (n_points < 1) throw std::invalid_argument("BandGrid: empty grid");
  if (n_points == 1) return Eigen::ArrayXd::Constant(1, 0.5 * (omega0 + omega1));
  return Eigen::ArrayXd::LinSpaced(n_points, omega0, omega1);
}

BandGrid BandGrid::boi(double carrier_hz, double bandwidth_hz, double step_hz) {
  if (carrier_hz <= 0.0 || bandwidth_hz <= 0.0 || step_hz <= 0.0)
    throw std::invalid_argument("BandGrid::boi: invalid parameters");
  BandGrid g;
  g.omega0 = kTwoPi * (carrier_hz - bandwidth_hz / 2.0);
  g.omega1 = kTwoPi * (carrier_hz + bandwidth_hz / 2.0);
  g.n_points = static_cast<int>(std::lround(bandwidth_hz / step_hz)) + 1;
  return g;
}

void Canceler::validate() const {
  const int m = taps();
  if (m < 1) throw std::invalid_argument("Canceler: needs at least one tap");
  if (prop_loss.size() != m || tap_coupling.size() != m)
    throw std::invalid_argument("Canceler: loss vectors must match tap count");
  for (int i = 1; i < m; ++i)
    if (!(delays(i) > delays(i - 1)))
      throw std::invalid_argument("Canceler: delays must be strictly increasing");
  for (int i = 0; i < m; ++i) {
    if (!(prop_loss(i) > 0.0 && prop_loss(i) <= 1.0) ||
        !(tap_coupling(i) > 0.0 && tap_coupling(i) <= 1.0))
      throw std::invalid_argument("Canceler: losses must lie in (0, 1]");
  }
  if (w_i.size() == m && w_q.size() == m) {
    for (int i = 0; i < m; ++i)
      if (std::abs(w_i(i)) > 1.0 || std::abs(w_q(i)) > 1.0)
        throw std::invalid_argument("Canceler: weights must lie in [-1, 1]");
  }
}

std::complex<double> canceler_response(const Canceler& c, double omega) {
  std::complex<double> h = 0.0;
  for (int m = 0; m < c.taps(); ++m) {
    const std::complex<double> w(c.w_i(m), c.w_q(m));
    h += c.prop_loss(m) * c.tap_coupling(m) * w * std::polar(1.0, -omega * c.delays(m));
  }
  return c.coupler_loss * h;
}

Eigen::ArrayXcd canceler_response_grid(const Canceler& c) {
  const Eigen::ArrayXd omegas = c.band.omegas();
  Eigen::ArrayXcd h(omegas.size());
  for (int i = 0; i < omegas.size(); ++i) h(i) = canceler_response(c, omegas(i));
  return h;
}

LossProfile LossProfile::microstrip() {
  LossProfile p;
  p.kind = Kind::kMicrostrip;
  p.per_meter_loss_db = 2.967;
  p.coupler_db = 0.0;
  p.propagation_speed = 1.3e8;  // high-permittivity substrate
  p.per_tap_through_db = 0.9;   // directional-coupler through path
  return p;
}

LossProfile LossProfile::fbg() {
  LossProfile p;
  p.kind = Kind::kFbg;
  p.per_meter_loss_db = 0.461;  // fiber coiled to 2 cm
  p.coupler_db = 20.0;          // hybrid coupler into the optical path
  p.propagation_speed = 3e8 / 1.468;
  p.per_tap_through_db = 0.1;   // per-grating transmission loss
  return p;
}

Canceler apply_loss_profile(const LossProfile& profile, int taps, double delay_span,
                            const BandGrid& band) {
  if (taps < 1) throw std::invalid_argument("apply_loss_profile: taps must be >= 1");
  if (delay_span <= 0.0) throw std::invalid_argument("apply_loss_profile: span must be > 0");
  Canceler c;
  c.band = band;
  c.coupler_loss = db_to_amplitude(profile.coupler_db);
  c.delays.resize(taps);
  c.prop_loss.resize(taps);
  c.tap_coupling.resize(taps);
  const double pitch = delay_span / taps;
  for (int m = 0; m < taps; ++m) {
    c.delays(m) = (m + 0.5) * pitch;
    const double length = c.delays(m) * profile.propagation_speed;
    const double loss_db = profile.per_meter_loss_db * length + profile.per_tap_through_db * m;
    c.prop_loss(m) = db_to_amplitude(loss_db);
    c.tap_coupling(m) = 1.0;
  }
  c.w_i = Eigen::ArrayXd::Zero(taps);
  c.w_q = Eigen::ArrayXd::Zero(taps);
  return c;
}

FitResult fit_weights(const Eigen::ArrayXcd& target, Canceler& c) {
  c.validate();
  const int m = c.taps();
  const Eigen::ArrayXd omegas = c.band.omegas();
  const int nf = static_cast<int>(omegas.size());
  if (static_cast<int>(target.size()) != nf)
    throw std::invalid_argument("fit_weights: target length must match the band grid");
  if (nf < 2 * m)
    throw std::invalid_argument("fit_weights: grid shorter than 2M taps, problem is ill-posed");

  // model: target(w) ~= sum_m env_m (w_I,m + j w_Q,m) e^{-j w tau_m}.
  // Rescaled variables u = env .* w keep the design columns unit-modulus.
  const Eigen::ArrayXd env = c.envelope();
  Eigen::MatrixXcd e(nf, m);
  for (int i = 0; i < nf; ++i)
    for (int j = 0; j < m; ++j) e(i, j) = std::polar(1.0, -omegas(i) * c.delays(j));

  Eigen::MatrixXd a(2 * nf, 2 * m);
  a.topLeftCorner(nf, m) = e.real();
  a.topRightCorner(nf, m) = -e.imag();
  a.bottomLeftCorner(nf, m) = e.imag();
  a.bottomRightCorner(nf, m) = e.real();
  Eigen::VectorXd b(2 * nf);
  b.head(nf) = target.real();
  b.tail(nf) = target.imag();

  FitResult fit;
  fit.zero_residual = b.squaredNorm();

  Eigen::VectorXd u = a.colPivHouseholderQr().solve(b);
  Eigen::VectorXd w(2 * m);
  for (int j = 0; j < m; ++j) {
    w(j) = u(j) / env(j);
    w(m + j) = u(m + j) / env(j);
  }
  if (w.lpNorm<Eigen::Infinity>() <= 1.0) {
    fit.residual = (a * u - b).squaredNorm();
    fit.iterations = 1;
  } else {
    fit.box_active = true;
    Eigen::VectorXd bound(2 * m);
    bound.head(m) = env.matrix();
    bound.tail(m) = env.matrix();
    const BvlsResult r = bvls(a, b, -bound, bound);
    fit.residual = r.residual_norm2;
    fit.iterations = r.iterations;
    for (int j = 0; j < m; ++j) {
      w(j) = std::clamp(r.x(j) / env(j), -1.0, 1.0);
      w(m + j) = std::clamp(r.x(m + j) / env(j), -1.0, 1.0);
    }
  }
  c.w_i = w.head(m).array();
  c.w_q = w.tail(m).array();
  return fit;
}

double cancellation_db(const Eigen::ArrayXcd& target, const Canceler& fitted) {
  const double num = target.abs2().sum();
  if (num <= 0.0) throw std::invalid_argument("cancellation_db: zero-energy target");
  const Eigen::ArrayXcd h = canceler_response_grid(fitted);
  const double den = (target - h).abs2().sum();
  if (den <= 0.0) return kCancellationCapDb;
  return std::min(10.0 * std::log10(num / den), kCancellationCapDb);
}

Eigen::ArrayXcd scalar_si_response(const ScalarSiModel& model, const BandGrid& band,
                                   RngStream& rng) {
  if (model.n_paths < 1) throw std::invalid_argument("scalar_si_response: need NLOS paths");
  const int n = model.n_paths;
  Eigen::ArrayXcd gains(n + 1);
  Eigen::ArrayXd delays(n + 1);

  const double k = model.rician_factor;
  delays(0) = model.los_delay;
  gains(0) = std::sqrt(k / (k + 1.0));
  Eigen::ArrayXcd nlos(n);
  for (int i = 0; i < n; ++i) {
    nlos(i) = rng.cgaussian();
    delays(i + 1) = rng.uniform(0.0, model.delay_spread);
  }
  nlos *= std::sqrt(1.0 / (k + 1.0)) / std::sqrt(nlos.abs2().sum());
  gains.tail(n) = nlos;
  gains *= std::pow(10.0, model.level_db / 20.0);

  const Eigen::ArrayXd omegas = band.omegas();
  Eigen::ArrayXcd h = Eigen::ArrayXcd::Zero(omegas.size());
  for (int i = 0; i <= n; ++i)
    for (int j = 0; j < omegas.size(); ++j)
      h(j) += gains(i) * std::polar(1.0, -omegas(j) * delays(i));
  return h;
}

Eigen::MatrixXd sweep_taps_bandwidth(const LossProfile& profile,
                                     const std::vector<int>& tap_counts,
                                     const std::vector<double>& bandwidths_hz, double carrier_hz,
                                     double grid_step_hz, const ScalarSiModel& si_model,
                                     int trials, std::uint64_t seed) {
  if (tap_counts.empty() || bandwidths_hz.empty())
    throw std::invalid_argument("sweep_taps_bandwidth: empty sweep lists");
  if (trials < 1) throw std::invalid_argument("sweep_taps_bandwidth: trials must be >= 1");

  Eigen::MatrixXd mean_db =
      Eigen::MatrixXd::Zero(static_cast<int>(bandwidths_hz.size()),
                            static_cast<int>(tap_counts.size()));
  for (std::size_t bi = 0; bi < bandwidths_hz.size(); ++bi) {
    const BandGrid band = BandGrid::boi(carrier_hz, bandwidths_hz[bi], grid_step_hz);
    for (int t = 0; t < trials; ++t) {
      // one SI realization per (bandwidth, trial), shared across tap counts
      RngStream rng = RngStream::derive(seed, static_cast<std::uint64_t>(t), bi);
      const Eigen::ArrayXcd target = scalar_si_response(si_model, band, rng);
      for (std::size_t mi = 0; mi < tap_counts.size(); ++mi) {
        Canceler c = apply_loss_profile(profile, tap_counts[mi], si_model.delay_spread, band);
        fit_weights(target, c);
        mean_db(static_cast<int>(bi), static_cast<int>(mi)) += cancellation_db(target, c);
      }
    }
  }
  return mean_db / static_cast<double>(trials);
}

}  // namespace fdiab
