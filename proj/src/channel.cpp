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

#include "fdiab/channel.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <ostream>
#include <istream>
#include <sstream>
#include <stdexcept>

#include "json.hpp"

namespace fdiab {

namespace {
constexpr double kTwoPi = 2.0 * M_PI;

double sinc(double x) {
  if (std::abs(x) < 1e-12) return 1.0;
  return std::sin(M_PI * x) / (M_PI * x);
}

Eigen::Vector3d direction(double azimuth, double elevation) {
  return {std::cos(azimuth) * std::cos(elevation), std::sin(azimuth) * std::cos(elevation),
          std::sin(elevation)};
}
}  // namespace

Eigen::VectorXcd steering_vector(const ArrayGeometry& geometry, double azimuth, double elevation,
                                 double wavelength) {
  if (!std::isfinite(azimuth) || !std::isfinite(elevation))
    throw std::invalid_argument("steering_vector: non-finite angle");
  if (wavelength <= 0.0) throw std::invalid_argument("steering_vector: wavelength must be > 0");
  const int n = geometry.size();
  if (n < 1) throw std::invalid_argument("steering_vector: empty geometry");

  const Eigen::Vector3d u = direction(azimuth, elevation);
  const double scale = 1.0 / std::sqrt(static_cast<double>(n));
  const double k0 = kTwoPi / wavelength;
  Eigen::VectorXcd a(n);
  for (int i = 0; i < n; ++i) {
    const double phase = k0 * geometry.element_coords[i].dot(u);
    a(i) = std::polar(scale, phase);
  }
  return a;
}

double close_in_path_loss(double r, double r0, double wavelength, double exponent) {
  if (r0 <= 0.0) throw std::invalid_argument("close_in_path_loss: r0 must be > 0");
  if (r < r0) throw std::invalid_argument("close_in_path_loss: r < r0 (inside reference distance)");
  if (wavelength <= 0.0) throw std::invalid_argument("close_in_path_loss: wavelength must be > 0");
  const double ref = 4.0 * M_PI * r0 / wavelength;
  return ref * ref * std::pow(r / r0, exponent);
}

double raised_cosine(double t, double ts, double rolloff) {
  if (ts <= 0.0) throw std::invalid_argument("raised_cosine: ts must be > 0");
  if (rolloff < 0.0 || rolloff > 1.0)
    throw std::invalid_argument("raised_cosine: rolloff must be in [0, 1]");
  const double x = t / ts;
  if (rolloff == 0.0) return sinc(x);
  const double guard = 1e-9;
  // removable singularity at |t| = ts / (2 rolloff)
  const double xs = 1.0 / (2.0 * rolloff);
  if (std::abs(std::abs(x) - xs) < guard)
    return (M_PI / 4.0) * sinc(xs);
  const double denom = 1.0 - (2.0 * rolloff * x) * (2.0 * rolloff * x);
  return sinc(x) * std::cos(M_PI * rolloff * x) / denom;
}

std::complex<double> subcarrier_tap_gain(double tau, int k, int n_subcarriers, int n_taps,
                                         double ts, double rolloff) {
  if (k < 0 || k >= n_subcarriers)
    throw std::invalid_argument("subcarrier_tap_gain: subcarrier index out of range");
  if (tau < 0.0 || tau >= n_taps * ts)
    throw std::invalid_argument("subcarrier_tap_gain: delay outside the cyclic-prefix span");
  std::complex<double> chi = 0.0;
  for (int d = 0; d < n_taps; ++d) {
    const double p = raised_cosine(d * ts - tau, ts, rolloff);
    chi += p * std::polar(1.0, -kTwoPi * k * d / n_subcarriers);
  }
  return chi;
}

ClusterRayParams ClusterRayParams::draw(int n_clusters, int n_rays, double angle_spread,
                                        double delay_span, RngStream& rng) {
  if (n_clusters < 1 || n_rays < 1)
    throw std::invalid_argument("ClusterRayParams::draw: need at least one cluster and ray");
  ClusterRayParams p;
  p.n_clusters = n_clusters;
  p.n_rays = n_rays;
  const int n = n_clusters * n_rays;
  p.aod_azimuth.resize(n);
  p.aod_elevation.resize(n);
  p.aoa_azimuth.resize(n);
  p.aoa_elevation.resize(n);
  p.gains.resize(n);
  p.delays.resize(n);

  auto wrap_pi = [](double a) {
    while (a > M_PI) a -= kTwoPi;
    while (a < -M_PI) a += kTwoPi;
    return a;
  };
  auto clamp_el = [](double a) { return std::clamp(a, -M_PI / 2.0, M_PI / 2.0); };

  for (int c = 0; c < n_clusters; ++c) {
    const double aod_az = rng.uniform(-M_PI, M_PI);
    const double aod_el = rng.uniform(-M_PI / 2.0, M_PI / 2.0);
    const double aoa_az = rng.uniform(-M_PI, M_PI);
    const double aoa_el = rng.uniform(-M_PI / 2.0, M_PI / 2.0);
    for (int l = 0; l < n_rays; ++l) {
      const int i = c * n_rays + l;
      p.aod_azimuth(i) = wrap_pi(aod_az + rng.laplacian(angle_spread));
      p.aod_elevation(i) = clamp_el(aod_el + rng.laplacian(angle_spread));
      p.aoa_azimuth(i) = wrap_pi(aoa_az + rng.laplacian(angle_spread));
      p.aoa_elevation(i) = clamp_el(aoa_el + rng.laplacian(angle_spread));
      p.gains(i) = rng.cgaussian();
      p.delays(i) = rng.uniform(0.0, delay_span);
    }
  }
  return p;
}

void ClusterRayParams::validate(double delay_span) const {
  const int n = n_paths();
  if (n < 1 || aod_azimuth.size() != n || aoa_azimuth.size() != n || gains.size() != n ||
      delays.size() != n)
    throw std::invalid_argument("ClusterRayParams: inconsistent sizes");
  for (int i = 0; i < n; ++i) {
    if (std::abs(aoa_azimuth(i)) > M_PI || std::abs(aod_azimuth(i)) > M_PI)
      throw std::invalid_argument("ClusterRayParams: azimuth outside [-pi, pi]");
    if (std::abs(aoa_elevation(i)) > M_PI / 2.0 || std::abs(aod_elevation(i)) > M_PI / 2.0)
      throw std::invalid_argument("ClusterRayParams: elevation outside [-pi/2, pi/2]");
    if (delays(i) < 0.0 || delays(i) >= delay_span)
      throw std::invalid_argument("ClusterRayParams: delay outside [0, span)");
  }
}

Eigen::MatrixXcd ChannelRealization::reconstruct(int k) const {
  return steering_rx * path_gains.col(k).asDiagonal() * steering_tx.adjoint();
}

ChannelRealization generate_general_channel(const ArrayGeometry& tx, const ArrayGeometry& rx,
                                            const ClusterRayParams& params, int n_subcarriers,
                                            int n_taps, double ts, double path_loss_linear,
                                            double wavelength) {
  params.validate(n_taps * ts);
  if (path_loss_linear <= 0.0)
    throw std::invalid_argument("generate_general_channel: path loss must be > 0");
  const int n_paths = params.n_paths();
  const int n_r = rx.size();
  const int n_t = tx.size();

  ChannelRealization ch;
  ch.params = params;
  ch.path_loss_linear = path_loss_linear;
  ch.steering_rx.resize(n_r, n_paths);
  ch.steering_tx.resize(n_t, n_paths);
  for (int i = 0; i < n_paths; ++i) {
    ch.steering_rx.col(i) =
        steering_vector(rx, params.aoa_azimuth(i), params.aoa_elevation(i), wavelength);
    ch.steering_tx.col(i) =
        steering_vector(tx, params.aod_azimuth(i), params.aod_elevation(i), wavelength);
  }

  const double norm = std::sqrt(static_cast<double>(n_r) * n_t /
                                (static_cast<double>(n_paths) * path_loss_linear));
  ch.path_gains.resize(n_paths, n_subcarriers);
  for (int i = 0; i < n_paths; ++i) {
    // chi_{c,l}[k] over all k for this path
    for (int k = 0; k < n_subcarriers; ++k) {
      ch.path_gains(i, k) =
          norm * params.gains(i) * subcarrier_tap_gain(params.delays(i), k, n_subcarriers, n_taps, ts);
    }
  }

  ch.per_subcarrier.resize(n_subcarriers);
  for (int k = 0; k < n_subcarriers; ++k) ch.per_subcarrier[k] = ch.reconstruct(k);
  return ch;
}

ChannelRealization draw_general_channel(const ArrayGeometry& tx, const ArrayGeometry& rx,
                                        int n_clusters, int n_rays, double angle_spread,
                                        int n_subcarriers, int n_taps, double ts,
                                        double path_loss_linear, double wavelength,
                                        RngStream& rng) {
  const auto params = ClusterRayParams::draw(n_clusters, n_rays, angle_spread, n_taps * ts, rng);
  return generate_general_channel(tx, rx, params, n_subcarriers, n_taps, ts, path_loss_linear,
                                  wavelength);
}

SiPose compute_si_pose(const ArrayGeometry& tx, const ArrayGeometry& rx,
                       const SiChannelSpec& spec) {
  SiPose pose;
  const Eigen::Vector3d rx_c = rx.center();
  const Eigen::Vector3d tx_c = tx.center();

  pose.rx_positions.reserve(rx.size());
  for (const auto& p : rx.element_coords) pose.rx_positions.push_back(p - rx_c);

  // transmit panel: centered, rotated by the separation angle about its own
  // y-axis, then placed `separation` below the receive panel along -z
  const double psi = spec.separation_angle;
  Eigen::Matrix3d rot_y;
  rot_y << std::cos(psi), 0.0, std::sin(psi), 0.0, 1.0, 0.0, -std::sin(psi), 0.0, std::cos(psi);
  const Eigen::Vector3d offset(0.0, 0.0, -spec.separation);
  pose.tx_positions.reserve(tx.size());
  for (const auto& p : tx.element_coords) pose.tx_positions.push_back(rot_y * (p - tx_c) + offset);

  // LOS angles from the boresight-to-boresight direction
  const Eigen::Vector3d u_arrival = offset.normalized();  // rx center -> tx center
  pose.aoa_azimuth = std::atan2(u_arrival.y(), u_arrival.x());
  pose.aoa_elevation = std::asin(std::clamp(u_arrival.z(), -1.0, 1.0));
  const Eigen::Vector3d u_depart_local = rot_y.transpose() * (-offset).normalized();
  pose.aod_azimuth = std::atan2(u_depart_local.y(), u_depart_local.x());
  pose.aod_elevation = std::asin(std::clamp(u_depart_local.z(), -1.0, 1.0));
  return pose;
}

Eigen::MatrixXcd si_los_matrix(const ArrayGeometry& tx, const ArrayGeometry& rx,
                               const SiChannelSpec& spec, double wavelength) {
  const SiPose pose = compute_si_pose(tx, rx, spec);
  const int n_r = rx.size();
  const int n_t = tx.size();
  const double gamma = std::sqrt(static_cast<double>(n_r) * n_t);

  const Eigen::VectorXcd a_r = steering_vector(rx, pose.aoa_azimuth, pose.aoa_elevation, wavelength);
  const Eigen::VectorXcd a_t = steering_vector(tx, pose.aod_azimuth, pose.aod_elevation, wavelength);

  Eigen::MatrixXcd h = a_r * a_t.adjoint();
  for (int p = 0; p < n_r; ++p) {
    for (int q = 0; q < n_t; ++q) {
      const double r_pq = (pose.rx_positions[p] - pose.tx_positions[q]).norm();
      if (r_pq <= 0.0) throw std::invalid_argument("si_los_matrix: coincident elements");
      h(p, q) *= std::polar(gamma / r_pq, -kTwoPi * r_pq / wavelength);
    }
  }
  return h;
}

SiChannelRealization generate_si_channel(const ArrayGeometry& tx, const ArrayGeometry& rx,
                                         const SiChannelSpec& spec, int n_subcarriers, int n_taps,
                                         double ts, double wavelength, RngStream& rng) {
  if (spec.rician_factor <= 0.0)
    throw std::invalid_argument("generate_si_channel: rician factor must be > 0");
  SiChannelRealization si;
  si.rician_factor = spec.rician_factor;
  si.los = si_los_matrix(tx, rx, spec, wavelength);

  // NLOS level tied to the LOS level so the power ratio of the Rician mix is
  // exactly the Rician factor: E||H_N||_F^2 = ||H_L||_F^2.
  const double los_energy = si.los.squaredNorm();
  const double pl_equivalent = static_cast<double>(rx.size()) * tx.size() / los_energy;
  si.nlos = draw_general_channel(tx, rx, spec.nlos_clusters, spec.nlos_rays, spec.angle_spread,
                                 n_subcarriers, n_taps, ts, pl_equivalent, wavelength, rng);

  const double c_los = std::sqrt(spec.rician_factor / (spec.rician_factor + 1.0));
  const double c_nlos = std::sqrt(1.0 / (spec.rician_factor + 1.0));
  si.per_subcarrier.resize(n_subcarriers);
  for (int k = 0; k < n_subcarriers; ++k)
    si.per_subcarrier[k] = c_los * si.los + c_nlos * si.nlos.per_subcarrier[k];
  return si;
}

std::string channel_to_json(const ChannelRealization& ch) {
  nlohmann::json j;
  const int n_r = ch.per_subcarrier.empty() ? 0 : static_cast<int>(ch.per_subcarrier[0].rows());
  const int n_t = ch.per_subcarrier.empty() ? 0 : static_cast<int>(ch.per_subcarrier[0].cols());
  j["n_r"] = n_r;
  j["n_t"] = n_t;
  j["n_subcarriers"] = ch.n_subcarriers();
  j["path_loss_linear"] = ch.path_loss_linear;
  nlohmann::json subs = nlohmann::json::array();
  for (const auto& h : ch.per_subcarrier) {
    nlohmann::json m = nlohmann::json::array();
    for (int r = 0; r < h.rows(); ++r)
      for (int c = 0; c < h.cols(); ++c)
        m.push_back({h(r, c).real(), h(r, c).imag()});  // row-major [re, im]
    subs.push_back(std::move(m));
  }
  j["subcarriers"] = std::move(subs);
  return j.dump();
}

namespace {
constexpr std::uint32_t kChannelMagic = 0x46444348;  // "FDCH"
}

void save_channel_binary(const ChannelRealization& ch, std::ostream& os) {
  const std::uint32_t n_r = ch.per_subcarrier.empty() ? 0u : ch.per_subcarrier[0].rows();
  const std::uint32_t n_t = ch.per_subcarrier.empty() ? 0u : ch.per_subcarrier[0].cols();
  const std::uint32_t n_k = ch.n_subcarriers();
  auto put_u32 = [&os](std::uint32_t v) { os.write(reinterpret_cast<const char*>(&v), 4); };
  put_u32(kChannelMagic);
  put_u32(n_k);
  put_u32(n_r);
  put_u32(n_t);
  for (const auto& h : ch.per_subcarrier)
    for (int r = 0; r < h.rows(); ++r)
      for (int c = 0; c < h.cols(); ++c) {
        const double re = h(r, c).real(), im = h(r, c).imag();
        os.write(reinterpret_cast<const char*>(&re), 8);
        os.write(reinterpret_cast<const char*>(&im), 8);
      }
}

std::vector<Eigen::MatrixXcd> load_channel_binary(std::istream& is) {
  auto get_u32 = [&is]() {
    std::uint32_t v = 0;
    is.read(reinterpret_cast<char*>(&v), 4);
    return v;
  };
  if (get_u32() != kChannelMagic)
    throw std::runtime_error("load_channel_binary: bad magic");
  const std::uint32_t n_k = get_u32(), n_r = get_u32(), n_t = get_u32();
  std::vector<Eigen::MatrixXcd> out(n_k);
  for (auto& h : out) {
    h.resize(n_r, n_t);
    for (std::uint32_t r = 0; r < n_r; ++r)
      for (std::uint32_t c = 0; c < n_t; ++c) {
        double re = 0, im = 0;
        is.read(reinterpret_cast<char*>(&re), 8);
        is.read(reinterpret_cast<char*>(&im), 8);
        h(r, c) = {re, im};
      }
  }
  if (!is) throw std::runtime_error("load_channel_binary: truncated stream");
  return out;
}

}  // namespace fdiab
