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

#ifndef FDIAB_RNG_HPP
#define FDIAB_RNG_HPP

#include <complex>
#include <cstdint>
#include <random>

namespace fdiab {

/// Deterministic random stream. All draws go through explicit, fully
/// specified transforms (53-bit uniforms, Box-Muller Gaussians) so that a
/// given (master seed, trial, lane) triple produces the same sequence on
/// every platform and under any thread count.
class RngStream {
 public:
  explicit RngStream(std::uint64_t seed);

  /// Derives an independent stream for (trial, lane) from a master seed.
  /// Lanes separate purposes within one trial (channel draws, pilot noise,
  /// error injection, ...). The split is a std::seed_seq over the 32-bit
  /// words of the three integers.
  static RngStream derive(std::uint64_t master, std::uint64_t trial, std::uint64_t lane);

  std::uint64_t next_u64() { return eng_(); }

  /// Uniform on [0, 1) with 53 random bits.
  double uniform() { return static_cast<double>(eng_() >> 11) * 0x1.0p-53; }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

  /// Uniform integer on [0, n).
  std::uint64_t uniform_index(std::uint64_t n);

  /// Standard normal via Box-Muller (pairs cached).
  double gaussian();

  /// Circularly symmetric CN(0, 1).
  std::complex<double> cgaussian();

  /// Zero-mean Laplacian with standard deviation `stddev` (scale = stddev/sqrt(2)).
  double laplacian(double stddev);

 private:
  std::mt19937_64 eng_;
  double cached_ = 0.0;
  bool has_cached_ = false;
};

}  // namespace fdiab

#endif  // FDIAB_RNG_HPP
