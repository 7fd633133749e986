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

#include "fdiab/rng.hpp"

#include <cmath>

namespace fdiab {

RngStream::RngStream(std::uint64_t seed) : eng_(seed) {}

RngStream RngStream::derive(std::uint64_t master, std::uint64_t trial, std::uint64_t lane) {
  const std::uint32_t words[6] = {
      static_cast<std::uint32_t>(master), static_cast<std::uint32_t>(master >> 32),
      static_cast<std::uint32_t>(trial),  static_cast<std::uint32_t>(trial >> 32),
      static_cast<std::uint32_t>(lane),   static_cast<std::uint32_t>(lane >> 32)};
  std::seed_seq seq(words, words + 6);
  RngStream out(0);
  out.eng_.seed(seq);
  return out;
}

std::uint64_t RngStream::uniform_index(std::uint64_t n) {
  // rejection sampling keeps the draw unbiased
  const std::uint64_t limit = n * (UINT64_MAX / n);
  std::uint64_t x;
  do {
    x = eng_();
  } while (x >= limit);
  return x % n;
}

double RngStream::gaussian() {
  if (has_cached_) {
    has_cached_ = false;
    return cached_;
  }
  double u1 = uniform();
  while (u1 <= 0.0) u1 = uniform();
  const double u2 = uniform();
  const double r = std::sqrt(-2.0 * std::log(u1));
  const double a = 2.0 * M_PI * u2;
  cached_ = r * std::sin(a);
  has_cached_ = true;
  return r * std::cos(a);
}

std::complex<double> RngStream::cgaussian() {
  const double re = gaussian();
  const double im = gaussian();
  return {re * M_SQRT1_2, im * M_SQRT1_2};
}

double RngStream::laplacian(double stddev) {
  const double b = stddev * M_SQRT1_2;
  const double u = uniform() - 0.5;
  const double mag = -b * std::log(1.0 - 2.0 * std::abs(u));
  return u < 0.0 ? -mag : mag;
}

}  // namespace fdiab
