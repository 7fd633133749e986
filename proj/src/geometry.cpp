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

#include "fdiab/geometry.hpp"

#include <stdexcept>

namespace fdiab {

ArrayGeometry ArrayGeometry::upa(int rows, int cols, double spacing) {
  if (rows < 1 || cols < 1 || spacing <= 0.0)
    throw std::invalid_argument("ArrayGeometry::upa: invalid dimensions");
  ArrayGeometry g;
  g.rows = rows;
  g.cols = cols;
  g.spacing = spacing;
  g.element_coords.reserve(static_cast<std::size_t>(rows) * cols);
  for (int r = 0; r < rows; ++r)
    for (int c = 0; c < cols; ++c)
      g.element_coords.emplace_back(c * spacing, r * spacing, 0.0);
  return g;
}

ArrayGeometry ArrayGeometry::upa_subarrays(int rows, int cols_per_subarray, int n_subarrays,
                                           double spacing) {
  if (rows < 1 || cols_per_subarray < 1 || n_subarrays < 1 || spacing <= 0.0)
    throw std::invalid_argument("ArrayGeometry::upa_subarrays: invalid dimensions");
  ArrayGeometry g;
  g.rows = rows;
  g.cols = cols_per_subarray * n_subarrays;
  g.spacing = spacing;
  g.element_coords.reserve(static_cast<std::size_t>(rows) * g.cols);
  for (int u = 0; u < n_subarrays; ++u)
    for (int r = 0; r < rows; ++r)
      for (int c = 0; c < cols_per_subarray; ++c)
        g.element_coords.emplace_back((u * cols_per_subarray + c) * spacing, r * spacing, 0.0);
  return g;
}

Eigen::Vector3d ArrayGeometry::center() const {
  Eigen::Vector3d c = Eigen::Vector3d::Zero();
  for (const auto& p : element_coords) c += p;
  return c / static_cast<double>(element_coords.size());
}

}  // namespace fdiab
