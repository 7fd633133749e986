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

#ifndef FDIAB_GEOMETRY_HPP
#define FDIAB_GEOMETRY_HPP

#include <Eigen/Dense>
#include <vector>

namespace fdiab {

/// Uniform planar array in the local XY-plane (z = 0 for every element).
/// Element n sits at (x, y) = (col(n) * spacing, row(n) * spacing), corner
/// anchored at the origin. For subarray-partitioned panels the element index
/// runs subarray-major so each RF chain drives a contiguous index range.
struct ArrayGeometry {
  int rows = 0;
  int cols = 0;
  double spacing = 0.0;  // meters
  std::vector<Eigen::Vector3d> element_coords;

  int size() const { return static_cast<int>(element_coords.size()); }

  /// Plain rows x cols UPA, row-major element order.
  static ArrayGeometry upa(int rows, int cols, double spacing);

  /// UPA of `n_subarrays` panels of rows x cols_per_subarray each, placed
  /// side by side along x. Element order is subarray-major, so the RF
  /// beamforming matrix for this panel is block diagonal over contiguous
  /// index ranges of length rows*cols_per_subarray.
  static ArrayGeometry upa_subarrays(int rows, int cols_per_subarray, int n_subarrays,
                                     double spacing);

  Eigen::Vector3d center() const;
};

}  // namespace fdiab

#endif  // FDIAB_GEOMETRY_HPP
