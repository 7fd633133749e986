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

#ifndef FDIAB_BVLS_HPP
#define FDIAB_BVLS_HPP

#include <Eigen/Dense>

namespace fdiab {

struct BvlsResult {
  Eigen::VectorXd x;
  double residual_norm2 = 0.0;  // ||A x - b||^2 at the solution
  int iterations = 0;
  bool converged = false;
};

/// Bounded-variable least squares: minimize ||A x - b||^2 subject to
/// lower <= x <= upper, by the Lawson-Hanson / Stark-Parker active-set
/// method. The problem is convex; the returned residual is the global
/// optimum (to `tol` on the KKT gradient test). Deterministic.
BvlsResult bvls(const Eigen::MatrixXd& a, const Eigen::VectorXd& b, const Eigen::VectorXd& lower,
                const Eigen::VectorXd& upper, double tol = 1e-12, int max_iterations = 0);

}  // namespace fdiab

#endif  // FDIAB_BVLS_HPP
