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

#include "fdiab/bvls.hpp"

#include <limits>
#include <stdexcept>
#include <vector>

namespace fdiab {

namespace {
enum class State : unsigned char { kFree, kLower, kUpper };
}

BvlsResult bvls(const Eigen::MatrixXd& a, const Eigen::VectorXd& b, const Eigen::VectorXd& lower,
                const Eigen::VectorXd& upper, double tol, int max_iterations) {
  const int n = static_cast<int>(a.cols());
  if (b.size() != a.rows() || lower.size() != n || upper.size() != n)
    throw std::invalid_argument("bvls: inconsistent dimensions");
  for (int j = 0; j < n; ++j)
    if (!(lower(j) <= upper(j))) throw std::invalid_argument("bvls: empty box");
  if (max_iterations <= 0) max_iterations = 30 * n + 50;

  const Eigen::MatrixXd gram = a.transpose() * a;
  const Eigen::VectorXd atb = a.transpose() * b;
  const double grad_scale = atb.lpNorm<Eigen::Infinity>() + 1.0;

  // warm start from the clipped unconstrained solution
  Eigen::VectorXd x = a.colPivHouseholderQr().solve(b);
  std::vector<State> state(n, State::kFree);
  for (int j = 0; j < n; ++j) {
    if (x(j) <= lower(j)) {
      x(j) = lower(j);
      state[j] = State::kLower;
    } else if (x(j) >= upper(j)) {
      x(j) = upper(j);
      state[j] = State::kUpper;
    }
  }

  auto solve_free = [&](const std::vector<int>& free_idx) -> Eigen::VectorXd {
    const int nf = static_cast<int>(free_idx.size());
    Eigen::MatrixXd gff(nf, nf);
    Eigen::VectorXd rhs(nf);
    for (int i = 0; i < nf; ++i) {
      rhs(i) = atb(free_idx[i]);
      for (int j = 0; j < nf; ++j) gff(i, j) = gram(free_idx[i], free_idx[j]);
    }
    // subtract the bound variables' contribution
    for (int j = 0; j < n; ++j) {
      if (state[j] == State::kFree || x(j) == 0.0) continue;
      for (int i = 0; i < nf; ++i) rhs(i) -= gram(free_idx[i], j) * x(j);
    }
    // rank-revealing solve; the free subproblem can be near-singular when the
    // tap grid oversamples the band
    return gff.completeOrthogonalDecomposition().solve(rhs);
  };

  BvlsResult out;
  int last_bound_var = -1;
  std::vector<char> skip(n, 0);

  for (int iter = 0; iter < max_iterations; ++iter) {
    out.iterations = iter + 1;

    // move the free set to its LS optimum, binding blockers on the way
    for (;;) {
      std::vector<int> free_idx;
      for (int j = 0; j < n; ++j)
        if (state[j] == State::kFree) free_idx.push_back(j);
      if (free_idx.empty()) break;

      const Eigen::VectorXd z = solve_free(free_idx);
      bool feasible = true;
      for (std::size_t i = 0; i < free_idx.size(); ++i) {
        const int j = free_idx[i];
        if (z(i) < lower(j) - 0.0 || z(i) > upper(j)) {
          feasible = false;
          break;
        }
      }
      if (feasible) {
        for (std::size_t i = 0; i < free_idx.size(); ++i) x(free_idx[i]) = z(i);
        break;
      }
      // largest feasible step from x toward z
      double alpha = 1.0;
      int blocker = -1;
      State blocker_state = State::kLower;
      for (std::size_t i = 0; i < free_idx.size(); ++i) {
        const int j = free_idx[i];
        const double d = z(i) - x(j);
        if (d < 0.0 && z(i) < lower(j)) {
          const double step = (lower(j) - x(j)) / d;
          if (step < alpha) {
            alpha = step;
            blocker = j;
            blocker_state = State::kLower;
          }
        } else if (d > 0.0 && z(i) > upper(j)) {
          const double step = (upper(j) - x(j)) / d;
          if (step < alpha) {
            alpha = step;
            blocker = j;
            blocker_state = State::kUpper;
          }
        }
      }
      for (std::size_t i = 0; i < free_idx.size(); ++i) {
        const int j = free_idx[i];
        x(j) += alpha * (z(i) - x(j));
        x(j) = std::min(std::max(x(j), lower(j)), upper(j));
      }
      if (blocker >= 0) {
        state[blocker] = blocker_state;
        x(blocker) = blocker_state == State::kLower ? lower(blocker) : upper(blocker);
        last_bound_var = blocker;
      } else {
        break;  // no progress possible
      }
    }

    // KKT test on the bound variables
    const Eigen::VectorXd w = atb - gram * x;
    int candidate = -1;
    double worst = tol * grad_scale;
    for (int j = 0; j < n; ++j) {
      if (skip[j]) continue;
      double violation = 0.0;
      if (state[j] == State::kLower && w(j) > 0.0) violation = w(j);
      if (state[j] == State::kUpper && w(j) < 0.0) violation = -w(j);
      if (violation > worst) {
        worst = violation;
        candidate = j;
      }
    }
    if (candidate < 0) {
      out.converged = true;
      break;
    }
    // anti-cycling: a variable that immediately re-binds is frozen for this pass
    if (candidate == last_bound_var) {
      skip[candidate] = 1;
      continue;
    }
    std::fill(skip.begin(), skip.end(), 0);
    state[candidate] = State::kFree;
  }

  out.x = x;
  out.residual_norm2 = (a * x - b).squaredNorm();
  return out;
}

}  // namespace fdiab
