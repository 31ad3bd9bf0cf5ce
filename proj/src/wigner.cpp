// Copyright 2026 The Cubist Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <algorithm>
#include <cmath>
#include <vector>

#include "cubist/phase_space.hpp"

namespace cubist {
namespace {

void require_axis(const Axis& a) {
  if (a.count < 2 || !(a.max > a.min) || !std::isfinite(a.min) || !std::isfinite(a.max)) {
    throw InvalidArgument("axis needs count >= 2 and finite min < max");
  }
}

// Fractional grid coordinate, snapped to the node when within rounding noise.
double grid_coordinate(const Axis& a, double v) {
  const double t = (v - a.min) / a.step();
  const double r = std::round(t);
  return std::abs(t - r) < 1e-9 ? r : t;
}

}  // namespace

WignerGrid::WignerGrid(Axis x_axis, Axis p_axis)
    : x(x_axis), p(p_axis), values(Eigen::MatrixXd::Zero(x_axis.count, p_axis.count)) {
  require_axis(x);
  require_axis(p);
}

double WignerGrid::integral() const { return values.sum() * x.step() * p.step(); }

bool WignerGrid::covers(double xv, double pv) const {
  const double tx = grid_coordinate(x, xv), tp = grid_coordinate(p, pv);
  return tx >= 0.0 && tx <= x.count - 1 && tp >= 0.0 && tp <= p.count - 1;
}

double WignerGrid::sample(double xv, double pv) const {
  const double tx = grid_coordinate(x, xv), tp = grid_coordinate(p, pv);
  if (!(tx >= 0.0 && tx <= x.count - 1 && tp >= 0.0 && tp <= p.count - 1)) {
    throw CoverageError("point outside the ancilla Wigner grid");
  }
  const int i = std::min(static_cast<int>(tx), x.count - 2);
  const int j = std::min(static_cast<int>(tp), p.count - 2);
  const double fx = tx - i, fp = tp - j;
  return (1 - fx) * (1 - fp) * values(i, j) + fx * (1 - fp) * values(i + 1, j) +
         (1 - fx) * fp * values(i, j + 1) + fx * fp * values(i + 1, j + 1);
}

WignerGrid wigner_of_state(const StateVector& state, Axis x, Axis p) {
  if (state.num_modes() != 1) throw InvalidArgument("Wigner grid needs a single-mode state");
  WignerGrid grid(x, p);
  const StateVector normalized = state.normalized();
  const auto c = normalized.amplitudes();
  const int d = static_cast<int>(c.size());

  // rho_mn = c_m conj(c_n); only m >= n is needed.
  Eigen::MatrixXcd rho(d, d);
  for (int m = 0; m < d; ++m)
    for (int n = 0; n < d; ++n) rho(m, n) = c[m] * std::conj(c[n]);
  // sqrt(n!/m!) for m = n + k.
  Eigen::MatrixXd ratio(d, d);
  for (int n = 0; n < d; ++n) {
    double r = 1.0;
    ratio(n, 0) = 1.0;
    for (int k = 1; n + k < d; ++k) {
      r /= std::sqrt(static_cast<double>(n + k));
      ratio(n, k) = r;
    }
  }

  std::vector<double> lag(d);
  for (int i = 0; i < x.count; ++i) {
    const double xv = x.at(i);
    for (int j = 0; j < p.count; ++j) {
      const double pv = p.at(j);
      const double r2 = xv * xv + pv * pv;
      const double t = 2.0 * r2;
      const cplx z(kSqrt2 * xv, -kSqrt2 * pv);
      double w = 0.0;
      cplx zk = 1.0;
      for (int k = 0; k < d; ++k) {
        // Generalized Laguerre L_n^(k)(t), n = 0 .. d-1-k.
        const int nmax = d - 1 - k;
        lag[0] = 1.0;
        if (nmax >= 1) lag[1] = 1.0 + k - t;
        for (int n = 1; n < nmax; ++n) {
          lag[n + 1] = ((2 * n + 1 + k - t) * lag[n] - (n + k) * lag[n - 1]) / (n + 1);
        }
        cplx acc = 0.0;
        for (int n = 0; n <= nmax; ++n) {
          const double sign = (n % 2 == 0) ? 1.0 : -1.0;
          acc += rho(n + k, n) * (sign * ratio(n, k) * lag[n]);
        }
        acc *= zk;
        w += (k == 0 ? 1.0 : 2.0) * acc.real();
        zk *= z;
      }
      grid.values(i, j) = w * std::exp(-r2) / kPi;
    }
  }
  return grid;
}

WignerGrid ideal_cubic_wigner(double gamma, Axis x, Axis p) {
  if (gamma == 0.0) {
    throw InvalidArgument("gamma = 0 degenerates the cubic state to a momentum eigenstate");
  }
  WignerGrid grid(x, p);
  const double k = std::cbrt(4.0 / (3.0 * gamma));
  const double pref = 2.0 * kPi * std::abs(k);
  for (int i = 0; i < x.count; ++i) {
    const double xv = x.at(i);
    for (int j = 0; j < p.count; ++j) {
      const double arg = k * (3.0 * gamma * xv * xv - p.at(j));
      // Ai(40) ~ 1e-75: anything beyond is zero at double precision.
      grid.values(i, j) = arg > 40.0 ? 0.0 : pref * airy(arg);
    }
  }
  const double total = grid.integral();
  if (total == 0.0) throw InvalidArgument("ideal cubic Wigner function vanishes on this grid");
  grid.values /= total;
  return grid;
}

int sign_changes_along_p(const WignerGrid& grid, double x0, double relative_threshold) {
  const int i = std::clamp(static_cast<int>(std::lround((x0 - grid.x.min) / grid.x.step())), 0,
                           grid.x.count - 1);
  const double scale = grid.values.row(i).cwiseAbs().maxCoeff();
  int changes = 0;
  int last = 0;
  for (int j = 0; j < grid.p.count; ++j) {
    const double v = grid.values(i, j);
    if (std::abs(v) <= relative_threshold * scale) continue;
    const int s = v > 0 ? 1 : -1;
    if (last != 0 && s != last) ++changes;
    last = s;
  }
  return changes;
}

}  // namespace cubist
