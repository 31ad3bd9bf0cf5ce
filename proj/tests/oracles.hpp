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

#pragma once

// Brute-force reference optimum for small photon cutoffs.

#include <algorithm>
#include <array>
#include <cmath>
#include <functional>
#include <utility>
#include <vector>

#include "cubist/fock.hpp"

namespace cubist::oracle {

// Var(lambda' P - 3 X^2 / lambda'^2) of a Fock superposition, from explicit
// matrix products on a space large enough to hold y|psi> exactly.
inline double brute_variance(const std::vector<cplx>& c, double lambda) {
  const int dim = static_cast<int>(c.size()) + 6;
  const auto [x, p] = quadrature_ops(dim);
  const Eigen::MatrixXcd y = lambda * p.entries - 3.0 / (lambda * lambda) * (x.entries * x.entries);
  Eigen::VectorXcd psi = Eigen::VectorXcd::Zero(dim);
  for (std::size_t n = 0; n < c.size(); ++n) psi(n) = c[n];
  psi.normalize();
  const Eigen::VectorXcd ypsi = y * psi;
  const double mean = psi.dot(ypsi).real();
  return ypsi.squaredNorm() - mean * mean;
}

template <std::size_t D>
double nelder_mead(const std::function<double(const std::array<double, D>&)>& f, std::array<double, D> start,
                   double step) {
  std::array<std::array<double, D>, D + 1> s;
  std::array<double, D + 1> v;
  for (std::size_t i = 0; i <= D; ++i) {
    s[i] = start;
    if (i > 0) s[i][i - 1] += step;
    v[i] = f(s[i]);
  }
  for (int it = 0; it < 20000; ++it) {
    std::array<std::size_t, D + 1> order;
    for (std::size_t i = 0; i <= D; ++i) order[i] = i;
    std::sort(order.begin(), order.end(), [&](auto a, auto b) { return v[a] < v[b]; });
    const std::size_t best = order[0], worst = order[D], second = order[D - 1];
    if (v[worst] - v[best] < 1e-15) break;
    std::array<double, D> centroid{};
    for (std::size_t i = 0; i <= D; ++i)
      if (i != worst)
        for (std::size_t k = 0; k < D; ++k) centroid[k] += s[i][k] / D;
    auto along = [&](double t) {
      std::array<double, D> r;
      for (std::size_t k = 0; k < D; ++k) r[k] = centroid[k] + t * (s[worst][k] - centroid[k]);
      return r;
    };
    const auto xr = along(-1.0);
    const double fr = f(xr);
    if (fr < v[best]) {
      const auto xe = along(-2.0);
      const double fe = f(xe);
      if (fe < fr) {
        s[worst] = xe, v[worst] = fe;
      } else {
        s[worst] = xr, v[worst] = fr;
      }
    } else if (fr < v[second]) {
      s[worst] = xr, v[worst] = fr;
    } else {
      const auto xc = along(0.5);
      const double fc = f(xc);
      if (fc < v[worst]) {
        s[worst] = xc, v[worst] = fc;
      } else {
        for (std::size_t i = 0; i <= D; ++i) {
          if (i == best) continue;
          for (std::size_t k = 0; k < D; ++k) s[i][k] = s[best][k] + 0.5 * (s[i][k] - s[best][k]);
          v[i] = f(s[i]);
        }
      }
    }
  }
  return *std::min_element(v.begin(), v.end());
}

// Coarse exhaustive scan over the coefficient sphere and lambda', then a simplex polish
// from the best few cells.
inline double brute_force_optimum_n1() {
  auto f = [](const std::array<double, 3>& a) {
    return brute_variance({std::cos(a[1]), std::sin(a[1]) * std::polar(1.0, a[2])}, a[0]);
  };
  std::vector<std::pair<double, std::array<double, 3>>> cells;
  for (double l = 0.5; l <= 4.0; l += 0.1)
    for (double t = 0.0; t < kPi; t += kPi / 24)
      for (double ph = 0.0; ph < 2 * kPi; ph += kPi / 12) {
        const std::array<double, 3> a{l, t, ph};
        cells.push_back({f(a), a});
      }
  std::partial_sort(cells.begin(), cells.begin() + 5, cells.end(),
                    [](const auto& a, const auto& b) { return a.first < b.first; });
  double best = cells[0].first;
  for (int i = 0; i < 5; ++i) best = std::min(best, nelder_mead<3>(f, cells[i].second, 0.05));
  return best;
}

inline double brute_force_optimum_n2() {
  auto f = [](const std::array<double, 5>& a) {
    return brute_variance({std::cos(a[1]), std::sin(a[1]) * std::cos(a[2]) * std::polar(1.0, a[3]),
                           std::sin(a[1]) * std::sin(a[2]) * std::polar(1.0, a[4])},
                          a[0]);
  };
  std::vector<std::pair<double, std::array<double, 5>>> cells;
  for (double l = 0.6; l <= 3.6; l += 0.2)
    for (double t = 0.0; t < kPi; t += kPi / 12)
      for (double u = 0.0; u < kPi; u += kPi / 12)
        for (double p1 = 0.0; p1 < 2 * kPi; p1 += kPi / 6)
          for (double p2 = 0.0; p2 < 2 * kPi; p2 += kPi / 6) {
            const std::array<double, 5> a{l, t, u, p1, p2};
            cells.push_back({f(a), a});
          }
  std::partial_sort(cells.begin(), cells.begin() + 8, cells.end(),
                    [](const auto& a, const auto& b) { return a.first < b.first; });
  double best = cells[0].first;
  for (int i = 0; i < 8; ++i) best = std::min(best, nelder_mead<5>(f, cells[i].second, 0.05));
  return best;
}

}  // namespace cubist::oracle
