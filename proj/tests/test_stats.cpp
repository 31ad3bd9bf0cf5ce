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
#include <random>
#include <vector>

#include "cubist/fock.hpp"
#include "cubist/stats.hpp"
#include "doctest.h"

using namespace cubist;
using doctest::Approx;

TEST_CASE("Chi-square statistic on a hand-built sample") {
  // 40 samples on [0, 1] in four bins with counts 5, 15, 10, 10.
  std::vector<double> s;
  for (int i = 0; i < 5; ++i) s.push_back(0.1);
  for (int i = 0; i < 15; ++i) s.push_back(0.3);
  for (int i = 0; i < 10; ++i) s.push_back(0.6);
  for (int i = 0; i < 10; ++i) s.push_back(0.9);
  auto uniform = [](double x) { return std::clamp(x, 0.0, 1.0); };
  const ChiSquareResult r = chi_square_gof(s, uniform, 0.0, 1.0, 4);
  CHECK(r.bins == 4);
  CHECK(r.degrees_of_freedom == 3);
  CHECK(r.statistic == Approx(5.0));
  // Survival function of chi^2 with 3 degrees of freedom.
  const double x = 5.0;
  const double sf = std::erfc(std::sqrt(x / 2.0)) + std::sqrt(2.0 * x / kPi) * std::exp(-x / 2.0);
  CHECK(r.p_value == Approx(sf).epsilon(1e-12));
}

TEST_CASE("Sparse bins are merged") {
  std::vector<double> s(12, 0.5);
  auto uniform = [](double x) { return std::clamp(x, 0.0, 1.0); };
  const ChiSquareResult r = chi_square_gof(s, uniform, 0.0, 1.0, 2);
  CHECK(r.bins == 2);
  CHECK_THROWS_AS(chi_square_gof(std::vector<double>(6, 0.5), uniform, 0.0, 1.0, 4), InvalidArgument);
  CHECK_THROWS_AS(chi_square_gof(std::vector<double>{}, uniform, 0.0, 1.0, 4), InvalidArgument);
}

TEST_CASE("Goodness of fit accepts the true law and rejects a shifted one") {
  std::mt19937_64 rng(7);
  std::normal_distribution<double> normal(0.0, 1.0);
  std::vector<double> s(20000);
  for (double& v : s) v = normal(rng);
  auto cdf = [](double x) { return 0.5 * std::erfc(-x / std::sqrt(2.0)); };
  CHECK(chi_square_gof(s, cdf, -3.0, 3.0, 40).p_value > 1e-3);
  auto shifted = [](double x) { return 0.5 * std::erfc(-(x - 0.1) / std::sqrt(2.0)); };
  CHECK(chi_square_gof(s, shifted, -3.0, 3.0, 40).p_value < 1e-6);
}

TEST_CASE("Tabulated CDF integrates a piecewise linear density exactly") {
  const auto cdf = tabulated_cdf({0.0, 1.0, 2.0}, {0.0, 1.0, 0.0});
  CHECK(cdf(-1.0) == 0.0);
  CHECK(cdf(0.5) == Approx(0.125));
  CHECK(cdf(1.0) == Approx(0.5));
  CHECK(cdf(1.5) == Approx(0.875));
  CHECK(cdf(3.0) == 1.0);
  CHECK_THROWS_AS(tabulated_cdf({0.0}, {1.0}), InvalidArgument);
}

TEST_CASE("Homodyne samples of |1> follow the analytic marginal") {
  const StateVector one = StateVector::fock(4, 1);
  const HomodyneGrid g = default_homodyne_grid(one, 0, 0.0);
  std::vector<double> nodes(g.bins + 1);
  for (int i = 0; i <= g.bins; ++i) nodes[i] = g.min + (g.max - g.min) * i / g.bins;
  const auto pdf = homodyne_pdf(one, 0, 0.0, nodes);
  Rng rng(11);
  std::vector<double> s(20000);
  for (double& v : s) v = sample_tabulated(nodes, pdf, uniform01(rng));
  auto cdf = [](double x) { return 0.5 * std::erfc(-x) - x * std::exp(-x * x) / std::sqrt(kPi); };
  CHECK(chi_square_gof(s, cdf, -3.0, 3.0, 40).p_value > 1e-3);
}
