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

#include <functional>
#include <span>
#include <vector>

namespace cubist {

struct ChiSquareResult {
  double statistic = 0.0;
  int degrees_of_freedom = 0;
  double p_value = 0.0;
  int bins = 0;
};

/// Pearson goodness of fit of `samples` against a continuous distribution with
/// the given CDF. Uses `bins` equal-width bins on [lo, hi] plus both tails,
/// merging neighbours until every expected count is at least 5.
ChiSquareResult chi_square_gof(std::span<const double> samples,
                               const std::function<double(double)>& cdf,
                               double lo, double hi, int bins);

/// Trapezoid CDF of a density tabulated on increasing nodes, normalized to 1.
std::function<double(double)> tabulated_cdf(std::vector<double> nodes, std::vector<double> pdf);

}  // namespace cubist
