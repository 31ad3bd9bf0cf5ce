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

#include "cubist/stats.hpp"

#include <algorithm>
#include <cmath>

#include <boost/math/distributions/chi_squared.hpp>

#include "cubist/errors.hpp"

namespace cubist {

ChiSquareResult chi_square_gof(std::span<const double> samples, const std::function<double(double)>& cdf,
                               double lo, double hi, int bins) {
  if (samples.empty()) throw InvalidArgument("chi-square test needs samples");
  if (!(hi > lo) || bins < 2) throw InvalidArgument("chi-square test needs lo < hi and >= 2 bins");
  // Edges -inf, lo, ..., hi, +inf.
  std::vector<double> edges{-INFINITY};
  for (int i = 0; i <= bins; ++i) edges.push_back(lo + (hi - lo) * i / bins);
  edges.push_back(INFINITY);
  const double n = static_cast<double>(samples.size());
  auto cdf_at = [&](double e) { return std::isinf(e) ? (e < 0 ? 0.0 : 1.0) : cdf(e); };

  std::vector<double> observed(edges.size() - 1, 0.0), expected(edges.size() - 1, 0.0);
  for (std::size_t k = 0; k + 1 < edges.size(); ++k) expected[k] = n * (cdf_at(edges[k + 1]) - cdf_at(edges[k]));
  for (double x : samples) {
    const auto it = std::upper_bound(edges.begin() + 1, edges.end() - 1, x);
    observed[static_cast<std::size_t>(it - edges.begin()) - 1] += 1.0;
  }
  std::vector<double> obs, exp;
  double o_acc = 0.0, e_acc = 0.0;
  for (std::size_t k = 0; k < observed.size(); ++k) {
    o_acc += observed[k];
    e_acc += expected[k];
    if (e_acc >= 5.0) {
      obs.push_back(o_acc);
      exp.push_back(e_acc);
      o_acc = e_acc = 0.0;
    }
  }
  if (!obs.empty()) {
    obs.back() += o_acc;
    exp.back() += e_acc;
  }
  if (obs.size() < 2) throw InvalidArgument("too few samples for a chi-square test");

  ChiSquareResult r;
  r.bins = static_cast<int>(obs.size());
  for (std::size_t k = 0; k < obs.size(); ++k) r.statistic += (obs[k] - exp[k]) * (obs[k] - exp[k]) / exp[k];
  r.degrees_of_freedom = r.bins - 1;
  const boost::math::chi_squared dist(r.degrees_of_freedom);
  r.p_value = boost::math::cdf(boost::math::complement(dist, r.statistic));
  return r;
}

std::function<double(double)> tabulated_cdf(std::vector<double> nodes, std::vector<double> pdf) {
  if (nodes.size() < 2 || pdf.size() != nodes.size()) throw InvalidArgument("tabulated CDF needs >= 2 nodes");
  std::vector<double> cum(nodes.size(), 0.0);
  for (std::size_t i = 1; i < nodes.size(); ++i) {
    cum[i] = cum[i - 1] + 0.5 * (pdf[i] + pdf[i - 1]) * (nodes[i] - nodes[i - 1]);
  }
  const double total = cum.back();
  if (!(total > 0.0)) throw InvalidArgument("tabulated density has no mass");
  return [nodes = std::move(nodes), pdf = std::move(pdf), cum = std::move(cum), total](double x) {
    if (x <= nodes.front()) return 0.0;
    if (x >= nodes.back()) return 1.0;
    const std::size_t k = static_cast<std::size_t>(std::upper_bound(nodes.begin(), nodes.end(), x) - nodes.begin()) - 1;
    const double h = nodes[k + 1] - nodes[k];
    const double t = x - nodes[k];
    const double slope = (pdf[k + 1] - pdf[k]) / h;
    return (cum[k] + pdf[k] * t + 0.5 * slope * t * t) / total;
  };
}

}  // namespace cubist
