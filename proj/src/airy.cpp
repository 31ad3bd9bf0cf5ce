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

#include <cmath>
#include <string>

#include "cubist/phase_space.hpp"

namespace cubist {
namespace {

// Ai(0) and -Ai'(0).
constexpr long double kAi0 = 0.355028053887817239260063186004183176L;
constexpr long double kAiPrime0 = 0.258819403792806798405183560189203963L;
constexpr double kSeam = 6.0;

// Maclaurin series in extended precision; the alternating terms reach ~1e4 at
// |x| = 6, so double would lose too many digits to cancellation.
double airy_series(double xd) {
  const long double x = xd;
  const long double x3 = x * x * x;
  long double f = 1.0L, g = x;
  long double tf = 1.0L, tg = x;
  for (int k = 1; k < 200; ++k) {
    tf *= x3 / ((3.0L * k - 1.0L) * (3.0L * k));
    tg *= x3 / ((3.0L * k) * (3.0L * k + 1.0L));
    f += tf;
    g += tg;
    if (std::abs(tf) < 1e-22L * std::abs(f) + 1e-40L && std::abs(tg) < 1e-22L * std::abs(g) + 1e-40L) {
      break;
    }
  }
  return static_cast<double>(kAi0 * f - kAiPrime0 * g);
}

// u_k of the large-argument expansions.
double airy_u(int k) {
  double u = 1.0;
  for (int j = 1; j <= k; ++j) {
    u *= (6.0 * j - 5.0) * (6.0 * j - 3.0) * (6.0 * j - 1.0) / ((2.0 * j - 1.0) * 216.0 * j);
  }
  return u;
}

double airy_asymptotic_positive(double x) {
  const double zeta = 2.0 / 3.0 * x * std::sqrt(x);
  double sum = 0.0, prev = 0.0, zk = 1.0;
  for (int k = 0; k < 60; ++k) {
    const double t = ((k % 2) ? -1.0 : 1.0) * airy_u(k) / zk;
    if (k > 0 && std::abs(t) > std::abs(prev)) break;
    sum += t;
    prev = t;
    zk *= zeta;
  }
  return std::exp(-zeta) / (2.0 * std::sqrt(kPi) * std::pow(x, 0.25)) * sum;
}

double airy_asymptotic_negative(double x) {
  const double z = -x;
  const double zeta = 2.0 / 3.0 * z * std::sqrt(z);
  double even = 0.0, odd = 0.0, prev = -1.0, zk = 1.0;
  for (int k = 0; k < 60; ++k) {
    const double t = airy_u(k) / zk;
    if (prev >= 0.0 && t > prev) break;
    const double sign = ((k / 2) % 2) ? -1.0 : 1.0;
    (k % 2 == 0 ? even : odd) += sign * t;
    prev = t;
    zk *= zeta;
  }
  const double phase = zeta + 0.25 * kPi;
  return (std::sin(phase) * even - std::cos(phase) * odd) / (std::sqrt(kPi) * std::pow(z, 0.25));
}

}  // namespace

double airy(double x) {
  if (!(std::abs(x) <= 40.0)) {
    throw DomainError("Airy argument " + std::to_string(x) + " outside [-40, 40]");
  }
  if (std::abs(x) <= kSeam) return airy_series(x);
  return x > 0.0 ? airy_asymptotic_positive(x) : airy_asymptotic_negative(x);
}

}  // namespace cubist
