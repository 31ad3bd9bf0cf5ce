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
#include <vector>

#include "cubist/ancilla.hpp"
#include "doctest.h"
#include "oracles.hpp"

using namespace cubist;
using doctest::Approx;
using oracle::brute_variance;

TEST_CASE("Nonlinear quadrature operator") {
  const OperatorMatrix y = nlq_operator(1.7, 10);
  CHECK(y.hermitian);
  const auto [x, p] = quadrature_ops(14);
  const Eigen::MatrixXcd ref = 1.7 * p.entries - 3.0 / (1.7 * 1.7) * (x.entries * x.entries);
  CHECK((y.entries - ref.topLeftCorner(10, 10)).cwiseAbs().maxCoeff() < 1e-13);
}

TEST_CASE("Shifted square matches the explicit product") {
  const double lambda = 2.1, d = -4.4;
  const int n = 3;
  const OperatorMatrix Y = y_shifted_squared(lambda, d, n);
  CHECK(Y.dim() == n + 1);
  const OperatorMatrix y = nlq_operator(lambda, n + 1 + 6);
  const Eigen::MatrixXcd shifted = y.entries - d * Eigen::MatrixXcd::Identity(y.dim(), y.dim());
  const Eigen::MatrixXcd ref = (shifted * shifted).topLeftCorner(n + 1, n + 1);
  CHECK((Y.entries - ref).cwiseAbs().maxCoeff() < 1e-12);
  // Quadratic form equals <(y - d)^2> for any state in the N-photon space.
  const std::vector<cplx> c{0.3, cplx(0.0, -0.5), -0.7, cplx(0.0, 0.2)};
  Eigen::VectorXcd v(4);
  for (int k = 0; k < 4; ++k) v(k) = c[k];
  v.normalize();
  const double form = v.dot(Y.entries * v).real();
  const double var = brute_variance(c, lambda);
  Eigen::VectorXcd padded = Eigen::VectorXcd::Zero(y.dim());
  padded.head(4) = v;
  const double mean = padded.dot(y.entries * padded).real();
  CHECK(form == Approx(var + (mean - d) * (mean - d)).epsilon(1e-12));
}

TEST_CASE("Phase convention of eigenvectors") {
  Eigen::VectorXcd v(3);
  v << cplx(0.0, -0.6), cplx(0.8, 0.0), cplx(0.0, 0.0);
  const Eigen::VectorXcd f = fix_phase(v);
  CHECK(std::abs(f(0) - 0.6) < 1e-15);
  CHECK(std::abs(f(1) - cplx(0.0, 0.8)) < 1e-15);
  Eigen::VectorXcd odd(2);
  odd << 0.0, cplx(0.0, -1.0);
  CHECK(std::abs(fix_phase(odd)(1) - 1.0) < 1e-15);

  Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(3, 3);
  m.diagonal() << 2.0, -1.0, 5.0;
  const EigenPair e = min_eigpair(OperatorMatrix(m, true, false));
  CHECK(e.value == Approx(-1.0));
  CHECK(std::abs(e.vector(1) - 1.0) < 1e-15);
}

TEST_CASE("Gaussian limit at N = 0") {
  // Var over scaled vacua is lambda'^2/2 + 9/(2 lambda'^4): minimum at 18^(1/6).
  const double l0 = std::pow(18.0, 1.0 / 6.0);
  const double v0 = 0.75 * std::cbrt(18.0);
  CHECK(l0 * l0 / 2.0 + 9.0 / (2.0 * std::pow(l0, 4)) == Approx(v0).epsilon(1e-15));
  CHECK(brute_variance({1.0}, l0) == Approx(v0).epsilon(1e-14));
  CHECK(gaussian_limit_variance() == Approx(v0).epsilon(1e-15));

  const AncillaOptimum o = optimize_ancilla(0);
  CHECK(std::abs(o.lambda_opt - l0) < 1e-4);
  CHECK(std::abs(o.variance - v0) < 1e-5);
  CHECK(o.ratio == Approx(1.0).epsilon(1e-9));
  CHECK(o.coefficients.size() == 1u);
}

TEST_CASE("Optimal three-photon ancilla") {
  const AncillaOptimum o = optimize_ancilla(3);
  const double expected[4] = {0.17, 0.56, 0.73, 0.35};
  for (int k = 0; k < 4; ++k) CHECK(std::abs(std::abs(o.coefficients[k]) - expected[k]) <= 0.01);
  // Phase pattern (+, -i, -, +i).
  CHECK(o.coefficients[0].real() > 0.0);
  CHECK(o.coefficients[1].imag() < 0.0);
  CHECK(o.coefficients[2].real() < 0.0);
  CHECK(o.coefficients[3].imag() > 0.0);
  for (int k = 0; k < 4; ++k) {
    const cplx c = o.coefficients[k];
    CHECK(std::abs(k % 2 == 0 ? c.imag() : c.real()) < 1e-10);
  }
  CHECK(o.variance == Approx(brute_variance(o.coefficients, o.lambda_opt)).epsilon(1e-12));
  CHECK(o.p0 == Approx(-o.d_opt).epsilon(1e-6));
}

TEST_CASE("Variance ratio decreases with the photon cutoff") {
  const auto table = variance_ratio_table(9);
  REQUIRE(table.size() == 10u);
  CHECK(table[0].ratio == Approx(1.0));
  for (std::size_t i = 1; i < table.size(); ++i) {
    CHECK(table[i].ratio < table[i - 1].ratio);
    CHECK(table[i].ratio > 0.0);
  }
}

TEST_CASE("Brute-force oracle for N = 1 and N = 2") {
  const double b1 = oracle::brute_force_optimum_n1();
  const double b2 = oracle::brute_force_optimum_n2();
  CHECK(std::abs(optimize_ancilla(1).variance - b1) < 1e-5);
  CHECK(std::abs(optimize_ancilla(2).variance - b2) < 1e-5);
}

TEST_CASE("Search map locates the optimum") {
  const SearchMap m = search_map(3, {1.5, 2.7}, {-6.0, -3.0}, 61, 61, 2);
  const auto [i, j] = m.argmin();
  const AncillaOptimum o = optimize_ancilla(3);
  CHECK(std::abs(m.lambda_axis.at(i) - o.lambda_opt) <= m.lambda_axis.step());
  CHECK(std::abs(m.d_axis.at(j) - o.d_opt) <= m.d_axis.step());
  CHECK(m.min_eigenvalues(i, j) >= o.variance - 1e-12);
  CHECK(m.db_values(i, j) == Approx(10.0 * std::log10(m.min_eigenvalues(i, j) / kShotNoise)));
  CHECK(m.count_local_minima() >= 1);
  const SearchMap serial = search_map(3, {1.5, 2.7}, {-6.0, -3.0}, 61, 61, 1);
  CHECK((serial.min_eigenvalues - m.min_eigenvalues).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("Moments of the scaled ancilla") {
  const AncillaOptimum o = optimize_ancilla(4);
  const double gamma = 0.3;
  const Moments m = nlq_moments(o.state(), o.lambda_opt, gamma, std::cbrt(gamma) * o.p0);
  CHECK(std::abs(m.mean) < 1e-8);
  CHECK(m.variance == Approx(std::pow(gamma, 2.0 / 3.0) * o.variance).epsilon(1e-10));
}

TEST_CASE("Optimizer input validation") {
  CHECK_THROWS_AS(optimize_ancilla(-1), InvalidArgument);
  OptimizerConfig c;
  c.lambda_range = {-1.0, 2.0};
  CHECK_THROWS(optimize_ancilla(2, c));
  OptimizerConfig tiny;
  tiny.max_iterations = 1;
  tiny.tolerance = 1e-16;
  CHECK_THROWS_AS(optimize_ancilla(5, tiny), AncillaConvergenceError);
}
