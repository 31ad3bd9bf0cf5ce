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

#include <boost/math/special_functions/airy.hpp>

#include "cubist/ancilla.hpp"
#include "cubist/gaussian.hpp"
#include "cubist/io.hpp"
#include "cubist/phase_space.hpp"
#include "doctest.h"

using namespace cubist;
using doctest::Approx;

TEST_CASE("Airy function reference values") {
  CHECK(airy(0.0) == Approx(0.35502805388781723926).epsilon(1e-14));
  CHECK(airy(1.0) == Approx(0.13529241631288141552).epsilon(1e-14));
  CHECK(airy(-1.0) == Approx(0.5355608832923521188).epsilon(1e-14));
  CHECK(std::abs(airy(0.0) - 0.3550280539) < 1e-10);
}

TEST_CASE("Airy function agrees with Boost across regimes") {
  for (double x = -30.0; x <= 12.0; x += 0.37) {
    const double ref = boost::math::airy_ai(x);
    CHECK(airy(x) == Approx(ref).epsilon(1e-9).scale(1e-12 * (1.0 + std::abs(ref))));
  }
  CHECK(airy(40.0) == Approx(boost::math::airy_ai(40.0)).epsilon(1e-9));
}

TEST_CASE("Vacuum and single-photon Wigner functions") {
  const Axis ax{-3.0, 3.0, 61};
  const WignerGrid vac = wigner_of_state(StateVector::vacuum(3), ax, ax);
  const WignerGrid one = wigner_of_state(StateVector::fock(3, 1), ax, ax);
  for (int i = 0; i < ax.count; i += 7) {
    for (int j = 0; j < ax.count; j += 5) {
      const double r2 = ax.at(i) * ax.at(i) + ax.at(j) * ax.at(j);
      CHECK(vac.values(i, j) == Approx(std::exp(-r2) / kPi).epsilon(1e-13).scale(1e-16));
      CHECK(one.values(i, j) == Approx((2.0 * r2 - 1.0) * std::exp(-r2) / kPi).epsilon(1e-12).scale(1e-16));
    }
  }
  CHECK(one.values(30, 30) == Approx(-1.0 / kPi));
  const Axis wide{-7.0, 7.0, 141};
  CHECK(wigner_of_state(StateVector::fock(8, 5), wide, wide).integral() == Approx(1.0).epsilon(1e-9));
}

TEST_CASE("Wigner marginals reproduce the homodyne density") {
  const cplx alpha(0.4, -0.3);
  const StateVector s = StateVector::from_vector(
      (displacement_op(alpha, 40).entries * squeeze_op(0.8, 40).entries).col(0));
  const Axis x{-2.0, 2.0, 5}, p{-9.0, 9.0, 721};
  const WignerGrid w = wigner_of_state(s, x, p);
  std::vector<double> nodes;
  for (int i = 0; i < x.count; ++i) nodes.push_back(x.at(i));
  const auto pdf = homodyne_pdf(s, 0, 0.0, nodes);
  for (int i = 0; i < x.count; ++i) {
    CHECK(w.values.row(i).sum() * p.step() == Approx(pdf[i]).epsilon(1e-8));
  }
}

TEST_CASE("Ideal cubic Wigner function follows the Airy ridge") {
  const double gamma = 0.2;
  const double k = std::cbrt(4.0 / (3.0 * gamma));
  const Axis x{-2.0, 2.0, 41}, p{-3.0, 4.0, 141};
  const WignerGrid w = ideal_cubic_wigner(gamma, x, p);
  CHECK(w.integral() == Approx(1.0));
  const double w00 = w.values(20, 60);  // x = 0, p = 0
  CHECK(w00 > 0.0);
  for (int i : {5, 20, 33}) {
    for (int j : {10, 60, 120}) {
      const double arg = k * (3.0 * gamma * x.at(i) * x.at(i) - p.at(j));
      const double ratio = boost::math::airy_ai(arg) / boost::math::airy_ai(0.0);
      CHECK(w.values(i, j) / w00 == Approx(ratio).epsilon(1e-8).scale(1e-12));
    }
  }
  CHECK_THROWS_AS(ideal_cubic_wigner(0.0), InvalidArgument);
}

TEST_CASE("Grid sampling and coverage") {
  WignerGrid g(Axis{0.0, 1.0, 3}, Axis{0.0, 2.0, 3});
  g.values << 0, 1, 2, 3, 4, 5, 6, 7, 8;
  CHECK(g.sample(0.5, 1.0) == Approx(4.0));
  CHECK(g.sample(0.25, 0.5) == Approx(2.0));
  CHECK(g.sample(1.0, 2.0) == Approx(8.0));
  CHECK(g.covers(1.0, 0.0));
  CHECK_FALSE(g.covers(1.01, 0.0));
  CHECK_THROWS_AS(g.sample(-0.1, 0.0), CoverageError);
  CHECK_THROWS_AS(WignerGrid(Axis{0.0, 0.0, 3}, Axis{}), InvalidArgument);
}

TEST_CASE("Projector Wigner function is the Wigner function of the projected pure state") {
  const StateVector anc = optimize_ancilla(2).state();
  const Axis ax{-9.0, 9.0, 721};
  const WignerGrid wa = wigner_of_state(anc, ax, ax);
  const double q = 0.35, y = -0.5;
  const Axis out{-2.0, 2.0, 21};
  const WignerGrid proj = projector_wigner(wa, q, y, out, out);
  const StateVector pure = pure_projection_state(anc, q, y, 40);
  const WignerGrid direct = wigner_of_state(pure, out, out);
  const double scale = direct.values.cwiseAbs().maxCoeff();
  CHECK((proj.values / proj.values.cwiseAbs().maxCoeff() - direct.values / scale).cwiseAbs().maxCoeff() <
        2e-3);
}

TEST_CASE("Generalized projector reduces to the balanced projector") {
  const Axis ax{-8.0, 8.0, 321};
  const Axis out{-3.0, 3.0, 61};
  for (const StateVector& s : {StateVector::vacuum(2), StateVector::fock(2, 1), optimize_ancilla(3).state()}) {
    const WignerGrid w = wigner_of_state(s, ax, ax);
    ProjectorParams params;
    params.q = -0.7;
    params.y = 0.45;
    const WignerGrid a = projector_wigner(w, params.q, params.y, out, out);
    const WignerGrid g = generalized_projector_wigner(w, params, out, out);
    CHECK((a.values - g.values).cwiseAbs().maxCoeff() < 1e-6);
  }
  ProjectorParams bad;
  bad.transmittance = 1.0;
  CHECK_THROWS(bad.validate());
}

TEST_CASE("Optimized ancilla Wigner functions are even in x and gain fringes with N") {
  const Axis x{-6.0, 6.0, 121}, p{-12.0, 12.0, 1201};
  int previous = -1;
  for (int n : {1, 3, 5, 9}) {
    const WignerGrid w = wigner_of_state(optimize_ancilla(n).state(), x, p);
    const double mirror = (w.values - w.values.colwise().reverse()).cwiseAbs().maxCoeff();
    CHECK(mirror < 1e-9);
    const int changes = sign_changes_along_p(w, 0.0);
    MESSAGE("N = " << n << ": " << changes << " sign changes along p at x = 0");
    CHECK(changes >= previous);
    previous = changes;
  }
}

TEST_CASE("Wigner CSV and JSON round trips") {
  const Axis x{-1.0, 1.0, 5}, p{-2.0, 2.0, 7};
  const WignerGrid w = wigner_of_state(StateVector::fock(3, 2), x, p);
  const WignerGrid from_csv = wigner_from_csv(wigner_csv(w, {"state: fock-2"}));
  CHECK(from_csv.x == x);
  CHECK(from_csv.p == p);
  CHECK((from_csv.values - w.values).cwiseAbs().maxCoeff() == 0.0);
  const WignerGrid from_json = wigner_from_json(to_json(w));
  CHECK((from_json.values - w.values).cwiseAbs().maxCoeff() == 0.0);
}
