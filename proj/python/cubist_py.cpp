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

#include <pybind11/complex.h>
#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "cubist/ancilla.hpp"
#include "cubist/gate.hpp"
#include "cubist/io.hpp"
#include "cubist/phase_space.hpp"

namespace py = pybind11;
using namespace cubist;

namespace {

StateVector state_of(const std::vector<cplx>& coefficients) {
  return StateVector::from_coefficients(coefficients);
}

py::dict grid_dict(const WignerGrid& g) {
  py::dict d;
  d["x"] = py::make_tuple(g.x.min, g.x.max, g.x.count);
  d["p"] = py::make_tuple(g.p.min, g.p.max, g.p.count);
  d["values"] = g.values;
  return d;
}

}  // namespace

PYBIND11_MODULE(_cubist, m) {
  m.doc() = "Cubic phase gate simulation core";

  // Translators are tried newest first: the subclass must come last.
  py::register_exception<Error>(m, "NumericalError", PyExc_RuntimeError);
  py::register_exception<InvalidArgument>(m, "InvalidArgument", PyExc_ValueError);

  m.def("airy", &airy, py::arg("x"));
  m.def("gaussian_limit_variance", &gaussian_limit_variance);

  m.def(
      "optimize_ancilla",
      [](int n) { return to_json(optimize_ancilla(n)).dump(); },
      py::arg("n"), "Optimal N-photon ancilla as a JSON string.");

  m.def(
      "wigner",
      [](const std::vector<cplx>& coefficients, std::tuple<double, double, int> x, std::tuple<double, double, int> p) {
        const auto [x0, x1, nx] = x;
        const auto [p0, p1, np] = p;
        return grid_dict(wigner_of_state(state_of(coefficients), Axis{x0, x1, nx}, Axis{p0, p1, np}));
      },
      py::arg("coefficients"), py::arg("x") = std::make_tuple(-6.0, 6.0, 301),
      py::arg("p") = std::make_tuple(-6.0, 6.0, 301));

  m.def(
      "ideal_cubic_wigner",
      [](double gamma, std::tuple<double, double, int> x, std::tuple<double, double, int> p) {
        const auto [x0, x1, nx] = x;
        const auto [p0, p1, np] = p;
        return grid_dict(ideal_cubic_wigner(gamma, Axis{x0, x1, nx}, Axis{p0, p1, np}));
      },
      py::arg("gamma"), py::arg("x") = std::make_tuple(-6.0, 6.0, 301),
      py::arg("p") = std::make_tuple(-6.0, 6.0, 301));

  m.def(
      "adaptive_theta",
      [](double q, const std::string& config) { return adaptive_theta(q, gate_config_from_json(Json::parse(config))); },
      py::arg("q"), py::arg("config") = "{}");

  m.def(
      "feedforward_displacement",
      [](double q, double y, double theta, const std::string& config) {
        return feedforward_displacement(q, y, theta, gate_config_from_json(Json::parse(config)));
      },
      py::arg("q"), py::arg("y"), py::arg("theta"), py::arg("config") = "{}");

  m.def(
      "heisenberg_residual",
      [](const std::string& config, int trials, std::uint64_t seed) {
        return verify_heisenberg_identity(gate_config_from_json(Json::parse(config)), trials, seed).max_residual;
      },
      py::arg("config") = "{}", py::arg("trials") = 1000, py::arg("seed") = 1);

  m.def(
      "run_gate",
      [](const std::string& config, const std::vector<cplx>& input, int workers) {
        const GateConfig c = gate_config_from_json(Json::parse(config));
        c.validate();
        GateRunSummary s;
        {
          py::gil_scoped_release release;
          s = run_gate_batch(state_of(input), c, workers);
        }
        return to_json(s).dump();
      },
      py::arg("config") = "{}", py::arg("input") = std::vector<cplx>{1.0}, py::arg("workers") = 1,
      "Monte-Carlo gate run; config and result are JSON strings.");

  m.attr("__version__") = "0.1.0";
}
