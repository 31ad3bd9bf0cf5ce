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

#include "cubist/fock.hpp"

namespace cubist {

/// Real samples W(x_i, p_j) on a rectangular grid; values(i, j) with i along x.
struct WignerGrid {
  Axis x;
  Axis p;
  Eigen::MatrixXd values;

  WignerGrid() = default;
  WignerGrid(Axis x_axis, Axis p_axis);

  /// sum(values) * dx * dp
  double integral() const;
  /// Bilinear interpolation; throws CoverageError outside the grid.
  double sample(double xv, double pv) const;
  bool covers(double xv, double pv) const;
};

/// Wigner function of a single-mode pure state, (1/pi) int <x+u|rho|x-u> e^{-2ipu} du,
/// evaluated with the closed-form Laguerre kernel.
WignerGrid wigner_of_state(const StateVector& state, Axis x = {}, Axis p = {});

/// Airy function Ai on |x| <= 40.
double airy(double x);

/// Airy-form Wigner function of the ideal cubic state, normalized so the grid
/// sum times the cell area is one.
WignerGrid ideal_cubic_wigner(double gamma, Axis x = {}, Axis p = {});

/// Outcomes and optics of the generalized (unbalanced, rotated) heterodyne.
struct ProjectorParams {
  double q = 0.0;
  double y = 0.0;
  double transmittance = 0.5;
  double theta = 0.0;

  double reflectance() const { return 1.0 - transmittance; }
  double z1() const;
  double z2() const;
  void validate() const;
};

using Wavefunction = std::function<cplx(double)>;

/// Position wavefunction of a Fock-basis state.
Wavefunction wavefunction_of(const StateVector& state);

/// phi(u) = conj(psi_A(u - sqrt2 q)) exp(i sqrt2 (u - sqrt2 q) y).
Wavefunction pure_projection_state(Wavefunction ancilla, double q, double y);

/// Fock-basis version of the above on `out_dim` levels (0 picks a padded default).
StateVector pure_projection_state(const StateVector& ancilla, double q, double y,
                                  int out_dim = 0);

/// W_M(x, p | q, y) = 2 W_A(x - sqrt2 q, -p + sqrt2 y) resampled onto (x, p).
WignerGrid projector_wigner(const WignerGrid& ancilla, double q, double y, Axis x, Axis p);

/// Unbalanced, rotated generalization of projector_wigner.
WignerGrid generalized_projector_wigner(const WignerGrid& ancilla, const ProjectorParams& params,
                                        Axis x, Axis p);

/// Sign changes of p -> W(x0, p) along the grid column nearest x0. Samples
/// below relative_threshold * max|W| on that column are skipped.
int sign_changes_along_p(const WignerGrid& grid, double x0, double relative_threshold = 1e-6);

}  // namespace cubist
