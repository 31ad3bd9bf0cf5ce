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

#include "cubist/fock.hpp"

namespace cubist {

/// Real quadrature map on (x1, p1, ..., xm, pm): r -> matrix * r + displacement.
struct SymplecticMap {
  Eigen::MatrixXd matrix;
  Eigen::VectorXd displacement;

  int modes() const { return static_cast<int>(matrix.rows() / 2); }
  Eigen::VectorXd apply(const Eigen::VectorXd& r) const { return matrix * r + displacement; }
  /// max |S J S^T - J|
  double symplectic_residual() const;
};

Eigen::MatrixXd symplectic_form(int modes);

/// D(alpha) = exp(i sqrt2 Im(alpha) X - i sqrt2 Re(alpha) P), so <X> shifts by
/// sqrt2 Re(alpha) and <P> by sqrt2 Im(alpha). Flags truncation_risk when
/// |alpha|^2 > dim / 4.
OperatorMatrix displacement_op(cplx alpha, int dim);

/// S(s)^dag X S(s) = s X, S(s)^dag P S(s) = P / s.
OperatorMatrix squeeze_op(double s, int dim);

/// diag(exp(-i n theta)); rotates X -> X cos(theta) + P sin(theta).
OperatorMatrix phase_shift_op(double theta, int dim);

/// Two-mode mixer on the (dim_a * dim_b) product space with Heisenberg action
/// x_a -> sqrt(T) x_a - sqrt(R) x_b, x_b -> sqrt(R) x_a + sqrt(T) x_b.
OperatorMatrix beam_splitter_op(double transmittance, int dim_a, int dim_b);

/// Same family parametrized by mixing angle (cos(phi) = sqrt(T)); negative
/// angles flip the reflection sign.
OperatorMatrix beam_splitter_angle_op(double phi, int dim_a, int dim_b);

SymplecticMap displacement_symplectic(cplx alpha);
SymplecticMap squeeze_symplectic(double s);
SymplecticMap phase_shift_symplectic(double theta);
SymplecticMap beam_splitter_symplectic(double transmittance);

/// Quadrature map of BS(T1) on modes (0,1) followed by BS(T2) on modes (1,2).
SymplecticMap symplectic_of_circuit(double t1, double t2);

/// Matrix exponential by scaling and squaring with a Pade approximant.
Eigen::MatrixXcd matrix_exp(const Eigen::MatrixXcd& m);

}  // namespace cubist
