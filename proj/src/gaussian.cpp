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

#include "cubist/gaussian.hpp"

#include <cmath>

#include <unsupported/Eigen/KroneckerProduct>
#include <unsupported/Eigen/MatrixFunctions>

namespace cubist {
namespace {

void require_dim(int dim) {
  if (dim < 2) throw InvalidArgument("invalid dimension: dim must be >= 2");
}

OperatorMatrix unitary_from_generator(const Eigen::MatrixXcd& generator) {
  OperatorMatrix out;
  out.entries = matrix_exp(generator);
  out.unitary = out.unitarity_residual() < 1e-10;
  if (!out.unitary) throw TruncationError("exponentiated generator is not unitary");
  return out;
}

}  // namespace

Eigen::MatrixXcd matrix_exp(const Eigen::MatrixXcd& m) { return m.exp(); }

Eigen::MatrixXd symplectic_form(int modes) {
  Eigen::MatrixXd j = Eigen::MatrixXd::Zero(2 * modes, 2 * modes);
  for (int k = 0; k < modes; ++k) {
    j(2 * k, 2 * k + 1) = 1.0;
    j(2 * k + 1, 2 * k) = -1.0;
  }
  return j;
}

double SymplecticMap::symplectic_residual() const {
  const Eigen::MatrixXd j = symplectic_form(modes());
  return (matrix * j * matrix.transpose() - j).cwiseAbs().maxCoeff();
}

OperatorMatrix displacement_op(cplx alpha, int dim) {
  require_dim(dim);
  auto [x, p] = quadrature_ops(dim);
  const cplx i(0.0, 1.0);
  Eigen::MatrixXcd gen = i * kSqrt2 * alpha.imag() * x.entries - i * kSqrt2 * alpha.real() * p.entries;
  OperatorMatrix out = unitary_from_generator(gen);
  out.truncation_risk = std::norm(alpha) > dim / 4.0;
  return out;
}

OperatorMatrix squeeze_op(double s, int dim) {
  require_dim(dim);
  if (!(s > 0.0)) throw InvalidArgument("squeeze factor must be > 0");
  auto [a, ad] = ladder_ops(dim);
  // exp(r/2 (a^2 - a^dag^2)) maps a -> a cosh r - a^dag sinh r, i.e. X -> e^{-r} X.
  const double r = -std::log(s);
  Eigen::MatrixXcd gen = 0.5 * r * (a.entries * a.entries - ad.entries * ad.entries);
  OperatorMatrix out = unitary_from_generator(gen);
  out.truncation_risk = std::sinh(r) * std::sinh(r) > dim / 8.0;
  return out;
}

OperatorMatrix phase_shift_op(double theta, int dim) {
  require_dim(dim);
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(dim, dim);
  for (int n = 0; n < dim; ++n) m(n, n) = std::polar(1.0, -theta * n);
  return OperatorMatrix(std::move(m), false, true);
}

OperatorMatrix beam_splitter_angle_op(double phi, int dim_a, int dim_b) {
  require_dim(dim_a);
  require_dim(dim_b);
  auto [a, ad] = ladder_ops(dim_a);
  auto [b, bd] = ladder_ops(dim_b);
  using Eigen::kroneckerProduct;
  // U = exp(phi (a b^dag - a^dag b)): U^dag a U = a cos(phi) - b sin(phi).
  Eigen::MatrixXcd gen = phi * (Eigen::MatrixXcd(kroneckerProduct(a.entries, bd.entries)) -
                                Eigen::MatrixXcd(kroneckerProduct(ad.entries, b.entries)));
  return unitary_from_generator(gen);
}

OperatorMatrix beam_splitter_op(double transmittance, int dim_a, int dim_b) {
  if (!(transmittance > 0.0 && transmittance < 1.0)) {
    throw InvalidArgument("beam splitter transmittance must lie in (0, 1)");
  }
  return beam_splitter_angle_op(std::acos(std::sqrt(transmittance)), dim_a, dim_b);
}

SymplecticMap displacement_symplectic(cplx alpha) {
  SymplecticMap m{Eigen::MatrixXd::Identity(2, 2), Eigen::VectorXd(2)};
  m.displacement << kSqrt2 * alpha.real(), kSqrt2 * alpha.imag();
  return m;
}

SymplecticMap squeeze_symplectic(double s) {
  if (!(s > 0.0)) throw InvalidArgument("squeeze factor must be > 0");
  SymplecticMap m{Eigen::MatrixXd::Zero(2, 2), Eigen::VectorXd::Zero(2)};
  m.matrix(0, 0) = s;
  m.matrix(1, 1) = 1.0 / s;
  return m;
}

SymplecticMap phase_shift_symplectic(double theta) {
  SymplecticMap m{Eigen::MatrixXd(2, 2), Eigen::VectorXd::Zero(2)};
  m.matrix << std::cos(theta), std::sin(theta), -std::sin(theta), std::cos(theta);
  return m;
}

SymplecticMap beam_splitter_symplectic(double transmittance) {
  if (!(transmittance > 0.0 && transmittance < 1.0)) {
    throw InvalidArgument("beam splitter transmittance must lie in (0, 1)");
  }
  const double t = std::sqrt(transmittance), r = std::sqrt(1.0 - transmittance);
  SymplecticMap m{Eigen::MatrixXd::Zero(4, 4), Eigen::VectorXd::Zero(4)};
  for (int q = 0; q < 2; ++q) {
    m.matrix(q, q) = t;
    m.matrix(q, 2 + q) = -r;
    m.matrix(2 + q, q) = r;
    m.matrix(2 + q, 2 + q) = t;
  }
  return m;
}

SymplecticMap symplectic_of_circuit(double t1, double t2) {
  const SymplecticMap bs1 = beam_splitter_symplectic(t1);
  const SymplecticMap bs2 = beam_splitter_symplectic(t2);
  Eigen::MatrixXd first = Eigen::MatrixXd::Identity(6, 6);
  first.topLeftCorner(4, 4) = bs1.matrix;
  Eigen::MatrixXd second = Eigen::MatrixXd::Identity(6, 6);
  second.bottomRightCorner(4, 4) = bs2.matrix;
  return {second * first, Eigen::VectorXd::Zero(6)};
}

}  // namespace cubist
