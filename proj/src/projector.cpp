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

#include "cubist/gaussian.hpp"
#include "cubist/phase_space.hpp"

namespace cubist {

double ProjectorParams::z1() const { return std::sqrt(transmittance / reflectance()); }

double ProjectorParams::z2() const {
  return std::tan(theta) / std::sqrt(reflectance() * transmittance);
}

void ProjectorParams::validate() const {
  if (!(transmittance > 0.0 && transmittance < 1.0)) {
    throw InvalidArgument("projector transmittance must lie in (0, 1)");
  }
  if (std::abs(std::cos(theta)) < 1e-12) {
    throw SingularPhaseError("cos(theta) = 0 makes the rotated projector singular");
  }
}

Wavefunction wavefunction_of(const StateVector& state) {
  if (state.num_modes() != 1) throw InvalidArgument("wavefunction needs a single-mode state");
  std::vector<cplx> c(state.amplitudes().begin(), state.amplitudes().end());
  return [c = std::move(c)](double x) {
    std::vector<double> psi(c.size());
    hermite_wavefunctions(static_cast<int>(c.size()) - 1, x, psi);
    cplx acc = 0.0;
    for (std::size_t n = 0; n < c.size(); ++n) acc += c[n] * psi[n];
    return acc;
  };
}

Wavefunction pure_projection_state(Wavefunction ancilla, double q, double y) {
  return [ancilla = std::move(ancilla), q, y](double u) {
    const double shifted = u - kSqrt2 * q;
    return std::conj(ancilla(shifted)) * std::polar(1.0, kSqrt2 * shifted * y);
  };
}

StateVector pure_projection_state(const StateVector& ancilla, double q, double y, int out_dim) {
  if (ancilla.num_modes() != 1) throw InvalidArgument("ancilla must be single-mode");
  const int d = ancilla.dim(0);
  if (out_dim <= 0) {
    const double shift2 = q * q + y * y;
    out_dim = d + 16 + static_cast<int>(std::ceil(8.0 * shift2));
  }
  // Time reversal is complex conjugation of the (real) Hermite-basis coefficients.
  Eigen::VectorXcd reversed = Eigen::VectorXcd::Zero(out_dim);
  for (int n = 0; n < std::min(d, out_dim); ++n) reversed[n] = std::conj(ancilla[n]);
  const OperatorMatrix disp = displacement_op(cplx(q, y), out_dim);
  // D(q + iy) carries an extra global phase exp(iqy) relative to phi(u).
  Eigen::VectorXcd out = std::polar(1.0, -q * y) * (disp.entries * reversed);
  return StateVector::from_vector(out, false);
}

WignerGrid projector_wigner(const WignerGrid& ancilla, double q, double y, Axis x, Axis p) {
  WignerGrid out(x, p);
  for (int i = 0; i < x.count; ++i) {
    for (int j = 0; j < p.count; ++j) {
      out.values(i, j) = 2.0 * ancilla.sample(x.at(i) - kSqrt2 * q, -p.at(j) + kSqrt2 * y);
    }
  }
  return out;
}

WignerGrid generalized_projector_wigner(const WignerGrid& ancilla, const ProjectorParams& params,
                                        Axis x, Axis p) {
  params.validate();
  const double t = params.transmittance, r = params.reflectance();
  const double c = std::cos(params.theta), tn = std::tan(params.theta);
  const double pref = 1.0 / std::abs(std::sqrt(r * t) * c);
  WignerGrid out(x, p);
  for (int i = 0; i < x.count; ++i) {
    const double xv = x.at(i);
    const double xa = std::sqrt(t / r) * xv - params.q / std::sqrt(r);
    for (int j = 0; j < p.count; ++j) {
      const double pa = -std::sqrt(r / t) * p.at(j) - tn / std::sqrt(r * t) * xv +
                        params.q * tn / std::sqrt(r) + params.y / (std::sqrt(t) * c);
      out.values(i, j) = pref * ancilla.sample(xa, pa);
    }
  }
  return out;
}

}  // namespace cubist
