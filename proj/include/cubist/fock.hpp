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

#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "cubist/errors.hpp"
#include "cubist/types.hpp"

namespace cubist {

/// Pure state over one or more truncated Fock modes, row-major over modes
/// (the last mode varies fastest).
class StateVector {
 public:
  StateVector(std::vector<int> mode_dims, std::vector<cplx> amplitudes,
              bool normalized);

  /// |n> in a single mode of dimension `dim`.
  static StateVector fock(int dim, int n);
  static StateVector vacuum(int dim) { return fock(dim, 0); }
  /// Single-mode state from coefficients; normalizes them.
  static StateVector from_coefficients(std::span<const cplx> coefficients);
  static StateVector from_vector(const Eigen::VectorXcd& v, bool normalize = true);
  /// Zero-mode result of a full contraction, wrapped as a dim-1 mode.
  static StateVector scalar(cplx value);

  const std::vector<int>& mode_dims() const { return mode_dims_; }
  int num_modes() const { return static_cast<int>(mode_dims_.size()); }
  int dim(int mode) const { return mode_dims_.at(mode); }
  std::size_t size() const { return amplitudes_.size(); }
  std::span<const cplx> amplitudes() const { return amplitudes_; }
  cplx amplitude(std::span<const int> index) const;
  cplx operator[](std::size_t flat) const { return amplitudes_[flat]; }
  bool is_normalized() const { return normalized_; }

  double norm_squared() const;
  StateVector normalized() const;
  Eigen::VectorXcd vector() const;

  /// Zero-pads or crops every mode to `new_dims`; crop discards amplitude.
  StateVector resized(std::vector<int> new_dims) const;

 private:
  std::vector<int> mode_dims_;
  std::vector<cplx> amplitudes_;
  bool normalized_;
};

/// Dense complex operator on a (possibly multi-mode) truncated Fock space.
struct OperatorMatrix {
  Eigen::MatrixXcd entries;
  bool hermitian = false;
  bool unitary = false;
  /// Set by constructors whose truncation is known to be risky for the inputs.
  bool truncation_risk = false;

  OperatorMatrix() = default;
  /// Validates the requested tags against the entries.
  OperatorMatrix(Eigen::MatrixXcd m, bool is_hermitian, bool is_unitary);

  int dim() const { return static_cast<int>(entries.rows()); }
  double hermiticity_residual() const;
  double unitarity_residual() const;
  /// Top-left `dim` x `dim` block.
  OperatorMatrix cropped(int dim) const;
};

std::pair<OperatorMatrix, OperatorMatrix> ladder_ops(int dim);

/// X = (a + a^dag)/sqrt2, P = (a - a^dag)/(i sqrt2); [X, P] = i, vacuum variance 1/2.
std::pair<OperatorMatrix, OperatorMatrix> quadrature_ops(int dim);

/// Position-space Fock wavefunction <x|n>, normalized recurrence.
double hermite_wavefunction(int n, double x);
/// <x|k> for k = 0..n_max, written into `out` (size n_max + 1).
void hermite_wavefunctions(int n_max, double x, std::span<double> out);

StateVector tensor(std::span<const StateVector> states);
StateVector tensor(std::initializer_list<StateVector> states);

/// Applies a single-mode operator to one mode of a multi-mode state.
StateVector apply_mode_operator(const StateVector& state, int mode,
                                const Eigen::MatrixXcd& op);
/// Applies a two-mode operator (row-major over (mode_a, mode_b)) to modes a < b.
StateVector apply_two_mode_operator(const StateVector& state, int mode_a,
                                    int mode_b, const Eigen::MatrixXcd& op);

/// Reduced density matrix of one mode.
Eigen::MatrixXcd reduced_density_matrix(const StateVector& state, int mode);

cplx expectation(const StateVector& state, int mode, const Eigen::MatrixXcd& op);

/// |<a|b>|^2 / (<a|a><b|b>); both single-mode or same shape.
double fidelity(const StateVector& a, const StateVector& b);

/// Marginal density of x cos(angle) + p sin(angle) on `mode`, evaluated at `grid`.
std::vector<double> homodyne_pdf(const StateVector& state, int mode, double angle,
                                 std::span<const double> grid);

struct Projection {
  StateVector reduced;
  double density;
};

/// Contracts `mode` against <x_angle = value|; the result is left unnormalized.
Projection project_quadrature(const StateVector& state, int mode, double angle,
                              double value);

struct HomodyneGrid {
  double min;
  double max;
  int bins;
};

/// [-8 sigma, 8 sigma] with 4096 bins, sigma^2 = <X_angle^2> of the marginal.
HomodyneGrid default_homodyne_grid(const StateVector& state, int mode, double angle);

struct HomodyneSample {
  double value;
  StateVector conditional;
};

HomodyneSample sample_homodyne(const StateVector& state, int mode, double angle,
                               Rng& rng,
                               std::optional<HomodyneGrid> grid = std::nullopt);

/// Inverse-CDF draw from a density tabulated at evenly spaced nodes, linear
/// inside each bin.
double sample_tabulated(std::span<const double> nodes, std::span<const double> pdf,
                        double u);

}  // namespace cubist
