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

#include <utility>
#include <vector>

#include "cubist/fock.hpp"

namespace cubist {

/// y(lambda') = lambda' P - 3 (X / lambda')^2, exact on a dim x dim block.
OperatorMatrix nlq_operator(double lambda_prime, int dim);

/// Extra levels used when forming [y - d]^2 before cropping to N + 1.
inline constexpr int kWorkingMargin = 8;

/// Y(lambda', d)_mn = <m|[y(lambda') - d]^2|n>, m, n <= N.
OperatorMatrix y_shifted_squared(double lambda_prime, double d, int n_max,
                                 int working_dim = 0);

struct EigenPair {
  double value;
  Eigen::VectorXcd vector;
};

/// Smallest eigenvalue of a hermitian matrix with a reproducible eigenvector:
/// degenerate eigenspaces are resolved by projecting the basis vector with the
/// largest overlap (lowest index on ties), then fix_phase is applied.
EigenPair min_eigpair(const OperatorMatrix& y);

/// Removes the global phase: the largest-modulus even-index coefficient is
/// made real (any coefficient if all even ones vanish), then the sign is
/// chosen so that c_0 > 0, or that coefficient > 0 when c_0 vanishes.
Eigen::VectorXcd fix_phase(const Eigen::VectorXcd& v);

struct Range {
  double min;
  double max;
};

/// Minimum eigenvalue of Y(lambda', d) over a (lambda', d) grid; rows follow lambda'.
struct SearchMap {
  Axis lambda_axis;
  Axis d_axis;
  Eigen::MatrixXd min_eigenvalues;
  /// 10 log10(value / 0.5), the shot-noise-referenced display layer.
  Eigen::MatrixXd db_values;

  std::pair<int, int> argmin() const;
  /// Cells strictly below all eight neighbours.
  int count_local_minima() const;
};

SearchMap search_map(int n_max, Range lambda_range, Range d_range, int lambda_count,
                     int d_count, int workers = 1);

struct OptimizerConfig {
  Range lambda_range{0.3, 4.0};
  Range d_range{-12.0, 2.0};
  int lambda_count = 160;
  int d_count = 160;
  double tolerance = 1e-9;
  int max_iterations = 10000;
  int workers = 1;
};

struct AncillaOptimum {
  int n_max = 0;
  std::vector<cplx> coefficients;
  double lambda_opt = 0.0;
  double d_opt = 0.0;
  /// Var(y(lambda_opt)) of the optimal state.
  double variance = 0.0;
  /// variance / Gaussian-limit variance.
  double ratio = 1.0;
  /// Displacement that cancels <y(lambda_opt)>; scale by gamma^(1/3) for a gate.
  double p0 = 0.0;
  int working_dim = 0;
  int iterations = 0;

  StateVector state() const;
};

struct AncillaConvergenceError : ConvergenceError {
  AncillaConvergenceError(const std::string& what, AncillaOptimum best)
      : ConvergenceError(what), best_so_far(std::move(best)) {}
  AncillaOptimum best_so_far;
};

/// Coarse search_map scan followed by coordinate descent with golden-section
/// line searches on (lambda', d).
AncillaOptimum optimize_ancilla(int n_max, const OptimizerConfig& config = {});

/// Minimum variance over Gaussian states, (3/4) 18^(1/3).
double gaussian_limit_variance();

struct VarianceRatioRow {
  int n_max;
  double variance;
  double ratio;
};

std::vector<VarianceRatioRow> variance_ratio_table(int n_max, const OptimizerConfig& config = {});

struct Moments {
  double mean;
  double variance;
};

/// Mean and variance of gamma^(1/3) y(lambda') + p0 on a single-mode state.
Moments nlq_moments(const StateVector& state, double lambda_prime, double gamma, double p0);

}  // namespace cubist
