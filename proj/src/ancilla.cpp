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

#include "cubist/ancilla.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "cubist/parallel.hpp"

namespace cubist {
namespace {

void require_lambda(double lambda_prime) {
  if (lambda_prime == 0.0 || !std::isfinite(lambda_prime)) {
    throw InvalidArgument("lambda' must be finite and nonzero");
  }
}

// y(lambda') in the rotated basis |n> -> i^n |n>, where it is real symmetric.
// Exact on the returned dim x dim block.
Eigen::MatrixXd real_nlq(double lambda_prime, int dim) {
  Eigen::MatrixXd x2 = Eigen::MatrixXd::Zero(dim, dim);
  Eigen::MatrixXd p = Eigen::MatrixXd::Zero(dim, dim);
  for (int n = 0; n < dim; ++n) {
    x2(n, n) = n + 0.5;
    if (n + 2 < dim) {
      // i^-n <n|X^2|n+2> i^(n+2) = -sqrt((n+1)(n+2))/2
      x2(n, n + 2) = x2(n + 2, n) = -0.5 * std::sqrt((n + 1.0) * (n + 2.0));
    }
    if (n + 1 < dim) p(n, n + 1) = p(n + 1, n) = std::sqrt((n + 1.0) / 2.0);
  }
  return lambda_prime * p - 3.0 / (lambda_prime * lambda_prime) * x2;
}

// d y / d lambda' in the same basis.
Eigen::MatrixXd real_nlq_derivative(double lambda_prime, int dim) {
  Eigen::MatrixXd y = real_nlq(lambda_prime, dim);
  Eigen::MatrixXd p = Eigen::MatrixXd::Zero(dim, dim);
  for (int n = 0; n + 1 < dim; ++n) p(n, n + 1) = p(n + 1, n) = std::sqrt((n + 1.0) / 2.0);
  // y = l P + c(l) X^2 with c = -3/l^2, so dy/dl = P - (2/l) (y - l P).
  return p - 2.0 / lambda_prime * (y - lambda_prime * p);
}

// Cached pieces of Y(lambda', d) = Y2 - 2 d Y1 + d^2 for a fixed lambda'.
struct RealForm {
  Eigen::MatrixXd y1;   // cropped y
  Eigen::MatrixXd y2;   // cropped y^2
  Eigen::MatrixXd full; // y on the working dim
  int n_max;

  RealForm(double lambda_prime, int n_max_in) : n_max(n_max_in) {
    const int w = n_max + 1 + kWorkingMargin;
    full = real_nlq(lambda_prime, w);
    y1 = full.topLeftCorner(n_max + 1, n_max + 1);
    Eigen::MatrixXd sq = full * full;
    y2 = 0.5 * (sq + sq.transpose()).topLeftCorner(n_max + 1, n_max + 1);
  }

  Eigen::MatrixXd at(double d) const {
    Eigen::MatrixXd m = y2 - 2.0 * d * y1;
    m.diagonal().array() += d * d;
    return m;
  }

  double min_eigenvalue(double d) const {
    if (n_max == 0) return at(d)(0, 0);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(at(d), Eigen::EigenvaluesOnly);
    return es.eigenvalues()[0];
  }

  Eigen::VectorXd min_vector(double d) const {
    if (n_max == 0) return Eigen::VectorXd::Ones(1);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(at(d));
    return es.eigenvectors().col(0);
  }

  // <y> on a real rotated-basis vector supported on 0..n_max.
  double mean(const Eigen::VectorXd& v) const { return v.dot(y1 * v); }
};

template <typename F>
double golden_section(F&& f, double lo, double hi, double tol) {
  constexpr double kInvPhi = 0.6180339887498949;
  double a = lo, b = hi;
  double c = b - kInvPhi * (b - a), d = a + kInvPhi * (b - a);
  double fc = f(c), fd = f(d);
  for (int it = 0; it < 200 && (b - a) > tol; ++it) {
    if (fc <= fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - kInvPhi * (b - a);
      fc = f(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + kInvPhi * (b - a);
      fd = f(d);
    }
  }
  return fc <= fd ? c : d;
}

// Exact line minimum in d: golden section, then the fixed point d = <y>.
double optimal_d(const RealForm& form, double d_guess, double half_width, double tol) {
  auto f = [&](double d) { return form.min_eigenvalue(d); };
  double lo = d_guess - half_width, hi = d_guess + half_width;
  double d = golden_section(f, lo, hi, tol);
  for (int grow = 0; grow < 40 && (d - lo < 1e-3 * half_width || hi - d < 1e-3 * half_width); ++grow) {
    half_width *= 2.0;
    lo = d - half_width;
    hi = d + half_width;
    d = golden_section(f, lo, hi, tol);
  }
  // Secant on h(d) = d - <y>, seeded with one fixed-point step.
  auto h = [&](double x) { return x - form.mean(form.min_vector(x)); };
  double d0 = d, h0 = h(d0);
  double d1 = d0 - h0, h1 = h(d1);
  for (int it = 0; it < 100 && h1 != h0; ++it) {
    if (std::abs(h1) < 1e-14 * std::max(1.0, std::abs(d1))) break;
    const double d2 = d1 - h1 * (d1 - d0) / (h1 - h0);
    d0 = d1;
    h0 = h1;
    d1 = d2;
    h1 = h(d1);
  }
  d = std::abs(h1) < std::abs(h0) ? d1 : d0;
  return d;
}

// Profile g(lambda') = min_d min_psi Z.
struct Profile {
  int n_max;
  double d_half_width;
  double tol;
  mutable double last_d;

  double operator()(double lambda_prime) const {
    RealForm form(lambda_prime, n_max);
    last_d = optimal_d(form, last_d, d_half_width, tol);
    return form.min_eigenvalue(last_d);
  }

  // Envelope derivative dg/dlambda' at the profiled d.
  double derivative(double lambda_prime) const {
    (*this)(lambda_prime);
    const int w = n_max + 1 + kWorkingMargin;
    RealForm form(lambda_prime, n_max);
    Eigen::VectorXd v = Eigen::VectorXd::Zero(w);
    v.head(n_max + 1) = form.min_vector(last_d);
    Eigen::VectorXd shifted = form.full * v - last_d * v;
    Eigen::VectorXd dy = real_nlq_derivative(lambda_prime, w) * v;
    return 2.0 * shifted.dot(dy);
  }
};

}  // namespace

OperatorMatrix nlq_operator(double lambda_prime, int dim) {
  require_lambda(lambda_prime);
  if (dim < 2) throw InvalidArgument("invalid dimension: dim must be >= 2");
  auto [x, p] = quadrature_ops(dim + 1);
  Eigen::MatrixXcd x2 = (x.entries * x.entries).topLeftCorner(dim, dim);
  Eigen::MatrixXcd y = lambda_prime * p.entries.topLeftCorner(dim, dim) -
                       3.0 / (lambda_prime * lambda_prime) * x2;
  y = 0.5 * (y + y.adjoint()).eval();
  return OperatorMatrix(std::move(y), true, false);
}

OperatorMatrix y_shifted_squared(double lambda_prime, double d, int n_max, int working_dim) {
  require_lambda(lambda_prime);
  if (n_max < 0) throw InvalidArgument("photon cutoff must be >= 0");
  if (working_dim <= 0) working_dim = n_max + 1 + kWorkingMargin;
  if (working_dim < n_max + 3) throw InvalidArgument("working dimension too small for exactness");
  Eigen::MatrixXcd shifted = nlq_operator(lambda_prime, working_dim).entries;
  shifted.diagonal().array() -= d;
  Eigen::MatrixXcd sq = shifted * shifted;
  Eigen::MatrixXcd y = (0.5 * (sq + sq.adjoint())).topLeftCorner(n_max + 1, n_max + 1);
  return OperatorMatrix(std::move(y), true, false);
}

Eigen::VectorXcd fix_phase(const Eigen::VectorXcd& v) {
  const Eigen::Index n = v.size();
  if (n == 0) return v;
  const double scale = v.cwiseAbs().maxCoeff();
  if (scale == 0.0) return v;
  auto pick = [&](Eigen::Index start, Eigen::Index stride) {
    Eigen::Index best = -1;
    double best_abs = 0.0;
    for (Eigen::Index k = start; k < n; k += stride) {
      const double a = std::abs(v[k]);
      if (a > best_abs * (1.0 + 1e-12) && a > 1e-12 * scale) {
        best = k;
        best_abs = a;
      }
    }
    return best;
  };
  Eigen::Index anchor = pick(0, 2);
  if (anchor < 0) anchor = pick(0, 1);
  Eigen::VectorXcd out = v * std::polar(1.0, -std::arg(v[anchor]));
  const double sign_ref = std::abs(out[0]) > 1e-12 * scale ? out[0].real() : out[anchor].real();
  if (sign_ref < 0.0) out = -out;
  return out;
}

EigenPair min_eigpair(const OperatorMatrix& y) {
  const double scale = std::max(1.0, y.entries.cwiseAbs().maxCoeff());
  if (y.hermiticity_residual() > 1e-12 * scale) {
    throw InvalidArgument("min_eigpair needs a hermitian matrix");
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(y.entries);
  const auto& values = es.eigenvalues();
  const auto& vectors = es.eigenvectors();
  const double lowest = values[0];
  const double tie = 1e-10 * std::max(1.0, values.cwiseAbs().maxCoeff());
  Eigen::Index cluster = 1;
  while (cluster < values.size() && values[cluster] - lowest <= tie) ++cluster;

  Eigen::VectorXcd v;
  if (cluster == 1) {
    v = vectors.col(0);
  } else {
    const Eigen::MatrixXcd basis = vectors.leftCols(cluster);
    // Diagonal of the eigenspace projector gives each basis vector's overlap.
    Eigen::Index best = 0;
    double best_weight = -1.0;
    for (Eigen::Index k = 0; k < basis.rows(); ++k) {
      const double w = basis.row(k).squaredNorm();
      if (w > best_weight + 1e-12) {
        best = k;
        best_weight = w;
      }
    }
    v = basis * basis.row(best).adjoint();
    v.normalize();
  }
  return {lowest, fix_phase(v)};
}

std::pair<int, int> SearchMap::argmin() const {
  Eigen::Index i = 0, j = 0;
  min_eigenvalues.minCoeff(&i, &j);
  return {static_cast<int>(i), static_cast<int>(j)};
}

int SearchMap::count_local_minima() const {
  const auto& m = min_eigenvalues;
  int count = 0;
  for (Eigen::Index i = 1; i + 1 < m.rows(); ++i) {
    for (Eigen::Index j = 1; j + 1 < m.cols(); ++j) {
      bool is_min = true;
      for (int di = -1; di <= 1 && is_min; ++di)
        for (int dj = -1; dj <= 1; ++dj)
          if ((di || dj) && !(m(i, j) < m(i + di, j + dj))) {
            is_min = false;
            break;
          }
      count += is_min;
    }
  }
  return count;
}

SearchMap search_map(int n_max, Range lambda_range, Range d_range, int lambda_count, int d_count,
                     int workers) {
  if (n_max < 0) throw InvalidArgument("photon cutoff must be >= 0");
  if (!(lambda_range.max > lambda_range.min) || !(d_range.max > d_range.min)) {
    throw InvalidArgument("search ranges need min < max");
  }
  if (lambda_range.min <= 0.0 && lambda_range.max >= 0.0) {
    throw InvalidArgument("lambda' range crosses 0; split it into two maps");
  }
  if (lambda_count < 2 || d_count < 2) throw InvalidArgument("search map needs >= 2 cells per axis");
  SearchMap map;
  map.lambda_axis = {lambda_range.min, lambda_range.max, lambda_count};
  map.d_axis = {d_range.min, d_range.max, d_count};
  map.min_eigenvalues.resize(lambda_count, d_count);
  parallel_for(static_cast<std::size_t>(lambda_count), workers, [&](std::size_t i) {
    const RealForm form(map.lambda_axis.at(static_cast<int>(i)), n_max);
    for (int j = 0; j < d_count; ++j) {
      map.min_eigenvalues(static_cast<Eigen::Index>(i), j) = form.min_eigenvalue(map.d_axis.at(j));
    }
  });
  map.db_values = map.min_eigenvalues.unaryExpr([](double v) {
    return 10.0 * std::log10(std::max(v, std::numeric_limits<double>::min()) / kShotNoise);
  });
  return map;
}

StateVector AncillaOptimum::state() const { return StateVector::from_coefficients(coefficients); }

double gaussian_limit_variance() { return 0.75 * std::cbrt(18.0); }

AncillaOptimum optimize_ancilla(int n_max, const OptimizerConfig& config) {
  if (n_max < 0) throw InvalidArgument("photon cutoff must be >= 0");
  const SearchMap coarse = search_map(n_max, config.lambda_range, config.d_range,
                                      config.lambda_count, config.d_count, config.workers);
  const auto [ci, cj] = coarse.argmin();
  const double dl = coarse.lambda_axis.step(), dd = coarse.d_axis.step();

  Profile profile{n_max, 2.0 * dd, config.tolerance, coarse.d_axis.at(cj)};
  double lambda = coarse.lambda_axis.at(ci);
  double d = profile.last_d;
  int iterations = 0;
  bool converged = false;
  double half_width = 2.0 * dl;

  auto best_so_far = [&] {
    AncillaOptimum o;
    o.n_max = n_max;
    o.lambda_opt = lambda;
    o.d_opt = d;
    o.iterations = iterations;
    return o;
  };

  while (iterations < config.max_iterations) {
    ++iterations;
    // lambda' step on the d-profiled objective, bracket kept away from 0.
    const double lo = std::max(lambda - half_width, 0.5 * lambda);
    const double hi = lambda + half_width;
    double next_lambda = golden_section(profile, lo, hi, config.tolerance);
    // Polish on the envelope derivative where it changes sign.
    double a = next_lambda - 1e-5 * std::max(1.0, next_lambda), b = next_lambda + 1e-5 * std::max(1.0, next_lambda);
    double fa = profile.derivative(a), fb = profile.derivative(b);
    if (fa < 0.0 && fb > 0.0) {
      for (int it = 0; it < 200 && b - a > 1e-14 * b; ++it) {
        const double m = 0.5 * (a + b);
        const double fm = profile.derivative(m);
        (fm < 0.0 ? a : b) = m;
      }
      next_lambda = 0.5 * (a + b);
    }
    const bool at_edge = next_lambda - lo < 1e-3 * half_width || hi - next_lambda < 1e-3 * half_width;
    // d step at the new lambda'.
    const RealForm form(next_lambda, n_max);
    const double next_d = optimal_d(form, d, 2.0 * dd, config.tolerance);
    const double change = std::max(std::abs(next_lambda - lambda), std::abs(next_d - d));
    lambda = next_lambda;
    d = next_d;
    profile.last_d = d;
    if (at_edge) {
      half_width *= 2.0;
      continue;
    }
    half_width = std::max(4.0 * change, 1e-6);
    if (change < config.tolerance) {
      converged = true;
      break;
    }
  }
  if (!converged) {
    throw AncillaConvergenceError("ancilla refinement did not converge after " +
                                      std::to_string(iterations) + " iterations",
                                  best_so_far());
  }

  AncillaOptimum out;
  out.n_max = n_max;
  out.lambda_opt = lambda;
  out.d_opt = d;
  out.iterations = iterations;
  out.working_dim = n_max + 1 + kWorkingMargin;
  Eigen::VectorXcd coefficients;
  if (n_max == 0) {
    coefficients = Eigen::VectorXcd::Ones(1);
  } else {
    coefficients = min_eigpair(y_shifted_squared(lambda, d, n_max)).vector;
  }
  out.coefficients.assign(coefficients.data(), coefficients.data() + coefficients.size());

  // Moments on the working dim, where y acting on the state is exact.
  Eigen::VectorXcd v = Eigen::VectorXcd::Zero(out.working_dim);
  v.head(n_max + 1) = coefficients;
  const Eigen::VectorXcd yv = nlq_operator(lambda, out.working_dim).entries * v;
  const double mean = v.dot(yv).real();
  out.variance = yv.squaredNorm() - mean * mean;
  out.p0 = -mean;
  out.ratio = out.variance / gaussian_limit_variance();
  if (std::abs(out.d_opt - mean) > 1e-6) {
    throw AncillaConvergenceError("optimum violates d = <y> (|diff| = " +
                                      std::to_string(std::abs(out.d_opt - mean)) + ")",
                                  out);
  }
  return out;
}

std::vector<VarianceRatioRow> variance_ratio_table(int n_max, const OptimizerConfig& config) {
  if (n_max < 1) throw InvalidArgument("variance ratio table needs N_max >= 1");
  std::vector<VarianceRatioRow> rows;
  for (int n = 0; n <= n_max; ++n) {
    const AncillaOptimum o = optimize_ancilla(n, config);
    rows.push_back({n, o.variance, o.ratio});
  }
  return rows;
}

Moments nlq_moments(const StateVector& state, double lambda_prime, double gamma, double p0) {
  require_lambda(lambda_prime);
  if (state.num_modes() != 1) throw InvalidArgument("nlq_moments needs a single-mode state");
  const int dim = state.dim(0);
  const int w = dim + 2;
  Eigen::VectorXcd v = Eigen::VectorXcd::Zero(w);
  v.head(dim) = state.normalized().vector();
  const Eigen::VectorXcd yv = nlq_operator(lambda_prime, w + 1).entries.topLeftCorner(w, w) * v;
  const double mean = v.dot(yv).real();
  const double variance = yv.squaredNorm() - mean * mean;
  const double g13 = std::cbrt(gamma);
  return {g13 * mean + p0, g13 * g13 * variance};
}

}  // namespace cubist
