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

#include "cubist/fock.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

namespace cubist {
namespace {

constexpr double kNormTolerance = 1e-10;
constexpr int kMaxHermiteOrder = 400;

std::size_t product(const std::vector<int>& dims) {
  return std::accumulate(dims.begin(), dims.end(), std::size_t{1},
                         [](std::size_t acc, int d) { return acc * static_cast<std::size_t>(d); });
}

// Strides for splitting a flat index into (outer, mode index, inner).
struct ModeSplit {
  std::size_t outer;
  std::size_t dim;
  std::size_t inner;
};

ModeSplit split_at(const StateVector& s, int mode) {
  if (mode < 0 || mode >= s.num_modes()) {
    throw IndexError("mode " + std::to_string(mode) + " out of range for " +
                     std::to_string(s.num_modes()) + "-mode state");
  }
  ModeSplit out{1, static_cast<std::size_t>(s.dim(mode)), 1};
  for (int m = 0; m < mode; ++m) out.outer *= s.dim(m);
  for (int m = mode + 1; m < s.num_modes(); ++m) out.inner *= s.dim(m);
  return out;
}

void require_normalized(const StateVector& s) {
  double n = s.norm_squared();
  if (std::abs(n - 1.0) > kNormTolerance) {
    throw PreconditionError("state is not normalized (norm^2 = " + std::to_string(n) + ")");
  }
}

}  // namespace

StateVector::StateVector(std::vector<int> mode_dims, std::vector<cplx> amplitudes,
                         bool normalized)
    : mode_dims_(std::move(mode_dims)),
      amplitudes_(std::move(amplitudes)),
      normalized_(normalized) {
  if (mode_dims_.empty()) throw InvalidArgument("state needs at least one mode");
  for (int d : mode_dims_) {
    if (d < 2 && !(d == 1 && mode_dims_.size() == 1)) {
      throw InvalidArgument("mode dimension must be >= 2");
    }
  }
  if (amplitudes_.size() != product(mode_dims_)) {
    throw InvalidArgument("amplitude count does not match mode dimensions");
  }
  if (normalized_ && std::abs(norm_squared() - 1.0) > kNormTolerance) {
    throw InvalidArgument("state flagged normalized but norm^2 = " +
                          std::to_string(norm_squared()));
  }
}

StateVector StateVector::fock(int dim, int n) {
  if (dim < 2) throw InvalidArgument("dim must be >= 2");
  if (n < 0 || n >= dim) throw IndexError("photon number outside truncation");
  std::vector<cplx> amps(dim, 0.0);
  amps[n] = 1.0;
  return StateVector({dim}, std::move(amps), true);
}

StateVector StateVector::from_coefficients(std::span<const cplx> coefficients) {
  Eigen::VectorXcd v(static_cast<Eigen::Index>(coefficients.size()));
  for (std::size_t i = 0; i < coefficients.size(); ++i) v[i] = coefficients[i];
  if (v.size() == 1) {
    // A lone |0> coefficient is padded to the minimum mode size.
    v.conservativeResize(2);
    v[1] = 0.0;
  }
  return from_vector(v, true);
}

StateVector StateVector::from_vector(const Eigen::VectorXcd& v, bool normalize) {
  std::vector<cplx> amps(v.data(), v.data() + v.size());
  if (normalize) {
    double n = v.norm();
    if (n == 0.0) throw InvalidArgument("cannot normalize a zero vector");
    for (auto& a : amps) a /= n;
  }
  return StateVector({static_cast<int>(v.size())}, std::move(amps), normalize);
}

StateVector StateVector::scalar(cplx value) {
  return StateVector({1}, {value}, false);
}

cplx StateVector::amplitude(std::span<const int> index) const {
  if (index.size() != mode_dims_.size()) throw IndexError("index rank mismatch");
  std::size_t flat = 0;
  for (std::size_t m = 0; m < index.size(); ++m) {
    if (index[m] < 0 || index[m] >= mode_dims_[m]) throw IndexError("index out of range");
    flat = flat * mode_dims_[m] + index[m];
  }
  return amplitudes_[flat];
}

double StateVector::norm_squared() const {
  double s = 0.0;
  for (const auto& a : amplitudes_) s += std::norm(a);
  return s;
}

StateVector StateVector::normalized() const {
  double n = std::sqrt(norm_squared());
  if (n == 0.0) throw InvalidArgument("cannot normalize a zero state");
  std::vector<cplx> amps = amplitudes_;
  for (auto& a : amps) a /= n;
  return StateVector(mode_dims_, std::move(amps), true);
}

Eigen::VectorXcd StateVector::vector() const {
  return Eigen::Map<const Eigen::VectorXcd>(amplitudes_.data(),
                                            static_cast<Eigen::Index>(amplitudes_.size()));
}

StateVector StateVector::resized(std::vector<int> new_dims) const {
  if (new_dims.size() != mode_dims_.size()) throw InvalidArgument("mode count mismatch");
  std::vector<cplx> out(product(new_dims), 0.0);
  std::vector<int> idx(mode_dims_.size(), 0);
  for (std::size_t flat = 0; flat < amplitudes_.size(); ++flat) {
    bool inside = true;
    std::size_t target = 0;
    for (std::size_t m = 0; m < idx.size(); ++m) {
      if (idx[m] >= new_dims[m]) inside = false;
      target = target * new_dims[m] + idx[m];
    }
    if (inside) out[target] = amplitudes_[flat];
    for (int m = static_cast<int>(idx.size()) - 1; m >= 0; --m) {
      if (++idx[m] < mode_dims_[m]) break;
      idx[m] = 0;
    }
  }
  StateVector result(std::move(new_dims), std::move(out), false);
  if (normalized_ && std::abs(result.norm_squared() - 1.0) <= kNormTolerance) {
    return result.normalized();
  }
  return result;
}

OperatorMatrix::OperatorMatrix(Eigen::MatrixXcd m, bool is_hermitian, bool is_unitary)
    : entries(std::move(m)), hermitian(is_hermitian), unitary(is_unitary) {
  if (entries.rows() != entries.cols()) throw InvalidArgument("operator must be square");
  if (hermitian && hermiticity_residual() >= 1e-12) {
    throw InvalidArgument("operator tagged hermitian is not");
  }
  if (unitary && unitarity_residual() >= 1e-10) {
    throw InvalidArgument("operator tagged unitary is not");
  }
}

double OperatorMatrix::hermiticity_residual() const {
  return (entries - entries.adjoint()).cwiseAbs().maxCoeff();
}

double OperatorMatrix::unitarity_residual() const {
  const auto n = entries.rows();
  return (entries.adjoint() * entries - Eigen::MatrixXcd::Identity(n, n)).cwiseAbs().maxCoeff();
}

OperatorMatrix OperatorMatrix::cropped(int dim) const {
  if (dim < 1 || dim > this->dim()) throw InvalidArgument("crop dimension out of range");
  OperatorMatrix out;
  out.entries = entries.topLeftCorner(dim, dim);
  out.hermitian = hermitian;
  return out;
}

std::pair<OperatorMatrix, OperatorMatrix> ladder_ops(int dim) {
  if (dim < 2) throw InvalidArgument("invalid dimension: dim must be >= 2");
  Eigen::MatrixXcd a = Eigen::MatrixXcd::Zero(dim, dim);
  for (int n = 1; n < dim; ++n) a(n - 1, n) = std::sqrt(static_cast<double>(n));
  Eigen::MatrixXcd ad = a.adjoint();
  return {OperatorMatrix(std::move(a), false, false), OperatorMatrix(std::move(ad), false, false)};
}

std::pair<OperatorMatrix, OperatorMatrix> quadrature_ops(int dim) {
  auto [a, ad] = ladder_ops(dim);
  const cplx i(0.0, 1.0);
  Eigen::MatrixXcd x = (a.entries + ad.entries) / kSqrt2;
  Eigen::MatrixXcd p = (a.entries - ad.entries) / (i * kSqrt2);
  return {OperatorMatrix(std::move(x), true, false), OperatorMatrix(std::move(p), true, false)};
}

void hermite_wavefunctions(int n_max, double x, std::span<double> out) {
  if (n_max < 0) throw InvalidArgument("photon number must be >= 0");
  if (n_max > kMaxHermiteOrder) {
    throw DomainError("Hermite order above 400 exceeds the recurrence guard");
  }
  if (!std::isfinite(x)) throw InvalidArgument("x must be finite");
  if (out.size() < static_cast<std::size_t>(n_max) + 1) throw InvalidArgument("output too small");
  // pi^(-1/4)
  out[0] = 0.75112554446494248286 * std::exp(-0.5 * x * x);
  if (n_max == 0) return;
  out[1] = kSqrt2 * x * out[0];
  for (int n = 1; n < n_max; ++n) {
    out[n + 1] = std::sqrt(2.0 / (n + 1)) * x * out[n] - std::sqrt(static_cast<double>(n) / (n + 1)) * out[n - 1];
  }
}

double hermite_wavefunction(int n, double x) {
  if (n < 0) throw InvalidArgument("photon number must be >= 0");
  if (n > kMaxHermiteOrder) throw DomainError("Hermite order above 400 exceeds the recurrence guard");
  std::vector<double> buf(n + 1);
  hermite_wavefunctions(n, x, buf);
  return buf[n];
}

StateVector tensor(std::span<const StateVector> states) {
  if (states.empty()) throw InvalidArgument("tensor of an empty list");
  std::vector<int> dims = states[0].mode_dims();
  std::vector<cplx> amps(states[0].amplitudes().begin(), states[0].amplitudes().end());
  bool normalized = states[0].is_normalized();
  for (std::size_t k = 1; k < states.size(); ++k) {
    const auto& s = states[k];
    std::vector<cplx> next;
    next.reserve(amps.size() * s.size());
    for (const auto& a : amps) {
      for (const auto& b : s.amplitudes()) next.push_back(a * b);
    }
    amps = std::move(next);
    dims.insert(dims.end(), s.mode_dims().begin(), s.mode_dims().end());
    normalized = normalized && s.is_normalized();
  }
  StateVector out(std::move(dims), std::move(amps), false);
  return normalized ? out.normalized() : out;
}

StateVector tensor(std::initializer_list<StateVector> states) {
  return tensor(std::span<const StateVector>(states.begin(), states.size()));
}

StateVector apply_mode_operator(const StateVector& state, int mode, const Eigen::MatrixXcd& op) {
  const auto split = split_at(state, mode);
  if (static_cast<std::size_t>(op.rows()) != split.dim || op.cols() != op.rows()) {
    throw InvalidArgument("operator dimension does not match mode");
  }
  std::vector<cplx> out(state.size(), 0.0);
  const auto amps = state.amplitudes();
  for (std::size_t o = 0; o < split.outer; ++o) {
    for (std::size_t r = 0; r < split.dim; ++r) {
      for (std::size_t c = 0; c < split.dim; ++c) {
        const cplx m = op(r, c);
        if (m == cplx(0.0)) continue;
        const std::size_t src = (o * split.dim + c) * split.inner;
        const std::size_t dst = (o * split.dim + r) * split.inner;
        for (std::size_t i = 0; i < split.inner; ++i) out[dst + i] += m * amps[src + i];
      }
    }
  }
  return StateVector(state.mode_dims(), std::move(out), false);
}

StateVector apply_two_mode_operator(const StateVector& state, int mode_a, int mode_b,
                                    const Eigen::MatrixXcd& op) {
  if (mode_a >= mode_b) throw InvalidArgument("two-mode operator needs mode_a < mode_b");
  const auto sa = split_at(state, mode_a);
  const auto sb = split_at(state, mode_b);
  const std::size_t da = sa.dim, db = sb.dim;
  if (static_cast<std::size_t>(op.rows()) != da * db) {
    throw InvalidArgument("operator dimension does not match modes");
  }
  const std::size_t middle = sa.inner / (db * sb.inner);
  const std::size_t inner = sb.inner;
  const auto amps = state.amplitudes();
  std::vector<cplx> out(state.size(), 0.0);
  Eigen::VectorXcd local(da * db), mapped(da * db);
  for (std::size_t o = 0; o < sa.outer; ++o) {
    for (std::size_t mid = 0; mid < middle; ++mid) {
      for (std::size_t in = 0; in < inner; ++in) {
        auto flat = [&](std::size_t ia, std::size_t ib) {
          return (((o * da + ia) * middle + mid) * db + ib) * inner + in;
        };
        for (std::size_t ia = 0; ia < da; ++ia)
          for (std::size_t ib = 0; ib < db; ++ib) local[ia * db + ib] = amps[flat(ia, ib)];
        mapped.noalias() = op * local;
        for (std::size_t ia = 0; ia < da; ++ia)
          for (std::size_t ib = 0; ib < db; ++ib) out[flat(ia, ib)] = mapped[ia * db + ib];
      }
    }
  }
  return StateVector(state.mode_dims(), std::move(out), false);
}

Eigen::MatrixXcd reduced_density_matrix(const StateVector& state, int mode) {
  const auto split = split_at(state, mode);
  const auto amps = state.amplitudes();
  Eigen::MatrixXcd rho = Eigen::MatrixXcd::Zero(split.dim, split.dim);
  for (std::size_t o = 0; o < split.outer; ++o) {
    for (std::size_t m = 0; m < split.dim; ++m) {
      for (std::size_t n = 0; n < split.dim; ++n) {
        cplx acc = 0.0;
        const std::size_t bm = (o * split.dim + m) * split.inner;
        const std::size_t bn = (o * split.dim + n) * split.inner;
        for (std::size_t i = 0; i < split.inner; ++i) acc += amps[bm + i] * std::conj(amps[bn + i]);
        rho(m, n) += acc;
      }
    }
  }
  return rho;
}

cplx expectation(const StateVector& state, int mode, const Eigen::MatrixXcd& op) {
  Eigen::MatrixXcd rho = reduced_density_matrix(state, mode);
  return (rho * op).trace() / state.norm_squared();
}

double fidelity(const StateVector& a, const StateVector& b) {
  if (a.mode_dims().size() != b.mode_dims().size()) throw InvalidArgument("mode count mismatch");
  std::vector<int> dims(a.mode_dims().size());
  for (std::size_t m = 0; m < dims.size(); ++m) dims[m] = std::max(a.mode_dims()[m], b.mode_dims()[m]);
  const Eigen::VectorXcd va = a.resized(dims).vector();
  const Eigen::VectorXcd vb = b.resized(dims).vector();
  return std::norm(va.dot(vb)) / (va.squaredNorm() * vb.squaredNorm());
}

std::vector<double> homodyne_pdf(const StateVector& state, int mode, double angle,
                                 std::span<const double> grid) {
  const auto split = split_at(state, mode);
  require_normalized(state);
  for (std::size_t i = 1; i < grid.size(); ++i) {
    if (!(grid[i] > grid[i - 1])) throw InvalidArgument("grid must be strictly increasing");
  }
  const int d = static_cast<int>(split.dim);
  const Eigen::MatrixXcd rho = reduced_density_matrix(state, mode);
  std::vector<cplx> phase(d);
  for (int n = 0; n < d; ++n) phase[n] = std::polar(1.0, -angle * n);
  std::vector<double> psi(d);
  std::vector<double> out(grid.size());
  Eigen::VectorXcd f(d);
  for (std::size_t g = 0; g < grid.size(); ++g) {
    hermite_wavefunctions(d - 1, grid[g], psi);
    for (int n = 0; n < d; ++n) f[n] = phase[n] * psi[n];
    // density = sum_{m,n} f_m rho_mn conj(f_n)
    out[g] = std::max(0.0, (f.transpose() * rho * f.conjugate()).value().real());
  }
  return out;
}

Projection project_quadrature(const StateVector& state, int mode, double angle, double value) {
  const auto split = split_at(state, mode);
  require_normalized(state);
  const int d = static_cast<int>(split.dim);
  std::vector<double> psi(d);
  hermite_wavefunctions(d - 1, value, psi);
  std::vector<cplx> bra(d);
  for (int n = 0; n < d; ++n) bra[n] = std::polar(psi[n], -angle * n);

  const auto amps = state.amplitudes();
  std::vector<cplx> out(split.outer * split.inner, 0.0);
  for (std::size_t o = 0; o < split.outer; ++o) {
    for (int n = 0; n < d; ++n) {
      const std::size_t base = (o * split.dim + n) * split.inner;
      for (std::size_t i = 0; i < split.inner; ++i) out[o * split.inner + i] += bra[n] * amps[base + i];
    }
  }
  double density = 0.0;
  for (const auto& a : out) density += std::norm(a);

  if (state.num_modes() == 1) return {StateVector::scalar(out[0]), density};
  std::vector<int> dims;
  for (int m = 0; m < state.num_modes(); ++m)
    if (m != mode) dims.push_back(state.dim(m));
  return {StateVector(std::move(dims), std::move(out), false), density};
}

HomodyneGrid default_homodyne_grid(const StateVector& state, int mode, double angle) {
  const int d = state.dim(mode);
  // X_angle needs one extra level so its square is exact on the kept block.
  auto [x, p] = quadrature_ops(d + 1);
  Eigen::MatrixXcd xa = std::cos(angle) * x.entries + std::sin(angle) * p.entries;
  Eigen::MatrixXcd xa2 = (xa * xa).topLeftCorner(d, d);
  double second = expectation(state, mode, xa2).real();
  double sigma = std::sqrt(std::max(second, 1e-3));
  return {-8.0 * sigma, 8.0 * sigma, 4096};
}

double sample_tabulated(std::span<const double> nodes, std::span<const double> pdf, double u) {
  const std::size_t n = nodes.size();
  if (n < 2 || pdf.size() != n) throw InvalidArgument("tabulated density needs >= 2 nodes");
  std::vector<double> cdf(n, 0.0);
  for (std::size_t i = 1; i < n; ++i) {
    cdf[i] = cdf[i - 1] + 0.5 * (pdf[i] + pdf[i - 1]) * (nodes[i] - nodes[i - 1]);
  }
  const double target = u * cdf.back();
  auto it = std::upper_bound(cdf.begin(), cdf.end(), target);
  const std::size_t k =
      std::clamp<std::size_t>(static_cast<std::size_t>(it - cdf.begin()), 1, n - 1) - 1;
  // Density is linear on [nodes[k], nodes[k+1]]; invert the quadratic CDF piece.
  const double h = nodes[k + 1] - nodes[k];
  const double f0 = pdf[k];
  const double slope = (pdf[k + 1] - f0) / h;
  const double r = target - cdf[k];
  const double root = f0 + std::sqrt(std::max(0.0, f0 * f0 + 2.0 * slope * r));
  const double t = root > 0.0 ? 2.0 * r / root : 0.5 * h;
  return nodes[k] + std::clamp(t, 0.0, h);
}

HomodyneSample sample_homodyne(const StateVector& state, int mode, double angle, Rng& rng,
                               std::optional<HomodyneGrid> grid) {
  require_normalized(state);
  const HomodyneGrid g = grid ? *grid : default_homodyne_grid(state, mode, angle);
  if (g.bins < 2 || !(g.max > g.min)) throw InvalidArgument("invalid homodyne grid");
  std::vector<double> nodes(g.bins + 1);
  for (int i = 0; i <= g.bins; ++i) nodes[i] = g.min + (g.max - g.min) * i / g.bins;
  const auto pdf = homodyne_pdf(state, mode, angle, nodes);
  double mass = 0.0;
  for (int i = 0; i < g.bins; ++i) mass += 0.5 * (pdf[i] + pdf[i + 1]) * (nodes[i + 1] - nodes[i]);
  if (mass < 0.999) {
    throw CoverageError("homodyne grid captures only " + std::to_string(mass) + " of the marginal");
  }
  const double value = sample_tabulated(nodes, pdf, uniform01(rng));
  auto projected = project_quadrature(state, mode, angle, value);
  return {value, projected.reduced.normalized()};
}

}  // namespace cubist
