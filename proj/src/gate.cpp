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

#include "cubist/gate.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <limits>
#include <string>

#include <unsupported/Eigen/FFT>

#include "cubist/gaussian.hpp"
#include "cubist/io.hpp"
#include "cubist/parallel.hpp"

namespace cubist {
namespace {

constexpr int kTableNodes = 4097;

double parse_number(std::string_view text, std::string_view what) {
  try {
    std::size_t used = 0;
    const std::string s(text);
    const double v = std::stod(s, &used);
    if (used != s.size()) throw std::invalid_argument("trailing characters");
    return v;
  } catch (const std::exception&) {
    throw InvalidArgument("cannot parse " + std::string(what) + " from '" + std::string(text) + "'");
  }
}

// Radius beyond which |sum c_n h_n(x)| stays below tol.
double support_radius(const std::vector<cplx>& c, double tol) {
  const int n_max = static_cast<int>(c.size()) - 1;
  std::vector<double> h(c.size());
  double x = std::sqrt(2.0 * n_max + 1.0);
  for (;; x += 0.01) {
    hermite_wavefunctions(n_max, x, h);
    double bound = 0.0;
    for (int n = 0; n <= n_max; ++n) bound += std::abs(c[n]) * std::abs(h[n]);
    if (bound < tol) return x;
    if (x > 60.0) throw DomainError("wavefunction support exceeds |x| = 60");
  }
}

// Mean of p - 3 gamma x^2 on the Fock state psi after x -> x / squeeze.
Moments raw_nlq_moments(const std::vector<cplx>& c, double squeeze, double gamma) {
  const int dim = static_cast<int>(c.size()) + 2;
  auto [x, p] = quadrature_ops(dim + 1);
  Eigen::MatrixXcd op = squeeze * p.entries.topLeftCorner(dim, dim) -
                        3.0 * gamma / (squeeze * squeeze) *
                            (x.entries * x.entries).topLeftCorner(dim, dim);
  Eigen::VectorXcd v = Eigen::VectorXcd::Zero(dim);
  for (std::size_t n = 0; n < c.size(); ++n) v[n] = c[n];
  v.normalize();
  const Eigen::VectorXcd ov = op * v;
  const double mean = v.dot(ov).real();
  return {mean, ov.squaredNorm() - mean * mean};
}

Eigen::VectorXcd padded(const StateVector& s, int dim) {
  Eigen::VectorXcd v = Eigen::VectorXcd::Zero(dim);
  const Eigen::VectorXcd src = s.vector();
  v.head(std::min<Eigen::Index>(dim, src.size())) = src.head(std::min<Eigen::Index>(dim, src.size()));
  return v;
}

// Rows of the orthogonal mode map x' = O x (same map for p).
struct CircuitRows {
  std::array<double, 3> o0, o1, o2;
  explicit CircuitRows(const GateConfig& c) {
    const double t1 = c.t1, r1 = c.r1(), t2 = c.t2, r2 = c.r2();
    o0 = {std::sqrt(t1), -std::sqrt(r1), 0.0};
    o1 = {std::sqrt(r1 * t2), std::sqrt(t1 * t2), -std::sqrt(r2)};
    o2 = {std::sqrt(r1 * r2), std::sqrt(t1 * r2), std::sqrt(t2)};
  }
};

}  // namespace

AncillaSpec AncillaSpec::parse(std::string_view text) {
  AncillaSpec spec;
  auto colon = text.find(':');
  if (colon == std::string_view::npos && text.starts_with("optimized-")) colon = 9;
  const std::string_view head = text.substr(0, colon);
  const std::string_view arg = colon == std::string_view::npos ? std::string_view{} : text.substr(colon + 1);
  if (head == "vacuum" && arg.empty()) {
    spec.kind = Kind::vacuum;
  } else if (head == "gaussian") {
    spec.kind = Kind::gaussian;
    if (!arg.empty()) {
      spec.squeeze = parse_number(arg, "ancilla squeeze");
      if (!(*spec.squeeze > 0.0)) throw InvalidArgument("ancilla squeeze must be positive");
    }
  } else if (head == "optimized" && !arg.empty()) {
    spec.kind = Kind::optimized;
    const double n = parse_number(arg, "ancilla photon cutoff");
    if (n < 0 || n != std::floor(n)) throw InvalidArgument("ancilla photon cutoff must be a non-negative integer");
    spec.n_max = static_cast<int>(n);
  } else if ((head == "coefficients" || head == "file") && !arg.empty()) {
    spec.kind = Kind::coefficients;
    spec.coefficients = read_coefficients_json(std::string(arg));
  } else {
    throw InvalidArgument("unknown ancilla '" + std::string(text) +
                          "' (expected vacuum, gaussian[:s], optimized-N or file:<path>)");
  }
  return spec;
}

std::string AncillaSpec::to_string() const {
  switch (kind) {
    case Kind::vacuum:
      return "vacuum";
    case Kind::gaussian:
      if (squeeze) {
        char buf[32];
        const auto end = std::to_chars(buf, buf + sizeof buf, *squeeze).ptr;
        return "gaussian:" + std::string(buf, end);
      }
      return "gaussian";
    case Kind::optimized:
      return "optimized-" + std::to_string(n_max);
    case Kind::coefficients:
      return "coefficients[" + std::to_string(coefficients.size()) + "]";
  }
  return "unknown";
}

double GateConfig::gamma_c() const { return gamma * std::pow(r1() * t2 / r2(), 1.5); }
double GateConfig::kappa() const { return std::sqrt(r1() * t2 / r2()); }
double GateConfig::squeeze_factor() const { return std::pow(10.0, -squeeze_db / 20.0); }

void GateConfig::validate() const {
  if (gamma == 0.0 || !std::isfinite(gamma)) throw InvalidArgument("gamma must be finite and nonzero");
  if (!(t1 > 0.0 && t1 < 1.0) || !(t2 > 0.0 && t2 < 1.0)) {
    throw InvalidArgument("transmittances must lie in (0, 1)");
  }
  if (!std::isfinite(squeeze_db)) throw InvalidArgument("squeeze_db must be finite");
  for (int d : dims) {
    if (d < 8) throw InvalidArgument("invalid dimension: every mode dim must be >= 8");
  }
  if (shots < 1) throw InvalidArgument("shots must be >= 1");
  if (grid.u_points < 16 || grid.x1_points < 16) throw InvalidArgument("grid needs >= 16 points per axis");
  if (grid.fft_size < 2 * grid.x1_points || (grid.fft_size & (grid.fft_size - 1)) != 0) {
    throw InvalidArgument("fft_size must be a power of two >= 2 * x1_points");
  }
  if (!(grid.support_tolerance > 0.0 && grid.support_tolerance < 1e-3)) {
    throw InvalidArgument("support_tolerance must lie in (0, 1e-3)");
  }
  if (ancilla.squeeze && !(*ancilla.squeeze > 0.0)) throw InvalidArgument("ancilla squeeze must be positive");
}

StateVector ResolvedAncilla::prepared_state(int dim) const {
  const int work = dim + 40;
  Eigen::VectorXcd v = Eigen::VectorXcd::Zero(work);
  for (std::size_t n = 0; n < coefficients.size() && static_cast<int>(n) < work; ++n) v[n] = coefficients[n];
  v = squeeze_op(1.0 / squeeze, work).entries * v;
  v = displacement_op(cplx(0.0, p0 / kSqrt2), work).entries * v;
  return StateVector::from_vector(v.head(dim), true);
}

ResolvedAncilla resolve_ancilla(const AncillaSpec& spec, double gamma, const OptimizerConfig& optimizer) {
  if (gamma == 0.0) throw InvalidArgument("gamma must be nonzero");
  ResolvedAncilla out;
  double default_squeeze = 1.0;
  switch (spec.kind) {
    case AncillaSpec::Kind::vacuum:
      out.coefficients = {cplx(1.0, 0.0)};
      break;
    case AncillaSpec::Kind::gaussian:
      // Best Gaussian ancilla: squeezed vacuum at the N = 0 optimum.
      out.coefficients = {cplx(1.0, 0.0)};
      default_squeeze = std::pow(18.0, 1.0 / 6.0) * std::cbrt(std::abs(gamma));
      break;
    case AncillaSpec::Kind::coefficients: {
      if (spec.coefficients.empty()) throw InvalidArgument("ancilla coefficients are empty");
      out.coefficients = spec.coefficients;
      double norm = 0.0;
      for (const cplx& c : out.coefficients) norm += std::norm(c);
      if (!(norm > 0.0)) throw InvalidArgument("ancilla coefficients have zero norm");
      for (cplx& c : out.coefficients) c /= std::sqrt(norm);
      break;
    }
    case AncillaSpec::Kind::optimized: {
      out.optimum = optimize_ancilla(spec.n_max, optimizer);
      out.coefficients = out.optimum->coefficients;
      // p + 3|gamma| x^2 is the time-reversed problem.
      if (gamma < 0.0) {
        for (cplx& c : out.coefficients) c = std::conj(c);
      }
      default_squeeze = out.optimum->lambda_opt * std::cbrt(std::abs(gamma));
      break;
    }
  }
  out.squeeze = spec.squeeze.value_or(default_squeeze);
  if (!(out.squeeze > 0.0)) throw InvalidArgument("ancilla squeeze must be positive");
  out.p0 = spec.p0 ? *spec.p0 : -raw_nlq_moments(out.coefficients, out.squeeze, gamma).mean;
  return out;
}

GateConfig effective_squeezing_config(double gamma_c, int n_max, const GateConfig& base,
                                      const OptimizerConfig& optimizer) {
  if (!(gamma_c > 0.0)) throw InvalidArgument("effective squeezing needs gamma_c > 0");
  const AncillaOptimum opt = optimize_ancilla(n_max, optimizer);
  const double kappa = opt.lambda_opt * std::cbrt(gamma_c);
  GateConfig c = base;
  c.t1 = 0.5;
  c.t2 = 2.0 * kappa * kappa / (1.0 + 2.0 * kappa * kappa);
  c.gamma = gamma_c / (kappa * kappa * kappa);
  c.ancilla = AncillaSpec{};
  c.ancilla.kind = AncillaSpec::Kind::optimized;
  c.ancilla.n_max = n_max;
  c.ancilla.squeeze = 1.0;
  return c;
}

double adaptive_theta(double q, const GateConfig& config) {
  return std::atan(6.0 * config.t2 * config.gamma * q / std::sqrt(config.r2()));
}

double feedforward_displacement(double q, double y, double theta, const GateConfig& config) {
  const double c = std::cos(theta);
  if (std::abs(c) < 1e-12) throw SingularPhaseError("cos(theta) vanishes; feedforward is singular");
  const double t1 = config.t1, r1 = config.r1(), t2 = config.t2, r2 = config.r2();
  return std::sqrt(r1) * y / (std::sqrt(t1 * r2) * c) +
         3.0 * config.gamma * std::sqrt(r1 * t2) * (t2 - r2) * q * q / (std::sqrt(t1) * std::pow(r2, 1.5));
}

StateVector ideal_cubic_output(const StateVector& input, const GateConfig& config) {
  if (input.num_modes() != 1) throw InvalidArgument("ideal_cubic_output needs a single-mode input");
  const int dim = std::max(config.dims[0], input.dim(0) + 8);
  const int work = dim + 64;
  Eigen::MatrixXd x = quadrature_ops(work).first.entries.real();
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(x);
  const double gc = config.gamma_c();
  Eigen::VectorXcd phases(work);
  for (int k = 0; k < work; ++k) {
    const double xk = es.eigenvalues()[k];
    phases[k] = std::polar(1.0, gc * xk * xk * xk);
  }
  const Eigen::MatrixXd& v = es.eigenvectors();
  Eigen::VectorXcd psi = padded(input.normalized(), work);
  Eigen::VectorXcd out = v * phases.cwiseProduct(v.transpose() * psi).eval();
  out = squeeze_op(std::sqrt(config.t1), work).entries * out;
  const double kept = out.head(dim).squaredNorm();
  if (1.0 - kept > 1e-3) {
    throw TruncationError("ideal cubic output loses " + std::to_string(1.0 - kept) +
                          " of its norm at dim " + std::to_string(dim));
  }
  return StateVector::from_vector(out.head(dim), true);
}

// ---------------------------------------------------------------------------

cplx GateSimulator::ModeTable::operator()(double x) const {
  const double s = scale * x;
  if (std::abs(x) > radius) return 0.0;
  const int n_max = static_cast<int>(coefficients.size()) - 1;
  double h[512];
  if (n_max >= 512) throw DomainError("mode table order too large");
  hermite_wavefunctions(n_max, s, std::span<double>(h, n_max + 1));
  cplx acc = 0.0;
  for (int n = 0; n <= n_max; ++n) acc += coefficients[n] * h[n];
  acc *= std::sqrt(scale);
  return phase == 0.0 ? acc : acc * std::polar(1.0, phase * x);
}

double GateSimulator::ModeTable::draw(Rng& rng) const {
  return sample_tabulated(nodes, density, uniform01(rng));
}

struct GateSimulator::Slice {
  double q = 0.0, theta = 0.0, cos_theta = 1.0, tan_theta = 0.0;
  double alpha = 0.0;
  std::vector<double> u, x1, beta;
  double du = 0.0, dx1 = 0.0;
  Eigen::MatrixXcd h;  // rows u, columns x1
  double norm = 0.0;   // int |Psi_q|^2 du dv
};

GateSimulator::GateSimulator(const StateVector& input, const GateConfig& config,
                             const OptimizerConfig& optimizer)
    : GateSimulator(input, config, resolve_ancilla(config.ancilla, config.gamma, optimizer)) {}

GateSimulator::GateSimulator(const StateVector& input, const GateConfig& config, ResolvedAncilla ancilla)
    : config_(config), input_(input), ancilla_(std::move(ancilla)) {
  config_.validate();
  if (input.num_modes() != 1) throw InvalidArgument("gate input must be a single-mode state");
  if (std::abs(input.norm_squared() - 1.0) > 1e-10) throw PreconditionError("gate input must be normalized");
  build_tables();
}

void GateSimulator::build_tables() {
  const double tol = config_.grid.support_tolerance;
  modes_[0].coefficients.assign(input_.amplitudes().begin(), input_.amplitudes().end());
  modes_[1].coefficients = {cplx(1.0, 0.0)};
  modes_[1].scale = 1.0 / config_.squeeze_factor();
  modes_[2].coefficients = ancilla_.coefficients;
  modes_[2].scale = ancilla_.squeeze;
  modes_[2].phase = ancilla_.p0;
  for (auto& m : modes_) {
    // Trailing zero amplitudes only cost time.
    while (m.coefficients.size() > 1 && m.coefficients.back() == cplx(0.0, 0.0)) m.coefficients.pop_back();
    m.radius = support_radius(m.coefficients, tol) / m.scale;
    m.nodes.resize(kTableNodes);
    m.density.resize(kTableNodes);
    for (int i = 0; i < kTableNodes; ++i) {
      const double x = -m.radius + 2.0 * m.radius * i / (kTableNodes - 1);
      m.nodes[i] = x;
      m.density[i] = std::norm(m(x));
    }
  }
}

GateSimulator::Slice GateSimulator::slice(double q) const {
  const CircuitRows rows(config_);
  const GridConfig& g = config_.grid;
  Slice s;
  s.q = q;
  s.theta = adaptive_theta(q, config_);
  s.cos_theta = std::cos(s.theta);
  if (std::abs(s.cos_theta) < 1e-12) throw SingularPhaseError("cos(theta) vanishes for this q");
  s.tan_theta = std::tan(s.theta);

  // Bounding range of u = o0.x over the box |x_i| <= R_i cut by o1.x = q.
  const std::array<double, 3> radius{modes_[0].radius, modes_[1].radius, modes_[2].radius};
  double u_min = std::numeric_limits<double>::infinity(), u_max = -u_min;
  for (int free = 0; free < 3; ++free) {
    if (rows.o1[free] == 0.0) continue;
    const int a = (free + 1) % 3, b = (free + 2) % 3;
    for (int sa = -1; sa <= 1; sa += 2) {
      for (int sb = -1; sb <= 1; sb += 2) {
        std::array<double, 3> x{};
        x[a] = sa * radius[a];
        x[b] = sb * radius[b];
        x[free] = (q - rows.o1[a] * x[a] - rows.o1[b] * x[b]) / rows.o1[free];
        if (std::abs(x[free]) > radius[free] * (1.0 + 1e-12)) continue;
        const double u = rows.o0[0] * x[0] + rows.o0[1] * x[1] + rows.o0[2] * x[2];
        u_min = std::min(u_min, u);
        u_max = std::max(u_max, u);
      }
    }
  }
  if (!(u_max > u_min)) throw CoverageError("q = " + std::to_string(q) + " lies outside the mode supports");

  const int nu = g.u_points, nx = g.x1_points;
  s.u.resize(nu);
  s.x1.resize(nx);
  s.beta.resize(nu);
  s.du = (u_max - u_min) / (nu - 1);
  s.dx1 = 2.0 * radius[1] / (nx - 1);
  const double sqrt_t1r2 = std::sqrt(config_.t1 * config_.r2());
  s.alpha = 1.0 / sqrt_t1r2;
  for (int i = 0; i < nu; ++i) {
    s.u[i] = u_min + s.du * i;
    s.beta[i] = (std::sqrt(config_.r1()) * s.u[i] - std::sqrt(config_.t1 * config_.t2) * q) / sqrt_t1r2;
  }
  std::vector<cplx> psi1(nx);
  for (int m = 0; m < nx; ++m) {
    s.x1[m] = -radius[1] + s.dx1 * m;
    psi1[m] = modes_[1](s.x1[m]);
  }
  s.h.resize(nu, nx);
  double norm = 0.0;
  for (int i = 0; i < nu; ++i) {
    for (int m = 0; m < nx; ++m) {
      const double v = s.alpha * s.x1[m] + s.beta[i];
      const double x0 = rows.o0[0] * s.u[i] + rows.o1[0] * q + rows.o2[0] * v;
      const double x2 = rows.o1[2] * q + rows.o2[2] * v;
      cplx psi = psi1[m];
      if (psi != 0.0) psi *= modes_[2](x2);
      if (psi != 0.0) psi *= modes_[0](x0);
      norm += std::norm(psi);
      s.h(i, m) = psi == 0.0 ? psi : psi * std::polar(1.0, 0.5 * s.tan_theta * v * v);
    }
  }
  s.norm = norm * s.alpha * s.du * s.dx1;
  if (!(s.norm > 0.0)) throw CoverageError("conditional state vanishes on the grid");
  return s;
}

std::pair<std::vector<double>, std::vector<double>> GateSimulator::y_density(double q) const {
  return density_of(slice(q));
}

std::pair<std::vector<double>, std::vector<double>> GateSimulator::density_of(const Slice& s) const {
  const int nx = config_.grid.x1_points, m = config_.grid.fft_size;
  // sum_u |sum_m e^{-ik x_m} h(u, m)|^2 is the transform of the u-summed
  // autocorrelation of h along x1, read off the diagonals of h^T conj(h).
  const Eigen::MatrixXcd gram = s.h.transpose() * s.h.conjugate();
  std::vector<cplx> lag(m, cplx(0.0)), out(m);
  for (int tau = -(nx - 1); tau < nx; ++tau) {
    cplx acc = 0.0;
    for (int n = std::max(0, -tau); n < nx && n + tau < nx; ++n) acc += gram(n + tau, n);
    lag[(tau + m) % m] = acc;
  }
  Eigen::FFT<double> fft;
  fft.fwd(out, lag);
  std::vector<double> power(m);
  for (int j = 0; j < m; ++j) power[j] = std::max(0.0, out[j].real());
  const double dk = 2.0 * kPi / (m * s.dx1);
  const double scale = s.alpha * s.alpha / (2.0 * kPi * s.cos_theta * s.norm) * s.dx1 * s.dx1 * s.du;
  std::vector<double> y(m), pdf(m);
  for (int j = 0; j < m; ++j) {
    const int jj = j - m / 2;  // signed frequency index
    const int src = (jj + m) % m;
    y[j] = s.cos_theta * jj * dk / s.alpha;
    pdf[j] = scale * power[src];
  }
  // Probability pushed to the edge of the frequency window means aliasing.
  double edge = 0.0, total = 0.0;
  const double dy = y[1] - y[0];
  for (int j = 0; j < m; ++j) {
    total += pdf[j] * dy;
    if (j < m / 16 || j >= m - m / 16) edge += pdf[j] * dy;
  }
  if (edge > 1e-6 * total) {
    throw CoverageError("y density reaches the frequency window edge (" + std::to_string(edge) +
                        "); increase x1_points");
  }
  return {std::move(y), std::move(pdf)};
}

ConditionalOutput GateSimulator::conditional(double q, double y) const { return finish(slice(q), y); }

ConditionalOutput GateSimulator::finish(const Slice& s, double y) const {
  const int nu = config_.grid.u_points, nx = config_.grid.x1_points;
  const double k = y * s.alpha / s.cos_theta;
  Eigen::VectorXcd kernel(nx);
  for (int m = 0; m < nx; ++m) kernel[m] = std::polar(1.0, -k * s.x1[m]);
  const Eigen::VectorXcd rows = s.h * kernel;

  const double p_disp = config_.feedforward ? feedforward_displacement(s.q, y, s.theta, config_) : 0.0;
  ConditionalOutput out;
  out.u = s.u;
  out.psi.resize(nu);
  double norm = 0.0;
  for (int i = 0; i < nu; ++i) {
    out.psi[i] = rows[i] * std::polar(1.0, -y * s.beta[i] / s.cos_theta + p_disp * s.u[i]);
    norm += std::norm(out.psi[i]);
  }
  norm *= s.du;
  if (!(norm > 0.0)) throw CoverageError("conditional output vanishes on the grid");
  const double inv = 1.0 / std::sqrt(norm);
  for (cplx& v : out.psi) v *= inv;

  // Fidelity against S(sqrt T1) exp(i gamma_c x^3)|in>, normalized analytically.
  const double st1 = std::sqrt(config_.t1);
  const double gc = config_.gamma_c();
  const double pre = std::pow(config_.t1, -0.25);
  cplx overlap = 0.0;
  for (int i = 0; i < nu; ++i) {
    const double x = s.u[i] / st1;
    const cplx target = pre * modes_[0](x) * std::polar(1.0, gc * x * x * x);
    overlap += std::conj(target) * out.psi[i];
  }
  overlap *= s.du;
  out.fidelity = std::norm(overlap);

  QuadratureMoments& mo = out.moments;
  for (int i = 0; i < nu; ++i) {
    const double w = std::norm(out.psi[i]) * s.du;
    mo.mean_x += w * s.u[i];
    mo.mean_x2 += w * s.u[i] * s.u[i];
  }
  int mp = 1;
  while (mp < 4 * nu) mp <<= 1;
  Eigen::FFT<double> fft;
  std::vector<cplx> in(mp, cplx(0.0)), spec(mp);
  std::copy(out.psi.begin(), out.psi.end(), in.begin());
  fft.fwd(spec, in);
  double total = 0.0;
  for (int j = 0; j < mp; ++j) {
    const int jj = j < mp / 2 ? j : j - mp;
    const double p = 2.0 * kPi * jj / (mp * s.du);
    const double w = std::norm(spec[j]);
    total += w;
    mo.mean_p += w * p;
    mo.mean_p2 += w * p * p;
  }
  mo.mean_p /= total;
  mo.mean_p2 /= total;

  // Fock projection; undo S(sqrt T1) first when the target is unsqueezed.
  const int dim = config_.dims[0];
  const double xs = config_.target_squeezed ? 1.0 : 1.0 / st1;
  const double weight = config_.target_squeezed ? 1.0 : std::pow(config_.t1, -0.25);
  Eigen::VectorXcd c = Eigen::VectorXcd::Zero(dim);
  std::vector<double> h(dim);
  for (int i = 0; i < nu; ++i) {
    hermite_wavefunctions(dim - 1, s.u[i] * xs, h);
    for (int n = 0; n < dim; ++n) c[n] += h[n] * out.psi[i];
  }
  c *= weight * s.du;
  out.captured_norm = c.squaredNorm();
  if (1.0 - out.captured_norm > 1e-3) {
    throw TruncationError("output Fock projection keeps only " + std::to_string(out.captured_norm) +
                          " of the norm at dim " + std::to_string(dim));
  }
  out.fock = StateVector::from_vector(c, true);
  if (!config_.target_squeezed) {
    mo.mean_x /= st1;
    mo.mean_x2 /= config_.t1;
    mo.mean_p *= st1;
    mo.mean_p2 *= config_.t1;
  }
  return out;
}

GateShotRecord GateSimulator::shot(Rng& rng) const {
  const CircuitRows rows(config_);
  double q = 0.0;
  for (int i = 0; i < 3; ++i) q += rows.o1[i] * modes_[i].draw(rng);
  const Slice s = slice(q);
  auto [ys, pdf] = density_of(s);
  const double y = sample_tabulated(ys, pdf, uniform01(rng));
  ConditionalOutput c = finish(s, y);
  GateShotRecord r;
  r.q = q;
  r.theta = s.theta;
  r.y = y;
  r.p_disp = feedforward_displacement(q, y, s.theta, config_);
  r.output_state = std::move(c.fock);
  r.fidelity = c.fidelity;
  r.moments = c.moments;
  r.captured_norm = c.captured_norm;
  return r;
}

GateShotRecord run_gate_shot(const StateVector& input, const GateConfig& config, Rng& rng) {
  return GateSimulator(input, config).shot(rng);
}

GateRunSummary run_gate_batch(const StateVector& input, const GateConfig& config, int workers,
                              const OptimizerConfig& optimizer) {
  return run_gate_batch(GateSimulator(input, config, optimizer), workers);
}

GateRunSummary run_gate_batch(const GateSimulator& sim, int workers) {
  const GateConfig& config = sim.config();
  GateRunSummary summary;
  summary.config = config;
  summary.gamma_tilde = config.gamma;
  summary.ancilla = sim.ancilla();
  summary.n_shots = config.shots;
  summary.shots.resize(config.shots);
  parallel_for(static_cast<std::size_t>(config.shots), workers, [&](std::size_t i) {
    GateShotOutcome& o = summary.shots[i];
    o.index = i;
    Rng rng(mix_seed(config.seed, i));
    try {
      o.record = sim.shot(rng);
    } catch (const Error& e) {
      o.error = e.what();
    }
  });

  std::vector<const GateShotRecord*> ok;
  for (const auto& o : summary.shots) {
    if (o.record) ok.push_back(&*o.record);
  }
  summary.n_failed = config.shots - static_cast<int>(ok.size());
  const double n = static_cast<double>(ok.size());
  if (ok.empty()) return summary;

  auto mean_of = [&](auto&& f) {
    double acc = 0.0;
    for (const auto* r : ok) acc += f(*r);
    return acc / n;
  };
  auto var_of = [&](auto&& f, double mean) {
    if (ok.size() < 2) return 0.0;
    double acc = 0.0;
    for (const auto* r : ok) acc += (f(*r) - mean) * (f(*r) - mean);
    return acc / (n - 1.0);
  };
  auto fid = [](const GateShotRecord& r) { return r.fidelity; };
  summary.mean_fidelity = mean_of(fid);
  summary.std_error = std::sqrt(var_of(fid, summary.mean_fidelity) / n);
  auto qf = [](const GateShotRecord& r) { return r.q; };
  auto yf = [](const GateShotRecord& r) { return r.y; };
  summary.q_mean = mean_of(qf);
  summary.q_variance = var_of(qf, summary.q_mean);
  summary.y_mean = mean_of(yf);
  summary.y_variance = var_of(yf, summary.y_mean);
  QuadratureMoments& m = summary.mean_moments;
  m.mean_x = mean_of([](const GateShotRecord& r) { return r.moments.mean_x; });
  m.mean_p = mean_of([](const GateShotRecord& r) { return r.moments.mean_p; });
  m.mean_x2 = mean_of([](const GateShotRecord& r) { return r.moments.mean_x2; });
  m.mean_p2 = mean_of([](const GateShotRecord& r) { return r.moments.mean_p2; });
  summary.variance_x = m.mean_x2 - m.mean_x * m.mean_x;
  summary.variance_p = m.mean_p2 - m.mean_p * m.mean_p;
  // Delta-method errors of E[a^2] - E[a]^2 over the shot mixture.
  auto zx = [&](const GateShotRecord& r) { return r.moments.mean_x2 - 2.0 * m.mean_x * r.moments.mean_x; };
  auto zp = [&](const GateShotRecord& r) { return r.moments.mean_p2 - 2.0 * m.mean_p * r.moments.mean_p; };
  summary.variance_x_se = std::sqrt(var_of(zx, mean_of(zx)) / n);
  summary.variance_p_se = std::sqrt(var_of(zp, mean_of(zp)) / n);
  return summary;
}

StateVector fock_reference_conditional(const StateVector& input, const GateConfig& config,
                                       const ResolvedAncilla& ancilla, double q, double y) {
  config.validate();
  const int d0 = config.dims[0], d1 = config.dims[1], d2 = config.dims[2];
  const StateVector in = input.normalized().resized({d0});
  const StateVector m1 = StateVector::from_vector(
      squeeze_op(config.squeeze_factor(), d1 + 40).entries.col(0).head(d1), true);
  const StateVector m2 = ancilla.prepared_state(d2);
  StateVector state = tensor({in, m1, m2});
  state = apply_two_mode_operator(state, 0, 1, beam_splitter_op(config.t1, d0, d1).entries);
  state = apply_two_mode_operator(state, 1, 2, beam_splitter_op(config.t2, d1, d2).entries);
  const double theta = adaptive_theta(q, config);
  StateVector rest = project_quadrature(state, 1, 0.0, q).reduced.normalized();
  StateVector out = project_quadrature(rest, 1, kPi / 2.0 - theta, y).reduced;
  if (!(out.norm_squared() > 0.0)) throw CoverageError("reference conditional state vanishes");
  if (!config.feedforward) return out.normalized();
  const double p_disp = feedforward_displacement(q, y, theta, config);
  const int work = d0 + 40;
  Eigen::VectorXcd v = padded(out, work);
  v = displacement_op(cplx(0.0, p_disp / kSqrt2), work).entries * v;
  return StateVector::from_vector(v, true);
}

HeisenbergCheck verify_heisenberg_identity(const GateConfig& config, int trials, std::uint64_t seed) {
  if (trials < 1) throw InvalidArgument("trials must be >= 1");
  const CircuitRows rows(config);
  const double g = config.gamma, t1 = config.t1, r1 = config.r1(), t2 = config.t2, r2 = config.r2();
  const double kappa = config.kappa(), gc = config.gamma_c();
  const bool balanced = t1 == 0.5 && t2 == 0.5;
  HeisenbergCheck check;
  check.balanced_residual = balanced ? 0.0 : std::numeric_limits<double>::quiet_NaN();
  Rng rng(seed);
  auto draw = [&] { return 6.0 * uniform01(rng) - 3.0; };
  for (int t = 0; t < trials; ++t) {
    std::array<double, 3> x{}, p{};
    for (int i = 0; i < 3; ++i) {
      x[i] = draw();
      p[i] = draw();
    }
    auto dot = [](const std::array<double, 3>& a, const std::array<double, 3>& b) {
      return a[0] * b[0] + a[1] * b[1] + a[2] * b[2];
    };
    // Circuit algebra with the measured values substituted.
    const double q = dot(rows.o1, x);
    const double theta = adaptive_theta(q, config);
    const double y = dot(rows.o2, x) * std::sin(theta) + dot(rows.o2, p) * std::cos(theta);
    const double x_step = dot(rows.o0, x);
    const double p_step = dot(rows.o0, p) + feedforward_displacement(q, y, theta, config);
    // Closed-form output quadratures.
    const double x_closed = std::sqrt(t1) * (x[0] - std::sqrt(r1 / t1) * x[1]);
    const double p_closed =
        (p[0] + 3.0 * gc * x[0] * x[0] + kappa * (p[2] - 3.0 * g * x[2] * x[2]) +
         6.0 * g * r1 * std::sqrt(t1) * std::pow(t2 / r2, 1.5) *
             (x[0] * x[1] + 0.5 * std::sqrt(t1 / r1) * x[1] * x[1])) /
        std::sqrt(t1);
    check.max_residual =
        std::max({check.max_residual, std::abs(x_step - x_closed), std::abs(p_step - p_closed)});
    if (balanced) {
      const double x22 = (x[0] - x[1]) / kSqrt2;
      const double p22 = kSqrt2 * (p[0] + 3.0 * g / (2.0 * kSqrt2) * x[0] * x[0]) +
                         (p[2] - 3.0 * g * x[2] * x[2]) + 3.0 * g * (x[0] * x[1] + 0.5 * x[1] * x[1]);
      check.balanced_residual =
          std::max({check.balanced_residual, std::abs(x22 - x_closed), std::abs(p22 - p_closed)});
    }
  }
  return check;
}

NoiseBudget noise_budget(const StateVector& input, double squeeze_db, const ResolvedAncilla& ancilla,
                         const GateConfig& config) {
  if (input.num_modes() != 1) throw InvalidArgument("noise budget needs a single-mode input");
  const double t1 = config.t1, r1 = config.r1();
  const double gc = config.gamma_c(), kappa = config.kappa();
  NoiseBudget b;

  const int dim = input.dim(0) + 3;
  auto [x, p] = quadrature_ops(dim + 1);
  const Eigen::MatrixXcd x2 = (x.entries * x.entries).topLeftCorner(dim, dim);
  const Eigen::VectorXcd v = padded(input.normalized(), dim);
  const Eigen::VectorXcd ov = (p.entries.topLeftCorner(dim, dim) + 3.0 * gc * x2) * v;
  const double mean = v.dot(ov).real();
  b.ideal = (ov.squaredNorm() - mean * mean) / t1;

  b.ancilla = kappa * kappa / t1 * raw_nlq_moments(ancilla.coefficients, ancilla.squeeze, config.gamma).variance;

  const double s = std::pow(10.0, -squeeze_db / 20.0);
  const double m2 = 0.5 * s * s;
  const double ex0sq = v.dot(x2 * v).real();
  const double a = std::sqrt(t1 / r1);
  // Odd moments of the squeezed vacuum vanish, so <x0> drops out.
  const double var = ex0sq * m2 + 0.25 * a * a * 2.0 * m2 * m2;
  b.squeezed = 36.0 * gc * gc * (t1 / r1) * var / t1;
  return b;
}

}  // namespace cubist
