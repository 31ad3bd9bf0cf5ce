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

// Prints one PASS/FAIL line per acceptance criterion; exits non-zero on any FAIL.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <string>
#include <vector>

#include "cubist/ancilla.hpp"
#include "cubist/gate.hpp"
#include "cubist/gaussian.hpp"
#include "cubist/parallel.hpp"
#include "cubist/phase_space.hpp"
#include "cubist/stats.hpp"
#include "oracles.hpp"

using namespace cubist;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t) {
  return std::chrono::duration<double>(Clock::now() - t).count();
}

struct Outcome {
  bool pass;
  std::string detail;
};

std::string fmt(const char* f, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, f, args...);
  return buf;
}

Outcome criterion1() {
  const auto t = Clock::now();
  const AncillaOptimum o = optimize_ancilla(3);
  const double dt = seconds_since(t);
  const double expected[4] = {0.17, 0.56, 0.73, 0.35};
  bool ok = dt < 60.0;
  double worst = 0.0;
  for (int k = 0; k < 4; ++k) worst = std::max(worst, std::abs(std::abs(o.coefficients[k]) - expected[k]));
  ok = ok && worst <= 0.01;
  // Remove the global phase with c0, then require (+, -i, -, +i).
  const cplx g = std::abs(o.coefficients[0]) / o.coefficients[0];
  const cplx pattern[4] = {1.0, cplx(0.0, -1.0), -1.0, cplx(0.0, 1.0)};
  double phase_err = 0.0;
  for (int k = 0; k < 4; ++k) {
    const cplx c = g * o.coefficients[k];
    phase_err = std::max(phase_err, std::abs(c / std::abs(c) - pattern[k]));
  }
  ok = ok && phase_err < 1e-6;
  return {ok, fmt("|c| = (%.4f, %.4f, %.4f, %.4f), max dev %.4f <= 0.01, phase err %.1e, %.2f s",
                  std::abs(o.coefficients[0]), std::abs(o.coefficients[1]), std::abs(o.coefficients[2]),
                  std::abs(o.coefficients[3]), worst, phase_err, dt)};
}

Outcome criterion2() {
  const AncillaOptimum o = optimize_ancilla(0);
  const double l0 = std::pow(18.0, 1.0 / 6.0), v0 = 0.75 * std::cbrt(18.0);
  const double dl = std::abs(o.lambda_opt - l0), dv = std::abs(o.variance - v0);
  return {dl <= 1e-4 && dv <= 1e-5,
          fmt("lambda' = %.8f (|diff| %.1e <= 1e-4), V0 = %.8f (|diff| %.1e <= 1e-5)", o.lambda_opt, dl,
              o.variance, dv)};
}

Outcome criterion3() {
  const auto table = variance_ratio_table(9);
  bool decreasing = true;
  std::string ratios;
  for (std::size_t i = 0; i < table.size(); ++i) {
    if (i > 0 && !(table[i].ratio < table[i - 1].ratio)) decreasing = false;
    ratios += fmt("%s%.4f", i ? " " : "", table[i].ratio);
  }
  const double d1 = std::abs(table[1].variance - oracle::brute_force_optimum_n1());
  const double d2 = std::abs(table[2].variance - oracle::brute_force_optimum_n2());
  return {decreasing && d1 < 1e-5 && d2 < 1e-5,
          fmt("ratios [%s] strictly decreasing=%s; brute force |dV| N=1 %.1e, N=2 %.1e (< 1e-5)", ratios.c_str(),
              decreasing ? "yes" : "no", d1, d2)};
}

Outcome criterion4() {
  const auto t = Clock::now();
  GateConfig balanced;
  const HeisenbergCheck b = verify_heisenberg_identity(balanced, 1000, 17);
  Rng rng(4);
  double worst = b.max_residual;
  for (int k = 0; k < 5; ++k) {
    GateConfig c;
    c.t1 = 0.1 + 0.8 * uniform01(rng);
    c.t2 = 0.1 + 0.8 * uniform01(rng);
    c.gamma = 0.01 + 0.5 * uniform01(rng);
    worst = std::max(worst, verify_heisenberg_identity(c, 1000, 100 + k).max_residual);
  }
  const double dt = seconds_since(t);
  return {worst < 1e-10 && b.balanced_residual < 1e-10 && dt < 5.0,
          fmt("max residual %.1e over balanced + 5 random configs, balanced vs closed form %.1e, %.2f s", worst,
              b.balanced_residual, dt)};
}

Outcome criterion5() {
  const Axis ax{-8.0, 8.0, 321}, out{-3.0, 3.0, 121};
  ProjectorParams params;
  params.q = 0.6;
  params.y = -0.4;
  double worst = 0.0;
  for (const StateVector& s : {StateVector::vacuum(2), StateVector::fock(2, 1), optimize_ancilla(3).state()}) {
    const WignerGrid w = wigner_of_state(s, ax, ax);
    const WignerGrid a = projector_wigner(w, params.q, params.y, out, out);
    const WignerGrid g = generalized_projector_wigner(w, params, out, out);
    worst = std::max(worst, (a.values - g.values).cwiseAbs().maxCoeff());
  }
  return {worst < 1e-6, fmt("max |generalized - balanced| = %.1e over vacuum, |1>, optimized-3", worst)};
}

Outcome criterion6() {
  const Axis x{-6.0, 6.0, 121}, p{-12.0, 12.0, 1201};
  double mirror = 0.0;
  std::vector<int> counts;
  for (int n : {1, 3, 5, 9}) {
    const WignerGrid w = wigner_of_state(optimize_ancilla(n).state(), x, p);
    mirror = std::max(mirror, (w.values - w.values.colwise().reverse()).cwiseAbs().maxCoeff());
    counts.push_back(sign_changes_along_p(w, 0.0));
  }
  bool monotone = true;
  for (std::size_t i = 1; i < counts.size(); ++i) monotone = monotone && counts[i] >= counts[i - 1];
  return {mirror < 1e-9 && monotone, fmt("max |W(-x,p) - W(x,p)| = %.1e; sign changes at x=0 for N=1,3,5,9: "
                                         "%d %d %d %d",
                                         mirror, counts[0], counts[1], counts[2], counts[3])};
}

Outcome criterion7() {
  const auto t = Clock::now();
  const char* ladder[] = {"gaussian", "optimized-1", "optimized-3", "optimized-5"};
  std::vector<GateRunSummary> runs;
  for (const char* a : ladder) {
    GateConfig c;
    c.gamma = 0.1;
    c.squeeze_db = 15.0;
    c.shots = 2000;
    c.ancilla = AncillaSpec::parse(a);
    runs.push_back(run_gate_batch(StateVector::vacuum(2), c, default_workers()));
  }
  bool ok = true;
  std::string detail;
  for (std::size_t i = 0; i < runs.size(); ++i) {
    detail += fmt("%s%s %.4f+/-%.4f", i ? ", " : "", ladder[i], runs[i].mean_fidelity, runs[i].std_error);
    ok = ok && runs[i].n_failed == 0;
    if (i > 0) {
      const double gap = runs[i].mean_fidelity - runs[i - 1].mean_fidelity;
      ok = ok && gap > 2.0 * std::hypot(runs[i].std_error, runs[i - 1].std_error);
    }
  }
  const double dt = seconds_since(t);
  ok = ok && dt < 600.0;
  return {ok, detail + fmt("; %.0f s", dt)};
}

Outcome criterion8() {
  bool ok = true;
  std::string detail;
  for (double s_in : {1.0, 1.5}) {
    GateConfig c;
    c.gamma = 1e-6;
    c.shots = 2000;
    c.ancilla = AncillaSpec::parse("vacuum");
    const StateVector input = StateVector::from_vector(squeeze_op(s_in, 60).entries.col(0));
    const GateRunSummary r = run_gate_batch(input, c, default_workers());
    const double var_in = 0.5 * s_in * s_in;
    const double var1 = 0.5 * c.squeeze_factor() * c.squeeze_factor();
    const double expected = c.t1 * var_in + c.r1() * var1;
    const double rel = std::abs(r.variance_x - expected) / expected;
    ok = ok && rel < 0.02 && r.n_failed == 0;
    detail += fmt("%sVar_in %.3f: Var_out(x) %.5f vs %.5f (rel %.2f%%)", detail.empty() ? "" : "; ", var_in,
                  r.variance_x, expected, 100.0 * rel);
  }
  return {ok, detail};
}

Outcome criterion9() {
  const double s = 0.6, angle = kPi / 5.0;
  const cplx alpha(0.8, -0.5);
  const double mean = kSqrt2 * (alpha.real() * std::cos(angle) + alpha.imag() * std::sin(angle));
  const double var = 0.5 * (s * s * std::cos(angle) * std::cos(angle) + std::sin(angle) * std::sin(angle) / (s * s));
  const Eigen::VectorXcd sq = displacement_op(alpha, 60).entries * squeeze_op(s, 60).entries.col(0);
  struct Ref {
    const char* name;
    StateVector state;
    double angle;
    std::function<double(double)> cdf;
  };
  const std::vector<Ref> refs{
      {"vacuum", StateVector::vacuum(6), 0.3, [](double x) { return 0.5 * std::erfc(-x); }},
      {"|1>", StateVector::fock(6, 1), 0.0,
       [](double x) { return 0.5 * std::erfc(-x) - x * std::exp(-x * x) / std::sqrt(kPi); }},
      {"displaced squeezed", StateVector::from_vector(sq.head(45)), angle,
       [=](double x) { return 0.5 * std::erfc(-(x - mean) / std::sqrt(2.0 * var)); }},
  };
  bool ok = true;
  std::string detail;
  Rng rng(2718);
  for (const Ref& r : refs) {
    const HomodyneGrid g = default_homodyne_grid(r.state, 0, r.angle);
    std::vector<double> nodes(g.bins + 1);
    for (int i = 0; i <= g.bins; ++i) nodes[i] = g.min + (g.max - g.min) * i / g.bins;
    const std::vector<double> pdf = homodyne_pdf(r.state, 0, r.angle, nodes);
    std::vector<double> samples(20000);
    for (double& v : samples) v = sample_tabulated(nodes, pdf, uniform01(rng));
    const double sd = g.max / 8.0;  // default grid spans +/- 8 sigma
    double m = 0.0;
    for (double v : samples) m += v;
    m /= samples.size();
    const ChiSquareResult c = chi_square_gof(samples, r.cdf, m - 3.0 * sd, m + 3.0 * sd, 40);
    ok = ok && c.p_value > 1e-3;
    detail += fmt("%s p=%.3f, ", r.name, c.p_value);
  }
  const double ai = airy(0.0);
  const double err = std::abs(ai - 0.3550280539);
  ok = ok && err < 1e-10;
  return {ok, detail + fmt("Ai(0) = %.12f (|diff| %.1e)", ai, err)};
}

}  // namespace

int main() {
  const std::vector<std::function<Outcome()>> criteria{criterion1, criterion2, criterion3, criterion4, criterion5,
                                                       criterion6, criterion7, criterion8, criterion9};
  int failures = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Outcome o;
    try {
      o = criteria[i]();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    if (!o.pass) ++failures;
    std::printf("%s criterion %zu: %s\n", o.pass ? "PASS" : "FAIL", i + 1, o.detail.c_str());
    std::fflush(stdout);
  }
  return failures == 0 ? 0 : 1;
}
