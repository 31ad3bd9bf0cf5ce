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

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "cubist/ancilla.hpp"
#include "cubist/fock.hpp"

namespace cubist {

/// Ancilla for mode 2: a Fock superposition psi, prepared as
/// exp(i p0 x) S psi with (S psi)(x) = sqrt(squeeze) psi(squeeze x).
struct AncillaSpec {
  enum class Kind { vacuum, gaussian, optimized, coefficients };

  Kind kind = Kind::optimized;
  /// Photon cutoff for Kind::optimized.
  int n_max = 5;
  /// Fock coefficients for Kind::coefficients.
  std::vector<cplx> coefficients;
  /// Defaults: lambda'_opt gamma^(1/3) for optimized and Gaussian ancillas, 1 for
  /// vacuum and explicit coefficients.
  std::optional<double> squeeze;
  /// Default cancels the mean of p - 3 gamma x^2 on the prepared state.
  std::optional<double> p0;

  /// "vacuum", "gaussian[:<squeeze>]", "optimized-<N>" (or "optimized:<N>") or
  /// "file:<json path>". A bare "gaussian" is the squeezed vacuum that is optimal
  /// among Gaussian states.
  static AncillaSpec parse(std::string_view text);
  std::string to_string() const;
};

/// Sampling grid of the position-representation engine.
struct GridConfig {
  int u_points = 256;
  int x1_points = 128;
  int fft_size = 2048;
  /// Wavefunction amplitude below which a mode is treated as unsupported.
  double support_tolerance = 1e-9;
};

struct GateConfig {
  double gamma = 0.1;
  double t1 = 0.5;
  double t2 = 0.5;
  double squeeze_db = 15.0;
  AncillaSpec ancilla;
  /// Fock truncation per mode: [0] is the output (and reference input) mode,
  /// [1] and [2] are only used by the Fock reference engine.
  std::array<int, 3> dims{40, 24, 24};
  std::uint64_t seed = 1;
  int shots = 1000;
  bool feedforward = true;
  /// Compare against S(sqrt T1) exp(i gamma_c x^3)|in>; false undoes S(sqrt T1) on the output first.
  bool target_squeezed = true;
  GridConfig grid;

  double r1() const { return 1.0 - t1; }
  double r2() const { return 1.0 - t2; }
  /// gamma (R1 T2 / R2)^(3/2), the cubic strength delivered to the input.
  double gamma_c() const;
  /// sqrt(R1 T2 / R2), the effective squeezing applied to the ancilla.
  double kappa() const;
  /// x-squeezing factor of mode 1, 10^(-dB/20).
  double squeeze_factor() const;
  void validate() const;
};

/// Ancilla with every default filled in.
struct ResolvedAncilla {
  std::vector<cplx> coefficients;
  double squeeze = 1.0;
  double p0 = 0.0;
  /// Set for optimized ancillas.
  std::optional<AncillaOptimum> optimum;

  /// Fock state of the prepared ancilla on `dim` levels.
  StateVector prepared_state(int dim) const;
};

ResolvedAncilla resolve_ancilla(const AncillaSpec& spec, double gamma,
                                const OptimizerConfig& optimizer = {});

/// Configuration that delivers the same gamma_c through unbalanced splitters
/// (T1 = 1/2) with a raw optimized ancilla: the second splitter supplies the
/// ancilla squeezing lambda'_opt gamma_c^(1/3) instead of a squeezer.
GateConfig effective_squeezing_config(double gamma_c, int n_max, const GateConfig& base,
                                      const OptimizerConfig& optimizer = {});

double adaptive_theta(double q, const GateConfig& config);
double feedforward_displacement(double q, double y, double theta, const GateConfig& config);

/// S(sqrt T1) exp(i gamma_c X^3)|input> on dims[0] levels (at least input dim + 8).
StateVector ideal_cubic_output(const StateVector& input, const GateConfig& config);

struct QuadratureMoments {
  double mean_x = 0.0;
  double mean_p = 0.0;
  double mean_x2 = 0.0;
  double mean_p2 = 0.0;
};

struct GateShotRecord {
  double q = 0.0;
  double theta = 0.0;
  double y = 0.0;
  double p_disp = 0.0;
  StateVector output_state = StateVector::vacuum(2);
  double fidelity = 0.0;
  QuadratureMoments moments;
  /// Norm of the output kept by the Fock projection.
  double captured_norm = 0.0;
};

/// Conditional state of mode 0 for given outcomes, tabulated in position space.
struct ConditionalOutput {
  std::vector<double> u;
  std::vector<cplx> psi;
  double fidelity = 0.0;
  QuadratureMoments moments;
  StateVector fock = StateVector::vacuum(2);
  double captured_norm = 0.0;
};

/// Position-representation simulator of the gate. Mode wavefunctions are
/// combined through the orthogonal beam-splitter map, q is drawn from its exact
/// marginal, and the rotated homodyne on mode 2 is a chirped Fourier transform.
class GateSimulator {
 public:
  GateSimulator(const StateVector& input, const GateConfig& config,
                const OptimizerConfig& optimizer = {});
  GateSimulator(const StateVector& input, const GateConfig& config, ResolvedAncilla ancilla);

  const GateConfig& config() const { return config_; }
  const ResolvedAncilla& ancilla() const { return ancilla_; }

  GateShotRecord shot(Rng& rng) const;
  /// Density of y given q, tabulated on an even grid.
  std::pair<std::vector<double>, std::vector<double>> y_density(double q) const;
  /// Output for fixed outcomes, feedforward applied when enabled.
  ConditionalOutput conditional(double q, double y) const;

 private:
  struct ModeTable {
    std::vector<cplx> coefficients;
    double scale = 1.0;  // psi(x) = sqrt(scale) sum c_n h_n(scale x) exp(i phase x)
    double phase = 0.0;
    double radius = 0.0;
    std::vector<double> nodes;
    std::vector<double> density;
    cplx operator()(double x) const;
    double draw(Rng& rng) const;
  };
  struct Slice;

  void build_tables();
  Slice slice(double q) const;
  std::pair<std::vector<double>, std::vector<double>> density_of(const Slice& slice) const;
  ConditionalOutput finish(const Slice& slice, double y) const;

  GateConfig config_;
  StateVector input_;
  ResolvedAncilla ancilla_;
  std::array<ModeTable, 3> modes_;
};

GateShotRecord run_gate_shot(const StateVector& input, const GateConfig& config, Rng& rng);

struct GateShotOutcome {
  std::uint64_t index = 0;
  std::optional<GateShotRecord> record;
  std::string error;
};

struct GateRunSummary {
  GateConfig config;
  /// Cubic strength used to prepare the ancilla (the raw gate gamma).
  double gamma_tilde = 0.0;
  int n_shots = 0;
  int n_failed = 0;
  double mean_fidelity = 0.0;
  double std_error = 0.0;
  double q_mean = 0.0, q_variance = 0.0;
  double y_mean = 0.0, y_variance = 0.0;
  QuadratureMoments mean_moments;
  /// Unconditional output variances (mixture over shots) and standard errors.
  double variance_x = 0.0, variance_x_se = 0.0;
  double variance_p = 0.0, variance_p_se = 0.0;
  ResolvedAncilla ancilla;
  std::vector<GateShotOutcome> shots;
};

/// Shot i uses Rng(mix_seed(seed, i)); results do not depend on `workers`.
GateRunSummary run_gate_batch(const StateVector& input, const GateConfig& config,
                              int workers = 1, const OptimizerConfig& optimizer = {});
GateRunSummary run_gate_batch(const GateSimulator& simulator, int workers = 1);

/// Conditional output of the full three-mode Fock simulation (dims from config),
/// normalized, with the feedforward applied.
StateVector fock_reference_conditional(const StateVector& input, const GateConfig& config,
                                       const ResolvedAncilla& ancilla, double q, double y);

struct HeisenbergCheck {
  /// max |closed form - circuit algebra| over x0'' and p0''.
  double max_residual = 0.0;
  /// max |closed form - balanced form| when T1 = T2 = 1/2, otherwise NaN.
  double balanced_residual = 0.0;
};

/// Pushes random classical phase-space points through the circuit with
/// measured values substituted, and through the closed-form output quadratures.
HeisenbergCheck verify_heisenberg_identity(const GateConfig& config, int trials,
                                           std::uint64_t seed = 1);

/// Contributions to Var(p0'') from the three independent modes.
struct NoiseBudget {
  double ideal = 0.0;
  double ancilla = 0.0;
  double squeezed = 0.0;
  double total() const { return ideal + ancilla + squeezed; }
};

NoiseBudget noise_budget(const StateVector& input, double squeeze_db,
                         const ResolvedAncilla& ancilla, const GateConfig& config);

}  // namespace cubist
