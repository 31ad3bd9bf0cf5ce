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

#include "cubist/cli.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <filesystem>
#include <functional>
#include <iomanip>
#include <ostream>
#include <sstream>

#include "CLI11.hpp"

#include "cubist/ancilla.hpp"
#include "cubist/gate.hpp"
#include "cubist/gaussian.hpp"
#include "cubist/io.hpp"
#include "cubist/parallel.hpp"
#include "cubist/phase_space.hpp"
#include "cubist/stats.hpp"

namespace cubist::cli {
namespace {

struct UsageError : InvalidArgument {
  using InvalidArgument::InvalidArgument;
};

// Flag > config file > defaults. Objects merge key by key.
void merge_into(Json& base, const Json& overlay, const std::string& where) {
  for (const auto& [key, value] : overlay.items()) {
    if (!base.contains(key)) throw UsageError("unknown key '" + key + "' in " + where);
    if (base[key].is_object() && value.is_object()) {
      merge_into(base[key], value, where);
    } else {
      base[key] = value;
    }
  }
}

// Accepts a plain settings object or a run manifest, whose "config" is replayed.
Json load_config(const std::string& path, Json defaults) {
  if (path.empty()) return defaults;
  Json j = read_json_file(path);
  if (j.is_object() && j.contains("tool_version") && j.contains("config")) j = j["config"];
  if (!j.is_object()) throw UsageError("'" + path + "' must hold a JSON object");
  merge_into(defaults, j, "'" + path + "'");
  return defaults;
}

std::vector<double> parse_list(const std::string& text, std::size_t count, const std::string& what) {
  std::vector<double> out;
  std::string cur;
  std::istringstream in(text);
  while (std::getline(in, cur, ',')) {
    try {
      std::size_t used = 0;
      out.push_back(std::stod(cur, &used));
      if (used != cur.size()) throw std::invalid_argument(cur);
    } catch (const std::exception&) {
      throw UsageError("cannot parse " + what + " from '" + text + "'");
    }
  }
  if (out.size() != count) {
    throw UsageError(what + " needs " + std::to_string(count) + " comma-separated values");
  }
  return out;
}

Range range_of(const Json& j, const std::string& what) {
  const auto v = j.get<std::vector<double>>();
  if (v.size() != 2) throw UsageError(what + " needs two values");
  return {v[0], v[1]};
}

struct Manifest {
  std::string command;
  std::vector<std::string> argv;
  Json config;
  std::vector<std::string> outputs;
  Json notes = Json::object();
  std::chrono::steady_clock::time_point start = std::chrono::steady_clock::now();

  void write(const std::string& primary) const {
    Json j{{"command", command},
           {"argv", argv},
           {"config", config},
           {"seed", config.contains("seed") ? config["seed"] : Json(nullptr)},
           {"tool_version", kToolVersion},
           {"outputs", outputs},
           {"wall_time_s", std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count()}};
    if (!notes.empty()) j["notes"] = notes;
    write_json_file(primary + ".manifest.json", j);
  }
};

StateVector state_from_text(const std::string& text, double gamma, Json* notes) {
  if (text == "vacuum") return StateVector::vacuum(2);
  if (text.rfind("fock-", 0) == 0) {
    const int n = static_cast<int>(parse_list(text.substr(5), 1, "Fock number")[0]);
    if (n < 0 || n > 200) throw UsageError("Fock number must lie in [0, 200]");
    return StateVector::fock(std::max(2, n + 1), n);
  }
  if (text.rfind("optimized-", 0) == 0 || text.rfind("optimized:", 0) == 0) {
    const double n = parse_list(text.substr(10), 1, "photon cutoff")[0];
    if (n < 0 || n > 12 || n != std::floor(n)) throw UsageError("optimized-N needs 0 <= N <= 12");
    const AncillaOptimum o = optimize_ancilla(static_cast<int>(n));
    const StateVector s = o.state();
    if (notes) {
      const OperatorMatrix p = quadrature_ops(s.dim(0) + 1).second;
      (*notes)["p_offset"] = expectation(s.resized({s.dim(0) + 1}), 0, p.entries).real();
      (*notes)["p0"] = o.p0;
      (*notes)["lambda_opt"] = o.lambda_opt;
      (*notes)["gamma"] = gamma;
    }
    return s;
  }
  std::string path = text;
  if (text.rfind("file:", 0) == 0) path = text.substr(5);
  if (!std::filesystem::exists(path)) throw UsageError("unknown state '" + text + "'");
  return StateVector::from_coefficients(read_coefficients_json(path));
}

// ---------------------------------------------------------------------------
// validate

struct Check {
  std::string name;
  double value;
  double threshold;
  bool pass;
  Json details = Json::object();
};

std::vector<Check> identity_checks() {
  std::vector<Check> checks;
  GateConfig balanced;
  const HeisenbergCheck b = verify_heisenberg_identity(balanced, 1000, 11);
  checks.push_back({"heisenberg_balanced", b.max_residual, 1e-10, b.max_residual < 1e-10});
  checks.push_back({"balanced_closed_form", b.balanced_residual, 1e-10, b.balanced_residual < 1e-10});

  Rng rng(2024);
  double worst = 0.0;
  Json configs = Json::array();
  for (int k = 0; k < 5; ++k) {
    GateConfig c;
    c.t1 = 0.2 + 0.6 * uniform01(rng);
    c.t2 = 0.2 + 0.6 * uniform01(rng);
    c.gamma = 0.05 + 0.45 * uniform01(rng);
    const HeisenbergCheck h = verify_heisenberg_identity(c, 1000, 100 + k);
    worst = std::max(worst, h.max_residual);
    configs.push_back({{"t1", c.t1}, {"t2", c.t2}, {"gamma", c.gamma}, {"residual", h.max_residual}});
  }
  checks.push_back({"heisenberg_random_configs", worst, 1e-10, worst < 1e-10, {{"configs", configs}}});

  const double sympl = symplectic_of_circuit(0.37, 0.81).symplectic_residual();
  checks.push_back({"circuit_symplectic", sympl, 1e-12, sympl < 1e-12});

  const Axis ax{-8.0, 8.0, 321}, px{-8.0, 8.0, 321};
  const Axis out_x{-3.0, 3.0, 121}, out_p{-3.0, 3.0, 121};
  const std::pair<const char*, StateVector> ancillas[] = {
      {"vacuum", StateVector::vacuum(2)},
      {"fock1", StateVector::fock(2, 1)},
      {"optimized3", optimize_ancilla(3).state()},
  };
  for (const auto& [name, state] : ancillas) {
    const WignerGrid w = wigner_of_state(state, ax, px);
    ProjectorParams params;
    params.q = 0.4;
    params.y = -0.3;
    const WignerGrid a = projector_wigner(w, params.q, params.y, out_x, out_p);
    const WignerGrid g = generalized_projector_wigner(w, params, out_x, out_p);
    const double diff = (a.values - g.values).cwiseAbs().maxCoeff();
    checks.push_back({std::string("projector_reduction_") + name, diff, 1e-6, diff < 1e-6});
  }
  return checks;
}

std::vector<Check> sampler_checks() {
  std::vector<Check> checks;
  struct Ref {
    const char* name;
    StateVector state;
    double angle;
    std::function<double(double)> cdf;
  };
  const double s = 0.6;
  const cplx alpha(0.8, -0.5);
  const double angle3 = kPi / 5.0;
  // S(s) then D(alpha): Gaussian marginal at angle3 with known mean and variance.
  const double mean3 = kSqrt2 * (alpha.real() * std::cos(angle3) + alpha.imag() * std::sin(angle3));
  const double var3 = 0.5 * (s * s * std::cos(angle3) * std::cos(angle3) +
                             std::sin(angle3) * std::sin(angle3) / (s * s));
  Eigen::VectorXcd sq = squeeze_op(s, 60).entries.col(0);
  sq = displacement_op(alpha, 60).entries * sq;
  std::vector<Ref> refs;
  refs.push_back({"vacuum", StateVector::vacuum(8), 0.0, [](double x) { return 0.5 * std::erfc(-x); }});
  refs.push_back({"fock1", StateVector::fock(8, 1), 0.7, [](double x) {
                    return 0.5 * std::erfc(-x) - x * std::exp(-x * x) / std::sqrt(kPi);
                  }});
  refs.push_back({"squeezed_coherent", StateVector::from_vector(sq.head(40), true), angle3,
                  [=](double x) { return 0.5 * std::erfc(-(x - mean3) / std::sqrt(2.0 * var3)); }});
  const int n_samples = 20000;
  for (const auto& ref : refs) {
    const HomodyneGrid g = default_homodyne_grid(ref.state, 0, ref.angle);
    std::vector<double> nodes(g.bins + 1);
    for (int i = 0; i <= g.bins; ++i) nodes[i] = g.min + (g.max - g.min) * i / g.bins;
    const std::vector<double> pdf = homodyne_pdf(ref.state, 0, ref.angle, nodes);
    Rng rng(mix_seed(77, static_cast<std::uint64_t>(&ref - refs.data())));
    std::vector<double> samples(n_samples);
    for (double& v : samples) v = sample_tabulated(nodes, pdf, uniform01(rng));
    double mean = 0.0, m2 = 0.0;
    for (double v : samples) {
      mean += v;
      m2 += v * v;
    }
    mean /= n_samples;
    const double sd = std::sqrt(std::max(0.0, m2 / n_samples - mean * mean));
    const ChiSquareResult r = chi_square_gof(samples, ref.cdf, mean - 3.0 * sd, mean + 3.0 * sd, 40);
    checks.push_back({std::string("chi_square_") + ref.name, r.p_value, 1e-3, r.p_value > 1e-3,
                      {{"statistic", r.statistic}, {"dof", r.degrees_of_freedom}}});
  }
  const double ai0 = airy(0.0);
  const double err = std::abs(ai0 - 0.3550280539);
  checks.push_back({"airy_ai0", ai0, 1e-10, err < 1e-10, {{"abs_error", err}}});
  return checks;
}

// ---------------------------------------------------------------------------

int dispatch(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Cubic phase gate toolkit: ancilla optimization, Wigner grids, gate simulation"};
  app.require_subcommand(1);
  app.set_version_flag("--version", kToolVersion);

  std::string config_path;
  int workers = default_workers();
  auto common = [&](CLI::App* sub) {
    sub->add_option("--config", config_path, "JSON file with settings; flags take precedence")
        ->check(CLI::ExistingFile);
    sub->add_option("--workers", workers, "Worker threads (default: CUBIST_WORKERS or 1)")
        ->check(CLI::PositiveNumber);
  };

  // ancilla optimize | map
  auto* ancilla = app.add_subcommand("ancilla", "Optimal approximate cubic ancillas");
  ancilla->require_subcommand(1);
  auto* optimize = ancilla->add_subcommand("optimize", "Optimize the N-photon ancilla");
  auto* map = ancilla->add_subcommand("map", "Minimum-eigenvalue search map over (lambda', d)");
  int n = 0;
  std::string out_path, lambda_range, d_range, resolution, unit = "dB";
  for (auto* sub : {optimize, map}) {
    sub->add_option("--n", n, "Photon-number cutoff N (0..12)");
    sub->add_option("--lambda-range", lambda_range, "lambda' range as min,max");
    sub->add_option("--d-range", d_range, "d range as min,max");
    sub->add_option("--resolution", resolution, "Grid cells as n_lambda,n_d");
    sub->add_option("--out", out_path, "Output file");
    common(sub);
  }
  map->add_option("--unit", unit, "raw or dB")->check(CLI::IsMember({"raw", "dB"}));

  // wigner
  auto* wigner = app.add_subcommand("wigner", "Wigner function on a grid");
  std::string state_text = "ideal-cubic", axes, format = "csv";
  double gamma = 0.1;
  wigner->add_option("--state", state_text, "ideal-cubic, optimized-N, vacuum, fock-K or a state JSON file");
  wigner->add_option("--gamma", gamma, "Cubic strength for ideal-cubic");
  wigner->add_option("--axes", axes, "x_min,x_max,nx,p_min,p_max,np");
  wigner->add_option("--format", format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
  wigner->add_option("--out", out_path, "Output file");
  common(wigner);

  // gate run
  auto* gate = app.add_subcommand("gate", "Cubic gate simulation");
  gate->require_subcommand(1);
  auto* run = gate->add_subcommand("run", "Monte-Carlo run of the adaptive cubic gate");
  double t1 = 0.5, t2 = 0.5, squeeze_db = 15.0;
  int shots = 1000;
  std::uint64_t seed = 1;
  std::string ancilla_text, input_text = "vacuum", shots_csv;
  run->add_option("--gamma", gamma, "Cubic strength gamma");
  run->add_option("--t1", t1, "First beam-splitter transmittance");
  run->add_option("--t2", t2, "Second beam-splitter transmittance");
  run->add_option("--squeeze-db", squeeze_db, "Mode-1 squeezing in dB");
  run->add_option("--ancilla", ancilla_text, "vacuum, gaussian[:s], optimized-N or file:<path>");
  run->add_option("--input", input_text, "vacuum, fock-K or a state JSON file");
  run->add_option("--shots", shots, "Number of shots")->check(CLI::PositiveNumber);
  run->add_option("--seed", seed, "64-bit seed");
  run->add_flag("--no-feedforward", "Skip the feedforward displacement");
  run->add_flag("--unsqueezed-target", "Undo S(sqrt T1) before comparing with the cubic target");
  run->add_option("--shots-csv", shots_csv, "Per-shot CSV log");
  run->add_option("--out", out_path, "Summary JSON");
  common(run);

  // validate
  auto* validate = app.add_subcommand("validate", "Built-in identity and sampler checks");
  std::string suite = "all";
  validate->add_option("--suite", suite, "identities, sampler or all")
      ->check(CLI::IsMember({"identities", "sampler", "all"}));
  validate->add_option("--out", out_path, "Report JSON");
  common(validate);

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  Manifest manifest;
  manifest.argv = args;
  auto given = [](CLI::App* sub, const std::string& name) { return sub->count(name) > 0; };

  if (optimize->parsed() || map->parsed()) {
    CLI::App* sub = optimize->parsed() ? optimize : map;
    const OptimizerConfig def;
    Json cfg = load_config(config_path, {{"n", 0},
                                         {"lambda_range", {def.lambda_range.min, def.lambda_range.max}},
                                         {"d_range", {def.d_range.min, def.d_range.max}},
                                         {"resolution", {def.lambda_count, def.d_count}},
                                         {"unit", "dB"},
                                         {"workers", workers}});
    if (given(sub, "--n")) cfg["n"] = n;
    if (given(sub, "--lambda-range")) cfg["lambda_range"] = parse_list(lambda_range, 2, "--lambda-range");
    if (given(sub, "--d-range")) cfg["d_range"] = parse_list(d_range, 2, "--d-range");
    if (given(sub, "--resolution")) cfg["resolution"] = parse_list(resolution, 2, "--resolution");
    if (sub == map && given(sub, "--unit")) cfg["unit"] = unit;
    if (given(sub, "--workers")) cfg["workers"] = workers;
    const int nn = cfg["n"].get<int>();
    if (nn < 0 || nn > 12) throw UsageError("--n must lie in [0, 12]");
    const auto res = cfg["resolution"].get<std::vector<double>>();
    if (res.size() != 2 || res[0] < 2 || res[1] < 2 || res[0] * res[1] > 2000.0 * 2000.0) {
      throw UsageError("--resolution needs two counts >= 2 with at most 2000^2 cells");
    }
    OptimizerConfig oc;
    oc.lambda_range = range_of(cfg["lambda_range"], "lambda_range");
    oc.d_range = range_of(cfg["d_range"], "d_range");
    oc.lambda_count = static_cast<int>(res[0]);
    oc.d_count = static_cast<int>(res[1]);
    oc.workers = cfg["workers"].get<int>();
    if (oc.lambda_range.min <= 0.0 && oc.lambda_range.max >= 0.0) {
      throw UsageError("lambda' range crosses 0; run the two signs as separate maps");
    }
    manifest.config = cfg;

    if (sub == optimize) {
      manifest.command = "ancilla optimize";
      if (out_path.empty()) out_path = "ancilla_N" + std::to_string(nn) + ".json";
      const AncillaOptimum o = optimize_ancilla(nn, oc);
      write_json_file(out_path, to_json(o));
      out << std::fixed << std::setprecision(6);
      out << "N = " << o.n_max << "  lambda'_opt = " << o.lambda_opt << "  d_opt = " << o.d_opt << "\n";
      out << "variance = " << o.variance << "  ratio to Gaussian limit = " << o.ratio << " ("
          << std::setprecision(3) << 10.0 * std::log10(o.ratio) << " dB)\n";
      out << "  n     |c_n|     arg(c_n)/pi\n" << std::setprecision(6);
      for (int k = 0; k <= o.n_max; ++k) {
        const cplx c = o.coefficients[k];
        double phase = std::abs(c) > 1e-12 ? std::arg(c) / kPi : 0.0;
        if (std::abs(phase) < 1e-9) phase = 0.0;
        out << std::setw(3) << k << "  " << std::setw(9) << std::abs(c) << "  " << std::setw(9) << phase << "\n";
      }
    } else {
      manifest.command = "ancilla map";
      if (out_path.empty()) out_path = "search_map_N" + std::to_string(nn) + ".csv";
      const SearchMap m = search_map(nn, oc.lambda_range, oc.d_range, oc.lambda_count, oc.d_count, oc.workers);
      const MapUnit u = parse_map_unit(cfg["unit"].get<std::string>());
      write_text_file(out_path, search_map_csv(m, u));
      const auto [i, j] = m.argmin();
      manifest.notes = {{"argmin_lambda", m.lambda_axis.at(i)},
                        {"argmin_d", m.d_axis.at(j)},
                        {"min_value", m.min_eigenvalues(i, j)},
                        {"local_minima", m.count_local_minima()}};
      out << "minimum " << m.min_eigenvalues(i, j) << " (" << m.db_values(i, j) << " dB) at lambda' = "
          << m.lambda_axis.at(i) << ", d = " << m.d_axis.at(j) << "; local minima: " << m.count_local_minima()
          << "\n";
    }
    manifest.outputs = {out_path};
    manifest.write(out_path);
    return kExitOk;
  }

  if (wigner->parsed()) {
    manifest.command = "wigner";
    Json cfg = load_config(config_path, {{"state", "ideal-cubic"},
                                         {"gamma", 0.1},
                                         {"axes", {-6.0, 6.0, 301, -6.0, 6.0, 301}},
                                         {"format", "csv"}});
    if (given(wigner, "--state")) cfg["state"] = state_text;
    if (given(wigner, "--gamma")) cfg["gamma"] = gamma;
    if (given(wigner, "--axes")) cfg["axes"] = parse_list(axes, 6, "--axes");
    if (given(wigner, "--format")) cfg["format"] = format;
    const auto a = cfg["axes"].get<std::vector<double>>();
    if (a.size() != 6 || a[2] < 2 || a[5] < 2 || !(a[1] > a[0]) || !(a[4] > a[3])) {
      throw UsageError("--axes needs x_min,x_max,nx,p_min,p_max,np with increasing ranges");
    }
    const Axis x{a[0], a[1], static_cast<int>(a[2])}, p{a[3], a[4], static_cast<int>(a[5])};
    const std::string st = cfg["state"].get<std::string>();
    const bool csv = cfg["format"].get<std::string>() == "csv";
    if (out_path.empty()) out_path = csv ? "wigner.csv" : "wigner.json";
    manifest.config = cfg;
    WignerGrid grid;
    if (st == "ideal-cubic") {
      grid = ideal_cubic_wigner(cfg["gamma"].get<double>(), x, p);
    } else {
      Json notes = Json::object();
      grid = wigner_of_state(state_from_text(st, cfg["gamma"].get<double>(), &notes), x, p);
      manifest.notes = notes;
    }
    if (csv) {
      write_text_file(out_path, wigner_csv(grid));
    } else {
      write_json_file(out_path, to_json(grid));
    }
    out << "wrote " << x.count << " x " << p.count << " grid to " << out_path << " (integral "
        << grid.integral() << ")\n";
    manifest.outputs = {out_path};
    manifest.write(out_path);
    return kExitOk;
  }

  if (run->parsed()) {
    manifest.command = "gate run";
    Json defaults = to_json(GateConfig{});
    defaults["ancilla"] = "optimized-5";
    defaults["input"] = "vacuum";
    defaults["workers"] = workers;
    Json cfg = load_config(config_path, defaults);
    if (given(run, "--gamma")) cfg["gamma"] = gamma;
    if (given(run, "--t1")) cfg["t1"] = t1;
    if (given(run, "--t2")) cfg["t2"] = t2;
    if (given(run, "--squeeze-db")) cfg["squeeze_db"] = squeeze_db;
    if (given(run, "--ancilla")) cfg["ancilla"] = ancilla_text;
    if (given(run, "--input")) cfg["input"] = input_text;
    if (given(run, "--shots")) cfg["shots"] = shots;
    if (given(run, "--seed")) cfg["seed"] = seed;
    if (given(run, "--no-feedforward")) cfg["feedforward"] = false;
    if (given(run, "--unsqueezed-target")) cfg["target_squeezed"] = false;
    if (given(run, "--workers")) cfg["workers"] = workers;
    Json gate_json = cfg;
    gate_json.erase("input");
    gate_json.erase("workers");
    const GateConfig gc = gate_config_from_json(gate_json);
    gc.validate();
    const StateVector input = state_from_text(cfg["input"].get<std::string>(), gc.gamma, nullptr);
    manifest.config = cfg;
    if (out_path.empty()) out_path = "gate_summary.json";

    const GateRunSummary summary = run_gate_batch(input, gc, cfg["workers"].get<int>());
    write_json_file(out_path, to_json(summary));
    manifest.outputs = {out_path};
    if (!shots_csv.empty()) {
      write_text_file(shots_csv, shot_csv(summary));
      manifest.outputs.push_back(shots_csv);
    }
    manifest.notes = {{"gamma_tilde", summary.gamma_tilde}, {"gamma_c", gc.gamma_c()}};
    manifest.write(out_path);
    out << std::setprecision(6) << "mean fidelity " << summary.mean_fidelity << " +/- " << summary.std_error
        << " over " << summary.n_shots - summary.n_failed << " shots (" << summary.n_failed << " failed)\n"
        << "output Var(x) = " << summary.variance_x << " +/- " << summary.variance_x_se
        << ", Var(p) = " << summary.variance_p << " +/- " << summary.variance_p_se << "\n";
    if (summary.n_failed > 0.01 * summary.n_shots) {
      err << "error: " << summary.n_failed << " of " << summary.n_shots << " shots failed";
      for (const auto& o : summary.shots) {
        if (!o.record) {
          err << " (first: " << o.error << ")";
          break;
        }
      }
      err << "\n";
      return kExitNumerical;
    }
    return kExitOk;
  }

  if (validate->parsed()) {
    manifest.command = "validate";
    manifest.config = {{"suite", suite}};
    if (out_path.empty()) out_path = "validate_report.json";
    std::vector<Check> checks;
    if (suite == "identities" || suite == "all") checks = identity_checks();
    if (suite == "sampler" || suite == "all") {
      auto more = sampler_checks();
      checks.insert(checks.end(), more.begin(), more.end());
    }
    Json list = Json::array();
    bool all_pass = true;
    for (const auto& c : checks) {
      all_pass = all_pass && c.pass;
      out << (c.pass ? "PASS " : "FAIL ") << c.name << " value=" << format_double(c.value)
          << " threshold=" << std::setprecision(3) << c.threshold << "\n";
      Json j{{"name", c.name}, {"value", c.value}, {"threshold", c.threshold}, {"pass", c.pass}};
      if (!c.details.empty()) j["details"] = c.details;
      list.push_back(std::move(j));
    }
    write_json_file(out_path, {{"suite", suite}, {"pass", all_pass}, {"checks", list}});
    manifest.outputs = {out_path};
    manifest.write(out_path);
    return all_pass ? kExitOk : kExitValidationFailure;
  }
  return kExitUsage;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  try {
    return dispatch(args, out, err);
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const InvalidArgument& e) {
    err << "invalid argument: " << e.what() << "\n";
    return kExitUsage;
  } catch (const Json::exception& e) {
    err << "bad configuration: " << e.what() << "\n";
    return kExitUsage;
  } catch (const Error& e) {
    err << "numerical failure: " << e.what() << "\n";
    return kExitNumerical;
  }
}

}  // namespace cubist::cli
