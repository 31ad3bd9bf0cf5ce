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

#include "cubist/io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

namespace cubist {
namespace {

Json complex_list(std::span<const cplx> values) {
  Json out = Json::array();
  for (const cplx& c : values) out.push_back({c.real(), c.imag()});
  return out;
}

std::vector<cplx> complex_list_from(const Json& j) {
  if (!j.is_array()) throw InvalidArgument("expected a list of [re, im] pairs");
  std::vector<cplx> out;
  out.reserve(j.size());
  for (const auto& e : j) {
    if (!e.is_array() || e.size() != 2) throw InvalidArgument("expected [re, im] pairs");
    out.emplace_back(e[0].get<double>(), e[1].get<double>());
  }
  return out;
}

Json axis_json(const Axis& a) { return {{"min", a.min}, {"max", a.max}, {"count", a.count}}; }

Axis axis_from(const Json& j) {
  return {j.at("min").get<double>(), j.at("max").get<double>(), j.at("count").get<int>()};
}

Json moments_json(const QuadratureMoments& m) {
  return {{"mean_x", m.mean_x}, {"mean_p", m.mean_p}, {"mean_x2", m.mean_x2}, {"mean_p2", m.mean_p2}};
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  std::istringstream in(s);
  while (std::getline(in, cur, sep)) out.push_back(cur);
  return out;
}

double to_double(const std::string& s) {
  try {
    std::size_t used = 0;
    const double v = std::stod(s, &used);
    while (used < s.size() && std::isspace(static_cast<unsigned char>(s[used]))) ++used;
    if (used != s.size()) throw std::invalid_argument(s);
    return v;
  } catch (const std::exception&) {
    throw InvalidArgument("malformed number '" + s + "'");
  }
}

}  // namespace

std::string format_double(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

Json to_json(const StateVector& state) {
  return {{"mode_dims", state.mode_dims()},
          {"amplitudes", complex_list(state.amplitudes())},
          {"normalized", state.is_normalized()}};
}

StateVector state_from_json(const Json& j) {
  try {
    return StateVector(j.at("mode_dims").get<std::vector<int>>(), complex_list_from(j.at("amplitudes")),
                       j.value("normalized", false));
  } catch (const Json::exception& e) {
    throw InvalidArgument(std::string("bad state JSON: ") + e.what());
  }
}

Json to_json(const AncillaOptimum& o) {
  return {{"N", o.n_max},
          {"coefficients", complex_list(o.coefficients)},
          {"lambda_opt", o.lambda_opt},
          {"d_opt", o.d_opt},
          {"variance", o.variance},
          {"ratio", o.ratio},
          {"p0", o.p0},
          {"working_dim", o.working_dim}};
}

AncillaOptimum optimum_from_json(const Json& j) {
  try {
    AncillaOptimum o;
    o.n_max = j.at("N").get<int>();
    o.coefficients = complex_list_from(j.at("coefficients"));
    o.lambda_opt = j.at("lambda_opt").get<double>();
    o.d_opt = j.at("d_opt").get<double>();
    o.variance = j.at("variance").get<double>();
    o.ratio = j.at("ratio").get<double>();
    o.p0 = j.at("p0").get<double>();
    o.working_dim = j.value("working_dim", o.n_max + 1 + kWorkingMargin);
    return o;
  } catch (const Json::exception& e) {
    throw InvalidArgument(std::string("bad ancilla JSON: ") + e.what());
  }
}

std::vector<cplx> read_coefficients_json(const std::string& path) {
  const Json j = read_json_file(path);
  try {
    if (j.contains("coefficients")) return complex_list_from(j.at("coefficients"));
    if (j.contains("amplitudes")) {
      const StateVector s = state_from_json(j);
      if (s.num_modes() != 1) throw InvalidArgument("state file must hold a single-mode state");
      return {s.amplitudes().begin(), s.amplitudes().end()};
    }
  } catch (const Json::exception& e) {
    throw InvalidArgument(std::string("bad coefficient JSON: ") + e.what());
  }
  throw InvalidArgument("'" + path + "' has neither 'coefficients' nor 'amplitudes'");
}

Json to_json(const WignerGrid& grid) {
  Json rows = Json::array();
  for (Eigen::Index i = 0; i < grid.values.rows(); ++i) {
    Json row = Json::array();
    for (Eigen::Index j = 0; j < grid.values.cols(); ++j) row.push_back(grid.values(i, j));
    rows.push_back(std::move(row));
  }
  return {{"x", axis_json(grid.x)}, {"p", axis_json(grid.p)}, {"values", std::move(rows)}};
}

WignerGrid wigner_from_json(const Json& j) {
  try {
    WignerGrid g(axis_from(j.at("x")), axis_from(j.at("p")));
    const Json& rows = j.at("values");
    if (static_cast<int>(rows.size()) != g.x.count) throw InvalidArgument("grid row count mismatch");
    for (int i = 0; i < g.x.count; ++i) {
      if (static_cast<int>(rows[i].size()) != g.p.count) throw InvalidArgument("grid column count mismatch");
      for (int k = 0; k < g.p.count; ++k) g.values(i, k) = rows[i][k].get<double>();
    }
    return g;
  } catch (const Json::exception& e) {
    throw InvalidArgument(std::string("bad grid JSON: ") + e.what());
  }
}

std::string wigner_csv(const WignerGrid& grid, const std::vector<std::string>& extra_header) {
  std::string out = "# " + format_double(grid.x.min) + " " + format_double(grid.x.max) + " " +
                    std::to_string(grid.x.count) + " " + format_double(grid.p.min) + " " +
                    format_double(grid.p.max) + " " + std::to_string(grid.p.count) + "\n";
  for (const auto& line : extra_header) out += "# " + line + "\n";
  for (Eigen::Index i = 0; i < grid.values.rows(); ++i) {
    for (Eigen::Index j = 0; j < grid.values.cols(); ++j) {
      if (j) out += ',';
      out += format_double(grid.values(i, j));
    }
    out += '\n';
  }
  return out;
}

namespace {

WignerGrid parse_grid_csv(const std::string& text, std::vector<std::string>* comments) {
  std::istringstream in(text);
  std::string line;
  if (!std::getline(in, line) || line.rfind("# ", 0) != 0) throw InvalidArgument("grid CSV lacks its axis header");
  std::istringstream head(line.substr(2));
  std::string f[6];
  for (auto& s : f) {
    if (!(head >> s)) throw InvalidArgument("grid CSV header needs six fields");
  }
  const Axis x{to_double(f[0]), to_double(f[1]), static_cast<int>(to_double(f[2]))};
  const Axis p{to_double(f[3]), to_double(f[4]), static_cast<int>(to_double(f[5]))};
  WignerGrid g(x, p);
  int row = 0;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    if (line[0] == '#') {
      if (comments) comments->push_back(line.substr(line.size() > 1 && line[1] == ' ' ? 2 : 1));
      continue;
    }
    if (row >= x.count) throw InvalidArgument("grid CSV has too many rows");
    const auto cells = split(line, ',');
    if (static_cast<int>(cells.size()) != p.count) throw InvalidArgument("grid CSV row has wrong length");
    for (int j = 0; j < p.count; ++j) g.values(row, j) = to_double(cells[j]);
    ++row;
  }
  if (row != x.count) throw InvalidArgument("grid CSV has too few rows");
  return g;
}

}  // namespace

WignerGrid wigner_from_csv(const std::string& text) { return parse_grid_csv(text, nullptr); }

MapUnit parse_map_unit(const std::string& text) {
  if (text == "raw") return MapUnit::raw;
  if (text == "dB" || text == "db") return MapUnit::dB;
  throw InvalidArgument("unit must be raw or dB, got '" + text + "'");
}

std::string search_map_csv(const SearchMap& map, MapUnit unit) {
  WignerGrid g;
  g.x = map.lambda_axis;
  g.p = map.d_axis;
  g.values = unit == MapUnit::dB ? map.db_values : map.min_eigenvalues;
  return wigner_csv(g, {std::string("unit: ") + (unit == MapUnit::dB ? "dB" : "raw")});
}

WignerGrid search_map_from_csv(const std::string& text, MapUnit* unit) {
  std::vector<std::string> comments;
  WignerGrid g = parse_grid_csv(text, &comments);
  if (unit) {
    *unit = MapUnit::raw;
    for (const auto& c : comments) {
      if (c.rfind("unit: ", 0) == 0) *unit = parse_map_unit(c.substr(6));
    }
  }
  return g;
}

Json to_json(const AncillaSpec& spec) {
  Json j{{"spec", spec.to_string()}};
  if (spec.kind == AncillaSpec::Kind::coefficients) j["coefficients"] = complex_list(spec.coefficients);
  j["squeeze"] = spec.squeeze ? Json(*spec.squeeze) : Json(nullptr);
  j["p0"] = spec.p0 ? Json(*spec.p0) : Json(nullptr);
  return j;
}

Json to_json(const GateConfig& c) {
  return {{"gamma", c.gamma},
          {"t1", c.t1},
          {"t2", c.t2},
          {"squeeze_db", c.squeeze_db},
          {"ancilla", to_json(c.ancilla)},
          {"dims", c.dims},
          {"seed", c.seed},
          {"shots", c.shots},
          {"feedforward", c.feedforward},
          {"target_squeezed", c.target_squeezed},
          {"grid",
           {{"u_points", c.grid.u_points},
            {"x1_points", c.grid.x1_points},
            {"fft_size", c.grid.fft_size},
            {"support_tolerance", c.grid.support_tolerance}}}};
}

GateConfig gate_config_from_json(const Json& j, GateConfig c) {
  if (!j.is_object()) throw InvalidArgument("gate config must be a JSON object");
  try {
    for (const auto& [key, value] : j.items()) {
      if (key == "gamma") c.gamma = value.get<double>();
      else if (key == "t1") c.t1 = value.get<double>();
      else if (key == "t2") c.t2 = value.get<double>();
      else if (key == "squeeze_db") c.squeeze_db = value.get<double>();
      else if (key == "dims") c.dims = value.get<std::array<int, 3>>();
      else if (key == "seed") c.seed = value.get<std::uint64_t>();
      else if (key == "shots") c.shots = value.get<int>();
      else if (key == "feedforward") c.feedforward = value.get<bool>();
      else if (key == "target_squeezed") c.target_squeezed = value.get<bool>();
      else if (key == "ancilla") {
        if (value.is_string()) {
          c.ancilla = AncillaSpec::parse(value.get<std::string>());
        } else {
          if (value.contains("spec")) c.ancilla = AncillaSpec::parse(value.at("spec").get<std::string>());
          if (value.contains("coefficients")) {
            c.ancilla.kind = AncillaSpec::Kind::coefficients;
            c.ancilla.coefficients = complex_list_from(value.at("coefficients"));
          }
          if (value.contains("squeeze") && !value.at("squeeze").is_null()) {
            c.ancilla.squeeze = value.at("squeeze").get<double>();
          }
          if (value.contains("p0") && !value.at("p0").is_null()) c.ancilla.p0 = value.at("p0").get<double>();
        }
      } else if (key == "grid") {
        for (const auto& [gk, gv] : value.items()) {
          if (gk == "u_points") c.grid.u_points = gv.get<int>();
          else if (gk == "x1_points") c.grid.x1_points = gv.get<int>();
          else if (gk == "fft_size") c.grid.fft_size = gv.get<int>();
          else if (gk == "support_tolerance") c.grid.support_tolerance = gv.get<double>();
          else throw InvalidArgument("unknown grid key '" + gk + "'");
        }
      } else {
        throw InvalidArgument("unknown gate config key '" + key + "'");
      }
    }
  } catch (const Json::exception& e) {
    throw InvalidArgument(std::string("bad gate config: ") + e.what());
  }
  return c;
}

Json to_json(const GateRunSummary& s) {
  Json ancilla{{"coefficients", complex_list(s.ancilla.coefficients)},
               {"squeeze", s.ancilla.squeeze},
               {"p0", s.ancilla.p0}};
  if (s.ancilla.optimum) ancilla["optimum"] = to_json(*s.ancilla.optimum);
  return {{"config", to_json(s.config)},
          {"gamma_tilde", s.gamma_tilde},
          {"gamma_c", s.config.gamma_c()},
          {"resolved_ancilla", std::move(ancilla)},
          {"n_shots", s.n_shots},
          {"n_failed", s.n_failed},
          {"mean_fidelity", s.mean_fidelity},
          {"std_error", s.std_error},
          {"q_mean", s.q_mean},
          {"q_variance", s.q_variance},
          {"y_mean", s.y_mean},
          {"y_variance", s.y_variance},
          {"mean_moments", moments_json(s.mean_moments)},
          {"variance_x", s.variance_x},
          {"variance_x_se", s.variance_x_se},
          {"variance_p", s.variance_p},
          {"variance_p_se", s.variance_p_se}};
}

std::string shot_csv(const GateRunSummary& s) {
  std::string out = "index,q,theta,y,p_disp,fidelity,error\n";
  for (const auto& o : s.shots) {
    out += std::to_string(o.index) + ',';
    if (o.record) {
      const auto& r = *o.record;
      out += format_double(r.q) + ',' + format_double(r.theta) + ',' + format_double(r.y) + ',' +
             format_double(r.p_disp) + ',' + format_double(r.fidelity) + ",\n";
    } else {
      std::string msg = o.error;
      for (char& ch : msg) {
        if (ch == ',' || ch == '\n') ch = ';';
      }
      out += ",,,,," + msg + "\n";
    }
  }
  return out;
}

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InvalidArgument("cannot read '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_text_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw InvalidArgument("cannot write '" + path + "'");
  out << text;
  if (!out) throw InvalidArgument("failed writing '" + path + "'");
}

Json read_json_file(const std::string& path) {
  const std::string text = read_text_file(path);
  try {
    return Json::parse(text);
  } catch (const Json::exception& e) {
    throw InvalidArgument("'" + path + "' is not valid JSON: " + e.what());
  }
}

void write_json_file(const std::string& path, const Json& j) { write_text_file(path, j.dump(2) + "\n"); }

}  // namespace cubist
