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

#include <string>
#include <vector>

#include "json.hpp"

#include "cubist/ancilla.hpp"
#include "cubist/gate.hpp"
#include "cubist/phase_space.hpp"

namespace cubist {

using Json = nlohmann::ordered_json;

Json to_json(const StateVector& state);
StateVector state_from_json(const Json& j);

Json to_json(const AncillaOptimum& optimum);
AncillaOptimum optimum_from_json(const Json& j);

/// Coefficients from a StateVector JSON ("amplitudes") or AncillaOptimum JSON ("coefficients").
std::vector<cplx> read_coefficients_json(const std::string& path);

Json to_json(const WignerGrid& grid);
WignerGrid wigner_from_json(const Json& j);

/// `# x_min x_max nx p_min p_max np`, optional extra `#` lines, then nx rows of np
/// comma-separated values with 17 significant digits.
std::string wigner_csv(const WignerGrid& grid, const std::vector<std::string>& extra_header = {});
WignerGrid wigner_from_csv(const std::string& text);

enum class MapUnit { raw, dB };
MapUnit parse_map_unit(const std::string& text);
/// Search map in the grid CSV layout (x = lambda', p = d) with a `# unit:` line.
std::string search_map_csv(const SearchMap& map, MapUnit unit);
/// Parses the grid back; `unit` receives the header value.
WignerGrid search_map_from_csv(const std::string& text, MapUnit* unit = nullptr);

Json to_json(const AncillaSpec& spec);
Json to_json(const GateConfig& config);
/// Reads the keys present in `j` on top of `base`; unknown keys are rejected.
GateConfig gate_config_from_json(const Json& j, GateConfig base = {});

Json to_json(const GateRunSummary& summary);
/// One line per shot: index, q, theta, y, p_disp, fidelity, error.
std::string shot_csv(const GateRunSummary& summary);

std::string read_text_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& text);
Json read_json_file(const std::string& path);
void write_json_file(const std::string& path, const Json& j);

/// %.17g, which round-trips every double.
std::string format_double(double v);

}  // namespace cubist
