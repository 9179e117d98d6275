// Copyright 2026 The hopqec Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "hopqec/device/device_params.h"

#include <fstream>
#include <map>
#include <sstream>

#include "hopqec/error.h"
#include "json.hpp"

namespace hopqec::device {

namespace {

constexpr const char *kBuiltin = R"({
  "qubit_junction_ratio": 5,
  "modes": [
    {"name": "q0", "kind": "qubit", "omega_max_ghz": 4.00, "eta_max_mhz": 185},
    {"name": "q1", "kind": "qubit", "omega_max_ghz": 3.85, "eta_max_mhz": 221},
    {"name": "q2", "kind": "qubit", "omega_max_ghz": 3.80, "eta_max_mhz": 190},
    {"name": "q3", "kind": "qubit", "omega_max_ghz": 4.15, "eta_max_mhz": 216},
    {"name": "q4", "kind": "qubit", "omega_max_ghz": 4.20, "eta_max_mhz": 220},
    {"name": "c1", "kind": "coupler", "omega_max_ghz": 6.7, "omega_min_ghz": 4.58, "eta_max_mhz": 200},
    {"name": "c2", "kind": "coupler", "omega_max_ghz": 6.7, "omega_min_ghz": 4.75, "eta_max_mhz": 200},
    {"name": "c3", "kind": "coupler", "omega_max_ghz": 6.7, "omega_min_ghz": 4.90, "eta_max_mhz": 200},
    {"name": "c4", "kind": "coupler", "omega_max_ghz": 6.7, "omega_min_ghz": 4.90, "eta_max_mhz": 200}
  ],
  "couplings": [
    {"a": "q0", "b": "q1", "g_mhz": -8.0},
    {"a": "q0", "b": "q2", "g_mhz": -8.0},
    {"a": "q0", "b": "q3", "g_mhz": -8.0},
    {"a": "q0", "b": "q4", "g_mhz": -8.0},
    {"a": "q0", "b": "c1", "g_mhz": 130.0},
    {"a": "q0", "b": "c2", "g_mhz": 132.0},
    {"a": "q0", "b": "c3", "g_mhz": -112.0},
    {"a": "q0", "b": "c4", "g_mhz": -130.0},
    {"a": "q1", "b": "c1", "g_mhz": -149.5},
    {"a": "q2", "b": "c2", "g_mhz": -134.5},
    {"a": "q3", "b": "c3", "g_mhz": 134.5},
    {"a": "q4", "b": "c4", "g_mhz": 143.0}
  ]
}
)";

double number(const nlohmann::json &obj, const char *key) {
    auto it = obj.find(key);
    if (it == obj.end() || !it->is_number()) {
        fail(ErrorCode::InvalidArgument, std::string("lattice description: missing numeric field '") + key + "'");
    }
    return it->get<double>();
}

}  // namespace

LatticeSpec parse_lattice_json(std::string_view text) {
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(text);
    } catch (const nlohmann::json::exception &e) {
        fail(ErrorCode::InvalidArgument, std::string("lattice description is not valid JSON: ") + e.what());
    }
    if (!doc.contains("modes") || !doc["modes"].is_array() || !doc.contains("couplings") ||
        !doc["couplings"].is_array()) {
        fail(ErrorCode::InvalidArgument, "lattice description needs 'modes' and 'couplings' arrays");
    }
    double qubit_ratio = doc.value("qubit_junction_ratio", 5.0);

    LatticeSpec lattice;
    std::map<std::string, size_t> index;
    for (const auto &m : doc["modes"]) {
        std::string name = m.value("name", "");
        std::string kind = m.value("kind", "");
        if (name.empty() || index.count(name)) {
            fail(ErrorCode::InvalidArgument, "lattice description: mode names must be unique and non-empty");
        }
        if (kind != "qubit" && kind != "coupler") {
            fail(ErrorCode::InvalidArgument, "lattice description: mode kind must be 'qubit' or 'coupler'");
        }
        double omega_max = number(m, "omega_max_ghz");
        double eta_max = number(m, "eta_max_mhz") * 1e-3;
        std::optional<double> omega_min;
        if (m.contains("omega_min_ghz")) {
            omega_min = number(m, "omega_min_ghz");
        }
        ModeSpec spec = calibrate_junctions(omega_max, omega_min, eta_max, qubit_ratio);
        spec.name = name;
        spec.kind = kind == "qubit" ? ModeKind::Qubit : ModeKind::Coupler;
        spec.flux = m.contains("flux") ? number(m, "flux") : (spec.kind == ModeKind::Coupler ? 0.5 : 0.0);
        index[name] = lattice.modes.size();
        lattice.modes.push_back(spec);
    }
    for (const auto &c : doc["couplings"]) {
        std::string a = c.value("a", ""), b = c.value("b", "");
        if (!index.count(a) || !index.count(b)) {
            fail(ErrorCode::InvalidArgument, "lattice description: coupling references unknown mode");
        }
        lattice.couplings.push_back({index[a], index[b], number(c, "g_mhz")});
    }
    lattice.validate();
    return lattice;
}

LatticeSpec load_lattice(const std::string &path) {
    std::ifstream in(path);
    if (!in) {
        fail(ErrorCode::Io, "cannot open lattice file " + path);
    }
    std::stringstream buf;
    buf << in.rdbuf();
    return parse_lattice_json(buf.str());
}

LatticeSpec builtin_lattice() {
    return parse_lattice_json(kBuiltin);
}

std::string builtin_lattice_json() {
    return kBuiltin;
}

}  // namespace hopqec::device
