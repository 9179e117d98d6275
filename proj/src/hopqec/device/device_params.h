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

#ifndef HOPQEC_DEVICE_DEVICE_PARAMS_H
#define HOPQEC_DEVICE_DEVICE_PARAMS_H

#include <string>
#include <string_view>

#include "hopqec/device/device_model.h"

namespace hopqec::device {

/// Parses a lattice description from JSON text.
///
/// Schema:
///   {
///     "qubit_junction_ratio": 5,                      (optional, default 5)
///     "modes": [
///       {"name": "q0", "kind": "qubit", "omega_max_ghz": 4.0, "eta_max_mhz": 185},
///       {"name": "c1", "kind": "coupler", "omega_max_ghz": 6.7, "omega_min_ghz": 4.58,
///        "eta_max_mhz": 200, "flux": 0.5},                (flux optional: 0 qubits, 0.5 couplers)
///       ...
///     ],
///     "couplings": [{"a": "q0", "b": "q1", "g_mhz": -8.0}, ...]
///   }
///
/// Junction parameters are obtained with calibrate_junctions from the frequency endpoints.
LatticeSpec parse_lattice_json(std::string_view text);

/// Reads and parses a lattice description file.
LatticeSpec load_lattice(const std::string &path);

/// The five-qubit, four-coupler parameter set built into the library.
LatticeSpec builtin_lattice();

/// JSON text of builtin_lattice(), in the schema accepted by parse_lattice_json.
std::string builtin_lattice_json();

}  // namespace hopqec::device

#endif
