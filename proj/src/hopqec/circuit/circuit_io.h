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

#ifndef HOPQEC_CIRCUIT_CIRCUIT_IO_H
#define HOPQEC_CIRCUIT_CIRCUIT_IO_H

#include <iosfwd>
#include <string>

#include "hopqec/circuit/circuit.h"

namespace hopqec::circuit {

/// Line-oriented circuit text.
///
///     QUBITS 17
///     CHANNEL 0 ARITY 5 ORDER 2 P 0.01
///     STAGE ZIIII 0.0012
///     END_CHANNEL
///     LAYER A
///     RESET_X 17
///     Z_ERROR(0.005) 17
///     HOP5 17 0 1 3 4
///     NOISE[0] 17 0 1 3 4
///     MEASURE_X(0.005) 17
///     DETECTOR[1] m-1 m-9
///     MPP Z0*Z3*Z6
///     OBS 0 m-1
///
/// Record references `m-k` count back from the most recent measurement made so far (m-1 is the
/// latest). `CLAMPED x` may follow `P` on a CHANNEL line. A detector's optional `[s]` is its sector
/// (0 when omitted).
void write_circuit(std::ostream &out, const Circuit &c);
Circuit read_circuit(std::istream &in);

void save_circuit(const std::string &path, const Circuit &c);
Circuit load_circuit(const std::string &path);

}  // namespace hopqec::circuit

#endif
