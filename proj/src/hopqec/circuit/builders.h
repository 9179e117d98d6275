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

#ifndef HOPQEC_CIRCUIT_BUILDERS_H
#define HOPQEC_CIRCUIT_BUILDERS_H

#include "hopqec/channel_compile/compile.h"
#include "hopqec/circuit/circuit.h"
#include "hopqec/circuit/layout.h"

namespace hopqec::circuit {

/// Circuit-level noise strengths derived from the gate-channel strength p.
struct NoiseBudget {
    double p = 0;
    double p1 = 0;    ///< single-qubit gate and idle locations
    double p_pm = 0;  ///< preparation and measurement failures
    double p2 = 0;    ///< two-qubit depolarizing strength (lambda) of the standard schedule

    /// p1 = p / 10, p_pm = p / 2 and the given p2.
    static NoiseBudget from_p(double p, double p2);
    void validate() const;
};

/// Compiled correlated channels following weight-4 (five-qubit) and weight-2 (three-qubit) HOP
/// gates; qubit 0 of each channel is the check qubit.
struct HopChannels {
    channel_compile::CompiledChannel five;
    channel_compile::CompiledChannel three;
};

/// Full patches get one extra qubit (index layout.num_qubits()) that no instruction touches until
/// the end: a reference maximally entangled with the encoded qubit, so that the commuting products
/// Z_L Z_ref and X_L X_ref are both deterministic and can serve as the two observables.
///
/// Depth-6 rounds: reset, four CX layers (Z checks NW, NE, SW, SE with data as control; X checks
/// NW, SW, NE, SE with the ancilla as control) and measurement. `rounds` noisy rounds are followed
/// by one noiseless round and virtual measurements of Z_L Z_ref (OBS 0) and X_L X_ref (OBS 1).
Circuit standard_circuit(const Layout &layout, int rounds, const NoiseBudget &budget);

/// Nine-layer rounds [TWIRL, A, TWIRL, B, TWIRL_H, C, TWIRL, D, TWIRL_H]; each group layer
/// prepares, entangles (HOP gate plus its correlated channel) and measures its ancillas in the X
/// basis. Same final round and observables as standard_circuit.
Circuit hop_circuit(const Layout &layout, int rounds, const NoiseBudget &budget, const HopChannels &channels);

/// Layers per round of each schedule.
constexpr int kStandardLayersPerRound = 6;
constexpr int kHopLayersPerRound = 9;

}  // namespace hopqec::circuit

#endif
