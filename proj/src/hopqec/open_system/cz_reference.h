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

#ifndef HOPQEC_OPEN_SYSTEM_CZ_REFERENCE_H
#define HOPQEC_OPEN_SYSTEM_CZ_REFERENCE_H

#include "hopqec/pauli/pauli_channel.h"

namespace hopqec::open_system {

/// Maps a Pauli index through conjugation by CZ(a, b): X_a -> X_a Z_b and X_b -> X_b Z_a.
uint64_t conjugate_by_cz(uint32_t n, uint64_t index, uint32_t a, uint32_t b);

/// Two-qubit depolarizing channel on qubits (a, b) of an n-qubit register: each of the 15
/// non-identity two-qubit Paulis with probability lambda / 16.
PauliChannel two_qubit_depolarizing(uint32_t n, uint32_t a, uint32_t b, double lambda);

/// Error channel of the ladder CZ_{01} .. CZ_{0n}, each CZ followed by two-qubit depolarizing noise
/// of strength lambda, with all errors propagated to the end of the ladder.
PauliChannel cz_reference_channel(double lambda, int n_data);

/// Lambda in [0, 0.5] whose CZ-ladder fidelity equals `fidelity`, by bisection to 1e-8 in
/// fidelity. Throws Matching if the bracket does not contain the fidelity.
double match_lambda_to_fidelity(double fidelity, int n_data);

}  // namespace hopqec::open_system

#endif
