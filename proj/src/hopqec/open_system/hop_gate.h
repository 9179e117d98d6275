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

#ifndef HOPQEC_OPEN_SYSTEM_HOP_GATE_H
#define HOPQEC_OPEN_SYSTEM_HOP_GATE_H

#include <Eigen/Dense>

namespace hopqec::open_system {

/// Qubit 0 is the check qubit and qubits 1..n_data are data qubits. Basis index bit q holds the
/// computational state of qubit q.

/// exp(i pi/4 sum_k Z_0 Z_k) on 1 + n_data qubits. n_data must be 2 or 4.
Eigen::MatrixXcd hop_unitary(int n_data);

/// CZ_{01} CZ_{02} ... CZ_{0n} followed by diag(1, -i) on every data qubit, and by Z on the check
/// qubit when n_data = 2. Equals hop_unitary(n_data) up to a global phase (-1 for n_data = 4, i for
/// n_data = 2).
Eigen::MatrixXcd cz_ladder_circuit(int n_data);

/// Dense matrix of the Pauli operator with dense index `index` (see PauliString::index).
Eigen::MatrixXcd pauli_matrix(int num_qubits, uint64_t index);

/// Smallest max-element deviation |a - e^{i phi} b| over global phases phi.
double distance_up_to_phase(const Eigen::MatrixXcd &a, const Eigen::MatrixXcd &b);

}  // namespace hopqec::open_system

#endif
