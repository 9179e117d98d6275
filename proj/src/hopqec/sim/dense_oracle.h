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

#ifndef HOPQEC_SIM_DENSE_ORACLE_H
#define HOPQEC_SIM_DENSE_ORACLE_H

#include <vector>

#include "hopqec/circuit/circuit.h"
#include "hopqec/circuit/layout.h"
#include "hopqec/pauli/pauli_string.h"

namespace hopqec::sim {

/// Largest circuit width accepted by the dense oracle.
constexpr uint32_t kDenseMaxQubits = 12;

/// Exact detector and observable firing probabilities of a noisy circuit by mixed-state evolution.
///
/// The initial state is the maximally mixed state projected onto the +1 eigenspace of every
/// `initial_stabilizers` element (they must commute). Measurement outcomes are carried as a classical
/// register attached to the density matrix and dropped as soon as no later detector or observable
/// needs them. A detector "fires" when its parity differs from its value in the noiseless circuit.
struct DenseMarginals {
    std::vector<double> detectors;
    std::vector<double> observables;
};

DenseMarginals dense_marginals(const circuit::Circuit &c, const std::vector<PauliString> &initial_stabilizers);

/// Initial stabilizers of circuits built on `layout`: every check, plus Z_L Z_ref and X_L X_ref for
/// full patches.
std::vector<PauliString> layout_stabilizers(const circuit::Layout &layout);

}  // namespace hopqec::sim

#endif
