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

#ifndef HOPQEC_OPEN_SYSTEM_TWIRL_H
#define HOPQEC_OPEN_SYSTEM_TWIRL_H

#include <Eigen/Dense>
#include <vector>

#include "hopqec/open_system/lindblad.h"
#include "hopqec/pauli/pauli_channel.h"

namespace hopqec::open_system {

/// Negative twirled weights below this abort extraction; shallower ones are clamped to zero.
constexpr double kTwirlNegativeTolerance = 1e-6;

/// Pauli fidelities f_k = Tr[P_k L(P_k)] / d of the residual channel L = V o U^{-1}.
std::vector<double> residual_pauli_fidelities(const Superoperator &v, const Eigen::MatrixXcd &u_target);

/// Pauli-twirled residual channel of V relative to the target unitary.
PauliChannel twirl_channel(const Superoperator &v, const Eigen::MatrixXcd &u_target);

}  // namespace hopqec::open_system

#endif
