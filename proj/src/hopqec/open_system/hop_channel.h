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

#ifndef HOPQEC_OPEN_SYSTEM_HOP_CHANNEL_H
#define HOPQEC_OPEN_SYSTEM_HOP_CHANNEL_H

#include <cstdint>
#include <vector>

#include "hopqec/open_system/lindblad.h"
#include "hopqec/pauli/pauli_channel.h"

namespace hopqec::open_system {

struct GateChannelOptions {
    double zeta0_over_2pi_mhz = 5.0;
    /// Extra coherent ZZ couplings during the gate (rad/ns).
    std::vector<ZZTerm> extra_zz;
    /// Qubits subject to relaxation and dephasing (bit q = qubit q).
    uint64_t noisy_qubits = ~uint64_t{0};
};

/// A twirled HOP gate channel together with its matched CZ-ladder strength.
struct GateChannel {
    int n_data = 4;
    double p = 0;
    double lambda = 0;
    PauliChannel channel;

    double fidelity() const {
        return channel.fidelity();
    }
};

/// Integrates the master equation over one gate time and twirls the residual relative to
/// hop_unitary(n_data). The result acts on 1 + n_data qubits with qubit 0 the check qubit.
PauliChannel extract_hop_channel(double p, int n_data, const GateChannelOptions &options = {});

/// Lambda whose CZ-ladder fidelity equals the HOP channel fidelity at strength p.
double match_lambda(double p, int n_data, const GateChannelOptions &options = {});

/// Channel plus matched lambda in one extraction.
GateChannel hop_gate_channel(double p, int n_data, const GateChannelOptions &options = {});

}  // namespace hopqec::open_system

#endif
