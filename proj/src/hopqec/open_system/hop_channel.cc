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

#include "hopqec/open_system/hop_channel.h"

#include "hopqec/error.h"
#include "hopqec/open_system/cz_reference.h"
#include "hopqec/open_system/hop_gate.h"
#include "hopqec/open_system/twirl.h"

namespace hopqec::open_system {

PauliChannel extract_hop_channel(double p, int n_data, const GateChannelOptions &options) {
    if (!(p >= 0)) {
        fail(ErrorCode::InvalidArgument, "gate error strength must be non-negative");
    }
    if (n_data != 2 && n_data != 4) {
        fail(ErrorCode::InvalidArgument, "HOP gates act on 2 or 4 data qubits");
    }
    NoiseParams noise = NoiseParams::from_p(p, options.zeta0_over_2pi_mhz);
    auto h = hop_hamiltonian(n_data, noise.zeta0, options.extra_zz);
    auto l = liouvillian(h, noise, n_data + 1, options.noisy_qubits);
    auto v = propagator(l, noise.tau());
    return twirl_channel(v, hop_unitary(n_data));
}

double match_lambda(double p, int n_data, const GateChannelOptions &options) {
    return hop_gate_channel(p, n_data, options).lambda;
}

GateChannel hop_gate_channel(double p, int n_data, const GateChannelOptions &options) {
    GateChannel out;
    out.n_data = n_data;
    out.p = p;
    out.channel = extract_hop_channel(p, n_data, options);
    out.lambda = match_lambda_to_fidelity(out.channel.fidelity(), n_data);
    return out;
}

}  // namespace hopqec::open_system
