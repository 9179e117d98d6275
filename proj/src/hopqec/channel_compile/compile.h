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

#ifndef HOPQEC_CHANNEL_COMPILE_COMPILE_H
#define HOPQEC_CHANNEL_COMPILE_COMPILE_H

#include <iosfwd>
#include <string>
#include <vector>

#include "hopqec/pauli/pauli_channel.h"

namespace hopqec::channel_compile {

/// Applies `pauli` with probability `prob` and does nothing otherwise.
struct SingleOutcomeChannel {
    PauliString pauli;
    double prob = 0;
};

enum class CompileOrder { First = 1, Second = 2 };

/// Handling of negative shifted probabilities in second-order compilation.
enum class NegativeShiftPolicy {
    Abort,  ///< throw Compile naming the offending Pauli
    Clamp,  ///< set the stage probability to zero and record the clamped mass
};

/// A correlated Pauli channel realized as a sequence of independent single-outcome channels.
struct CompiledChannel {
    uint32_t num_qubits = 0;
    std::vector<SingleOutcomeChannel> stages;  ///< descending probability
    double source_p = 0;
    CompileOrder order = CompileOrder::First;
    /// Total negative probability removed by NegativeShiftPolicy::Clamp (<= 0).
    double clamped_mass = 0;
};

/// One stage per non-identity Pauli with its target probability.
CompiledChannel naive_compile(const PauliChannel &channel, double source_p = 0);

/// Second-order compilation: each stage probability is shifted so the composed channel matches the
/// target to O(p^3) whenever every shifted probability is non-negative.
CompiledChannel corrected_compile(
    const PauliChannel &channel, double source_p = 0, NegativeShiftPolicy policy = NegativeShiftPolicy::Abort);

/// Second-order surplus of the naive composition for every Pauli index A (zero at the identity):
/// sum over unordered pairs {B, C} of distinct non-identity Paulis with BC ~ A of p_B p_C, minus
/// p_A sum_{X != A, X != I} p_X.
std::vector<double> second_order_surplus(const PauliChannel &channel);

/// Exact distribution produced by applying every stage in order. Refuses more than 5 qubits.
PauliChannel compose_stages(const CompiledChannel &compiled);

/// max_A |compose(compiled)(A) - target(A)| over all 4^n Paulis, identity included.
double max_composition_error(const CompiledChannel &compiled, const PauliChannel &target);

/// Same diagnostic for the unclamped second-order shift, composing the shifted values formally even
/// when some are negative (quasi-probabilities). Not a samplable channel; used to check the
/// second-order algebra on channels outside the non-negative regime.
double formal_second_order_error(const PauliChannel &target);

/// Text form: `# comment`, `ARITY n`, `ORDER 1|2`, `P p`, optional `CLAMPED m`, then one `PAULI prob` line per stage.
void write_compiled(std::ostream &out, const CompiledChannel &compiled);
CompiledChannel read_compiled(std::istream &in);
void save_compiled(const std::string &path, const CompiledChannel &compiled);
CompiledChannel load_compiled(const std::string &path);

}  // namespace hopqec::channel_compile

#endif
