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

#ifndef HOPQEC_CIRCUIT_CIRCUIT_H
#define HOPQEC_CIRCUIT_CIRCUIT_H

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "hopqec/channel_compile/compile.h"

namespace hopqec::circuit {

enum class Op : uint8_t {
    ResetZ,       ///< prepare |0>
    ResetX,       ///< prepare |+>
    H,
    TwirlId,      ///< single-qubit gate location that acts as identity on the Pauli frame
    CX,           ///< targets are (control, target) pairs
    CZ,           ///< targets are qubit pairs
    Hop,          ///< one gate: targets are (check, data...) with 2 or 4 data qubits
    MeasureZ,     ///< arg = flip probability
    MeasureX,     ///< arg = flip probability
    Mpp,          ///< one Pauli-product measurement over targets with bases in `paulis`
    XError,       ///< arg = probability
    ZError,       ///< arg = probability
    Depolarize1,  ///< X, Y, Z each with arg / 3
    Depolarize2,  ///< each of the 15 two-qubit Paulis with arg / 16; targets are pairs
    Noise,        ///< compiled correlated channel `channel` on the ordered targets
    Detector,     ///< XOR of `records`
    Observable,   ///< logical observable `index`, XOR of `records`
};

/// Text name, e.g. "RESET_Z" or "HOP5" (HOP names depend on arity).
std::string op_name(Op op, size_t num_targets = 0);

struct Instruction {
    Op op = Op::TwirlId;
    std::vector<uint32_t> targets;
    double arg = 0;
    /// Channel id for Noise, observable id for Observable, sector for Detector (the builders use
    /// 0 for Z-check and 1 for X-check detectors; the decoder never joins different sectors).
    uint32_t index = 0;
    std::vector<uint8_t> paulis;    ///< Mpp: 1 = X, 2 = Z, 3 = Y per target
    std::vector<uint32_t> records;  ///< absolute measurement indices for Detector / Observable

    bool is_noise() const;
    bool is_annotation() const {
        return op == Op::Detector || op == Op::Observable;
    }
    /// Number of measurement records this instruction appends.
    size_t num_measurements() const;
};

struct Layer {
    std::string tag;
    std::vector<Instruction> ops;
};

/// Time-layered circuit with noise annotations, detectors and observables.
///
/// Within a layer a qubit takes part in at most one unitary gate; resets and measurements on the
/// same qubit may surround that gate (an ancilla's prepare-gate-measure block fits in one layer).
struct Circuit {
    uint32_t num_qubits = 0;
    std::vector<channel_compile::CompiledChannel> channels;
    std::vector<Layer> layers;

    size_t num_measurements() const;
    size_t num_detectors() const;
    size_t num_observables() const;

    /// Throws Circuit on: targets out of range, malformed arities, probabilities outside [0, 1],
    /// unknown channels, records referring to measurements not yet made, or a qubit in two
    /// unitary gates of the same layer.
    void validate() const;

    /// Copy with every noise probability scaled to zero (noise instructions removed).
    Circuit noiseless() const;
};

}  // namespace hopqec::circuit

#endif
