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

#include "hopqec/circuit/circuit.h"

#include <algorithm>
#include <set>

#include "hopqec/error.h"

namespace hopqec::circuit {

std::string op_name(Op op, size_t num_targets) {
    switch (op) {
        case Op::ResetZ:
            return "RESET_Z";
        case Op::ResetX:
            return "RESET_X";
        case Op::H:
            return "H";
        case Op::TwirlId:
            return "TWIRL_ID";
        case Op::CX:
            return "CX";
        case Op::CZ:
            return "CZ";
        case Op::Hop:
            return "HOP" + std::to_string(num_targets);
        case Op::MeasureZ:
            return "MEASURE_Z";
        case Op::MeasureX:
            return "MEASURE_X";
        case Op::Mpp:
            return "MPP";
        case Op::XError:
            return "X_ERROR";
        case Op::ZError:
            return "Z_ERROR";
        case Op::Depolarize1:
            return "DEPOLARIZE1";
        case Op::Depolarize2:
            return "DEPOLARIZE2";
        case Op::Noise:
            return "NOISE";
        case Op::Detector:
            return "DETECTOR";
        case Op::Observable:
            return "OBS";
    }
    return "?";
}

bool Instruction::is_noise() const {
    switch (op) {
        case Op::XError:
        case Op::ZError:
        case Op::Depolarize1:
        case Op::Depolarize2:
        case Op::Noise:
            return true;
        default:
            return false;
    }
}

size_t Instruction::num_measurements() const {
    switch (op) {
        case Op::MeasureZ:
        case Op::MeasureX:
            return targets.size();
        case Op::Mpp:
            return 1;
        default:
            return 0;
    }
}

size_t Circuit::num_measurements() const {
    size_t n = 0;
    for (const auto &l : layers) {
        for (const auto &ins : l.ops) {
            n += ins.num_measurements();
        }
    }
    return n;
}

size_t Circuit::num_detectors() const {
    size_t n = 0;
    for (const auto &l : layers) {
        for (const auto &ins : l.ops) {
            n += ins.op == Op::Detector;
        }
    }
    return n;
}

size_t Circuit::num_observables() const {
    size_t n = 0;
    for (const auto &l : layers) {
        for (const auto &ins : l.ops) {
            if (ins.op == Op::Observable) {
                n = std::max<size_t>(n, ins.index + 1);
            }
        }
    }
    return n;
}

void Circuit::validate() const {
    auto bad = [](size_t layer, const std::string &what) {
        fail(ErrorCode::Circuit, "layer " + std::to_string(layer) + ": " + what);
    };
    size_t measured = 0;
    for (const auto &ch : channels) {
        if (ch.num_qubits == 0) {
            fail(ErrorCode::Circuit, "channel with zero arity");
        }
    }
    for (size_t li = 0; li < layers.size(); li++) {
        std::vector<uint8_t> in_gate(num_qubits, 0);
        for (const auto &ins : layers[li].ops) {
            for (uint32_t t : ins.targets) {
                if (t >= num_qubits) {
                    bad(li, op_name(ins.op, ins.targets.size()) + " target out of range");
                }
            }
            if ((ins.is_noise() || ins.op == Op::MeasureZ || ins.op == Op::MeasureX) && !(ins.arg >= 0 && ins.arg <= 1)) {
                bad(li, "probability outside [0, 1]");
            }
            auto claim = [&](uint32_t q) {
                if (in_gate[q]) {
                    bad(li, "qubit " + std::to_string(q) + " appears in two gates");
                }
                in_gate[q] = 1;
            };
            switch (ins.op) {
                case Op::H:
                case Op::TwirlId:
                    for (uint32_t t : ins.targets) {
                        claim(t);
                    }
                    break;
                case Op::CX:
                case Op::CZ:
                case Op::Depolarize2:
                    if (ins.targets.size() % 2) {
                        bad(li, "two-qubit instruction with an odd number of targets");
                    }
                    for (size_t k = 0; k < ins.targets.size(); k += 2) {
                        if (ins.targets[k] == ins.targets[k + 1]) {
                            bad(li, "two-qubit instruction on a repeated qubit");
                        }
                    }
                    if (ins.op != Op::Depolarize2) {
                        for (uint32_t t : ins.targets) {
                            claim(t);
                        }
                    }
                    break;
                case Op::Hop: {
                    if (ins.targets.size() != 3 && ins.targets.size() != 5) {
                        bad(li, "HOP gates act on 3 or 5 qubits");
                    }
                    std::set<uint32_t> distinct(ins.targets.begin(), ins.targets.end());
                    if (distinct.size() != ins.targets.size()) {
                        bad(li, "HOP gate on a repeated qubit");
                    }
                    for (uint32_t t : ins.targets) {
                        claim(t);
                    }
                    break;
                }
                case Op::Noise:
                    if (ins.index >= channels.size()) {
                        bad(li, "unknown channel " + std::to_string(ins.index));
                    }
                    if (channels[ins.index].num_qubits != ins.targets.size()) {
                        bad(li, "channel arity does not match its targets");
                    }
                    break;
                case Op::Mpp:
                    if (ins.targets.empty() || ins.paulis.size() != ins.targets.size()) {
                        bad(li, "MPP needs one basis per target");
                    }
                    for (auto p : ins.paulis) {
                        if (p < 1 || p > 3) {
                            bad(li, "MPP basis must be X, Y or Z");
                        }
                    }
                    break;
                case Op::Detector:
                case Op::Observable:
                    for (uint32_t r : ins.records) {
                        if (r >= measured) {
                            bad(li, "record refers to a future measurement");
                        }
                    }
                    if (!ins.targets.empty()) {
                        bad(li, "annotations take records, not qubits");
                    }
                    break;
                default:
                    break;
            }
            measured += ins.num_measurements();
        }
    }
}

Circuit Circuit::noiseless() const {
    Circuit out = *this;
    for (auto &l : out.layers) {
        std::erase_if(l.ops, [](const Instruction &ins) { return ins.is_noise(); });
        for (auto &ins : l.ops) {
            if (ins.op == Op::MeasureZ || ins.op == Op::MeasureX) {
                ins.arg = 0;
            }
        }
    }
    return out;
}

}  // namespace hopqec::circuit
