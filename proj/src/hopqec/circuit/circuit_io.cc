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

#include "hopqec/circuit/circuit_io.h"

#include <fstream>
#include <iomanip>
#include <map>
#include <sstream>

#include "hopqec/error.h"

namespace hopqec::circuit {

namespace {

const std::map<std::string, Op> &op_table() {
    static const std::map<std::string, Op> table = {
        {"RESET_Z", Op::ResetZ},         {"RESET_X", Op::ResetX},     {"H", Op::H},
        {"TWIRL_ID", Op::TwirlId},       {"CX", Op::CX},              {"CZ", Op::CZ},
        {"HOP3", Op::Hop},               {"HOP5", Op::Hop},           {"MEASURE_Z", Op::MeasureZ},
        {"MEASURE_X", Op::MeasureX},     {"MPP", Op::Mpp},            {"X_ERROR", Op::XError},
        {"Z_ERROR", Op::ZError},         {"DEPOLARIZE1", Op::Depolarize1},
        {"DEPOLARIZE2", Op::Depolarize2}, {"NOISE", Op::Noise},       {"DETECTOR", Op::Detector},
        {"OBS", Op::Observable},
    };
    return table;
}

bool has_arg(Op op) {
    switch (op) {
        case Op::MeasureZ:
        case Op::MeasureX:
        case Op::XError:
        case Op::ZError:
        case Op::Depolarize1:
        case Op::Depolarize2:
            return true;
        default:
            return false;
    }
}

}  // namespace

void write_circuit(std::ostream &out, const Circuit &c) {
    out << "# hopqec circuit\n";
    out << "QUBITS " << c.num_qubits << "\n";
    out << std::setprecision(17);
    for (size_t i = 0; i < c.channels.size(); i++) {
        const auto &ch = c.channels[i];
        out << "CHANNEL " << i << " ARITY " << ch.num_qubits << " ORDER " << static_cast<int>(ch.order) << " P "
            << ch.source_p;
        if (ch.clamped_mass != 0) {
            out << " CLAMPED " << ch.clamped_mass;
        }
        out << "\n";
        for (const auto &s : ch.stages) {
            out << "STAGE " << s.pauli.str() << " " << s.prob << "\n";
        }
        out << "END_CHANNEL\n";
    }
    size_t measured = 0;
    for (const auto &layer : c.layers) {
        out << "LAYER";
        if (!layer.tag.empty()) {
            out << " " << layer.tag;
        }
        out << "\n";
        for (const auto &ins : layer.ops) {
            if (ins.is_annotation()) {
                out << op_name(ins.op);
                if (ins.op == Op::Detector && ins.index != 0) {
                    out << "[" << ins.index << "]";
                }
                if (ins.op == Op::Observable) {
                    out << " " << ins.index;
                }
                for (uint32_t r : ins.records) {
                    out << " m-" << (measured - r);
                }
                out << "\n";
                continue;
            }
            out << op_name(ins.op, ins.targets.size());
            if (has_arg(ins.op)) {
                out << "(" << ins.arg << ")";
            }
            if (ins.op == Op::Noise) {
                out << "[" << ins.index << "]";
            }
            if (ins.op == Op::Mpp) {
                out << " ";
                for (size_t k = 0; k < ins.targets.size(); k++) {
                    out << (k ? "*" : "") << "?XZY"[ins.paulis[k]] << ins.targets[k];
                }
            } else {
                for (uint32_t t : ins.targets) {
                    out << " " << t;
                }
            }
            out << "\n";
            measured += ins.num_measurements();
        }
    }
}

Circuit read_circuit(std::istream &in) {
    Circuit c;
    bool have_qubits = false;
    std::string line;
    int line_no = 0;
    size_t measured = 0;
    channel_compile::CompiledChannel *open_channel = nullptr;
    auto bad = [&](const std::string &what) {
        fail(ErrorCode::Io, "circuit line " + std::to_string(line_no) + ": " + what);
    };
    while (std::getline(in, line)) {
        line_no++;
        auto hash = line.find('#');
        if (hash != std::string::npos) {
            line.resize(hash);
        }
        std::istringstream ss(line);
        std::string head;
        if (!(ss >> head)) {
            continue;
        }
        if (head == "QUBITS") {
            if (!(ss >> c.num_qubits)) {
                bad("invalid QUBITS");
            }
            have_qubits = true;
            continue;
        }
        if (head == "CHANNEL") {
            size_t id;
            std::string k1, k2, k3;
            int order;
            channel_compile::CompiledChannel ch;
            if (!(ss >> id >> k1 >> ch.num_qubits >> k2 >> order >> k3 >> ch.source_p) || k1 != "ARITY" ||
                k2 != "ORDER" || k3 != "P" || (order != 1 && order != 2) || id != c.channels.size()) {
                bad("malformed CHANNEL header");
            }
            ch.order = static_cast<channel_compile::CompileOrder>(order);
            std::string k4;
            if (ss >> k4) {
                if (k4 != "CLAMPED" || !(ss >> ch.clamped_mass)) {
                    bad("malformed CHANNEL header");
                }
            }
            c.channels.push_back(ch);
            open_channel = &c.channels.back();
            continue;
        }
        if (head == "STAGE") {
            if (!open_channel) {
                bad("STAGE outside a CHANNEL block");
            }
            std::string pauli;
            double prob;
            if (!(ss >> pauli >> prob)) {
                bad("malformed STAGE");
            }
            channel_compile::SingleOutcomeChannel s;
            try {
                s.pauli = PauliString::parse(pauli);
            } catch (const Error &) {
                bad("bad Pauli '" + pauli + "'");
            }
            s.prob = prob;
            if (s.pauli.n != open_channel->num_qubits || s.pauli.is_identity() || !(prob >= 0 && prob < 0.5)) {
                bad("invalid stage");
            }
            open_channel->stages.push_back(s);
            continue;
        }
        if (head == "END_CHANNEL") {
            open_channel = nullptr;
            continue;
        }
        if (head == "LAYER") {
            Layer l;
            ss >> l.tag;
            c.layers.push_back(l);
            continue;
        }
        if (c.layers.empty()) {
            bad("instruction before the first LAYER");
        }
        // Split NAME(arg)[index].
        std::string name = head;
        Instruction ins;
        auto paren = name.find('(');
        auto bracket = name.find('[');
        std::string base = name.substr(0, std::min(paren, bracket));
        auto it = op_table().find(base);
        if (it == op_table().end()) {
            bad("unknown instruction '" + base + "'");
        }
        ins.op = it->second;
        if (paren != std::string::npos) {
            auto close = name.find(')', paren);
            if (close == std::string::npos) {
                bad("unterminated argument");
            }
            try {
                ins.arg = std::stod(name.substr(paren + 1, close - paren - 1));
            } catch (const std::exception &) {
                bad("bad argument");
            }
        } else if (has_arg(ins.op)) {
            if (ins.op != Op::MeasureZ && ins.op != Op::MeasureX) {
                bad(base + " needs a probability argument");
            }
        }
        if (bracket != std::string::npos) {
            auto close = name.find(']', bracket);
            if (close == std::string::npos) {
                bad("unterminated channel index");
            }
            ins.index = static_cast<uint32_t>(std::stoul(name.substr(bracket + 1, close - bracket - 1)));
        } else if (ins.op == Op::Noise) {
            bad("NOISE needs a channel index");
        }
        if (ins.is_annotation()) {
            if (ins.op == Op::Observable && !(ss >> ins.index)) {
                bad("OBS needs an index");
            }
            std::string ref;
            while (ss >> ref) {
                if (ref.rfind("m-", 0) != 0) {
                    bad("record references must look like m-k");
                }
                size_t back = std::stoul(ref.substr(2));
                if (back == 0 || back > measured) {
                    bad("record reference out of range");
                }
                ins.records.push_back(static_cast<uint32_t>(measured - back));
            }
        } else if (ins.op == Op::Mpp) {
            std::string prod;
            if (!(ss >> prod)) {
                bad("MPP needs a product");
            }
            std::stringstream ps(prod);
            std::string factor;
            while (std::getline(ps, factor, '*')) {
                if (factor.size() < 2) {
                    bad("bad MPP factor");
                }
                uint8_t b = factor[0] == 'X' ? 1 : factor[0] == 'Z' ? 2 : factor[0] == 'Y' ? 3 : 0;
                if (!b) {
                    bad("bad MPP basis");
                }
                ins.paulis.push_back(b);
                ins.targets.push_back(static_cast<uint32_t>(std::stoul(factor.substr(1))));
            }
        } else {
            uint32_t t;
            while (ss >> t) {
                ins.targets.push_back(t);
            }
            if (!ss.eof()) {
                bad("bad target list");
            }
            if (ins.op == Op::Hop && base.size() == 4 && static_cast<size_t>(base[3] - '0') != ins.targets.size()) {
                bad("HOP arity does not match its name");
            }
        }
        measured += ins.num_measurements();
        c.layers.back().ops.push_back(std::move(ins));
    }
    if (!have_qubits) {
        fail(ErrorCode::Io, "circuit has no QUBITS line");
    }
    c.validate();
    return c;
}

void save_circuit(const std::string &path, const Circuit &c) {
    std::ofstream out(path);
    if (!out) {
        fail(ErrorCode::Io, "cannot write " + path);
    }
    write_circuit(out, c);
}

Circuit load_circuit(const std::string &path) {
    std::ifstream in(path);
    if (!in) {
        fail(ErrorCode::Io, "cannot open " + path);
    }
    return read_circuit(in);
}

}  // namespace hopqec::circuit
