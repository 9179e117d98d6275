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

#include "hopqec/open_system/channel_io.h"

#include <cmath>
#include <fstream>
#include <iomanip>
#include <sstream>

#include "hopqec/error.h"

namespace hopqec::open_system {

void write_channel_file(std::ostream &out, const ChannelFile &file) {
    const auto &ch = file.channel;
    out << "# hopqec pauli channel\n";
    out << "ARITY " << ch.num_qubits() << "\n";
    out << std::setprecision(17);
    out << "P " << file.p << "\n";
    if (file.lambda) {
        out << "LAMBDA " << *file.lambda << "\n";
    }
    out << "FIDELITY " << ch.fidelity() << "\n";
    if (!file.normalization.empty()) {
        out << "NORMALIZATION " << file.normalization << "\n";
    }
    out << PauliString::identity(ch.num_qubits()).str() << " " << ch.fidelity() << "\n";
    for (const auto &[pauli, w] : ch.sorted_terms()) {
        out << pauli.str() << " " << w << "\n";
    }
}

ChannelFile read_channel_file(std::istream &in) {
    ChannelFile file;
    std::optional<uint32_t> arity;
    std::optional<double> fidelity;
    std::vector<double> weights;
    std::string line;
    int line_no = 0;
    auto bad = [&](const std::string &what) {
        fail(ErrorCode::Io, "channel file line " + std::to_string(line_no) + ": " + what);
    };
    while (std::getline(in, line)) {
        line_no++;
        if (line.empty() || line[0] == '#') {
            continue;
        }
        std::istringstream ss(line);
        std::string key;
        ss >> key;
        if (key == "ARITY") {
            uint32_t n = 0;
            if (!(ss >> n) || n < 1 || n > PauliChannel::kMaxQubits) {
                bad("invalid arity");
            }
            arity = n;
            weights.assign(uint64_t{1} << (2 * n), 0.0);
        } else if (key == "P") {
            if (!(ss >> file.p)) {
                bad("invalid P");
            }
        } else if (key == "LAMBDA") {
            double v;
            if (!(ss >> v)) {
                bad("invalid LAMBDA");
            }
            file.lambda = v;
        } else if (key == "FIDELITY") {
            double v;
            if (!(ss >> v)) {
                bad("invalid FIDELITY");
            }
            fidelity = v;
        } else if (key == "NORMALIZATION") {
            std::getline(ss >> std::ws, file.normalization);
        } else {
            if (!arity) {
                bad("Pauli line before ARITY");
            }
            PauliString p;
            try {
                p = PauliString::parse(key);
            } catch (const Error &) {
                bad("unrecognized entry '" + key + "'");
            }
            double w;
            if (p.n != *arity || !(ss >> w)) {
                bad("malformed Pauli line");
            }
            weights[p.index()] += w;
        }
    }
    if (!arity) {
        fail(ErrorCode::Io, "channel file has no ARITY line");
    }
    file.channel = PauliChannel::from_weights(*arity, std::move(weights));
    if (fidelity && std::abs(*fidelity - file.channel.fidelity()) > 1e-9) {
        fail(ErrorCode::Io, "channel file FIDELITY disagrees with its identity weight");
    }
    return file;
}

void save_channel_file(const std::string &path, const ChannelFile &file) {
    std::ofstream out(path);
    if (!out) {
        fail(ErrorCode::Io, "cannot write " + path);
    }
    write_channel_file(out, file);
}

ChannelFile load_channel_file(const std::string &path) {
    std::ifstream in(path);
    if (!in) {
        fail(ErrorCode::Io, "cannot open " + path);
    }
    return read_channel_file(in);
}

}  // namespace hopqec::open_system
