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

#include "hopqec/channel_compile/compile.h"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <sstream>

#include "hopqec/error.h"

namespace hopqec::channel_compile {

namespace {

void sort_stages(std::vector<SingleOutcomeChannel> &stages) {
    std::stable_sort(stages.begin(), stages.end(), [](const auto &a, const auto &b) {
        if (a.prob != b.prob) {
            return a.prob > b.prob;
        }
        return a.pauli.index() < b.pauli.index();
    });
}

void check_channel(const PauliChannel &channel) {
    if (channel.num_qubits() == 0) {
        fail(ErrorCode::Compile, "cannot compile an empty channel");
    }
    if (std::abs(channel.total() - 1) > PauliChannel::kNormTolerance) {
        fail(ErrorCode::Compile, "channel is not normalized");
    }
}

}  // namespace

CompiledChannel naive_compile(const PauliChannel &channel, double source_p) {
    check_channel(channel);
    CompiledChannel out;
    out.num_qubits = channel.num_qubits();
    out.source_p = source_p;
    out.order = CompileOrder::First;
    for (uint64_t i = 1; i < channel.size(); i++) {
        double w = channel.weight(i);
        if (w >= 0.5) {
            fail(ErrorCode::Compile, "Pauli " + PauliString::from_index(out.num_qubits, i).str() + " has weight >= 1/2");
        }
        if (w > 0) {
            out.stages.push_back({PauliString::from_index(out.num_qubits, i), w});
        }
    }
    sort_stages(out.stages);
    return out;
}

std::vector<double> second_order_surplus(const PauliChannel &channel) {
    size_t size = channel.size();
    std::vector<double> p(channel.weights().begin(), channel.weights().end());
    p[0] = 0;
    double total = 0;
    for (double w : p) {
        total += w;
    }
    // pairs[A] = (1/2) sum_B p_B p_{A^B}; the B = A and B = I terms vanish because p_I is zeroed.
    std::vector<double> conv(size, 0.0);
    for (size_t b = 1; b < size; b++) {
        if (p[b] == 0) {
            continue;
        }
        for (size_t c = 1; c < size; c++) {
            conv[b ^ c] += p[b] * p[c];
        }
    }
    std::vector<double> surplus(size, 0.0);
    for (size_t a = 1; a < size; a++) {
        surplus[a] = 0.5 * conv[a] - p[a] * (total - p[a]);
    }
    return surplus;
}

CompiledChannel corrected_compile(const PauliChannel &channel, double source_p, NegativeShiftPolicy policy) {
    check_channel(channel);
    auto surplus = second_order_surplus(channel);
    CompiledChannel out;
    out.num_qubits = channel.num_qubits();
    out.source_p = source_p;
    out.order = CompileOrder::Second;
    for (uint64_t i = 1; i < channel.size(); i++) {
        double q = channel.weight(i) - surplus[i];
        if (q < 0 && policy == NegativeShiftPolicy::Clamp) {
            out.clamped_mass += q;
            continue;
        }
        if (q < 0) {
            std::ostringstream msg;
            msg << "shifted probability of " << PauliString::from_index(out.num_qubits, i).str() << " is " << q
                << "; channel too noisy for second-order compilation";
            fail(ErrorCode::Compile, msg.str());
        }
        if (q >= 0.5) {
            fail(ErrorCode::Compile, "shifted probability >= 1/2");
        }
        if (q > 0) {
            out.stages.push_back({PauliString::from_index(out.num_qubits, i), q});
        }
    }
    sort_stages(out.stages);
    return out;
}

PauliChannel compose_stages(const CompiledChannel &compiled) {
    uint32_t n = compiled.num_qubits;
    if (n == 0 || n > 5) {
        fail(ErrorCode::InvalidArgument, "compose_stages supports 1 to 5 qubits");
    }
    size_t size = size_t{1} << (2 * n);
    std::vector<double> dist(size, 0.0), next(size);
    dist[0] = 1;
    for (const auto &s : compiled.stages) {
        if (s.pauli.n != n) {
            fail(ErrorCode::InvalidArgument, "stage width differs from the channel width");
        }
        uint64_t a = s.pauli.index();
        for (size_t i = 0; i < size; i++) {
            next[i] = (1 - s.prob) * dist[i] + s.prob * dist[i ^ a];
        }
        dist.swap(next);
    }
    return PauliChannel::from_weights(n, std::move(dist));
}

double max_composition_error(const CompiledChannel &compiled, const PauliChannel &target) {
    auto composed = compose_stages(compiled);
    if (composed.num_qubits() != target.num_qubits()) {
        fail(ErrorCode::InvalidArgument, "compiled and target widths differ");
    }
    double worst = 0;
    for (uint64_t i = 0; i < target.size(); i++) {
        worst = std::max(worst, std::abs(composed.weight(i) - target.weight(i)));
    }
    return worst;
}

double formal_second_order_error(const PauliChannel &target) {
    uint32_t n = target.num_qubits();
    if (n == 0 || n > 5) {
        fail(ErrorCode::InvalidArgument, "formal composition supports 1 to 5 qubits");
    }
    auto surplus = second_order_surplus(target);
    size_t size = target.size();
    std::vector<double> dist(size, 0.0), next(size);
    dist[0] = 1;
    for (size_t a = 1; a < size; a++) {
        double q = target.weight(a) - surplus[a];
        if (q == 0) {
            continue;
        }
        for (size_t i = 0; i < size; i++) {
            next[i] = (1 - q) * dist[i] + q * dist[i ^ a];
        }
        dist.swap(next);
    }
    double worst = 0;
    for (size_t i = 0; i < size; i++) {
        worst = std::max(worst, std::abs(dist[i] - target.weight(i)));
    }
    return worst;
}

void write_compiled(std::ostream &out, const CompiledChannel &compiled) {
    out << "# hopqec compiled channel: sequential single-outcome stages\n";
    out << "ARITY " << compiled.num_qubits << "\n";
    out << "ORDER " << static_cast<int>(compiled.order) << "\n";
    out << std::setprecision(17) << "P " << compiled.source_p << "\n";
    if (compiled.clamped_mass != 0) {
        out << "CLAMPED " << compiled.clamped_mass << "\n";
    }
    for (const auto &s : compiled.stages) {
        out << s.pauli.str() << " " << s.prob << "\n";
    }
}

CompiledChannel read_compiled(std::istream &in) {
    CompiledChannel out;
    bool have_arity = false;
    std::string line;
    int line_no = 0;
    auto bad = [&](const std::string &what) {
        fail(ErrorCode::Io, "compiled channel line " + std::to_string(line_no) + ": " + what);
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
            if (!(ss >> out.num_qubits) || out.num_qubits == 0 || out.num_qubits > PauliString::kMaxQubits) {
                bad("invalid arity");
            }
            have_arity = true;
        } else if (key == "ORDER") {
            int o = 0;
            if (!(ss >> o) || (o != 1 && o != 2)) {
                bad("ORDER must be 1 or 2");
            }
            out.order = static_cast<CompileOrder>(o);
        } else if (key == "P") {
            if (!(ss >> out.source_p)) {
                bad("invalid P");
            }
        } else if (key == "CLAMPED") {
            if (!(ss >> out.clamped_mass)) {
                bad("invalid CLAMPED");
            }
        } else {
            if (!have_arity) {
                bad("stage before ARITY");
            }
            SingleOutcomeChannel s;
            try {
                s.pauli = PauliString::parse(key);
            } catch (const Error &) {
                bad("unrecognized entry '" + key + "'");
            }
            if (s.pauli.n != out.num_qubits || s.pauli.is_identity() || !(ss >> s.prob) || !(s.prob >= 0) ||
                !(s.prob < 0.5)) {
                bad("malformed stage");
            }
            out.stages.push_back(s);
        }
    }
    if (!have_arity) {
        fail(ErrorCode::Io, "compiled channel has no ARITY line");
    }
    return out;
}

void save_compiled(const std::string &path, const CompiledChannel &compiled) {
    std::ofstream out(path);
    if (!out) {
        fail(ErrorCode::Io, "cannot write " + path);
    }
    write_compiled(out, compiled);
}

CompiledChannel load_compiled(const std::string &path) {
    std::ifstream in(path);
    if (!in) {
        fail(ErrorCode::Io, "cannot open " + path);
    }
    return read_compiled(in);
}

}  // namespace hopqec::channel_compile
