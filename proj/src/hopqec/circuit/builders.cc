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

#include "hopqec/circuit/builders.h"

#include <algorithm>
#include <array>
#include <cmath>
#include <string>
#include <unordered_map>

#include "hopqec/error.h"

namespace hopqec::circuit {

NoiseBudget NoiseBudget::from_p(double p, double p2) {
    NoiseBudget b;
    b.p = p;
    b.p1 = p / 10;
    b.p_pm = p / 2;
    b.p2 = p2;
    b.validate();
    return b;
}

void NoiseBudget::validate() const {
    for (double v : {p, p1, p_pm, p2}) {
        if (!std::isfinite(v) || v < 0 || v > 1) {
            fail(ErrorCode::InvalidArgument, "noise strengths must lie in [0, 1]");
        }
    }
}

namespace {

Instruction make(Op op, std::vector<uint32_t> targets, double arg = 0) {
    Instruction ins;
    ins.op = op;
    ins.targets = std::move(targets);
    ins.arg = arg;
    return ins;
}

void push_noise(Layer &layer, Op op, std::vector<uint32_t> targets, double p) {
    if (p > 0 && !targets.empty()) {
        layer.ops.push_back(make(op, std::move(targets), p));
    }
}

std::vector<uint32_t> all_data(const Layout &layout) {
    std::vector<uint32_t> out(layout.num_data());
    for (uint32_t q = 0; q < layout.num_data(); q++) {
        out[q] = q;
    }
    return out;
}

/// Tracks the previous outcome of each check so detectors can compare consecutive rounds.
class RecordBook {
  public:
    explicit RecordBook(const Layout &layout) : last_(layout.checks.size(), -1) {
        for (size_t k = 0; k < layout.checks.size(); k++) {
            check_of_ancilla_[layout.checks[k].ancilla] = k;
            basis_.push_back(layout.checks[k].basis == CheckBasis::Z ? 0 : 1);
        }
    }

    /// Appends a measurement instruction for `ancillas` and one detector per ancilla.
    void measure(Layer &layer, Op op, const std::vector<uint32_t> &ancillas, double flip) {
        if (ancillas.empty()) {
            return;
        }
        layer.ops.push_back(make(op, ancillas, flip));
        for (uint32_t anc : ancillas) {
            size_t k = check_of_ancilla_.at(anc);
            Instruction det = make(Op::Detector, {});
            det.index = basis_[k];
            det.records.push_back(static_cast<uint32_t>(next_));
            if (last_[k] >= 0) {
                det.records.push_back(static_cast<uint32_t>(last_[k]));
            }
            last_[k] = static_cast<int64_t>(next_);
            next_++;
            layer.ops.push_back(std::move(det));
        }
    }

    void observables(Circuit &c, const Layout &layout) {
        Layer layer;
        layer.tag = "OBSERVABLES";
        std::vector<uint32_t> supports[2] = {layout.logical_z(), layout.logical_x()};
        const uint32_t reference = layout.num_qubits();
        for (uint32_t obs = 0; obs < 2; obs++) {
            supports[obs].push_back(reference);
            Instruction mpp = make(Op::Mpp, supports[obs]);
            mpp.paulis.assign(supports[obs].size(), obs == 0 ? 2 : 1);
            layer.ops.push_back(std::move(mpp));
            Instruction o = make(Op::Observable, {});
            o.index = obs;
            o.records.push_back(static_cast<uint32_t>(next_++));
            layer.ops.push_back(std::move(o));
        }
        c.layers.push_back(std::move(layer));
    }

  private:
    std::vector<int64_t> last_;
    std::vector<uint32_t> basis_;
    std::unordered_map<uint32_t, size_t> check_of_ancilla_;
    size_t next_ = 0;
};

constexpr std::array<Corner, 4> kZOrder{kNW, kNE, kSW, kSE};
constexpr std::array<Corner, 4> kXOrder{kNW, kSW, kNE, kSE};

void standard_round(Circuit &c, const Layout &layout, const NoiseBudget &b, RecordBook &book) {
    std::vector<uint32_t> z_anc, x_anc;
    for (const auto &chk : layout.checks) {
        (chk.basis == CheckBasis::Z ? z_anc : x_anc).push_back(chk.ancilla);
    }

    Layer reset;
    reset.tag = "RESET";
    if (!z_anc.empty()) {
        reset.ops.push_back(make(Op::ResetZ, z_anc));
    }
    if (!x_anc.empty()) {
        reset.ops.push_back(make(Op::ResetX, x_anc));
    }
    push_noise(reset, Op::XError, z_anc, b.p_pm);
    push_noise(reset, Op::ZError, x_anc, b.p_pm);
    push_noise(reset, Op::Depolarize1, all_data(layout), b.p1);
    c.layers.push_back(std::move(reset));

    for (int step = 0; step < 4; step++) {
        Layer layer;
        layer.tag = "CX" + std::to_string(step + 1);
        std::vector<uint32_t> pairs;
        std::vector<bool> busy(layout.num_qubits(), false);
        for (const auto &chk : layout.checks) {
            Corner corner = chk.basis == CheckBasis::Z ? kZOrder[step] : kXOrder[step];
            int32_t q = chk.corners[corner];
            if (q < 0) {
                continue;
            }
            uint32_t data = static_cast<uint32_t>(q);
            if (chk.basis == CheckBasis::Z) {
                pairs.insert(pairs.end(), {data, chk.ancilla});
            } else {
                pairs.insert(pairs.end(), {chk.ancilla, data});
            }
            busy[data] = busy[chk.ancilla] = true;
        }
        std::vector<uint32_t> idle;
        for (uint32_t q = 0; q < layout.num_qubits(); q++) {
            if (!busy[q]) {
                idle.push_back(q);
            }
        }
        if (!pairs.empty()) {
            layer.ops.push_back(make(Op::CX, pairs));
        }
        push_noise(layer, Op::Depolarize2, pairs, b.p2);
        push_noise(layer, Op::Depolarize1, idle, b.p1);
        c.layers.push_back(std::move(layer));
    }

    Layer meas;
    meas.tag = "MEASURE";
    push_noise(meas, Op::Depolarize1, all_data(layout), b.p1);
    book.measure(meas, Op::MeasureZ, z_anc, b.p_pm);
    book.measure(meas, Op::MeasureX, x_anc, b.p_pm);
    c.layers.push_back(std::move(meas));
}

void hop_data_layer(Circuit &c, const Layout &layout, const NoiseBudget &b, bool hadamard) {
    Layer layer;
    layer.tag = hadamard ? "TWIRL_H" : "TWIRL";
    layer.ops.push_back(make(hadamard ? Op::H : Op::TwirlId, all_data(layout)));
    push_noise(layer, Op::Depolarize1, all_data(layout), b.p1);
    c.layers.push_back(std::move(layer));
}

void hop_group_layer(
    Circuit &c, const Layout &layout, CheckGroup g, const NoiseBudget &b, bool noisy, RecordBook &book) {
    static const char *kTags[4] = {"A", "B", "C", "D"};
    Layer layer;
    layer.tag = kTags[static_cast<int>(g)];
    auto members = layout.group(g);
    std::vector<uint32_t> ancillas;
    std::vector<bool> busy(layout.num_data(), false);
    for (const Check *chk : members) {
        ancillas.push_back(chk->ancilla);
    }
    if (!ancillas.empty()) {
        layer.ops.push_back(make(Op::ResetX, ancillas));
    }
    push_noise(layer, Op::ZError, ancillas, b.p_pm);
    std::vector<Instruction> channels;
    for (const Check *chk : members) {
        std::vector<uint32_t> targets{chk->ancilla};
        for (uint32_t q : chk->data()) {
            targets.push_back(q);
            busy[q] = true;
        }
        Instruction noise = make(Op::Noise, targets);
        noise.index = chk->weight() == 4 ? 0 : 1;
        layer.ops.push_back(make(Op::Hop, std::move(targets)));
        if (noisy) {
            channels.push_back(std::move(noise));
        }
    }
    for (auto &ins : channels) {
        layer.ops.push_back(std::move(ins));
    }
    std::vector<uint32_t> idle;
    for (uint32_t q = 0; q < layout.num_data(); q++) {
        if (!busy[q]) {
            idle.push_back(q);
        }
    }
    push_noise(layer, Op::Depolarize1, idle, b.p1);
    book.measure(layer, Op::MeasureX, ancillas, b.p_pm);
    c.layers.push_back(std::move(layer));
}

void hop_round(Circuit &c, const Layout &layout, const NoiseBudget &b, bool noisy, RecordBook &book) {
    hop_data_layer(c, layout, b, false);
    hop_group_layer(c, layout, CheckGroup::A, b, noisy, book);
    hop_data_layer(c, layout, b, false);
    hop_group_layer(c, layout, CheckGroup::B, b, noisy, book);
    hop_data_layer(c, layout, b, true);
    hop_group_layer(c, layout, CheckGroup::C, b, noisy, book);
    hop_data_layer(c, layout, b, false);
    hop_group_layer(c, layout, CheckGroup::D, b, noisy, book);
    hop_data_layer(c, layout, b, true);
}

void check_rounds(int rounds) {
    if (rounds < 1) {
        fail(ErrorCode::InvalidArgument, "at least one noisy round is required");
    }
}

}  // namespace

Circuit standard_circuit(const Layout &layout, int rounds, const NoiseBudget &budget) {
    check_rounds(rounds);
    budget.validate();
    Circuit c;
    c.num_qubits = layout.num_qubits() + (layout.full_patch ? 1 : 0);
    RecordBook book(layout);
    for (int r = 0; r < rounds; r++) {
        standard_round(c, layout, budget, book);
    }
    standard_round(c, layout, NoiseBudget{}, book);
    if (layout.full_patch) {
        book.observables(c, layout);
    }
    c.validate();
    return c;
}

Circuit hop_circuit(const Layout &layout, int rounds, const NoiseBudget &budget, const HopChannels &channels) {
    check_rounds(rounds);
    budget.validate();
    if (channels.five.num_qubits != 5 || channels.three.num_qubits != 3) {
        fail(ErrorCode::InvalidArgument, "HOP channels must act on 5 and 3 qubits");
    }
    Circuit c;
    c.num_qubits = layout.num_qubits() + (layout.full_patch ? 1 : 0);
    c.channels = {channels.five, channels.three};
    RecordBook book(layout);
    for (int r = 0; r < rounds; r++) {
        hop_round(c, layout, budget, true, book);
    }
    hop_round(c, layout, NoiseBudget{}, false, book);
    if (layout.full_patch) {
        book.observables(c, layout);
    }
    c.validate();
    return c;
}

}  // namespace hopqec::circuit
