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

#include <gtest/gtest.h>

#include <cmath>
#include <random>
#include <sstream>

#include "hopqec/channel_compile/compile.h"
#include "hopqec/circuit/builders.h"
#include "hopqec/error.h"
#include "hopqec/open_system/hop_channel.h"
#include "hopqec/sim/dense_oracle.h"
#include "hopqec/sim/frame_sim.h"

using namespace hopqec;
using namespace hopqec::circuit;
using namespace hopqec::sim;

namespace {

const HopChannels &extracted_channels() {
    static const HopChannels channels = [] {
        const double p = 0.01;
        auto compile = [&](int n_data) {
            return channel_compile::corrected_compile(
                open_system::extract_hop_channel(p, n_data), p, channel_compile::NegativeShiftPolicy::Clamp);
        };
        return HopChannels{compile(4), compile(2)};
    }();
    return channels;
}

size_t count_events(const SampleResult &r) {
    size_t n = 0;
    for (size_t s = 0; s < r.shots; s++) {
        n += r.detectors.row_bits(s).size() + r.observables.row_bits(s).size();
    }
    return n;
}

/// Appends an injected Pauli (X_ERROR or Z_ERROR with probability `arg`) at the end of a layer.
void inject(Circuit &c, size_t layer, Op op, uint32_t q, double arg) {
    Instruction ins;
    ins.op = op;
    ins.targets = {q};
    ins.arg = arg;
    c.layers[layer].ops.push_back(ins);
}

size_t find_check(const Layout &l, CheckBasis basis, int weight, size_t skip = 0) {
    for (size_t k = 0; k < l.checks.size(); k++) {
        if (l.checks[k].basis == basis && l.checks[k].weight() == weight && skip-- == 0) {
            return k;
        }
    }
    throw std::runtime_error("no such check");
}

size_t partner_of(const Layout &l, size_t z) {
    for (size_t k = 0; k < l.checks.size(); k++) {
        const auto &c = l.checks[k];
        if (c.basis == CheckBasis::X && c.weight() == 4) {
            int shared = 0;
            for (uint32_t q : c.data()) {
                for (uint32_t r : l.checks[z].data()) {
                    shared += q == r;
                }
            }
            if (shared == 2) {
                return k;
            }
        }
    }
    throw std::runtime_error("no partner");
}

}  // namespace

TEST(FrameSim, ZeroNoiseIsSilent) {
    for (int d : {3, 5, 7}) {
        Layout l = Layout::build(d);
        Circuit std_c = standard_circuit(l, d, NoiseBudget{});
        Circuit hop_c = hop_circuit(l, d, NoiseBudget{}, extracted_channels()).noiseless();
        for (const Circuit *c : {&std_c, &hop_c}) {
            validate_determinism(*c);
            SampleResult r = sample(*c, 10000, 7);
            EXPECT_EQ(r.shots, 10000u);
            EXPECT_EQ(r.detectors.cols, c->num_detectors());
            EXPECT_EQ(count_events(r), 0u) << "d=" << d;
        }
    }
}

TEST(FrameSim, DeterminismCheckRejectsRandomDetector) {
    Circuit c;
    c.num_qubits = 1;
    Layer layer;
    layer.tag = "L";
    Instruction reset;
    reset.op = Op::ResetX;
    reset.targets = {0};
    Instruction meas;
    meas.op = Op::MeasureZ;
    meas.targets = {0};
    Instruction det;
    det.op = Op::Detector;
    det.records = {0};
    layer.ops = {reset, meas, det};
    c.layers.push_back(layer);
    EXPECT_THROW(validate_determinism(c), Error);
    EXPECT_THROW(sample(c, 10, 1), Error);
    // A Z-basis preparation makes the same detector deterministic.
    c.layers[0].ops[0].op = Op::ResetZ;
    EXPECT_NO_THROW(validate_determinism(c));
}

TEST(FrameSim, InjectedBulkXFiresTwoAdjacentZChecks) {
    Layout l = Layout::build(3);
    const uint32_t q = l.data_index(1, 1);
    std::vector<size_t> adjacent;
    for (size_t k = 0; k < l.checks.size(); k++) {
        auto data = l.checks[k].data();
        if (l.checks[k].basis == CheckBasis::Z && std::count(data.begin(), data.end(), q)) {
            adjacent.push_back(k);
        }
    }
    ASSERT_EQ(adjacent.size(), 2u);
    for (bool hop : {false, true}) {
        Circuit c = hop ? hop_circuit(l, 2, NoiseBudget{}, extracted_channels()).noiseless()
                        : standard_circuit(l, 2, NoiseBudget{});
        size_t per_round = hop ? kHopLayersPerRound : kStandardLayersPerRound;
        inject(c, per_round - 1, Op::XError, q, 1.0);
        SampleResult r = sample(c, 64, 3);
        for (size_t s = 0; s < r.shots; s++) {
            auto bits = r.detectors.row_bits(s);
            // Round-two detectors are numbered 8..15 in check order (Z checks first).
            ASSERT_EQ(bits.size(), 2u);
            EXPECT_EQ(bits[0], 8 + adjacent[0]);
            EXPECT_EQ(bits[1], 8 + adjacent[1]);
            EXPECT_TRUE(r.observables.row_is_zero(s));
        }
    }
}

TEST(FrameSim, InjectedLogicalFlipsObservable) {
    Layout l = Layout::build(3);
    Circuit c = standard_circuit(l, 1, NoiseBudget{});
    for (uint32_t q : l.logical_x()) {
        inject(c, kStandardLayersPerRound - 1, Op::XError, q, 1.0);
    }
    SampleResult r = sample(c, 10, 3);
    for (size_t s = 0; s < r.shots; s++) {
        EXPECT_TRUE(r.detectors.row_is_zero(s));
        EXPECT_TRUE(r.observables.get(s, 0));
        EXPECT_FALSE(r.observables.get(s, 1));
    }
}

TEST(FrameSim, ReproducibleForFixedSeed) {
    Layout l = Layout::build(3);
    Circuit c = standard_circuit(l, 3, NoiseBudget::from_p(1e-2, 1.3e-2));
    SampleResult a = sample(c, 3000, 11), b = sample(c, 3000, 11), other = sample(c, 3000, 12);
    EXPECT_EQ(a.detectors.words, b.detectors.words);
    EXPECT_EQ(a.observables.words, b.observables.words);
    EXPECT_NE(a.detectors.words, other.detectors.words);
    EXPECT_GT(count_events(a), 0u);
}

TEST(FrameSim, FramesAreLinear) {
    Layout l = Layout::build(3);
    Circuit base = hop_circuit(l, 2, NoiseBudget::from_p(1e-2, 0), extracted_channels());
    std::mt19937_64 rng(99);
    for (int trial = 0; trial < 20; trial++) {
        size_t la = rng() % base.layers.size(), lb = rng() % base.layers.size();
        uint32_t qa = rng() % base.num_qubits, qb = rng() % base.num_qubits;
        Op oa = rng() % 2 ? Op::XError : Op::ZError, ob = rng() % 2 ? Op::XError : Op::ZError;
        auto run = [&](double a, double b) {
            Circuit c = base;
            inject(c, la, oa, qa, a);
            inject(c, lb, ob, qb, b);
            return sample(c, 500, 1234, SampleOptions{false});
        };
        SampleResult r00 = run(0, 0), r10 = run(1, 0), r01 = run(0, 1), r11 = run(1, 1);
        for (size_t w = 0; w < r00.detectors.words.size(); w++) {
            EXPECT_EQ(r11.detectors.words[w], r00.detectors.words[w] ^ r10.detectors.words[w] ^ r01.detectors.words[w]);
        }
        for (size_t w = 0; w < r00.observables.words.size(); w++) {
            EXPECT_EQ(r11.observables.words[w],
                      r00.observables.words[w] ^ r10.observables.words[w] ^ r01.observables.words[w]);
        }
    }
}

TEST(FrameSim, BatchesAreIndependentOfShotCount) {
    Layout l = Layout::build(3);
    Circuit c = standard_circuit(l, 2, NoiseBudget::from_p(2e-2, 2e-2));
    SampleResult big = sample(c, 2048 + 100, 5), small = sample(c, 1024, 5);
    for (size_t s = 0; s < 1024; s++) {
        EXPECT_EQ(big.detectors.row_bits(s), small.detectors.row_bits(s));
    }
}

TEST(SampleIo, BinaryAndHexRoundTrip) {
    Layout l = Layout::build(3);
    Circuit c = standard_circuit(l, 2, NoiseBudget::from_p(2e-2, 2e-2));
    SampleResult r = sample(c, 77, 9);
    std::stringstream bin;
    write_samples(bin, r);
    EXPECT_EQ(bin.str().substr(0, 8), "HOPQSMP1");
    SampleResult back = read_samples(bin);
    EXPECT_EQ(back.shots, r.shots);
    EXPECT_EQ(back.seed, r.seed);
    EXPECT_EQ(back.detectors.words, r.detectors.words);
    EXPECT_EQ(back.observables.words, r.observables.words);
    std::stringstream hex;
    write_samples_hex(hex, r);
    std::string line;
    size_t lines = 0;
    while (std::getline(hex, line)) {
        EXPECT_EQ(line.size(), 2 * ((c.num_detectors() + 2 + 7) / 8));
        lines++;
    }
    EXPECT_EQ(lines, 77u);
    std::stringstream junk("NOTASAMPLEFILE");
    EXPECT_THROW(read_samples(junk), Error);
}

TEST(DenseOracle, ZeroNoiseGivesZeroMarginals) {
    Layout l = Layout::build(3);
    Layout crop = l.subset({find_check(l, CheckBasis::Z, 4)});
    Circuit c = standard_circuit(crop, 2, NoiseBudget{});
    auto m = dense_marginals(c, layout_stabilizers(crop));
    ASSERT_EQ(m.detectors.size(), c.num_detectors());
    for (double v : m.detectors) {
        EXPECT_NEAR(v, 0.0, 1e-12);
    }
}

TEST(DenseOracle, MeasurementFlipOnly) {
    Layout l = Layout::build(3);
    Layout crop = l.subset({find_check(l, CheckBasis::X, 2)});
    NoiseBudget b;
    b.p_pm = 0.1;
    Circuit c = standard_circuit(crop, 1, b);
    for (auto &layer : c.layers) {
        std::erase_if(layer.ops, [](const Instruction &ins) { return ins.is_noise(); });
    }
    auto m = dense_marginals(c, layout_stabilizers(crop));
    ASSERT_EQ(m.detectors.size(), 2u);
    EXPECT_NEAR(m.detectors[0], 0.1, 1e-12);
    EXPECT_NEAR(m.detectors[1], 0.1, 1e-12);  // second round is noiseless
}

TEST(DenseOracle, RejectsWideCircuits) {
    Layout l = Layout::build(3);
    EXPECT_THROW(dense_marginals(standard_circuit(l, 1, NoiseBudget{}), layout_stabilizers(l)), Error);
}

TEST(DenseOracle, RejectsNonDeterministicDetectors) {
    Layout l = Layout::build(3);
    Layout crop = l.subset({find_check(l, CheckBasis::Z, 4)});
    Circuit c = standard_circuit(crop, 1, NoiseBudget{});
    EXPECT_THROW(dense_marginals(c, {}), Error);
}

namespace {

void expect_agreement(const Circuit &c, const Layout &crop, const char *label) {
    auto exact = dense_marginals(c, layout_stabilizers(crop));
    const uint64_t shots = 100000;
    SampleResult r = sample(c, shots, 2024);
    ASSERT_EQ(exact.detectors.size(), r.detectors.cols);
    for (size_t k = 0; k < exact.detectors.size(); k++) {
        size_t hits = 0;
        for (size_t s = 0; s < shots; s++) {
            hits += r.detectors.get(s, k);
        }
        double q = exact.detectors[k];
        double sigma = std::sqrt(std::max(q * (1 - q), 1e-12) / shots);
        double est = static_cast<double>(hits) / shots;
        EXPECT_LE(std::abs(est - q), 4 * sigma + 1e-12) << label << " detector " << k << " exact " << q;
    }
}

}  // namespace

TEST(DenseOracle, AgreesWithFrameSamplerOnCroppedCircuits) {
    Layout l = Layout::build(3);
    const size_t z4 = find_check(l, CheckBasis::Z, 4);
    const size_t x2 = find_check(l, CheckBasis::X, 2);
    const size_t z2 = find_check(l, CheckBasis::Z, 2);
    const size_t x4 = partner_of(l, z4);
    NoiseBudget std_budget = NoiseBudget::from_p(1e-2, 1.3e-2);
    NoiseBudget hop_budget = NoiseBudget::from_p(1e-2, 0);
    const std::vector<std::vector<size_t>> crops = {{z4}, {x2}, {z2}, {z4, x4}};
    for (const auto &ids : crops) {
        Layout crop = l.subset(ids);
        ASSERT_LE(crop.num_qubits(), kDenseMaxQubits);
        expect_agreement(standard_circuit(crop, 2, std_budget), crop, "standard");
        expect_agreement(hop_circuit(crop, 2, hop_budget, extracted_channels()), crop, "hop");
    }
}
