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

#include <algorithm>
#include <set>
#include <sstream>

#include "hopqec/circuit/builders.h"
#include "hopqec/circuit/circuit_io.h"
#include "hopqec/circuit/layout.h"
#include "hopqec/error.h"

using namespace hopqec;
using namespace hopqec::circuit;

namespace {

channel_compile::CompiledChannel toy_channel(uint32_t n, double p) {
    std::vector<double> w(uint64_t{1} << (2 * n), 0.0);
    w[PauliString::parse(std::string(n, 'Z')).index()] = p;
    w[PauliString::parse("X" + std::string(n - 1, 'I')).index()] = p / 2;
    w[0] = 1 - 1.5 * p;
    return channel_compile::naive_compile(PauliChannel::from_weights(n, std::move(w)), p);
}

HopChannels toy_channels(double p) {
    return {toy_channel(5, p), toy_channel(3, p)};
}

size_t overlap(const std::vector<uint32_t> &a, const std::vector<uint32_t> &b) {
    size_t n = 0;
    for (uint32_t q : a) {
        n += std::count(b.begin(), b.end(), q);
    }
    return n;
}

}  // namespace

TEST(Layout, DistanceThreeCounts) {
    Layout l = Layout::build(3);
    EXPECT_EQ(l.num_data(), 9u);
    EXPECT_EQ(l.num_qubits(), 17u);
    EXPECT_EQ(l.checks_of(CheckBasis::Z).size(), 4u);
    EXPECT_EQ(l.checks_of(CheckBasis::X).size(), 4u);
    int w2 = 0;
    for (const auto &c : l.checks) {
        w2 += c.weight() == 2;
    }
    EXPECT_EQ(w2, 4);
}

TEST(Layout, RejectsEvenOrTinyDistance) {
    EXPECT_THROW(Layout::build(4), Error);
    EXPECT_THROW(Layout::build(1), Error);
}

TEST(Layout, CheckCountsScale) {
    for (int d = 3; d <= 13; d += 2) {
        Layout l = Layout::build(d);
        EXPECT_EQ(l.checks.size(), static_cast<size_t>(d * d - 1)) << d;
        // Ancillas follow data, Z checks first.
        for (size_t k = 0; k < l.checks.size(); k++) {
            EXPECT_EQ(l.checks[k].ancilla, l.num_data() + k);
            if (k > 0) {
                EXPECT_LE(static_cast<int>(l.checks[k - 1].basis), static_cast<int>(l.checks[k].basis));
            }
        }
    }
}

TEST(Layout, GroupsAreDisjointAndPartitionChecks) {
    for (int d = 3; d <= 13; d += 2) {
        Layout l = Layout::build(d);
        size_t total = 0;
        for (auto g : {CheckGroup::A, CheckGroup::B, CheckGroup::C, CheckGroup::D}) {
            auto members = l.group(g);
            total += members.size();
            std::set<uint32_t> seen;
            for (const Check *c : members) {
                for (uint32_t q : c->data()) {
                    EXPECT_TRUE(seen.insert(q).second) << "d=" << d << " group " << static_cast<int>(g);
                }
            }
        }
        EXPECT_EQ(total, l.checks.size());
    }
}

TEST(Layout, StabilizersAndLogicalsCommute) {
    for (int d = 3; d <= 9; d += 2) {
        Layout l = Layout::build(d);
        auto zl = l.logical_z();
        auto xl = l.logical_x();
        EXPECT_EQ(zl.size(), static_cast<size_t>(d));
        EXPECT_EQ(xl.size(), static_cast<size_t>(d));
        EXPECT_EQ(overlap(zl, xl) % 2, 1u);
        for (const auto &c : l.checks) {
            if (c.basis == CheckBasis::X) {
                EXPECT_EQ(overlap(c.data(), zl) % 2, 0u);
                for (const auto &o : l.checks) {
                    if (o.basis == CheckBasis::Z) {
                        EXPECT_EQ(overlap(c.data(), o.data()) % 2, 0u);
                    }
                }
            } else {
                EXPECT_EQ(overlap(c.data(), xl) % 2, 0u);
            }
        }
    }
}

TEST(Layout, SubsetReindexes) {
    Layout l = Layout::build(3);
    // First Z check and every X check sharing data with it.
    size_t z0 = 0;
    size_t x_partner = 0;
    for (size_t k = 0; k < l.checks.size(); k++) {
        if (l.checks[k].basis == CheckBasis::X && overlap(l.checks[k].data(), l.checks[z0].data()) == 2) {
            x_partner = k;
            break;
        }
    }
    ASSERT_NE(x_partner, 0u);
    Layout s = l.subset({z0, x_partner});
    EXPECT_FALSE(s.full_patch);
    EXPECT_EQ(s.checks.size(), 2u);
    size_t union_size = l.checks[z0].weight() + l.checks[x_partner].weight() - 2;
    EXPECT_EQ(s.num_data(), union_size);
    EXPECT_EQ(s.num_qubits(), union_size + 2);
    EXPECT_EQ(overlap(s.checks[0].data(), s.checks[1].data()), 2u);
    EXPECT_THROW(s.logical_z(), Error);
}

TEST(Builders, StandardShape) {
    Layout l = Layout::build(3);
    for (int rounds : {1, 3, 5}) {
        Circuit c = standard_circuit(l, rounds, NoiseBudget::from_p(1e-3, 2e-3));
        EXPECT_EQ(c.layers.size(), static_cast<size_t>(kStandardLayersPerRound * (rounds + 1) + 1));
        EXPECT_EQ(c.num_detectors(), static_cast<size_t>(8 * rounds + 8));
        EXPECT_EQ(c.num_observables(), 2u);
        EXPECT_EQ(c.num_measurements(), static_cast<size_t>(8 * (rounds + 1) + 2));
    }
}

TEST(Builders, HopShape) {
    Layout l = Layout::build(3);
    for (int rounds : {1, 2, 4}) {
        Circuit c = hop_circuit(l, rounds, NoiseBudget::from_p(1e-3, 0), toy_channels(1e-3));
        EXPECT_EQ(c.layers.size(), static_cast<size_t>(kHopLayersPerRound * (rounds + 1) + 1));
        EXPECT_EQ(c.num_detectors(), static_cast<size_t>(8 * rounds + 8));
        EXPECT_EQ(c.channels.size(), 2u);
    }
}

TEST(Builders, DetectorsCompareConsecutiveRounds) {
    Layout l = Layout::build(3);
    Circuit c = standard_circuit(l, 2, NoiseBudget::from_p(1e-3, 1e-3));
    size_t single = 0, pairs = 0;
    for (const auto &layer : c.layers) {
        for (const auto &ins : layer.ops) {
            if (ins.op == Op::Detector) {
                if (ins.records.size() == 1) {
                    single++;
                } else {
                    ASSERT_EQ(ins.records.size(), 2u);
                    EXPECT_EQ(ins.records[0] - ins.records[1], 8u);
                    pairs++;
                }
            }
        }
    }
    EXPECT_EQ(single, 8u);
    EXPECT_EQ(pairs, 16u);
}

namespace {

// Per data qubit: count of single-qubit depolarizing locations and of gate participations in the
// layers [begin, end).
void count_data_noise(
    const Circuit &c, uint32_t num_data, size_t begin, size_t end, std::vector<int> &p1, std::vector<int> &gates) {
    p1.assign(num_data, 0);
    gates.assign(num_data, 0);
    for (size_t li = begin; li < end; li++) {
        for (const auto &ins : c.layers[li].ops) {
            if (ins.op == Op::Depolarize1) {
                for (uint32_t q : ins.targets) {
                    if (q < num_data) {
                        p1[q]++;
                    }
                }
            }
            if (ins.op == Op::CX || ins.op == Op::Hop) {
                for (uint32_t q : ins.targets) {
                    if (q < num_data) {
                        gates[q]++;
                    }
                }
            }
        }
    }
}

}  // namespace

TEST(Builders, StandardIdleAccounting) {
    for (int d : {3, 5}) {
        Layout l = Layout::build(d);
        Circuit c = standard_circuit(l, 1, NoiseBudget::from_p(1e-3, 1e-3));
        std::vector<int> p1, gates;
        count_data_noise(c, l.num_data(), 0, kStandardLayersPerRound, p1, gates);
        for (uint32_t q = 0; q < l.num_data(); q++) {
            EXPECT_EQ(p1[q], 6 - gates[q]) << q;
        }
        // d = 3 corners take part in two checks.
        if (d == 3) {
            EXPECT_EQ(gates[l.data_index(0, 0)], 2);
            EXPECT_EQ(gates[l.data_index(1, 1)], 4);
        }
        // Final round is noiseless.
        count_data_noise(c, l.num_data(), kStandardLayersPerRound, c.layers.size(), p1, gates);
        EXPECT_EQ(*std::max_element(p1.begin(), p1.end()), 0);
    }
}

TEST(Builders, HopIdleAccounting) {
    Layout l = Layout::build(5);
    Circuit c = hop_circuit(l, 1, NoiseBudget::from_p(1e-3, 0), toy_channels(1e-3));
    std::vector<int> p1, gates;
    count_data_noise(c, l.num_data(), 0, kHopLayersPerRound, p1, gates);
    for (uint32_t q = 0; q < l.num_data(); q++) {
        EXPECT_EQ(p1[q], 9 - gates[q]) << q;
    }
    size_t noise = 0, hops = 0;
    for (size_t li = 0; li < kHopLayersPerRound; li++) {
        for (const auto &ins : c.layers[li].ops) {
            noise += ins.op == Op::Noise;
            hops += ins.op == Op::Hop;
            if (ins.op == Op::Noise) {
                EXPECT_EQ(c.channels[ins.index].num_qubits, ins.targets.size());
            }
        }
    }
    EXPECT_EQ(hops, l.checks.size());
    EXPECT_EQ(noise, l.checks.size());
}

TEST(Builders, LayerTagsFollowSchedule) {
    Layout l = Layout::build(3);
    Circuit c = hop_circuit(l, 1, NoiseBudget::from_p(1e-3, 0), toy_channels(1e-3));
    std::vector<std::string> tags;
    for (int k = 0; k < kHopLayersPerRound; k++) {
        tags.push_back(c.layers[k].tag);
    }
    EXPECT_EQ(tags, (std::vector<std::string>{"TWIRL", "A", "TWIRL", "B", "TWIRL_H", "C", "TWIRL", "D", "TWIRL_H"}));
}

TEST(Builders, InvalidArguments) {
    Layout l = Layout::build(3);
    EXPECT_THROW(standard_circuit(l, 0, NoiseBudget{}), Error);
    EXPECT_THROW(NoiseBudget::from_p(-1e-3, 0), Error);
    HopChannels swapped{toy_channel(3, 1e-3), toy_channel(5, 1e-3)};
    EXPECT_THROW(hop_circuit(l, 1, NoiseBudget{}, swapped), Error);
}

TEST(CircuitIo, RoundTrip) {
    Layout l = Layout::build(3);
    for (const Circuit &c : {standard_circuit(l, 2, NoiseBudget::from_p(2e-3, 3e-3)),
                             hop_circuit(l, 2, NoiseBudget::from_p(2e-3, 0), toy_channels(2e-3))}) {
        std::stringstream a;
        write_circuit(a, c);
        Circuit back = read_circuit(a);
        std::stringstream b;
        write_circuit(b, back);
        EXPECT_EQ(a.str(), b.str());
        EXPECT_EQ(back.num_detectors(), c.num_detectors());
        EXPECT_EQ(back.layers.size(), c.layers.size());
    }
}

TEST(CircuitIo, RejectsMalformed) {
    std::stringstream bad1("QUBITS 2\nLAYER L\nCX 0\n");
    EXPECT_THROW(read_circuit(bad1), Error);
    std::stringstream bad2("QUBITS 2\nLAYER L\nMEASURE_Z(0) 0\nDETECTOR m-2\n");
    EXPECT_THROW(read_circuit(bad2), Error);
    std::stringstream bad3("QUBITS 2\nLAYER L\nFROB 0\n");
    EXPECT_THROW(read_circuit(bad3), Error);
    std::stringstream bad4("QUBITS 2\nLAYER L\nX_ERROR(1.5) 0\n");
    EXPECT_THROW(read_circuit(bad4), Error);
}

TEST(CircuitNoiseless, DropsNoise) {
    Layout l = Layout::build(3);
    Circuit c = hop_circuit(l, 2, NoiseBudget::from_p(2e-3, 0), toy_channels(2e-3)).noiseless();
    for (const auto &layer : c.layers) {
        for (const auto &ins : layer.ops) {
            EXPECT_FALSE(ins.is_noise());
            if (ins.op == Op::MeasureX || ins.op == Op::MeasureZ) {
                EXPECT_EQ(ins.arg, 0.0);
            }
        }
    }
}
