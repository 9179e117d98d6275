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
#include <cmath>
#include <functional>
#include <limits>
#include <map>
#include <random>
#include <set>

#include "hopqec/channel_compile/compile.h"
#include "hopqec/circuit/builders.h"
#include "hopqec/decoder/blossom.h"
#include "hopqec/decoder/decoder.h"
#include "hopqec/error.h"
#include "hopqec/open_system/hop_channel.h"
#include "hopqec/sim/frame_sim.h"

using namespace hopqec;
using namespace hopqec::circuit;
using namespace hopqec::decoder;

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

Circuit noisy_circuit(bool hop, int d, double p1) {
    Layout l = Layout::build(d);
    double p = 10 * p1;
    if (hop) {
        return hop_circuit(l, d, NoiseBudget::from_p(p, 0), extracted_channels());
    }
    static std::map<double, double> lambdas;
    if (!lambdas.count(p)) {
        lambdas[p] = open_system::match_lambda(p, 4);
    }
    return standard_circuit(l, d, NoiseBudget::from_p(p, lambdas[p]));
}

// Brute-force minimum over all perfect matchings of a cost matrix.
template <typename T>
T brute_min_matching(const std::vector<std::vector<T>> &cost) {
    const size_t n = cost.size();
    std::vector<bool> used(n, false);
    std::function<T(size_t)> rec = [&](size_t first) -> T {
        while (first < n && used[first]) {
            first++;
        }
        if (first == n) {
            return T(0);
        }
        used[first] = true;
        T best = std::numeric_limits<T>::max();
        for (size_t j = first + 1; j < n; j++) {
            if (!used[j]) {
                used[j] = true;
                best = std::min(best, cost[first][j] + rec(first + 1));
                used[j] = false;
            }
        }
        used[first] = false;
        return best;
    };
    return rec(0);
}

// Brute-force maximum-weight matching over edge subsets (small graphs).
int64_t brute_max_matching(int n, const std::vector<WeightedEdge> &edges, bool max_card, int *card_out) {
    int64_t best = -1;
    int best_card = -1;
    const size_t m = edges.size();
    for (uint64_t s = 0; s < (uint64_t{1} << m); s++) {
        uint32_t used = 0;
        bool ok = true;
        int64_t w = 0;
        int card = 0;
        for (size_t k = 0; k < m && ok; k++) {
            if ((s >> k) & 1) {
                uint32_t bits = (1u << edges[k].u) | (1u << edges[k].v);
                ok = !(used & bits);
                used |= bits;
                w += edges[k].weight;
                card++;
            }
        }
        if (!ok) {
            continue;
        }
        if (max_card ? (card > best_card || (card == best_card && w > best)) : w > best) {
            best = w;
            best_card = card;
        }
    }
    *card_out = best_card;
    return best;
}

}  // namespace

TEST(Blossom, MatchesBruteForceOnCompleteGraphs) {
    std::mt19937_64 rng(1);
    for (int trial = 0; trial < 1000; trial++) {
        size_t n = 2 * (1 + rng() % 5);
        std::vector<std::vector<int64_t>> cost(n, std::vector<int64_t>(n, 0));
        for (size_t i = 0; i < n; i++) {
            for (size_t j = i + 1; j < n; j++) {
                cost[i][j] = cost[j][i] = static_cast<int64_t>(rng() % (trial % 2 ? 10 : 1000));
            }
        }
        auto mate = min_weight_perfect_matching(cost);
        int64_t w = 0;
        for (size_t i = 0; i < n; i++) {
            ASSERT_GE(mate[i], 0);
            ASSERT_EQ(static_cast<size_t>(mate[mate[i]]), i);
            if (static_cast<size_t>(mate[i]) > i) {
                w += cost[i][mate[i]];
            }
        }
        ASSERT_EQ(w, brute_min_matching(cost)) << "trial " << trial;
    }
}

TEST(Blossom, MatchesBruteForceOnSparseGraphs) {
    std::mt19937_64 rng(2);
    for (int trial = 0; trial < 1000; trial++) {
        int n = 2 + static_cast<int>(rng() % 7);
        std::vector<WeightedEdge> edges;
        for (int i = 0; i < n; i++) {
            for (int j = i + 1; j < n; j++) {
                if (rng() % 2 && edges.size() < 14) {
                    edges.push_back({i, j, static_cast<int64_t>(rng() % 20)});
                }
            }
        }
        for (bool max_card : {false, true}) {
            auto mate = max_weight_matching(n, edges, max_card);
            int64_t w = 0;
            int card = 0;
            for (const auto &e : edges) {
                if (mate[e.u] == e.v) {
                    ASSERT_EQ(mate[e.v], e.u);
                    w += e.weight;
                    card++;
                }
            }
            int best_card = 0;
            int64_t best = brute_max_matching(n, edges, max_card, &best_card);
            ASSERT_EQ(w, best) << "trial " << trial << " max_card " << max_card;
            if (max_card) {
                ASSERT_EQ(card, best_card);
            }
        }
    }
}

TEST(Blossom, RejectsOddOrNegative) {
    EXPECT_THROW(min_weight_perfect_matching({{0, 1, 2}, {1, 0, 3}, {2, 3, 0}}), Error);
    EXPECT_THROW(min_weight_perfect_matching({{0, -1}, {-1, 0}}), Error);
    EXPECT_TRUE(min_weight_perfect_matching({}).empty());
}

TEST(Dem, MergeRule) {
    EXPECT_DOUBLE_EQ(merge_probability(0.1, 0.2), 0.1 * 0.8 + 0.2 * 0.9);
    EXPECT_DOUBLE_EQ(merge_probability(0.0, 0.3), 0.3);
    EXPECT_DOUBLE_EQ(merge_probability(0.5, 0.3), 0.5);
    // Two equal-symptom mechanisms in a circuit merge into one entry with the XOR probability.
    Circuit c;
    c.num_qubits = 1;
    Layer layer;
    Instruction r;
    r.op = Op::ResetZ;
    r.targets = {0};
    Instruction e1;
    e1.op = Op::XError;
    e1.targets = {0};
    e1.arg = 0.1;
    Instruction e2 = e1;
    e2.arg = 0.2;
    Instruction m;
    m.op = Op::MeasureZ;
    m.targets = {0};
    Instruction d;
    d.op = Op::Detector;
    d.records = {0};
    layer.ops = {r, e1, e2, m, d};
    c.layers.push_back(layer);
    auto dem = extract_dem(c);
    ASSERT_EQ(dem.faults.size(), 1u);
    EXPECT_NEAR(dem.faults[0].p, merge_probability(0.1, 0.2), 1e-15);
}

TEST(Dem, ZeroNoiseGivesEmptyModel) {
    Layout l = Layout::build(3);
    EXPECT_TRUE(extract_dem(standard_circuit(l, 3, NoiseBudget{})).faults.empty());
}

TEST(Dem, MidCircuitMeasurementFlipFiresTwoDetectors) {
    Circuit c = noisy_circuit(false, 3, 1e-3);
    auto faults = enumerate_faults(c);
    auto symptoms = fault_symptoms(c, faults);
    size_t seen = 0;
    for (size_t k = 0; k < faults.size(); k++) {
        if (faults[k].record >= 0 && faults[k].record < 8) {
            // First-round ancilla r: detector r (first round) and r + 8 (comparison with round two).
            uint32_t r = static_cast<uint32_t>(faults[k].record);
            EXPECT_EQ(symptoms[k].detectors, (std::vector<uint32_t>{r, r + 8}));
            EXPECT_EQ(symptoms[k].observables, 0u);
            seen++;
        }
    }
    EXPECT_EQ(seen, 8u);
}

TEST(Dem, StandardTwoQubitFaultsAreLocal) {
    Circuit c = noisy_circuit(false, 3, 1e-3);
    auto faults = enumerate_faults(c);
    auto symptoms = fault_symptoms(c, faults);
    size_t checked = 0;
    for (size_t k = 0; k < faults.size(); k++) {
        if (c.layers[faults[k].layer].ops[faults[k].op].op == Op::Depolarize2) {
            EXPECT_LE(symptoms[k].detectors.size(), 4u);
            checked++;
        }
    }
    EXPECT_EQ(checked, 15u * 24 * 3);  // 24 CX per round at d = 3, three noisy rounds
}

TEST(Dem, DecompositionIsSound) {
    for (bool hop : {false, true}) {
        for (int d : {3, 5, 7}) {
            auto dem = extract_dem(noisy_circuit(hop, d, 1e-3));
            auto prims = primitive_edges(dem);
            size_t multi = 0, ok = 0;
            for (const auto &f : dem.faults) {
                auto parts = decompose(f, dem, prims);
                if (f.detectors.size() > 2) {
                    multi++;
                }
                if (!parts) {
                    continue;
                }
                ok += f.detectors.size() > 2;
                std::set<uint32_t> acc;
                uint64_t mask = 0;
                for (const auto &part : *parts) {
                    for (uint32_t v : {part.key.a, part.key.b}) {
                        if (v == dem.num_detectors) {
                            continue;
                        }
                        if (!acc.insert(v).second) {
                            acc.erase(v);
                        }
                    }
                    mask ^= part.observables;
                }
                EXPECT_EQ(std::vector<uint32_t>(acc.begin(), acc.end()), f.detectors);
                EXPECT_EQ(mask, f.observables);
            }
            EXPECT_GT(multi, 0u);
            RecordProperty((std::string(hop ? "hop" : "std") + "_d" + std::to_string(d)).c_str(),
                           std::to_string(ok) + "/" + std::to_string(multi));
        }
    }
}

TEST(Dem, CorrelatedHopFaultSplitsIntoPrimitives) {
    auto dem = extract_dem(noisy_circuit(true, 3, 1e-3));
    auto prims = primitive_edges(dem);
    bool found = false;
    for (const auto &f : dem.faults) {
        if (f.detectors.size() != 4) {
            continue;
        }
        auto parts = decompose(f, dem, prims);
        if (parts && parts->size() == 2 && parts->at(0).key.b != dem.num_detectors &&
            parts->at(1).key.b != dem.num_detectors) {
            found = true;
            break;
        }
    }
    EXPECT_TRUE(found);
}

TEST(Decoder, NoEventsNoCorrection) {
    Decoder dec(extract_dem(noisy_circuit(false, 3, 1e-3)));
    EXPECT_EQ(dec.decode({}), 0u);
    EXPECT_EQ(dec.last_weight(), 0.0);
}

TEST(Decoder, SingleEdgeGivesItsMask) {
    DetectorErrorModel dem;
    dem.num_detectors = 2;
    dem.num_observables = 1;
    dem.faults = {{0.01, {0, 1}, 1}, {0.02, {0}, 0}, {0.02, {1}, 0}};
    Decoder dec(dem);
    EXPECT_EQ(dec.decode({0, 1}), 1u);
    EXPECT_NEAR(dec.last_weight(), std::log(0.99 / 0.01), 1e-12);
    EXPECT_EQ(dec.decode({1}), 0u);
}

TEST(Decoder, UnreachableEventsThrow) {
    DetectorErrorModel dem;
    dem.num_detectors = 3;
    dem.num_observables = 1;
    dem.faults = {{0.01, {0, 1}, 1}};
    Decoder dec(dem);
    EXPECT_THROW(dec.decode({2, 0}), Error);
}

TEST(Decoder, MatchingWeightIsOptimal) {
    for (bool hop : {false, true}) {
        Decoder dec(extract_dem(noisy_circuit(hop, 3, 1e-3)));
        const auto &g = dec.graph();
        std::mt19937_64 rng(hop ? 5 : 6);
        for (int trial = 0; trial < 500; trial++) {
            size_t k = 1 + rng() % 10;
            std::set<uint32_t> pick;
            while (pick.size() < k) {
                pick.insert(static_cast<uint32_t>(rng() % g.num_detectors()));
            }
            std::vector<uint32_t> fired(pick.begin(), pick.end());
            dec.decode(fired);
            size_t n = k + k % 2;
            std::vector<std::vector<double>> cost(n, std::vector<double>(n, 0));
            for (size_t i = 0; i < k; i++) {
                const auto &ri = g.row(fired[i]);
                for (size_t j = 0; j < k; j++) {
                    if (i != j) {
                        cost[i][j] = std::min(ri.dist[fired[j]], ri.dist[g.boundary()] + g.row(fired[j]).dist[g.boundary()]);
                    }
                }
                if (n > k) {
                    cost[i][k] = cost[k][i] = ri.dist[g.boundary()];
                }
            }
            EXPECT_NEAR(dec.last_weight(), brute_min_matching(cost), 1e-3) << "trial " << trial;
        }
    }
}

namespace {

// Decodes each elementary fault of the circuit on its own; returns the number of miscorrections
// among faults acting on at most `max_weight` qubits.
size_t single_fault_failures(const Circuit &c, const Decoder &proto, size_t max_weight = 64) {
    Decoder dec = proto;
    auto faults = enumerate_faults(c);
    auto symptoms = fault_symptoms(c, faults);
    size_t failures = 0;
    for (size_t k = 0; k < faults.size(); k++) {
        if (faults[k].paulis.size() <= max_weight) {
            failures += dec.decode(symptoms[k].detectors) != symptoms[k].observables;
        }
    }
    return failures;
}

}  // namespace

TEST(Decoder, CorrectsEveryWeightOneDataError) {
    for (bool hop : {false, true}) {
        Circuit c = noisy_circuit(hop, 3, 1e-3);
        Decoder dec(extract_dem(c));
        Layout l = Layout::build(3);
        const size_t round = hop ? kHopLayersPerRound : kStandardLayersPerRound;
        std::vector<sim::FrameInjection> lanes;
        // Between rounds one and two, and in the middle of round two.
        for (size_t layer : {round - 1, round + round / 2}) {
            for (uint32_t q = 0; q < l.num_data(); q++) {
                for (uint8_t b = 1; b < 4; b++) {
                    sim::FrameInjection f;
                    f.layer = static_cast<uint32_t>(layer);
                    f.op = static_cast<uint32_t>(c.layers[layer].ops.size() - 1);
                    f.paulis = {{q, b}};
                    lanes.push_back(f);
                }
            }
        }
        Circuit clean = c.noiseless();
        // Layer op counts differ once noise is stripped; re-anchor injections to the last op.
        for (auto &f : lanes) {
            f.op = static_cast<uint32_t>(clean.layers[f.layer].ops.size() - 1);
        }
        sim::FrameSimulator sim(clean);
        sim::BitTable det, obs;
        sim.run_injected(lanes, det, obs);
        size_t failures = 0;
        for (size_t s = 0; s < lanes.size(); s++) {
            uint64_t actual = obs.row(s)[0];
            failures += dec.decode(det.row_bits(s)) != actual;
        }
        EXPECT_EQ(failures, 0u) << (hop ? "hop" : "standard");
    }
}

TEST(Decoder, StandardCorrectsEverySingleFault) {
    for (int d : {3, 5}) {
        Circuit c = noisy_circuit(false, d, 1e-3);
        Decoder dec(extract_dem(c));
        EXPECT_EQ(single_fault_failures(c, dec), 0u) << "d=" << d;
    }
}

TEST(Decoder, HopCorrectsEverySingleQubitFault) {
    Circuit c = noisy_circuit(true, 3, 1e-3);
    Decoder dec(extract_dem(c));
    EXPECT_EQ(single_fault_failures(c, dec, 1), 0u);
}

TEST(Decoder, HopHookFaultsShareSymptomsWithOppositeLogicalEffect) {
    // A check-qubit decay during the gate kicks Z onto a subset of its data; a pair along a column
    // has the syndrome of the single error completing that column, so the HOP circuit at d = 3
    // has weight-one faults that no decoder can tell apart from their logical complement.
    auto dem = extract_dem(noisy_circuit(true, 3, 1e-3));
    std::map<std::vector<uint32_t>, std::set<uint64_t>> masks;
    for (const auto &f : dem.faults) {
        masks[f.detectors].insert(f.observables);
    }
    size_t ambiguous = 0;
    for (const auto &[dets, m] : masks) {
        ambiguous += m.size() > 1;
    }
    EXPECT_GT(ambiguous, 0u);
}

TEST(Decoder, StandardCircuitDistanceAtLeastThree) {
    // No undetectable logical fault and no pair of faults with equal symptoms but different
    // logical effect, so at least three faults are needed for an undetected logical error.
    auto dem = extract_dem(noisy_circuit(false, 3, 1e-3));
    std::map<std::vector<uint32_t>, uint64_t> mask_of;
    for (const auto &f : dem.faults) {
        EXPECT_FALSE(f.detectors.empty() && f.observables != 0);
        auto [it, fresh] = mask_of.emplace(f.detectors, f.observables);
        EXPECT_TRUE(fresh) << "two faults share a symptom set";
    }
}

TEST(Decoder, ZeroNoiseNeverFails) {
    Layout l = Layout::build(3);
    auto stats = logical_failure_rate(standard_circuit(l, 3, NoiseBudget{}), 100000, 1);
    EXPECT_EQ(stats.shots, 100000u);
    EXPECT_EQ(stats.failures, 0u);
    EXPECT_EQ(stats.p_l, 0.0);
}

TEST(Decoder, FailureRateIsSeedConsistent) {
    Circuit c = noisy_circuit(false, 3, 1e-3);
    auto a = logical_failure_rate(c, 20000, 1);
    auto b = logical_failure_rate(c, 20000, 2);
    EXPECT_GT(a.failures, 0u);
    double sigma = std::sqrt((a.p_l * (1 - a.p_l) + b.p_l * (1 - b.p_l)) / 20000);
    EXPECT_LT(std::abs(a.p_l - b.p_l), 4 * sigma);
}

TEST(Decoder, StopsAtTargetFailures) {
    Circuit c = noisy_circuit(false, 3, 3e-3);
    auto s = logical_failure_rate(c, 1000000, 3, 50);
    EXPECT_GE(s.failures, 50u);
    EXPECT_LT(s.shots, 1000000u);
    EXPECT_EQ(s.shots % sim::kBatchShots, 0u);
}
