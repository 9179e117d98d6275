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
#include "hopqec/error.h"
#include "hopqec/open_system/hop_channel.h"

using namespace hopqec;
using namespace hopqec::channel_compile;

namespace {

PauliChannel channel_of(uint32_t n, std::initializer_list<std::pair<const char *, double>> terms) {
    std::vector<double> w(uint64_t{1} << (2 * n), 0.0);
    for (const auto &[s, p] : terms) {
        w[PauliString::parse(s).index()] += p;
    }
    return PauliChannel::from_weights(n, std::move(w));
}

// Oracle: sum over all 2^k subsets of stages that fire.
std::vector<double> enumerate_subsets(const CompiledChannel &c) {
    std::vector<double> out(uint64_t{1} << (2 * c.num_qubits), 0.0);
    size_t k = c.stages.size();
    for (uint64_t mask = 0; mask < (uint64_t{1} << k); mask++) {
        double pr = 1;
        uint64_t idx = 0;
        for (size_t s = 0; s < k; s++) {
            if ((mask >> s) & 1) {
                pr *= c.stages[s].prob;
                idx ^= c.stages[s].pauli.index();
            } else {
                pr *= 1 - c.stages[s].prob;
            }
        }
        out[idx] += pr;
    }
    return out;
}

// Exact product of random single-outcome channels at overall strength p.
PauliChannel random_product_channel(uint32_t n, double p, uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> u(0.1, 1.0);
    CompiledChannel c;
    c.num_qubits = n;
    for (uint64_t i = 1; i < (uint64_t{1} << (2 * n)); i += 3) {
        c.stages.push_back({PauliString::from_index(n, i), p * u(rng)});
    }
    auto w = enumerate_subsets(c);
    return PauliChannel::from_weights(n, std::move(w));
}

double slope(double e1, double e2, double p1, double p2) {
    return std::log(e2 / e1) / std::log(p2 / p1);
}

}  // namespace

TEST(NaiveCompile, SingleStageIsExact) {
    auto ch = channel_of(1, {{"I", 0.9}, {"X", 0.1}});
    auto c = naive_compile(ch);
    ASSERT_EQ(c.stages.size(), 1u);
    EXPECT_EQ(c.stages[0].pauli.str(), "X");
    EXPECT_DOUBLE_EQ(c.stages[0].prob, 0.1);
    EXPECT_NEAR(max_composition_error(c, ch), 0.0, 1e-16);
}

TEST(NaiveCompile, PairProductSurplus) {
    auto ch = channel_of(2, {{"II", 0.9}, {"XI", 0.05}, {"IX", 0.05}});
    auto c = naive_compile(ch);
    ASSERT_EQ(c.stages.size(), 2u);
    auto composed = compose_stages(c);
    EXPECT_NEAR(composed.weight(PauliString::parse("XX")), 0.0025, 1e-16);
    EXPECT_NEAR(composed.weight(PauliString::parse("XI")), 0.0475, 1e-16);
}

TEST(NaiveCompile, IdentityChannelHasNoStages) {
    EXPECT_TRUE(naive_compile(PauliChannel(3)).stages.empty());
    EXPECT_THROW(naive_compile(channel_of(1, {{"I", 0.4}, {"X", 0.6}})), Error);
}

TEST(CorrectedCompile, SurplusOfPairChannel) {
    auto ch = channel_of(2, {{"II", 0.9}, {"XI", 0.05}, {"IX", 0.05}});
    auto s = second_order_surplus(ch);
    EXPECT_NEAR(s[PauliString::parse("XX").index()], 0.0025, 1e-16);
    EXPECT_NEAR(s[PauliString::parse("XI").index()], -0.0025, 1e-16);
    try {
        corrected_compile(ch);
        FAIL();
    } catch (const Error &e) {
        EXPECT_EQ(e.code(), ErrorCode::Compile);
        EXPECT_NE(std::string(e.what()).find("XX"), std::string::npos);
    }
    auto clamped = corrected_compile(ch, 0, NegativeShiftPolicy::Clamp);
    EXPECT_NEAR(clamped.clamped_mass, -0.0025, 1e-16);
    ASSERT_EQ(clamped.stages.size(), 2u);
    EXPECT_NEAR(clamped.stages[0].prob, 0.0525, 1e-16);
}

TEST(CorrectedCompile, SinglePauliIsUnchanged) {
    auto ch = channel_of(2, {{"II", 0.97}, {"ZY", 0.03}});
    auto a = naive_compile(ch);
    auto b = corrected_compile(ch);
    ASSERT_EQ(b.stages.size(), 1u);
    EXPECT_DOUBLE_EQ(a.stages[0].prob, b.stages[0].prob);
}

TEST(ComposeStages, MatchesSubsetEnumeration) {
    std::mt19937_64 rng(9);
    std::uniform_real_distribution<double> u(0, 0.3);
    CompiledChannel c;
    c.num_qubits = 2;
    for (uint64_t i = 1; i < 16; i += 2) {
        c.stages.push_back({PauliString::from_index(2, i), u(rng)});
    }
    c.stages.push_back({PauliString::parse("XY"), 0.2});
    auto oracle = enumerate_subsets(c);
    auto composed = compose_stages(c);
    for (uint64_t i = 0; i < 16; i++) {
        EXPECT_NEAR(composed.weight(i), oracle[i], 1e-15);
    }
    CompiledChannel empty;
    empty.num_qubits = 3;
    EXPECT_EQ(compose_stages(empty).fidelity(), 1.0);
    CompiledChannel wide;
    wide.num_qubits = 6;
    EXPECT_THROW(compose_stages(wide), Error);
}

TEST(ComposeStages, OrderIndependent) {
    auto ch = random_product_channel(2, 0.02, 4);
    auto c = corrected_compile(ch, 0, NegativeShiftPolicy::Clamp);
    auto reversed = c;
    std::reverse(reversed.stages.begin(), reversed.stages.end());
    auto a = compose_stages(c), b = compose_stages(reversed);
    for (uint64_t i = 0; i < a.size(); i++) {
        EXPECT_NEAR(a.weight(i), b.weight(i), 1e-15);
    }
}

TEST(ScalingLaw, ProductChannels) {
    const double ps[3] = {1e-2, 3e-3, 1e-3};
    double naive[3], corrected[3];
    for (int i = 0; i < 3; i++) {
        auto ch = random_product_channel(2, ps[i], 21);
        naive[i] = max_composition_error(naive_compile(ch), ch);
        corrected[i] = max_composition_error(corrected_compile(ch, 0, NegativeShiftPolicy::Clamp), ch);
    }
    EXPECT_NEAR(slope(naive[0], naive[2], ps[0], ps[2]), 2.0, 0.2);
    EXPECT_NEAR(slope(corrected[0], corrected[2], ps[0], ps[2]), 3.0, 0.3);
}

TEST(ScalingLaw, ExtractedGateChannelAlgebra) {
    // The formal (quasi-probability) second-order shift has an O(p^3) residual on the extracted
    // channel, while the naive stages leave O(p^2).
    const double ps[3] = {1e-2, 3e-3, 1e-3};
    double naive[3], formal[3];
    for (int i = 0; i < 3; i++) {
        auto ch = open_system::extract_hop_channel(ps[i], 2);
        naive[i] = max_composition_error(naive_compile(ch), ch);
        formal[i] = formal_second_order_error(ch);
    }
    EXPECT_NEAR(slope(naive[0], naive[2], ps[0], ps[2]), 2.0, 0.2);
    EXPECT_NEAR(slope(formal[0], formal[2], ps[0], ps[2]), 3.0, 0.3);
}

TEST(ScalingLaw, ExtractedGateChannelHasNegativeShifts) {
    auto ch = open_system::extract_hop_channel(1e-3, 2);
    EXPECT_THROW(corrected_compile(ch), Error);
    auto c = corrected_compile(ch, 1e-3, NegativeShiftPolicy::Clamp);
    EXPECT_LT(c.clamped_mass, 0.0);
    EXPECT_GT(c.clamped_mass, -1e-6);
}

TEST(CompiledFile, RoundTrip) {
    auto ch = random_product_channel(3, 0.01, 2);
    auto c = corrected_compile(ch, 0.01, NegativeShiftPolicy::Clamp);
    std::stringstream ss;
    write_compiled(ss, c);
    auto d = read_compiled(ss);
    EXPECT_EQ(d.num_qubits, 3u);
    EXPECT_EQ(d.order, CompileOrder::Second);
    EXPECT_EQ(d.source_p, 0.01);
    EXPECT_EQ(d.clamped_mass, c.clamped_mass);
    ASSERT_EQ(d.stages.size(), c.stages.size());
    for (size_t i = 0; i < c.stages.size(); i++) {
        EXPECT_EQ(d.stages[i].pauli, c.stages[i].pauli);
        EXPECT_EQ(d.stages[i].prob, c.stages[i].prob);
    }
}
