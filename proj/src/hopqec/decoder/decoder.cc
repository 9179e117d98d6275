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

#include "hopqec/decoder/decoder.h"

#include <cmath>
#include <limits>

#include "hopqec/decoder/blossom.h"
#include "hopqec/error.h"
#include "hopqec/sim/frame_sim.h"

namespace hopqec::decoder {

namespace {

constexpr double kCostScale = 1 << 16;

}  // namespace

Decoder::Decoder(const DetectorErrorModel &dem) : graph_(MatchingGraph::from_dem(dem)) {
}

Decoder::Decoder(MatchingGraph graph) : graph_(std::move(graph)) {
}

uint64_t Decoder::decode(const std::vector<uint32_t> &fired) {
    last_weight_ = 0;
    const size_t k = fired.size();
    if (k == 0) {
        return 0;
    }
    const uint32_t boundary = graph_.boundary();
    std::vector<const MatchingGraph::Row *> rows(k);
    for (size_t i = 0; i < k; i++) {
        if (fired[i] >= graph_.num_detectors()) {
            fail(ErrorCode::InvalidArgument, "fired detector out of range");
        }
        rows[i] = &graph_.row(fired[i]);
    }
    const size_t n = k + (k % 2);
    const double inf = std::numeric_limits<double>::infinity();
    // Pair cost and whether the cheaper route goes through the boundary.
    std::vector<std::vector<double>> cost(n, std::vector<double>(n, 0.0));
    std::vector<std::vector<char>> via_boundary(n, std::vector<char>(n, 0));
    double finite_max = 0;
    for (size_t i = 0; i < k; i++) {
        for (size_t j = i + 1; j < k; j++) {
            double direct = rows[i]->dist[fired[j]];
            double split = rows[i]->dist[boundary] + rows[j]->dist[boundary];
            cost[i][j] = cost[j][i] = std::min(direct, split);
            via_boundary[i][j] = via_boundary[j][i] = split < direct;
        }
        if (n > k) {
            cost[i][k] = cost[k][i] = rows[i]->dist[boundary];
            via_boundary[i][k] = via_boundary[k][i] = 1;
        }
    }
    for (const auto &r : cost) {
        for (double c : r) {
            if (c < inf) {
                finite_max = std::max(finite_max, c);
            }
        }
    }
    // Unreachable pairs get a cost no perfect matching through finite pairs can reach.
    const double big = (finite_max + 1) * static_cast<double>(n + 1);
    std::vector<std::vector<int64_t>> icost(n, std::vector<int64_t>(n, 0));
    for (size_t i = 0; i < n; i++) {
        for (size_t j = 0; j < n; j++) {
            double c = cost[i][j] < inf ? cost[i][j] : big;
            icost[i][j] = static_cast<int64_t>(std::llround(c * kCostScale));
        }
    }
    auto mate = min_weight_perfect_matching(icost);
    uint64_t mask = 0;
    for (size_t i = 0; i < n; i++) {
        size_t j = static_cast<size_t>(mate[i]);
        if (j < i) {
            continue;
        }
        if (!(cost[i][j] < inf)) {
            fail(ErrorCode::Decode, "detection events cannot be paired or sent to the boundary");
        }
        last_weight_ += cost[i][j];
        if (j == k) {
            mask ^= rows[i]->mask[boundary];
        } else if (via_boundary[i][j]) {
            mask ^= rows[i]->mask[boundary] ^ rows[j]->mask[boundary];
        } else {
            mask ^= rows[i]->mask[fired[j]];
        }
    }
    return mask;
}

FailureStats logical_failure_rate(const circuit::Circuit &c, uint64_t max_shots, uint64_t seed,
                                  uint64_t target_failures) {
    FailureStats stats;
    Decoder decoder(extract_dem(c));
    stats.decomposition_warnings = decoder.graph().decomposition_warnings();
    sim::validate_determinism(c);
    sim::FrameSimulator simulator(c);
    sim::BitTable det, obs;
    for (uint64_t batch = 0; stats.shots < max_shots; batch++) {
        if (target_failures > 0 && stats.failures >= target_failures) {
            break;
        }
        size_t n = static_cast<size_t>(std::min<uint64_t>(sim::kBatchShots, max_shots - stats.shots));
        simulator.run_batch(seed, batch, n, false, det, obs);
        for (size_t s = 0; s < n; s++) {
            uint64_t actual = obs.row_words ? obs.row(s)[0] : 0;
            uint64_t predicted = decoder.decode(det.row_bits(s));
            stats.failures += predicted != actual;
        }
        stats.shots += n;
    }
    stats.p_l = stats.shots ? static_cast<double>(stats.failures) / static_cast<double>(stats.shots) : 0.0;
    return stats;
}

}  // namespace hopqec::decoder
