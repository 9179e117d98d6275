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

#include "hopqec/decoder/matching_graph.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <queue>

#include "hopqec/error.h"

namespace hopqec::decoder {

namespace {

EdgeKey key_of(const std::vector<uint32_t> &dets, uint32_t boundary) {
    return dets.size() == 1 ? EdgeKey{dets[0], boundary} : EdgeKey{dets[0], dets[1]};
}

bool dfs(std::vector<uint32_t> &remaining, uint64_t mask, uint32_t boundary,
         const std::map<EdgeKey, uint64_t> &primitives, std::vector<DecomposedPart> &parts, int budget) {
    if (remaining.empty()) {
        return mask == 0;
    }
    if (budget <= 0) {
        return false;
    }
    const uint32_t a = remaining.front();
    // Pair a with another remaining detector.
    for (size_t k = 1; k < remaining.size(); k++) {
        auto it = primitives.find(EdgeKey{a, remaining[k]});
        if (it == primitives.end()) {
            continue;
        }
        std::vector<uint32_t> rest;
        for (size_t j = 1; j < remaining.size(); j++) {
            if (j != k) {
                rest.push_back(remaining[j]);
            }
        }
        parts.push_back({it->first, it->second});
        if (dfs(rest, mask ^ it->second, boundary, primitives, parts, budget - 1)) {
            return true;
        }
        parts.pop_back();
    }
    // Or send it to the boundary.
    auto it = primitives.find(EdgeKey{a, boundary});
    if (it != primitives.end()) {
        std::vector<uint32_t> rest(remaining.begin() + 1, remaining.end());
        parts.push_back({it->first, it->second});
        if (dfs(rest, mask ^ it->second, boundary, primitives, parts, budget - 1)) {
            return true;
        }
        parts.pop_back();
    }
    return false;
}

bool same_sector(const DetectorErrorModel &dem, const std::vector<uint32_t> &dets) {
    if (dem.detector_sectors.empty() || dets.size() < 2) {
        return true;
    }
    return dem.detector_sectors.at(dets[0]) == dem.detector_sectors.at(dets[1]);
}

double edge_weight(double p) {
    return std::log((1 - p) / p);
}

}  // namespace

std::map<EdgeKey, uint64_t> primitive_edges(const DetectorErrorModel &dem) {
    std::map<EdgeKey, std::pair<double, uint64_t>> best;
    const uint32_t boundary = dem.num_detectors;
    for (const auto &f : dem.faults) {
        if (f.detectors.empty() || f.detectors.size() > 2 || !same_sector(dem, f.detectors)) {
            continue;
        }
        EdgeKey k = key_of(f.detectors, boundary);
        auto it = best.find(k);
        if (it == best.end() || f.p > it->second.first) {
            best[k] = {f.p, f.observables};
        }
    }
    std::map<EdgeKey, uint64_t> out;
    for (const auto &[k, v] : best) {
        out.emplace(k, v.second);
    }
    return out;
}

std::optional<std::vector<DecomposedPart>> decompose(
    const Fault &fault, const DetectorErrorModel &dem, const std::map<EdgeKey, uint64_t> &primitives) {
    const uint32_t boundary = dem.num_detectors;
    if (fault.detectors.empty()) {
        return std::vector<DecomposedPart>{};
    }
    if (fault.detectors.size() <= 2 && same_sector(dem, fault.detectors)) {
        return std::vector<DecomposedPart>{{key_of(fault.detectors, boundary), fault.observables}};
    }
    std::vector<uint32_t> remaining = fault.detectors;
    std::vector<DecomposedPart> parts;
    if (dfs(remaining, fault.observables, boundary, primitives, parts, static_cast<int>(remaining.size()))) {
        return parts;
    }
    return std::nullopt;
}

MatchingGraph MatchingGraph::from_dem(const DetectorErrorModel &dem) {
    MatchingGraph g;
    g.num_detectors_ = dem.num_detectors;
    const uint32_t boundary = dem.num_detectors;
    auto primitives = primitive_edges(dem);

    // Merged probability and the mask carried by the most probable contribution.
    struct Acc {
        double p = 0;
        double best = -1;
        uint64_t mask = 0;
    };
    std::map<EdgeKey, Acc> acc;
    auto contribute = [&](const DecomposedPart &part, double p) {
        Acc &a = acc[part.key];
        a.p = merge_probability(a.p, p);
        if (p > a.best) {
            a.best = p;
            a.mask = part.observables;
        }
    };

    for (const auto &f : dem.faults) {
        if (f.detectors.empty()) {
            continue;  // undetectable; matching cannot act on it
        }
        auto parts = decompose(f, dem, primitives);
        if (!parts) {
            g.warnings_++;
            // Greedy fallback: within each sector pair consecutive detectors (sorted order keeps
            // same-round checks together), odd one out to the boundary.
            std::map<uint32_t, std::vector<uint32_t>> by_sector;
            for (uint32_t d : f.detectors) {
                by_sector[dem.detector_sectors.empty() ? 0 : dem.detector_sectors.at(d)].push_back(d);
            }
            std::vector<DecomposedPart> greedy;
            for (const auto &[sector, d] : by_sector) {
                size_t k = 0;
                for (; k + 1 < d.size(); k += 2) {
                    greedy.push_back({EdgeKey{d[k], d[k + 1]}, 0});
                }
                if (k < d.size()) {
                    greedy.push_back({EdgeKey{d[k], boundary}, 0});
                }
            }
            greedy[0].observables = f.observables;
            parts = std::move(greedy);
        }
        for (const auto &part : *parts) {
            contribute(part, f.p);
        }
    }

    g.adjacency_.assign(dem.num_detectors + 1, {});
    for (const auto &[k, a] : acc) {
        double p = a.p;
        if (!(p > 0)) {
            continue;
        }
        if (p >= 0.5) {
            fail(ErrorCode::Decode, "merged edge probability reached 1/2; weights would not be positive");
        }
        uint32_t idx = static_cast<uint32_t>(g.edges_.size());
        g.edges_.push_back(GraphEdge{k.a, k.b, p, edge_weight(p), a.mask});
        g.adjacency_[k.a].emplace_back(k.b, idx);
        g.adjacency_[k.b].emplace_back(k.a, idx);
    }
    g.rows_.resize(dem.num_detectors + 1);
    return g;
}

const MatchingGraph::Row &MatchingGraph::row(uint32_t node) const {
    if (node > num_detectors_) {
        fail(ErrorCode::InvalidArgument, "node out of range");
    }
    auto &slot = rows_[node];
    if (slot) {
        return *slot;
    }
    const size_t n = adjacency_.size();
    auto r = std::make_shared<Row>();
    r->dist.assign(n, std::numeric_limits<double>::infinity());
    r->mask.assign(n, 0);
    using Item = std::pair<double, uint32_t>;
    std::priority_queue<Item, std::vector<Item>, std::greater<>> heap;
    r->dist[node] = 0;
    heap.emplace(0.0, node);
    while (!heap.empty()) {
        auto [d, u] = heap.top();
        heap.pop();
        if (d > r->dist[u]) {
            continue;
        }
        for (auto [v, e] : adjacency_[u]) {
            double nd = d + edges_[e].weight;
            if (nd < r->dist[v]) {
                r->dist[v] = nd;
                r->mask[v] = r->mask[u] ^ edges_[e].observables;
                heap.emplace(nd, v);
            }
        }
    }
    slot = std::move(r);
    return *slot;
}

}  // namespace hopqec::decoder
