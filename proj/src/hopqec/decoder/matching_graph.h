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

#ifndef HOPQEC_DECODER_MATCHING_GRAPH_H
#define HOPQEC_DECODER_MATCHING_GRAPH_H

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <utility>
#include <vector>

#include "hopqec/decoder/dem.h"

namespace hopqec::decoder {

/// Graph-like symptom: one or two detectors (a single detector pairs with the boundary).
struct EdgeKey {
    uint32_t a = 0;
    uint32_t b = 0;  ///< equals the boundary index for boundary edges
    bool operator<(const EdgeKey &o) const {
        return std::tie(a, b) < std::tie(o.a, o.b);
    }
    bool operator==(const EdgeKey &o) const = default;
};

struct DecomposedPart {
    EdgeKey key;
    uint64_t observables = 0;
};

/// Observable mask of every graph-like fault of the model whose detectors share a sector, keyed by
/// its edge. When several masks share an edge the most probable one wins.
std::map<EdgeKey, uint64_t> primitive_edges(const DetectorErrorModel &dem);

/// Splits a fault's detector set into primitive edges whose masks XOR to the fault's mask, by
/// depth-first search. Graph-like faults inside one sector map to themselves; a two-detector fault
/// spanning two sectors (a Y error seen by both check types) is split like any larger fault.
/// Returns nothing when no exact split exists.
std::optional<std::vector<DecomposedPart>> decompose(
    const Fault &fault, const DetectorErrorModel &dem, const std::map<EdgeKey, uint64_t> &primitives);

struct GraphEdge {
    uint32_t u = 0;
    uint32_t v = 0;
    double p = 0;
    double weight = 0;  ///< ln((1 - p) / p)
    uint64_t observables = 0;
};

/// Detectors plus one boundary node (index num_detectors), with merged edge probabilities.
class MatchingGraph {
  public:
    /// Decomposes every fault; undecomposable ones are split greedily (nearest detectors paired,
    /// leftover to the boundary, mask on the first part) and counted in decomposition_warnings().
    static MatchingGraph from_dem(const DetectorErrorModel &dem);

    uint32_t num_detectors() const {
        return num_detectors_;
    }
    uint32_t boundary() const {
        return num_detectors_;
    }
    const std::vector<GraphEdge> &edges() const {
        return edges_;
    }
    size_t decomposition_warnings() const {
        return warnings_;
    }

    /// Shortest-path distances and accumulated observable masks from `node` to every node;
    /// computed by Dijkstra on first use and cached.
    struct Row {
        std::vector<double> dist;
        std::vector<uint64_t> mask;
    };
    const Row &row(uint32_t node) const;

  private:
    uint32_t num_detectors_ = 0;
    std::vector<GraphEdge> edges_;
    std::vector<std::vector<std::pair<uint32_t, uint32_t>>> adjacency_;  // (neighbor, edge index)
    size_t warnings_ = 0;
    mutable std::vector<std::shared_ptr<const Row>> rows_;
};

}  // namespace hopqec::decoder

#endif
