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

#ifndef HOPQEC_DECODER_BLOSSOM_H
#define HOPQEC_DECODER_BLOSSOM_H

#include <cstdint>
#include <vector>

namespace hopqec::decoder {

struct WeightedEdge {
    int u = 0;
    int v = 0;
    int64_t weight = 0;
};

/// Maximum-weight matching on a general graph by Edmonds' blossom algorithm with dual variables
/// (O(n^3)). With `max_cardinality` the result maximizes weight among maximum-cardinality matchings.
/// Integer weights keep every dual update exact. Returns the mate of each vertex or -1.
std::vector<int> max_weight_matching(int num_vertices, const std::vector<WeightedEdge> &edges, bool max_cardinality);

/// Minimum-weight perfect matching of a complete graph on an even number of vertices given by the
/// symmetric cost matrix (entries >= 0).
std::vector<int> min_weight_perfect_matching(const std::vector<std::vector<int64_t>> &cost);

}  // namespace hopqec::decoder

#endif
