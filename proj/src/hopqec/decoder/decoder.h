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

#ifndef HOPQEC_DECODER_DECODER_H
#define HOPQEC_DECODER_DECODER_H

#include <cstdint>
#include <vector>

#include "hopqec/circuit/circuit.h"
#include "hopqec/decoder/dem.h"
#include "hopqec/decoder/matching_graph.h"

namespace hopqec::decoder {

/// Minimum-weight perfect matching decoder over one joint matching graph.
///
/// Fired detectors are joined in a complete graph whose pair cost is the cheaper of the direct
/// shortest path and sending both to the boundary; an odd count adds the boundary as one more
/// vertex. The prediction is the XOR of observable masks along the chosen paths.
class Decoder {
  public:
    explicit Decoder(const DetectorErrorModel &dem);
    explicit Decoder(MatchingGraph graph);

    /// `fired` lists detector indices (any order, no repeats).
    uint64_t decode(const std::vector<uint32_t> &fired);

    /// Total path weight of the last decoded matching.
    double last_weight() const {
        return last_weight_;
    }
    const MatchingGraph &graph() const {
        return graph_;
    }

  private:
    MatchingGraph graph_;
    double last_weight_ = 0;
};

struct FailureStats {
    uint64_t shots = 0;
    uint64_t failures = 0;
    double p_l = 0;
    size_t decomposition_warnings = 0;
};

/// Samples the circuit and decodes every shot; a failure is any predicted observable differing
/// from the sampled flip. Stops after `max_shots` shots, or earlier once `target_failures`
/// failures are seen (0 disables the early stop; the check happens at batch boundaries).
FailureStats logical_failure_rate(const circuit::Circuit &c, uint64_t max_shots, uint64_t seed,
                                  uint64_t target_failures = 0);

}  // namespace hopqec::decoder

#endif
