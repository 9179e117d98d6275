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

#ifndef HOPQEC_SIM_FRAME_SIM_H
#define HOPQEC_SIM_FRAME_SIM_H

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

#include "hopqec/circuit/circuit.h"

namespace hopqec::sim {

/// Shots simulated together; each qubit frame occupies kBatchWords 64-bit lanes.
constexpr size_t kBatchShots = 1024;
constexpr size_t kBatchWords = kBatchShots / 64;

/// Row-major bit matrix with 64-bit aligned rows.
struct BitTable {
    size_t rows = 0;
    size_t cols = 0;
    size_t row_words = 0;
    std::vector<uint64_t> words;

    BitTable() = default;
    BitTable(size_t num_rows, size_t num_cols);

    bool get(size_t r, size_t c) const {
        return (words[r * row_words + c / 64] >> (c % 64)) & 1;
    }
    void flip(size_t r, size_t c) {
        words[r * row_words + c / 64] ^= uint64_t{1} << (c % 64);
    }
    const uint64_t *row(size_t r) const {
        return words.data() + r * row_words;
    }
    bool row_is_zero(size_t r) const;
    /// Column indices of the set bits in row r.
    std::vector<uint32_t> row_bits(size_t r) const;
    /// Appends the rows of another table with the same column count.
    void append(const BitTable &other);
};

/// Detection events and observable flips relative to the noiseless reference outcome.
struct SampleResult {
    uint64_t shots = 0;
    uint64_t seed = 0;
    BitTable detectors;
    BitTable observables;
};

/// A deterministic fault placed right after instruction `op` of layer `layer`: a Pauli on some
/// qubits (1 = X, 2 = Z, 3 = Y) and/or a flip of measurement record `record`.
struct FrameInjection {
    uint32_t layer = 0;
    uint32_t op = 0;
    std::vector<std::pair<uint32_t, uint8_t>> paulis;
    int64_t record = -1;
};

/// Pauli-frame sampler bound to one circuit.
///
/// Noise draws use a generator reseeded for every (batch, layer) pair from the user seed, so a
/// batch's output does not depend on which other batches run or in which order.
class FrameSimulator {
  public:
    explicit FrameSimulator(const circuit::Circuit &c);

    /// Simulates `shots` (<= kBatchShots) shots of batch `batch_index`. With `gauge` set, noise is
    /// suppressed and every frame component that a reset or measurement makes unobservable is
    /// randomized instead, so any detector that is not deterministic shows up as a random bit.
    void run_batch(uint64_t seed, uint64_t batch_index, size_t shots, bool gauge, BitTable &detectors,
                   BitTable &observables);

    /// Noiseless propagation in which lane s carries only `lanes[s]` (at most kBatchShots lanes).
    void run_injected(const std::vector<FrameInjection> &lanes, BitTable &detectors, BitTable &observables);

  private:
    enum class Mode { Noisy, Gauge, Injected };
    void run(Mode mode, uint64_t seed, uint64_t batch_index, size_t shots, const std::vector<FrameInjection> *lanes,
             BitTable &detectors, BitTable &observables);

    const circuit::Circuit &circuit_;
    std::vector<uint64_t> x_, z_, records_;
    size_t num_det_, num_obs_;
};

/// Throws Error(Circuit) when a gauge-randomized noiseless run produces a non-zero detector or
/// observable, naming the first offending one.
void validate_determinism(const circuit::Circuit &c, uint64_t seed = 0x5eed, size_t shots = kBatchShots);

struct SampleOptions {
    bool validate = true;
};

using BatchSink = std::function<void(const BitTable &detectors, const BitTable &observables)>;

/// Streams batches of at most kBatchShots shots to `sink` in batch order.
void sample_batches(const circuit::Circuit &c, uint64_t shots, uint64_t seed, const BatchSink &sink,
                    const SampleOptions &options = {});

SampleResult sample(const circuit::Circuit &c, uint64_t shots, uint64_t seed, const SampleOptions &options = {});

/// Binary sample file: 8-byte magic "HOPQSMP1", little-endian u64 shots, u64 seed, u32 detector
/// count, u32 observable count, then one row per shot of ceil((D + O) / 8) bytes holding the
/// detector bits followed by the observable bits, least significant bit first.
void write_samples(std::ostream &out, const SampleResult &r);
SampleResult read_samples(std::istream &in);
/// One line per shot: the row bytes as lowercase hex.
void write_samples_hex(std::ostream &out, const SampleResult &r);

}  // namespace hopqec::sim

#endif
