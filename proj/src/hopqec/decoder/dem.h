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

#ifndef HOPQEC_DECODER_DEM_H
#define HOPQEC_DECODER_DEM_H

#include <cstdint>
#include <iosfwd>
#include <vector>

#include "hopqec/circuit/circuit.h"

namespace hopqec::decoder {

/// An independent error mechanism: with probability p it flips `detectors` (sorted) and the
/// observables set in `observables`.
struct Fault {
    double p = 0;
    std::vector<uint32_t> detectors;
    uint64_t observables = 0;
};

struct DetectorErrorModel {
    uint32_t num_detectors = 0;
    uint32_t num_observables = 0;
    /// Sector of each detector (see Instruction::index); empty means one common sector.
    std::vector<uint32_t> detector_sectors;
    /// Sorted by (detectors, observables); no two entries share both.
    std::vector<Fault> faults;
};

/// Probability that exactly one of two independent events with probabilities a and b occurs.
inline double merge_probability(double a, double b) {
    return a * (1 - b) + b * (1 - a);
}

/// One elementary fault of the circuit before merging: where it happens and what it does.
struct ElementaryFault {
    uint32_t layer = 0;
    uint32_t op = 0;
    double p = 0;
    std::vector<std::pair<uint32_t, uint8_t>> paulis;  ///< 1 = X, 2 = Z, 3 = Y
    int64_t record = -1;                               ///< measurement flip
};

/// Every Pauli outcome of every noise instruction and every measurement flip with non-zero
/// probability. Depolarizing outcomes are listed separately with their individual probabilities.
std::vector<ElementaryFault> enumerate_faults(const circuit::Circuit &c);

/// Symptoms of each elementary fault, propagated through the noiseless remainder of the circuit.
std::vector<Fault> fault_symptoms(const circuit::Circuit &c, const std::vector<ElementaryFault> &faults);

/// Enumerates, propagates and merges faults with identical symptoms. Faults with no symptom at all
/// are dropped.
DetectorErrorModel extract_dem(const circuit::Circuit &c);

/// Text form: `DETECTORS n`, `OBSERVABLES k`, `SECTOR s D4 D5 ...` for non-zero sectors, then
/// `ERROR(p) D3 D7 L0` lines.
void write_dem(std::ostream &out, const DetectorErrorModel &dem);

}  // namespace hopqec::decoder

#endif
