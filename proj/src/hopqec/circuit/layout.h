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

#ifndef HOPQEC_CIRCUIT_LAYOUT_H
#define HOPQEC_CIRCUIT_LAYOUT_H

#include <array>
#include <cstdint>
#include <vector>

namespace hopqec::circuit {

enum class CheckBasis : uint8_t { Z, X };
enum class CheckGroup : uint8_t { A, B, C, D };

/// One stabilizer check of the rotated surface code.
///
/// Plaquettes sit at (2a, 2b) on the doubled grid and data qubit (i, j) at (2i + 1, 2j + 1), with
/// j growing southward. `corners` lists the data qubit at NW, NE, SW, SE (or -1 when absent).
struct Check {
    CheckBasis basis = CheckBasis::Z;
    CheckGroup group = CheckGroup::A;
    int a = 0;
    int b = 0;
    uint32_t ancilla = 0;
    std::array<int32_t, 4> corners{-1, -1, -1, -1};

    int weight() const;
    /// Present data qubits in NW, NE, SW, SE order.
    std::vector<uint32_t> data() const;
};

enum Corner { kNW = 0, kNE = 1, kSW = 2, kSE = 3 };

/// Rotated surface code patch of odd distance d.
///
/// Data qubit (i, j) has index j * d + i; ancillas follow, Z checks first. Top and bottom boundaries
/// carry weight-2 Z checks and left and right boundaries carry weight-2 X checks, so the logical Z
/// is a column of Z and the logical X is a row of X.
/// Groups: A and B split the Z checks by the parity of a, C and D split the X checks the same way.
struct Layout {
    int distance = 0;
    uint32_t data_count = 0;
    std::vector<Check> checks;
    /// False for cropped layouts, which have no logical operators.
    bool full_patch = true;

    static Layout build(int d);

    /// Cropped layout keeping only the listed checks and their data qubits, re-indexed compactly
    /// (data first in original order, then the kept ancillas in the given order).
    Layout subset(const std::vector<size_t> &check_ids) const;

    uint32_t num_data() const {
        return data_count;
    }
    uint32_t num_qubits() const {
        return num_data() + static_cast<uint32_t>(checks.size());
    }
    uint32_t data_index(int i, int j) const {
        return static_cast<uint32_t>(j * distance + i);
    }
    std::vector<const Check *> group(CheckGroup g) const;
    std::vector<const Check *> checks_of(CheckBasis basis) const;

    /// Logical Z support (column i = 0) and logical X support (row j = 0).
    std::vector<uint32_t> logical_z() const;
    std::vector<uint32_t> logical_x() const;
};

}  // namespace hopqec::circuit

#endif
