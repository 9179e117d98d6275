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

#ifndef HOPQEC_PAULI_PAULI_STRING_H
#define HOPQEC_PAULI_PAULI_STRING_H

#include <bit>
#include <cstdint>
#include <string>
#include <string_view>

namespace hopqec {

/// An n-qubit Pauli operator up to phase, stored as X and Z bit masks (Y where both bits are set).
///
/// Qubit q corresponds to bit q of both masks. The dense index used by channels packs the masks as
/// `x | (z << n)`, so the product of two Paulis has the XOR of their indices.
struct PauliString {
    static constexpr uint32_t kMaxQubits = 32;

    uint32_t n = 0;
    uint64_t x = 0;
    uint64_t z = 0;

    PauliString() = default;
    PauliString(uint32_t num_qubits, uint64_t x_bits, uint64_t z_bits);

    static PauliString identity(uint32_t num_qubits) {
        return PauliString(num_qubits, 0, 0);
    }
    static PauliString from_index(uint32_t num_qubits, uint64_t index);
    /// Parses a string over {I, X, Y, Z} (also accepts '_' for identity); character k is qubit k.
    static PauliString parse(std::string_view text);

    uint64_t index() const {
        return x | (z << n);
    }
    bool is_identity() const {
        return (x | z) == 0;
    }
    int weight() const {
        return std::popcount(x | z);
    }
    /// Single-qubit component as one of 'I', 'X', 'Y', 'Z'.
    char at(uint32_t q) const;
    bool commutes_with(const PauliString &other) const;
    std::string str() const;

    PauliString operator*(const PauliString &other) const;
    bool operator==(const PauliString &other) const = default;
};

/// Symplectic inner product of two dense Pauli indices over n qubits (1 iff they anticommute).
inline int symplectic_product(uint32_t n, uint64_t a, uint64_t b) {
    uint64_t mask = (n == 64) ? ~uint64_t{0} : ((uint64_t{1} << n) - 1);
    uint64_t ax = a & mask, az = a >> n;
    uint64_t bx = b & mask, bz = b >> n;
    return std::popcount((ax & bz) ^ (az & bx)) & 1;
}

}  // namespace hopqec

#endif
