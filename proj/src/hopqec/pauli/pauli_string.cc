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

#include "hopqec/pauli/pauli_string.h"

#include "hopqec/error.h"

namespace hopqec {

PauliString::PauliString(uint32_t num_qubits, uint64_t x_bits, uint64_t z_bits) : n(num_qubits), x(x_bits), z(z_bits) {
    if (n > kMaxQubits) {
        fail(ErrorCode::InvalidArgument, "PauliString supports at most 32 qubits");
    }
    uint64_t mask = (uint64_t{1} << n) - 1;
    if ((x & ~mask) || (z & ~mask)) {
        fail(ErrorCode::InvalidArgument, "PauliString bits exceed qubit count");
    }
}

PauliString PauliString::from_index(uint32_t num_qubits, uint64_t index) {
    uint64_t mask = (uint64_t{1} << num_qubits) - 1;
    return PauliString(num_qubits, index & mask, (index >> num_qubits) & mask);
}

PauliString PauliString::parse(std::string_view text) {
    if (text.size() > kMaxQubits) {
        fail(ErrorCode::InvalidArgument, "Pauli string too long: " + std::string(text));
    }
    PauliString p;
    p.n = static_cast<uint32_t>(text.size());
    for (size_t q = 0; q < text.size(); q++) {
        uint64_t bit = uint64_t{1} << q;
        switch (text[q]) {
            case 'I':
            case '_':
                break;
            case 'X':
                p.x |= bit;
                break;
            case 'Y':
                p.x |= bit;
                p.z |= bit;
                break;
            case 'Z':
                p.z |= bit;
                break;
            default:
                fail(ErrorCode::InvalidArgument, "bad Pauli character in '" + std::string(text) + "'");
        }
    }
    return p;
}

char PauliString::at(uint32_t q) const {
    bool xb = (x >> q) & 1, zb = (z >> q) & 1;
    return "IXZY"[xb + 2 * zb];
}

bool PauliString::commutes_with(const PauliString &other) const {
    return (std::popcount((x & other.z) ^ (z & other.x)) & 1) == 0;
}

std::string PauliString::str() const {
    std::string out(n, 'I');
    for (uint32_t q = 0; q < n; q++) {
        out[q] = at(q);
    }
    return out;
}

PauliString PauliString::operator*(const PauliString &other) const {
    if (n != other.n) {
        fail(ErrorCode::InvalidArgument, "Pauli product of mismatched sizes");
    }
    return PauliString(n, x ^ other.x, z ^ other.z);
}

}  // namespace hopqec
