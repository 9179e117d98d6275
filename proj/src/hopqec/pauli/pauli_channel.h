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

#ifndef HOPQEC_PAULI_PAULI_CHANNEL_H
#define HOPQEC_PAULI_PAULI_CHANNEL_H

#include <span>
#include <utility>
#include <vector>

#include "hopqec/pauli/pauli_string.h"

namespace hopqec {

/// Probability distribution over the 4^n Pauli strings of an n-qubit register, stored densely by
/// Pauli index. The identity weight is the process fidelity of the channel.
class PauliChannel {
   public:
    static constexpr uint32_t kMaxQubits = 8;
    /// Weights within this distance below zero are clamped to zero.
    static constexpr double kClampTolerance = 1e-12;
    static constexpr double kNormTolerance = 1e-9;

    PauliChannel() = default;
    /// The identity channel on n qubits.
    explicit PauliChannel(uint32_t n);

    /// Validates and takes ownership of dense weights (size 4^n): clamps tiny negatives, rejects
    /// anything below -kClampTolerance or a total off by more than kNormTolerance.
    static PauliChannel from_weights(uint32_t n, std::vector<double> weights);

    uint32_t num_qubits() const {
        return n_;
    }
    size_t size() const {
        return weights_.size();
    }
    std::span<const double> weights() const {
        return weights_;
    }
    double weight(const PauliString &p) const;
    double weight(uint64_t index) const {
        return weights_[index];
    }
    double fidelity() const {
        return weights_.empty() ? 1.0 : weights_[0];
    }
    double total() const;

    /// Channel obtained by applying this channel and then `after` (Pauli products up to phase).
    PauliChannel then(const PauliChannel &after) const;

    /// f_k = sum_j p_j (-1)^{<j,k>}: eigenvalues of the channel on each Pauli.
    std::vector<double> pauli_fidelities() const;

    /// Non-identity terms with positive weight, sorted by descending weight (ties by index).
    std::vector<std::pair<PauliString, double>> sorted_terms() const;

   private:
    uint32_t n_ = 0;
    std::vector<double> weights_;
};

/// In-place unnormalized Walsh-Hadamard transform over the index bits.
void walsh_hadamard(std::span<double> data);

/// Inverse of PauliChannel::pauli_fidelities: p_j = 4^{-n} sum_k (-1)^{<j,k>} f_k.
std::vector<double> weights_from_pauli_fidelities(uint32_t n, std::span<const double> fidelities);

}  // namespace hopqec

#endif
