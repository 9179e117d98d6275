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

#include "hopqec/pauli/pauli_channel.h"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "hopqec/error.h"

namespace hopqec {

namespace {

void check_size(uint32_t n) {
    if (n > PauliChannel::kMaxQubits) {
        fail(ErrorCode::InvalidArgument, "PauliChannel supports at most 8 qubits");
    }
}

// Swaps the X and Z halves of every index. Turns the symplectic transform into a plain
// Walsh-Hadamard transform: <j,k>_symplectic = popcount(j & swap(k)).
std::vector<double> swap_halves(uint32_t n, std::span<const double> v) {
    std::vector<double> out(v.size());
    uint64_t mask = (uint64_t{1} << n) - 1;
    for (uint64_t k = 0; k < v.size(); k++) {
        uint64_t swapped = (k >> n) | ((k & mask) << n);
        out[swapped] = v[k];
    }
    return out;
}

}  // namespace

void walsh_hadamard(std::span<double> data) {
    for (size_t h = 1; h < data.size(); h <<= 1) {
        for (size_t i = 0; i < data.size(); i += h << 1) {
            for (size_t j = i; j < i + h; j++) {
                double a = data[j], b = data[j + h];
                data[j] = a + b;
                data[j + h] = a - b;
            }
        }
    }
}

PauliChannel::PauliChannel(uint32_t n) : n_(n) {
    check_size(n);
    weights_.assign(size_t{1} << (2 * n), 0.0);
    weights_[0] = 1.0;
}

PauliChannel PauliChannel::from_weights(uint32_t n, std::vector<double> weights) {
    check_size(n);
    if (weights.size() != (size_t{1} << (2 * n))) {
        fail(ErrorCode::InvalidArgument, "PauliChannel weight vector has wrong size");
    }
    for (auto &w : weights) {
        if (!std::isfinite(w) || w < -kClampTolerance) {
            fail(ErrorCode::InvalidArgument, "PauliChannel weight is negative or not finite");
        }
        w = std::max(w, 0.0);
    }
    double total = std::accumulate(weights.begin(), weights.end(), 0.0);
    if (std::abs(total - 1.0) > kNormTolerance) {
        fail(ErrorCode::InvalidArgument, "PauliChannel weights do not sum to 1");
    }
    PauliChannel c;
    c.n_ = n;
    c.weights_ = std::move(weights);
    return c;
}

double PauliChannel::weight(const PauliString &p) const {
    if (p.n != n_) {
        fail(ErrorCode::InvalidArgument, "Pauli size does not match channel");
    }
    return weights_[p.index()];
}

double PauliChannel::total() const {
    return std::accumulate(weights_.begin(), weights_.end(), 0.0);
}

PauliChannel PauliChannel::then(const PauliChannel &after) const {
    if (after.n_ != n_) {
        fail(ErrorCode::InvalidArgument, "composing channels of different sizes");
    }
    std::vector<double> a(weights_), b(after.weights_);
    walsh_hadamard(a);
    walsh_hadamard(b);
    for (size_t i = 0; i < a.size(); i++) {
        a[i] *= b[i];
    }
    walsh_hadamard(a);
    double scale = 1.0 / static_cast<double>(a.size());
    for (auto &v : a) {
        v *= scale;
        if (v < 0 && v > -1e-15) {
            v = 0;
        }
    }
    PauliChannel c;
    c.n_ = n_;
    c.weights_ = std::move(a);
    return c;
}

std::vector<double> PauliChannel::pauli_fidelities() const {
    std::vector<double> f(weights_);
    walsh_hadamard(f);
    return swap_halves(n_, f);
}

std::vector<double> weights_from_pauli_fidelities(uint32_t n, std::span<const double> fidelities) {
    std::vector<double> p = swap_halves(n, fidelities);
    walsh_hadamard(p);
    double scale = 1.0 / static_cast<double>(p.size());
    for (auto &v : p) {
        v *= scale;
    }
    return p;
}

std::vector<std::pair<PauliString, double>> PauliChannel::sorted_terms() const {
    std::vector<std::pair<PauliString, double>> out;
    for (uint64_t k = 1; k < weights_.size(); k++) {
        if (weights_[k] > 0) {
            out.emplace_back(PauliString::from_index(n_, k), weights_[k]);
        }
    }
    std::stable_sort(out.begin(), out.end(), [](const auto &a, const auto &b) { return a.second > b.second; });
    return out;
}

}  // namespace hopqec
