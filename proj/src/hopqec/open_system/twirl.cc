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

#include "hopqec/open_system/twirl.h"

#include <bit>
#include <cmath>
#include <sstream>

#include "hopqec/error.h"

namespace hopqec::open_system {

std::vector<double> residual_pauli_fidelities(const Superoperator &v, const Eigen::MatrixXcd &u_target) {
    int d = v.dim;
    if (u_target.rows() != d || u_target.cols() != d || v.matrix.rows() != d * d) {
        fail(ErrorCode::InvalidArgument, "propagator and target unitary dimensions differ");
    }
    int n = std::countr_zero(static_cast<unsigned>(d));
    if ((1 << n) != d) {
        fail(ErrorCode::InvalidArgument, "dimension is not a power of two");
    }
    // vec(U^dag rho U) = (U^T (x) U^dag) vec(rho).
    Superoperator undo = Superoperator::conjugation(u_target.adjoint());
    Eigen::MatrixXcd lambda = v.matrix * undo.matrix;

    static const std::complex<double> ipow[4] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};
    uint64_t num = uint64_t{1} << (2 * n);
    uint64_t mask = static_cast<uint64_t>(d) - 1;
    std::vector<double> f(num);
    for (uint64_t k = 0; k < num; k++) {
        uint64_t x = k & mask, z = k >> n;
        std::complex<double> phase = ipow[std::popcount(x & z) & 3];
        auto entry = [&](uint64_t b) {  // P[b ^ x, b]
            return (std::popcount(z & b) & 1) ? -phase : phase;
        };
        // Tr[P L(P)] = sum_{r, c} P[r, c] L(P)[c, r] with L(P)[c, r] = sum_b Lambda[c + d r, (b^x) + d b] P[b^x, b].
        std::complex<double> acc = 0;
        for (uint64_t c = 0; c < static_cast<uint64_t>(d); c++) {
            uint64_t r = c ^ x;  // P[r, c] nonzero
            std::complex<double> inner = 0;
            for (uint64_t b = 0; b < static_cast<uint64_t>(d); b++) {
                inner += lambda(c + d * r, (b ^ x) + d * b) * entry(b);
            }
            acc += entry(c) * inner;
        }
        f[k] = acc.real() / d;
    }
    return f;
}

PauliChannel twirl_channel(const Superoperator &v, const Eigen::MatrixXcd &u_target) {
    auto f = residual_pauli_fidelities(v, u_target);
    uint32_t n = static_cast<uint32_t>(std::countr_zero(static_cast<unsigned>(v.dim)));
    auto w = weights_from_pauli_fidelities(n, f);
    double total = 0;
    for (size_t j = 0; j < w.size(); j++) {
        if (w[j] < -kTwirlNegativeTolerance) {
            std::ostringstream msg;
            msg << "twirled weight of " << PauliString::from_index(n, j).str() << " is " << w[j]
                << "; propagator too inaccurate";
            fail(ErrorCode::ChannelExtraction, msg.str());
        }
        w[j] = std::max(w[j], 0.0);
        total += w[j];
    }
    for (auto &x : w) {
        x /= total;
    }
    return PauliChannel::from_weights(n, std::move(w));
}

}  // namespace hopqec::open_system
