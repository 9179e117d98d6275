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

#include "hopqec/open_system/hop_gate.h"

#include <bit>
#include <complex>
#include <numbers>

#include "hopqec/error.h"

namespace hopqec::open_system {

namespace {

void check_arity(int n_data) {
    if (n_data != 2 && n_data != 4) {
        fail(ErrorCode::InvalidArgument, "HOP gates act on 2 or 4 data qubits");
    }
}

}  // namespace

Eigen::MatrixXcd hop_unitary(int n_data) {
    check_arity(n_data);
    int d = 1 << (n_data + 1);
    Eigen::MatrixXcd u = Eigen::MatrixXcd::Zero(d, d);
    for (int b = 0; b < d; b++) {
        int sum = 0;
        for (int k = 1; k <= n_data; k++) {
            sum += (((b >> k) ^ b) & 1) ? -1 : 1;
        }
        u(b, b) = std::polar(1.0, std::numbers::pi / 4 * sum);
    }
    return u;
}

Eigen::MatrixXcd cz_ladder_circuit(int n_data) {
    check_arity(n_data);
    int d = 1 << (n_data + 1);
    const std::complex<double> minus_i(0, -1);
    Eigen::MatrixXcd u = Eigen::MatrixXcd::Identity(d, d);
    for (int k = 1; k <= n_data; k++) {
        Eigen::MatrixXcd cz = Eigen::MatrixXcd::Identity(d, d);
        for (int b = 0; b < d; b++) {
            if ((b & 1) && ((b >> k) & 1)) {
                cz(b, b) = -1;
            }
        }
        u = cz * u;
    }
    Eigen::MatrixXcd phase = Eigen::MatrixXcd::Identity(d, d);
    for (int b = 0; b < d; b++) {
        phase(b, b) = std::pow(minus_i, std::popcount(static_cast<unsigned>(b >> 1)));
        if (n_data == 2 && (b & 1)) {
            phase(b, b) = -phase(b, b);
        }
    }
    return phase * u;
}

Eigen::MatrixXcd pauli_matrix(int num_qubits, uint64_t index) {
    uint64_t mask = (uint64_t{1} << num_qubits) - 1;
    uint64_t x = index & mask, z = (index >> num_qubits) & mask;
    int d = 1 << num_qubits;
    static const std::complex<double> ipow[4] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};
    std::complex<double> phase = ipow[std::popcount(x & z) & 3];
    Eigen::MatrixXcd p = Eigen::MatrixXcd::Zero(d, d);
    for (uint64_t b = 0; b < static_cast<uint64_t>(d); b++) {
        p(b ^ x, b) = (std::popcount(z & b) & 1) ? -phase : phase;
    }
    return p;
}

double distance_up_to_phase(const Eigen::MatrixXcd &a, const Eigen::MatrixXcd &b) {
    if (a.rows() != b.rows() || a.cols() != b.cols()) {
        fail(ErrorCode::InvalidArgument, "matrix shapes differ");
    }
    std::complex<double> overlap = (b.adjoint() * a).trace();
    std::complex<double> phase = std::abs(overlap) > 0 ? overlap / std::abs(overlap) : 1.0;
    return (a - phase * b).cwiseAbs().maxCoeff();
}

}  // namespace hopqec::open_system
