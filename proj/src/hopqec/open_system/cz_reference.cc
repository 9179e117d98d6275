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

#include "hopqec/open_system/cz_reference.h"

#include <cmath>

#include "hopqec/error.h"

namespace hopqec::open_system {

uint64_t conjugate_by_cz(uint32_t n, uint64_t index, uint32_t a, uint32_t b) {
    uint64_t x = index & ((uint64_t{1} << n) - 1);
    uint64_t z = index >> n;
    z ^= ((x >> a) & 1) << b;
    z ^= ((x >> b) & 1) << a;
    return x | (z << n);
}

PauliChannel two_qubit_depolarizing(uint32_t n, uint32_t a, uint32_t b, double lambda) {
    if (!(lambda >= 0 && lambda <= 1)) {
        fail(ErrorCode::InvalidArgument, "depolarizing strength must lie in [0, 1]");
    }
    if (a == b || a >= n || b >= n) {
        fail(ErrorCode::InvalidArgument, "depolarizing channel needs two distinct qubits");
    }
    std::vector<double> w(uint64_t{1} << (2 * n), 0.0);
    for (uint64_t pa = 0; pa < 4; pa++) {
        for (uint64_t pb = 0; pb < 4; pb++) {
            uint64_t x = ((pa & 1) << a) | ((pb & 1) << b);
            uint64_t z = ((pa >> 1) << a) | ((pb >> 1) << b);
            w[x | (z << n)] = (pa | pb) ? lambda / 16 : 1 - 15 * lambda / 16;
        }
    }
    return PauliChannel::from_weights(n, std::move(w));
}

PauliChannel cz_reference_channel(double lambda, int n_data) {
    if (n_data != 2 && n_data != 4) {
        fail(ErrorCode::InvalidArgument, "the CZ reference uses 2 or 4 data qubits");
    }
    if (!(lambda >= 0 && lambda <= 1)) {
        fail(ErrorCode::InvalidArgument, "lambda must lie in [0, 1]");
    }
    uint32_t n = static_cast<uint32_t>(n_data + 1);
    PauliChannel acc(n);
    for (uint32_t k = 1; k < n; k++) {
        std::vector<double> moved(acc.size(), 0.0);
        for (uint64_t i = 0; i < acc.size(); i++) {
            moved[conjugate_by_cz(n, i, 0, k)] += acc.weight(i);
        }
        acc = PauliChannel::from_weights(n, std::move(moved)).then(two_qubit_depolarizing(n, 0, k, lambda));
    }
    return acc;
}

double match_lambda_to_fidelity(double fidelity, int n_data) {
    if (!(fidelity <= 1 + 1e-12 && fidelity >= 0)) {
        fail(ErrorCode::Matching, "fidelity outside [0, 1]");
    }
    auto gap = [&](double lambda) { return cz_reference_channel(lambda, n_data).fidelity() - fidelity; };
    double lo = 0, hi = 0.5;
    double glo = gap(lo), ghi = gap(hi);
    if (std::abs(glo) < 1e-8) {
        return 0;
    }
    if (glo < 0 || ghi > 0) {
        fail(ErrorCode::Matching, "no lambda in [0, 0.5] reproduces fidelity " + std::to_string(fidelity));
    }
    while (hi - lo > 1e-12) {
        double mid = 0.5 * (lo + hi);
        (gap(mid) > 0 ? lo : hi) = mid;
    }
    double lambda = 0.5 * (lo + hi);
    if (std::abs(gap(lambda)) >= 1e-8) {
        fail(ErrorCode::Matching, "lambda bisection did not reach the fidelity tolerance");
    }
    return lambda;
}

}  // namespace hopqec::open_system
