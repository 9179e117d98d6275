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

#include "hopqec/open_system/lindblad.h"

#include <cmath>
#include <numbers>
#include <unsupported/Eigen/KroneckerProduct>
#include <unsupported/Eigen/MatrixFunctions>

#include "hopqec/error.h"

namespace hopqec::open_system {

namespace {

using Mat = Eigen::MatrixXcd;

double z_sign(int b, int q) {
    return ((b >> q) & 1) ? -1.0 : 1.0;
}

// Adds D[a] in column-stacking form: conj(a) (x) a - (I (x) a^dag a + (a^dag a)^T (x) I) / 2.
void add_dissipator(Mat &l, const Mat &a) {
    int d = static_cast<int>(a.rows());
    Mat id = Mat::Identity(d, d);
    Mat ada = a.adjoint() * a;
    l += Eigen::kroneckerProduct(a.conjugate(), a);
    l -= 0.5 * Eigen::kroneckerProduct(id, ada);
    l -= 0.5 * Eigen::kroneckerProduct(ada.transpose(), id);
}

}  // namespace

double NoiseParams::tau() const {
    if (!(zeta0 > 0)) {
        fail(ErrorCode::InvalidArgument, "zeta0 must be positive");
    }
    return std::numbers::pi / zeta0;
}

NoiseParams NoiseParams::from_p(double p, double zeta0_over_2pi_mhz) {
    if (!(p >= 0) || !(zeta0_over_2pi_mhz > 0)) {
        fail(ErrorCode::InvalidArgument, "noise strength must be >= 0 and zeta0 positive");
    }
    NoiseParams n;
    n.zeta0 = 2 * std::numbers::pi * zeta0_over_2pi_mhz * 1e-3;
    double gamma2 = p / n.tau();
    // gamma2 = gamma1 / 2 + gamma_phi with gamma_phi = gamma1 / 2.
    n.gamma1 = gamma2;
    n.gamma_phi = gamma2 / 2;
    return n;
}

Eigen::MatrixXcd Superoperator::apply(const Eigen::MatrixXcd &rho) const {
    if (rho.rows() != dim || rho.cols() != dim) {
        fail(ErrorCode::InvalidArgument, "operator dimension does not match the superoperator");
    }
    Eigen::VectorXcd v = Eigen::Map<const Eigen::VectorXcd>(rho.data(), rho.size());
    Eigen::VectorXcd out = matrix * v;
    return Eigen::Map<Eigen::MatrixXcd>(out.data(), dim, dim);
}

Superoperator Superoperator::conjugation(const Eigen::MatrixXcd &u) {
    return {static_cast<int>(u.rows()), Eigen::kroneckerProduct(u.conjugate(), u).eval()};
}

Eigen::MatrixXcd hop_hamiltonian(int n_data, double zeta0, const std::vector<ZZTerm> &extra) {
    if (n_data < 1 || n_data > 6) {
        fail(ErrorCode::InvalidArgument, "HOP Hamiltonian supports 1 to 6 data qubits");
    }
    int n = n_data + 1;
    int d = 1 << n;
    Mat h = Mat::Zero(d, d);
    for (int b = 0; b < d; b++) {
        double e = 0;
        for (int k = 1; k <= n_data; k++) {
            e -= zeta0 / 4 * z_sign(b, 0) * z_sign(b, k);
        }
        for (const auto &t : extra) {
            if (t.j < 0 || t.k < 0 || t.j >= n || t.k >= n || t.j == t.k) {
                fail(ErrorCode::InvalidArgument, "ZZ term references an invalid qubit pair");
            }
            e -= t.zeta / 4 * z_sign(b, t.j) * z_sign(b, t.k);
        }
        h(b, b) = e;
    }
    return h;
}

Superoperator liouvillian(const Eigen::MatrixXcd &h, const NoiseParams &noise, int num_qubits, uint64_t noisy_qubits) {
    if (num_qubits < 1 || num_qubits > 6) {
        fail(ErrorCode::InvalidArgument, "Liouvillian supports 1 to 6 qubits");
    }
    int d = 1 << num_qubits;
    if (h.rows() != d || h.cols() != d) {
        fail(ErrorCode::InvalidArgument, "Hamiltonian dimension does not match the qubit count");
    }
    if (!(noise.gamma1 >= 0) || !(noise.gamma_phi >= 0)) {
        fail(ErrorCode::InvalidArgument, "decay rates must be non-negative");
    }
    const std::complex<double> i(0, 1);
    Mat id = Mat::Identity(d, d);
    Mat l = -i * (Mat(Eigen::kroneckerProduct(id, h)) - Mat(Eigen::kroneckerProduct(h.transpose(), id)));
    for (int q = 0; q < num_qubits; q++) {
        if (!((noisy_qubits >> q) & 1)) {
            continue;
        }
        if (noise.gamma1 > 0) {
            Mat lower = Mat::Zero(d, d);
            for (int b = 0; b < d; b++) {
                if ((b >> q) & 1) {
                    lower(b ^ (1 << q), b) = std::sqrt(noise.gamma1);
                }
            }
            add_dissipator(l, lower);
        }
        if (noise.gamma_phi > 0) {
            Mat z = Mat::Zero(d, d);
            for (int b = 0; b < d; b++) {
                z(b, b) = std::sqrt(noise.gamma_phi) * z_sign(b, q);
            }
            add_dissipator(l, z);
        }
    }
    return {d, std::move(l)};
}

Superoperator propagator(const Superoperator &l, double t) {
    if (!(t >= 0)) {
        fail(ErrorCode::InvalidArgument, "propagation time must be non-negative");
    }
    Mat scaled = l.matrix * t;
    Mat v = scaled.exp();
    if (!v.allFinite()) {
        fail(ErrorCode::Numerical, "matrix exponential produced non-finite entries");
    }
    Superoperator out{l.dim, std::move(v)};
    // Trace preservation: Tr(V(E_ij)) = delta_ij, i.e. the row sums over diagonal output entries.
    int d = l.dim;
    double worst = 0;
    for (int col = 0; col < d * d; col++) {
        std::complex<double> tr = 0;
        for (int k = 0; k < d; k++) {
            tr += out.matrix(k + d * k, col);
        }
        double expect = (col % d == col / d) ? 1.0 : 0.0;
        worst = std::max(worst, std::abs(tr - expect));
    }
    if (worst > 1e-9) {
        fail(ErrorCode::Numerical, "propagator violates trace preservation by " + std::to_string(worst));
    }
    return out;
}

}  // namespace hopqec::open_system
