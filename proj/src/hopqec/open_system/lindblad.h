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

#ifndef HOPQEC_OPEN_SYSTEM_LINDBLAD_H
#define HOPQEC_OPEN_SYSTEM_LINDBLAD_H

#include <Eigen/Dense>
#include <cstdint>
#include <vector>

namespace hopqec::open_system {

/// Markovian noise acting during one gate. Times are in ns, rates in 1/ns, zeta0 in rad/ns.
struct NoiseParams {
    double gamma1 = 0;
    double gamma_phi = 0;
    double zeta0 = 0;

    double gamma2() const {
        return gamma1 / 2 + gamma_phi;
    }
    /// Gate time pi / zeta0.
    double tau() const;
    /// Dimensionless error strength tau * gamma2.
    double p() const {
        return tau() * gamma2();
    }

    /// Noise with tau * gamma2 = p and gamma_phi = gamma1 / 2, at zeta0 / 2pi given in MHz.
    static NoiseParams from_p(double p, double zeta0_over_2pi_mhz = 5.0);
};

/// Coherent ZZ term -(zeta / 4) Z_j Z_k added to the gate Hamiltonian (zeta in rad/ns).
struct ZZTerm {
    int j = 0;
    int k = 0;
    double zeta = 0;
};

/// Dense superoperator on column-stacked density matrices: vec(rho)[i + d*j] = rho(i, j).
struct Superoperator {
    int dim = 0;  ///< Hilbert-space dimension d; matrix is d^2 x d^2.
    Eigen::MatrixXcd matrix;

    /// Applies the superoperator to a d x d operator.
    Eigen::MatrixXcd apply(const Eigen::MatrixXcd &rho) const;
    /// Superoperator of rho -> U rho U^dagger.
    static Superoperator conjugation(const Eigen::MatrixXcd &u);
};

/// H = -(zeta0 / 4) sum_k Z_0 Z_k over 1 + n_data qubits, plus the optional extra ZZ terms.
/// exp(-i H pi / zeta0) equals hop_unitary(n_data).
Eigen::MatrixXcd hop_hamiltonian(int n_data, double zeta0, const std::vector<ZZTerm> &extra = {});

/// L rho = -i[H, rho] + sum_q D[sqrt(gamma1) sigma_-^q] rho + D[sqrt(gamma_phi) Z^q] rho, with
/// D[A] rho = A rho A^dagger - {A^dagger A, rho} / 2. Jump operators act on the qubits whose bit is
/// set in `noisy_qubits` (all qubits by default).
Superoperator liouvillian(
    const Eigen::MatrixXcd &h, const NoiseParams &noise, int num_qubits, uint64_t noisy_qubits = ~uint64_t{0});

/// exp(L t) by Pade scaling and squaring. Throws Numerical if the result fails to preserve trace
/// to 1e-9.
Superoperator propagator(const Superoperator &l, double t);

}  // namespace hopqec::open_system

#endif
