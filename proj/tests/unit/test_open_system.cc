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

#include <gtest/gtest.h>

#include <bit>
#include <cmath>
#include <random>
#include <sstream>
#include <unsupported/Eigen/MatrixFunctions>

#include "hopqec/error.h"
#include "hopqec/open_system/channel_io.h"
#include "hopqec/open_system/cz_reference.h"
#include "hopqec/open_system/hop_channel.h"
#include "hopqec/open_system/hop_gate.h"
#include "hopqec/open_system/lindblad.h"
#include "hopqec/open_system/twirl.h"

using namespace hopqec;
using namespace hopqec::open_system;

namespace {

Eigen::MatrixXcd random_unitary(int d, std::mt19937_64 &rng) {
    std::normal_distribution<double> g;
    Eigen::MatrixXcd a(d, d);
    for (int i = 0; i < d; i++) {
        for (int j = 0; j < d; j++) {
            a(i, j) = {g(rng), g(rng)};
        }
    }
    Eigen::HouseholderQR<Eigen::MatrixXcd> qr(a);
    return qr.householderQ();
}

// Identifies a dense matrix as +-P or +-iP for a Pauli P; returns its index.
uint64_t identify_pauli(int n, const Eigen::MatrixXcd &m) {
    for (uint64_t k = 0; k < (uint64_t{1} << (2 * n)); k++) {
        auto p = pauli_matrix(n, k);
        std::complex<double> t = (p.adjoint() * m).trace() / double(1 << n);
        if (std::abs(std::abs(t) - 1) < 1e-9) {
            return k;
        }
    }
    ADD_FAILURE() << "not a Pauli";
    return 0;
}

}  // namespace

TEST(HopGate, GroundStatePhase) {
    auto u = hop_unitary(4);
    EXPECT_NEAR(std::abs(u(0, 0) + 1.0), 0.0, 1e-15);
}

TEST(HopGate, EqualsCzLadderUpToPhase) {
    for (int n : {2, 4}) {
        EXPECT_LE(distance_up_to_phase(hop_unitary(n), cz_ladder_circuit(n)), 1e-12);
    }
    // The phase is exactly -1.
    EXPECT_LE((hop_unitary(4) + cz_ladder_circuit(4)).cwiseAbs().maxCoeff(), 1e-12);
}

TEST(HopGate, ThreeQubitGateIsDiagonalUnitary) {
    auto u = hop_unitary(2);
    ASSERT_EQ(u.rows(), 8);
    for (int i = 0; i < 8; i++) {
        for (int j = 0; j < 8; j++) {
            if (i == j) {
                EXPECT_NEAR(std::abs(u(i, j)), 1.0, 1e-15);
            } else {
                EXPECT_EQ(u(i, j), 0.0);
            }
        }
    }
    EXPECT_THROW(hop_unitary(3), Error);
}

TEST(HopGate, HamiltonianGeneratesGate) {
    double zeta0 = 0.0314;
    Eigen::MatrixXcd h = hop_hamiltonian(4, zeta0);
    Eigen::MatrixXcd u = (std::complex<double>(0, -M_PI / zeta0) * h).exp();
    EXPECT_LE((u - hop_unitary(4)).cwiseAbs().maxCoeff(), 1e-12);
}

TEST(Lindblad, Dimensions) {
    auto n = NoiseParams::from_p(0.01);
    auto l = liouvillian(hop_hamiltonian(4, n.zeta0), n, 5);
    EXPECT_EQ(l.matrix.rows(), 1024);
    EXPECT_THROW(liouvillian(hop_hamiltonian(2, n.zeta0), n, 5), Error);
}

TEST(Lindblad, NoiseParamsNormalization) {
    auto n = NoiseParams::from_p(0.05);
    EXPECT_NEAR(n.tau(), 100.0, 1e-9);
    EXPECT_NEAR(n.tau() * n.zeta0, M_PI, 1e-15);
    EXPECT_NEAR(n.p(), 0.05, 1e-15);
    EXPECT_NEAR(n.gamma_phi, n.gamma1 / 2, 1e-18);
}

TEST(Lindblad, ZeroGeneratorGivesIdentity) {
    Superoperator zero{4, Eigen::MatrixXcd::Zero(16, 16)};
    auto v = propagator(zero, 3.0);
    EXPECT_LE((v.matrix - Eigen::MatrixXcd::Identity(16, 16)).cwiseAbs().maxCoeff(), 1e-15);
}

TEST(Lindblad, NoiselessPropagatorIsHopConjugation) {
    NoiseParams n = NoiseParams::from_p(0);
    auto v = propagator(liouvillian(hop_hamiltonian(4, n.zeta0), n, 5), n.tau());
    auto ideal = Superoperator::conjugation(hop_unitary(4));
    EXPECT_LE((v.matrix - ideal.matrix).cwiseAbs().maxCoeff(), 1e-8);

    std::mt19937_64 rng(3);
    Eigen::VectorXcd psi = random_unitary(32, rng).col(0);
    Eigen::MatrixXcd rho = psi * psi.adjoint();
    Eigen::MatrixXcd u = hop_unitary(4);
    EXPECT_LE((v.apply(rho) - u * rho * u.adjoint()).cwiseAbs().maxCoeff(), 1e-9);
}

TEST(Lindblad, SemigroupProperty) {
    auto n = NoiseParams::from_p(0.02);
    auto l = liouvillian(hop_hamiltonian(2, n.zeta0), n, 3);
    auto full = propagator(l, n.tau());
    auto half = propagator(l, n.tau() / 2);
    EXPECT_LE((full.matrix - half.matrix * half.matrix).cwiseAbs().maxCoeff(), 1e-9);
}

TEST(Lindblad, PureDephasingClosedForm) {
    NoiseParams n;
    n.zeta0 = 1;
    n.gamma_phi = 0.3;
    double t = 1.7;
    auto v = propagator(liouvillian(Eigen::MatrixXcd::Zero(2, 2), n, 1), t);
    Eigen::MatrixXcd rho(2, 2);
    rho << 0.5, 0.5, 0.5, 0.5;
    auto out = v.apply(rho);
    double decay = std::exp(-2 * 0.3 * t);
    EXPECT_NEAR(out(0, 1).real(), 0.5 * decay, 1e-12);
    EXPECT_NEAR(out(0, 0).real(), 0.5, 1e-12);

    auto ch = twirl_channel(v, Eigen::MatrixXcd::Identity(2, 2));
    EXPECT_NEAR(ch.weight(PauliString::parse("I")), (1 + decay) / 2, 1e-12);
    EXPECT_NEAR(ch.weight(PauliString::parse("Z")), (1 - decay) / 2, 1e-12);
    EXPECT_NEAR(ch.weight(PauliString::parse("X")), 0.0, 1e-12);
}

TEST(Twirl, ExactGateGivesIdentityChannel) {
    auto u = hop_unitary(2);
    auto ch = twirl_channel(Superoperator::conjugation(u), u);
    EXPECT_NEAR(ch.fidelity(), 1.0, 1e-12);
}

TEST(Twirl, FidelitiesMatchDenseDefinition) {
    // f_k = Tr[P_k Lambda(P_k)] / d evaluated with dense matrices and operator application.
    auto n = NoiseParams::from_p(0.05);
    auto v = propagator(liouvillian(hop_hamiltonian(2, n.zeta0), n, 3), n.tau());
    auto u = hop_unitary(2);
    auto f = residual_pauli_fidelities(v, u);
    for (uint64_t k = 0; k < 64; k++) {
        auto p = pauli_matrix(3, k);
        auto lp = v.apply(u.adjoint() * p * u);
        EXPECT_NEAR(f[k], (p * lp).trace().real() / 8, 1e-12);
    }
}

TEST(Twirl, DependsOnlyOnResidual) {
    auto n = NoiseParams::from_p(0.03);
    auto v = propagator(liouvillian(hop_hamiltonian(2, n.zeta0), n, 3), n.tau());
    auto u = hop_unitary(2);
    std::mt19937_64 rng(5);
    Eigen::MatrixXcd w = random_unitary(8, rng);
    Superoperator vw{8, v.matrix * Superoperator::conjugation(w).matrix};
    auto a = twirl_channel(v, u);
    auto b = twirl_channel(vw, u * w);
    for (uint64_t i = 0; i < a.size(); i++) {
        EXPECT_NEAR(a.weight(i), b.weight(i), 1e-12);
    }
}

TEST(Twirl, CheckQubitDephasingStaysLocal) {
    GateChannelOptions opt;
    opt.noisy_qubits = 1;
    // Dephasing only: p with gamma1 = 0 is emulated by a custom NoiseParams.
    NoiseParams n = NoiseParams::from_p(0.05);
    n.gamma1 = 0;
    auto v = propagator(liouvillian(hop_hamiltonian(4, n.zeta0), n, 5, 1), n.tau());
    auto ch = twirl_channel(v, hop_unitary(4));
    uint64_t z0 = PauliString::parse("ZIIII").index();
    EXPECT_GT(ch.weight(z0), 1e-4);
    EXPECT_NEAR(ch.fidelity() + ch.weight(z0), 1.0, 1e-12);
}

TEST(Twirl, CheckQubitDecayKicksData) {
    NoiseParams n = NoiseParams::from_p(0.05);
    n.gamma_phi = 0;
    auto v = propagator(liouvillian(hop_hamiltonian(4, n.zeta0), n, 5, 1), n.tau());
    auto ch = twirl_channel(v, hop_unitary(4));
    double on_data = 0;
    for (uint64_t i = 0; i < ch.size(); i++) {
        auto p = PauliString::from_index(5, i);
        if (((p.x | p.z) >> 1) != 0) {
            on_data += ch.weight(i);
        }
    }
    EXPECT_GT(on_data, 1e-4);
}

TEST(GateChannel, NormalizedAndOrdered) {
    auto five = extract_hop_channel(0.01, 4);
    auto three = extract_hop_channel(0.01, 2);
    EXPECT_NEAR(five.total(), 1.0, 1e-9);
    EXPECT_NEAR(three.total(), 1.0, 1e-9);
    EXPECT_GE(three.fidelity(), five.fidelity());
    for (double w : five.weights()) {
        EXPECT_GE(w, 0.0);
    }
}

TEST(CzReference, ZeroLambdaIsIdentity) {
    EXPECT_EQ(cz_reference_channel(0, 4).fidelity(), 1.0);
    EXPECT_THROW(cz_reference_channel(1.5, 4), Error);
}

TEST(CzReference, MatchesEnumerationOracle) {
    const int n = 5;
    const double lambda = 0.01;
    // Propagate each two-qubit Pauli on (0, k) through CZ_{0,k+1} .. CZ_{0,4} with dense matrices.
    Eigen::MatrixXcd ladder = cz_ladder_circuit(4);
    std::vector<Eigen::MatrixXcd> cz(5);
    for (int k = 1; k <= 4; k++) {
        cz[k] = Eigen::MatrixXcd::Identity(32, 32);
        for (int b = 0; b < 32; b++) {
            if ((b & 1) && ((b >> k) & 1)) {
                cz[k](b, b) = -1;
            }
        }
    }
    uint64_t moved[5][16];
    for (int k = 1; k <= 4; k++) {
        for (int e = 0; e < 16; e++) {
            uint64_t x = (e & 1) | (((e >> 2) & 1) << k);
            uint64_t z = ((e >> 1) & 1) | (((e >> 3) & 1) << k);
            Eigen::MatrixXcd p = pauli_matrix(n, x | (z << n));
            for (int j = k + 1; j <= 4; j++) {
                p = cz[j] * p * cz[j].adjoint();
            }
            moved[k][e] = identify_pauli(n, p);
        }
    }
    std::vector<double> oracle(1024, 0.0);
    for (int e1 = 0; e1 < 16; e1++) {
        for (int e2 = 0; e2 < 16; e2++) {
            for (int e3 = 0; e3 < 16; e3++) {
                for (int e4 = 0; e4 < 16; e4++) {
                    double pr = 1;
                    for (int e : {e1, e2, e3, e4}) {
                        pr *= e ? lambda / 16 : 1 - 15 * lambda / 16;
                    }
                    oracle[moved[1][e1] ^ moved[2][e2] ^ moved[3][e3] ^ moved[4][e4]] += pr;
                }
            }
        }
    }
    auto ch = cz_reference_channel(lambda, 4);
    for (uint64_t i = 0; i < 1024; i++) {
        EXPECT_NEAR(ch.weight(i), oracle[i], 1e-13);
    }
    EXPECT_GE(ch.fidelity(), std::pow(1 - 15 * lambda / 16, 4));
}

TEST(MatchLambda, ZeroNoise) {
    EXPECT_NEAR(match_lambda(0, 4), 0.0, 1e-9);
}

TEST(MatchLambda, FigureOperatingPoint) {
    auto g = hop_gate_channel(0.05, 4);
    EXPECT_NEAR(g.lambda, 0.066, 0.004);
    EXPECT_NEAR(cz_reference_channel(g.lambda, 4).fidelity(), g.fidelity(), 1e-8);
}

TEST(MatchLambda, MonotoneInP) {
    double prev = 0;
    for (double p : {1e-4, 1e-3, 1e-2, 1e-1}) {
        double l = match_lambda(p, 4);
        EXPECT_GT(l, prev) << p;
        prev = l;
    }
}

TEST(ChannelFile, RoundTrip) {
    ChannelFile f;
    f.p = 0.01;
    f.lambda = 0.0123;
    f.normalization = kDefaultNormalization;
    f.channel = extract_hop_channel(0.01, 2);
    std::stringstream ss;
    write_channel_file(ss, f);
    auto g = read_channel_file(ss);
    EXPECT_EQ(g.p, f.p);
    EXPECT_EQ(*g.lambda, *f.lambda);
    EXPECT_EQ(g.normalization, f.normalization);
    for (uint64_t i = 0; i < f.channel.size(); i++) {
        EXPECT_NEAR(g.channel.weight(i), f.channel.weight(i), 1e-16);
    }
}
