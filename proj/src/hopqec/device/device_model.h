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

#ifndef HOPQEC_DEVICE_DEVICE_MODEL_H
#define HOPQEC_DEVICE_DEVICE_MODEL_H

#include <Eigen/Dense>
#include <Eigen/Sparse>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

namespace hopqec::device {

enum class ModeKind { Qubit, Coupler };

/// One flux-tunable transmon mode (data/check qubit or tunable coupler).
///
/// Energies are frequencies divided by 2*pi, in GHz. `flux` is the external flux in units of the
/// flux quantum.
struct ModeSpec {
    std::string name;
    ModeKind kind = ModeKind::Qubit;
    double ej_total = 0;
    double ec = 0;
    double junction_ratio = 1;
    double flux = 0;

    /// Throws InvalidArgument unless E_J, E_C and r are positive and the flux lies in [0, 1).
    void validate() const;
};

struct TransmonLevels {
    double omega = 0;  ///< 0-1 transition frequency, GHz.
    double eta = 0;    ///< anharmonicity magnitude, GHz (|2> sits at 2*omega - eta).
};

/// Effective Josephson energy of the asymmetric SQUID at the mode's flux.
double effective_josephson(const ModeSpec &spec);

/// Closed-form transmon frequency and anharmonicity at the mode's flux bias.
/// Throws DegenerateTransmon when E_Jeff <= 0 or xi = sqrt(2 E_C / E_Jeff) >= 1.
TransmonLevels flux_frequency(const ModeSpec &spec);

/// Solves for (E_J, E_C, r) reproducing omega_max and eta_max at flux 0 and, when given, omega_min
/// at flux 1/2. Without omega_min the ratio `default_ratio` is kept. Throws Calibration on failure.
ModeSpec calibrate_junctions(
    double omega_max, std::optional<double> omega_min, double eta_max, double default_ratio = 5.0);

struct Coupling {
    size_t a = 0;
    size_t b = 0;
    double g_mhz = 0;  ///< g / 2pi in MHz; sign taken verbatim.
};

/// Check qubit q0, data qubits q1..q4 and couplers c1..c4, with the X_a X_b couplings between them.
struct LatticeSpec {
    std::vector<ModeSpec> modes;
    std::vector<Coupling> couplings;

    std::vector<size_t> qubit_modes() const;
    /// Throws InvalidArgument unless modes/couplings are well formed, follow the
    /// check-data / check-coupler / data-coupler pattern, and form a connected graph.
    void validate() const;
};

/// Occupation-number basis (three levels per mode) truncated to a total excitation cap.
class OccupationBasis {
   public:
    OccupationBasis(size_t num_modes, int excitation_cap);

    size_t size() const {
        return states_.size();
    }
    size_t num_modes() const {
        return num_modes_;
    }
    int excitation_cap() const {
        return cap_;
    }
    const std::vector<uint8_t> &state(size_t i) const {
        return states_[i];
    }
    std::optional<size_t> find(const std::vector<uint8_t> &occupation) const;

   private:
    uint64_t key(const std::vector<uint8_t> &occupation) const;

    size_t num_modes_;
    int cap_;
    std::vector<std::vector<uint8_t>> states_;
    std::unordered_map<uint64_t, size_t> lookup_;
};

struct DeviceHamiltonian {
    Eigen::SparseMatrix<double> matrix;  ///< GHz.
    OccupationBasis basis;
    std::vector<ModeKind> kinds;
    std::vector<std::string> names;
};

/// Three-level Hamiltonian over all occupation vectors with total excitation <= cap. Diagonal
/// from omega and eta, off-diagonal g X_a X_b with X = s + s^dagger, s = |0><1| + sqrt(2)|1><2|.
DeviceHamiltonian build_hamiltonian(const LatticeSpec &lattice, int excitation_cap);

enum class LabelPolicy {
    Strict,  ///< A maximal overlap <= 0.5 throws Labeling.
    Report,  ///< Ambiguous labels are kept; the overlaps are reported.
};

struct PairCoupling {
    size_t j = 0;  ///< qubit indices within the qubit list (0 = check qubit)
    size_t k = 0;
    double zeta_mhz = 0;      ///< zeta_jk / 2pi, MHz.
    double min_overlap = 0;   ///< smallest label overlap among the four states used.
};

struct CouplingReport {
    std::vector<PairCoupling> pairs;                ///< all j < k, check-data pairs first
    std::map<std::string, double> label_fidelity;  ///< bare-state label -> squared overlap

    const PairCoupling &pair(size_t j, size_t k) const;
    /// Pairs (0,k): nearest-neighbour couplings, MHz.
    std::vector<PairCoupling> nearest() const;
    /// Pairs (j,k) with j != 0: next-nearest-neighbour couplings.
    std::vector<PairCoupling> next_nearest() const;
};

/// Diagonalizes H, labels dressed states by maximal overlap with bare qubit-occupation states
/// (couplers in the ground state) and returns zeta_jk = E11 + E00 - E10 - E01 for every qubit pair.
CouplingReport zz_couplings(const DeviceHamiltonian &h, LabelPolicy policy = LabelPolicy::Strict);

/// Ket label such as "|10100>" over the qubit modes.
std::string bare_label(const std::vector<int> &qubit_occupation);

}  // namespace hopqec::device

#endif
