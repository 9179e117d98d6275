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

#include "hopqec/device/device_model.h"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <numbers>
#include <queue>
#include <set>
#include <sstream>

#include "hopqec/error.h"

namespace hopqec::device {

namespace {

constexpr int kLevels = 3;

// Bisection on a monotone function over [lo, hi]; f(lo) and f(hi) must bracket zero.
std::optional<double> bisect(const std::function<double(double)> &f, double lo, double hi, double tol = 1e-14) {
    double flo = f(lo), fhi = f(hi);
    if (!std::isfinite(flo) || !std::isfinite(fhi) || (flo > 0) == (fhi > 0)) {
        return std::nullopt;
    }
    for (int it = 0; it < 200 && hi - lo > tol * std::max(1.0, std::abs(hi)); it++) {
        double mid = 0.5 * (lo + hi);
        double fm = f(mid);
        if ((fm > 0) == (flo > 0)) {
            lo = mid;
            flo = fm;
        } else {
            hi = mid;
        }
    }
    return 0.5 * (lo + hi);
}

TransmonLevels levels_from(double ej_eff, double ec) {
    if (!(ej_eff > 0)) {
        fail(ErrorCode::DegenerateTransmon, "effective Josephson energy is not positive");
    }
    double xi = std::sqrt(2 * ec / ej_eff);
    if (xi >= 1) {
        fail(ErrorCode::DegenerateTransmon, "xi = sqrt(2 E_C / E_Jeff) >= 1; transmon expansion invalid");
    }
    TransmonLevels out;
    out.omega = std::sqrt(8 * ej_eff * ec) - ec * (1 + xi / 4 + 21 * xi * xi / 128);
    out.eta = ec * (1 + 9 * xi / 16 + 81 * xi * xi / 128);
    return out;
}

// E_Jeff giving the requested frequency at fixed E_C (omega is increasing in E_Jeff).
std::optional<double> ej_for_frequency(double omega, double ec) {
    auto f = [&](double ej) { return levels_from(ej, ec).omega - omega; };
    double lo = 2 * ec * (1 + 1e-9);
    return bisect(f, lo, 1e6);
}

}  // namespace

void ModeSpec::validate() const {
    if (!(ej_total > 0) || !(ec > 0) || !(junction_ratio > 0)) {
        fail(ErrorCode::InvalidArgument, "mode " + name + ": E_J, E_C and r must be positive");
    }
    if (!(flux >= 0 && flux < 1)) {
        fail(ErrorCode::InvalidArgument, "mode " + name + ": flux must lie in [0, 1)");
    }
}

double effective_josephson(const ModeSpec &spec) {
    double r = spec.junction_ratio;
    double c = std::cos(2 * std::numbers::pi * spec.flux);
    double inner = 1 + r * r + 2 * r * c;
    return spec.ej_total / (1 + r) * std::sqrt(std::max(inner, 0.0));
}

TransmonLevels flux_frequency(const ModeSpec &spec) {
    spec.validate();
    return levels_from(effective_josephson(spec), spec.ec);
}

ModeSpec calibrate_junctions(double omega_max, std::optional<double> omega_min, double eta_max, double default_ratio) {
    if (!(omega_max > 0) || !(eta_max > 0)) {
        fail(ErrorCode::Calibration, "omega_max and eta_max must be positive");
    }
    if (omega_min && !(*omega_min < omega_max)) {
        fail(ErrorCode::Calibration, "omega_min must be below omega_max");
    }
    if (omega_min && !(*omega_min > 0)) {
        fail(ErrorCode::Calibration, "omega_min must be positive");
    }

    // eta(E_C) along the curve omega(E_J, E_C) = omega_max; E_C beyond omega_max / 2.586 has no
    // solution with xi < 1.
    auto eta_residual = [&](double ec) {
        auto ej = ej_for_frequency(omega_max, ec);
        if (!ej) {
            return std::numeric_limits<double>::quiet_NaN();
        }
        return levels_from(*ej, ec).eta - eta_max;
    };
    double ec_hi = omega_max / 2.6;
    double ec_lo = 1e-6 * omega_max;
    auto ec = bisect(eta_residual, ec_lo, ec_hi);
    if (!ec) {
        fail(ErrorCode::Calibration, "no (E_J, E_C) reproduces the requested omega_max/eta_max");
    }
    auto ej = ej_for_frequency(omega_max, *ec);
    if (!ej) {
        fail(ErrorCode::Calibration, "E_J inversion did not converge");
    }

    ModeSpec out;
    out.ec = *ec;
    out.ej_total = *ej;
    out.junction_ratio = default_ratio;
    out.flux = 0;
    if (omega_min) {
        auto ej_min = ej_for_frequency(*omega_min, *ec);
        if (!ej_min || *ej_min >= *ej) {
            fail(ErrorCode::Calibration, "omega_min is not reachable with these junction parameters");
        }
        // E_Jeff(1/2) = E_J (r - 1) / (r + 1) with r > 1.
        double rho = *ej_min / *ej;
        out.junction_ratio = (1 + rho) / (1 - rho);
    }

    auto check = [&](double flux, double target) {
        ModeSpec probe = out;
        probe.flux = flux;
        if (std::abs(flux_frequency(probe).omega - target) > 1e-6) {
            fail(ErrorCode::Calibration, "calibrated junctions miss the target frequency");
        }
    };
    check(0.0, omega_max);
    if (std::abs(flux_frequency(out).eta - eta_max) > 1e-6) {
        fail(ErrorCode::Calibration, "calibrated junctions miss the target anharmonicity");
    }
    if (omega_min) {
        check(0.5, *omega_min);
    }
    return out;
}

std::vector<size_t> LatticeSpec::qubit_modes() const {
    std::vector<size_t> out;
    for (size_t i = 0; i < modes.size(); i++) {
        if (modes[i].kind == ModeKind::Qubit) {
            out.push_back(i);
        }
    }
    return out;
}

void LatticeSpec::validate() const {
    if (modes.empty()) {
        fail(ErrorCode::InvalidArgument, "lattice has no modes");
    }
    for (const auto &m : modes) {
        m.validate();
    }
    auto qubits = qubit_modes();
    if (qubits.size() < 2 || qubits.front() != 0) {
        fail(ErrorCode::InvalidArgument, "lattice needs the check qubit as mode 0 and at least one data qubit");
    }
    std::set<std::pair<size_t, size_t>> seen;
    for (const auto &c : couplings) {
        if (c.a >= modes.size() || c.b >= modes.size() || c.a == c.b) {
            fail(ErrorCode::InvalidArgument, "coupling references an invalid mode");
        }
        auto key = std::minmax(c.a, c.b);
        if (!seen.insert(key).second) {
            fail(ErrorCode::InvalidArgument, "duplicate coupling between modes");
        }
        bool a_coupler = modes[c.a].kind == ModeKind::Coupler;
        bool b_coupler = modes[c.b].kind == ModeKind::Coupler;
        if (a_coupler && b_coupler) {
            fail(ErrorCode::InvalidArgument, "coupler-coupler couplings are not part of the lattice");
        }
        if (!a_coupler && !b_coupler && c.a != 0 && c.b != 0) {
            fail(ErrorCode::InvalidArgument, "direct data-data couplings are not part of the lattice");
        }
    }
    // Every coupler bridges the check qubit and exactly one data qubit.
    for (size_t i = 0; i < modes.size(); i++) {
        if (modes[i].kind != ModeKind::Coupler) {
            continue;
        }
        int to_check = 0, to_data = 0;
        for (const auto &c : couplings) {
            if (c.a != i && c.b != i) {
                continue;
            }
            size_t other = c.a == i ? c.b : c.a;
            (other == 0 ? to_check : to_data)++;
        }
        if (to_check != 1 || to_data != 1) {
            fail(ErrorCode::InvalidArgument, "coupler " + modes[i].name + " must couple to the check qubit and one data qubit");
        }
    }
    // Connectivity.
    std::vector<bool> reached(modes.size(), false);
    std::queue<size_t> todo;
    todo.push(0);
    reached[0] = true;
    while (!todo.empty()) {
        size_t u = todo.front();
        todo.pop();
        for (const auto &c : couplings) {
            size_t v = c.a == u ? c.b : (c.b == u ? c.a : modes.size());
            if (v < modes.size() && !reached[v]) {
                reached[v] = true;
                todo.push(v);
            }
        }
    }
    if (std::find(reached.begin(), reached.end(), false) != reached.end()) {
        fail(ErrorCode::InvalidArgument, "coupling graph is not connected");
    }
}

OccupationBasis::OccupationBasis(size_t num_modes, int excitation_cap) : num_modes_(num_modes), cap_(excitation_cap) {
    if (num_modes > 40) {
        fail(ErrorCode::InvalidArgument, "too many modes for the occupation basis");
    }
    std::vector<uint8_t> occ(num_modes, 0);
    std::function<void(size_t, int)> rec = [&](size_t mode, int remaining) {
        if (mode == num_modes) {
            lookup_.emplace(key(occ), states_.size());
            states_.push_back(occ);
            return;
        }
        for (int n = 0; n < kLevels && n <= remaining; n++) {
            occ[mode] = static_cast<uint8_t>(n);
            rec(mode + 1, remaining - n);
        }
        occ[mode] = 0;
    };
    rec(0, excitation_cap);
}

uint64_t OccupationBasis::key(const std::vector<uint8_t> &occupation) const {
    uint64_t k = 0;
    for (auto n : occupation) {
        k = k * kLevels + n;
    }
    return k;
}

std::optional<size_t> OccupationBasis::find(const std::vector<uint8_t> &occupation) const {
    if (occupation.size() != num_modes_) {
        return std::nullopt;
    }
    auto it = lookup_.find(key(occupation));
    if (it == lookup_.end()) {
        return std::nullopt;
    }
    return it->second;
}

DeviceHamiltonian build_hamiltonian(const LatticeSpec &lattice, int excitation_cap) {
    if (excitation_cap < 2) {
        fail(ErrorCode::InvalidArgument, "excitation cap must be at least 2 (two-excitation states are needed)");
    }
    lattice.validate();
    size_t m = lattice.modes.size();
    std::vector<TransmonLevels> levels;
    for (const auto &mode : lattice.modes) {
        levels.push_back(flux_frequency(mode));
    }

    OccupationBasis basis(m, excitation_cap);
    std::vector<Eigen::Triplet<double>> triplets;
    for (size_t i = 0; i < basis.size(); i++) {
        const auto &s = basis.state(i);
        double e = 0;
        for (size_t a = 0; a < m; a++) {
            e += levels[a].omega * s[a];
            if (s[a] == 2) {
                e -= levels[a].eta;
            }
        }
        triplets.emplace_back(i, i, e);
    }
    for (const auto &c : lattice.couplings) {
        double g = c.g_mhz * 1e-3;
        for (size_t i = 0; i < basis.size(); i++) {
            std::vector<uint8_t> t = basis.state(i);
            int na0 = t[c.a], nb0 = t[c.b];
            for (int da : {-1, 1}) {
                for (int db : {-1, 1}) {
                    int na = na0 + da, nb = nb0 + db;
                    if (na < 0 || na >= kLevels || nb < 0 || nb >= kLevels) {
                        continue;
                    }
                    t[c.a] = static_cast<uint8_t>(na);
                    t[c.b] = static_cast<uint8_t>(nb);
                    if (auto j = basis.find(t)) {
                        double amp = std::sqrt(double(std::max(na0, na))) * std::sqrt(double(std::max(nb0, nb)));
                        triplets.emplace_back(*j, i, g * amp);
                    }
                    t[c.a] = static_cast<uint8_t>(na0);
                    t[c.b] = static_cast<uint8_t>(nb0);
                }
            }
        }
    }
    DeviceHamiltonian h{Eigen::SparseMatrix<double>(basis.size(), basis.size()), std::move(basis), {}, {}};
    h.matrix.setFromTriplets(triplets.begin(), triplets.end());
    for (const auto &mode : lattice.modes) {
        h.kinds.push_back(mode.kind);
        h.names.push_back(mode.name);
    }
    return h;
}

std::string bare_label(const std::vector<int> &qubit_occupation) {
    std::string s = "|";
    for (int n : qubit_occupation) {
        s += static_cast<char>('0' + n);
    }
    return s + ">";
}

const PairCoupling &CouplingReport::pair(size_t j, size_t k) const {
    for (const auto &p : pairs) {
        if ((p.j == j && p.k == k) || (p.j == k && p.k == j)) {
            return p;
        }
    }
    fail(ErrorCode::InvalidArgument, "no coupling reported for the requested pair");
}

std::vector<PairCoupling> CouplingReport::nearest() const {
    std::vector<PairCoupling> out;
    std::copy_if(pairs.begin(), pairs.end(), std::back_inserter(out), [](const auto &p) { return p.j == 0; });
    return out;
}

std::vector<PairCoupling> CouplingReport::next_nearest() const {
    std::vector<PairCoupling> out;
    std::copy_if(pairs.begin(), pairs.end(), std::back_inserter(out), [](const auto &p) { return p.j != 0; });
    return out;
}

CouplingReport zz_couplings(const DeviceHamiltonian &h, LabelPolicy policy) {
    const auto &basis = h.basis;
    std::vector<size_t> qubits;
    for (size_t i = 0; i < h.kinds.size(); i++) {
        if (h.kinds[i] == ModeKind::Qubit) {
            qubits.push_back(i);
        }
    }
    Eigen::MatrixXd dense(h.matrix);
    if ((dense - dense.transpose()).cwiseAbs().maxCoeff() > 1e-12) {
        fail(ErrorCode::Numerical, "device Hamiltonian is not Hermitian");
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(dense);
    if (solver.info() != Eigen::Success) {
        fail(ErrorCode::Numerical, "eigendecomposition failed");
    }
    const Eigen::VectorXd &energies = solver.eigenvalues();
    const Eigen::MatrixXd &vectors = solver.eigenvectors();

    CouplingReport report;
    std::map<std::vector<int>, std::pair<double, double>> cache;  // occupation -> (energy, overlap)
    auto dressed = [&](const std::vector<int> &qubit_occ) {
        auto it = cache.find(qubit_occ);
        if (it != cache.end()) {
            return it->second;
        }
        std::vector<uint8_t> occ(basis.num_modes(), 0);
        for (size_t q = 0; q < qubits.size(); q++) {
            occ[qubits[q]] = static_cast<uint8_t>(qubit_occ[q]);
        }
        auto idx = basis.find(occ);
        if (!idx) {
            fail(ErrorCode::Labeling, "bare state " + bare_label(qubit_occ) + " lies outside the truncated basis");
        }
        Eigen::Index best = 0;
        double overlap = vectors.row(*idx).cwiseAbs2().maxCoeff(&best);
        std::string label = bare_label(qubit_occ);
        if (overlap <= 0.5 && policy == LabelPolicy::Strict) {
            std::ostringstream msg;
            msg << "ambiguous eigenstate label for " << label << ": maximal overlap " << overlap;
            fail(ErrorCode::Labeling, msg.str());
        }
        report.label_fidelity[label] = overlap;
        auto value = std::make_pair(energies[best], overlap);
        cache.emplace(qubit_occ, value);
        return value;
    };

    std::vector<int> ground(qubits.size(), 0);
    auto e00 = dressed(ground);
    for (size_t j = 0; j < qubits.size(); j++) {
        for (size_t k = j + 1; k < qubits.size(); k++) {
            auto occ10 = ground, occ01 = ground, occ11 = ground;
            occ10[j] = 1;
            occ01[k] = 1;
            occ11[j] = occ11[k] = 1;
            auto e10 = dressed(occ10), e01 = dressed(occ01), e11 = dressed(occ11);
            PairCoupling pc;
            pc.j = j;
            pc.k = k;
            pc.zeta_mhz = (e11.first + e00.first - e10.first - e01.first) * 1e3;
            pc.min_overlap = std::min({e00.second, e10.second, e01.second, e11.second});
            report.pairs.push_back(pc);
        }
    }
    return report;
}

}  // namespace hopqec::device
