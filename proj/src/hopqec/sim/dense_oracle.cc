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

#include "hopqec/sim/dense_oracle.h"

#include <Eigen/Dense>
#include <bit>
#include <cmath>
#include <complex>
#include <functional>
#include <map>
#include <string>

#include "hopqec/error.h"

namespace hopqec::sim {

using circuit::Circuit;
using circuit::Instruction;
using circuit::Op;
using cd = std::complex<double>;
using Mat = Eigen::MatrixXcd;

namespace {

/// Column action of P = (tensor of single-qubit Paulis): P|b> = phase(b) |b ^ x>.
struct DensePauli {
    uint64_t x = 0;
    uint64_t z = 0;

    cd phase(uint64_t b) const {
        static const cd kI[4] = {1.0, cd(0, 1), -1.0, cd(0, -1)};
        int k = std::popcount(x & z) + 2 * (std::popcount(z & b) & 1);
        return kI[k & 3];
    }
};

/// P rho P^dagger.
Mat conjugate(const Mat &rho, const DensePauli &p) {
    const Eigen::Index d = rho.rows();
    Mat out(d, d);
    for (Eigen::Index c = 0; c < d; c++) {
        double sc = (std::popcount(p.z & static_cast<uint64_t>(c)) & 1) ? -1.0 : 1.0;
        for (Eigen::Index r = 0; r < d; r++) {
            double sr = (std::popcount(p.z & static_cast<uint64_t>(r)) & 1) ? -1.0 : 1.0;
            out(r ^ static_cast<Eigen::Index>(p.x), c ^ static_cast<Eigen::Index>(p.x)) = sr * sc * rho(r, c);
        }
    }
    return out;
}

Mat left_pauli(const Mat &rho, const DensePauli &p) {
    const Eigen::Index d = rho.rows();
    Mat out(d, d);
    for (Eigen::Index r = 0; r < d; r++) {
        cd ph = p.phase(static_cast<uint64_t>(r));
        out.row(r ^ static_cast<Eigen::Index>(p.x)) = ph * rho.row(r);
    }
    return out;
}

Mat right_pauli(const Mat &rho, const DensePauli &p) {
    const Eigen::Index d = rho.rows();
    Mat out(d, d);
    for (Eigen::Index c = 0; c < d; c++) {
        out.col(c) = p.phase(static_cast<uint64_t>(c)) * rho.col(c ^ static_cast<Eigen::Index>(p.x));
    }
    return out;
}

DensePauli single(uint32_t q, int code) {
    DensePauli p;
    if (code & 1) {
        p.x = uint64_t{1} << q;
    }
    if (code & 2) {
        p.z = uint64_t{1} << q;
    }
    return p;
}

void hadamard(Mat &rho, uint32_t q) {
    const Eigen::Index d = rho.rows();
    const Eigen::Index bit = Eigen::Index{1} << q;
    const double s = 1.0 / std::sqrt(2.0);
    for (Eigen::Index i = 0; i < d; i++) {
        if (i & bit) {
            continue;
        }
        Eigen::RowVectorXcd a = rho.row(i), b = rho.row(i | bit);
        rho.row(i) = s * (a + b);
        rho.row(i | bit) = s * (a - b);
    }
    for (Eigen::Index j = 0; j < d; j++) {
        if (j & bit) {
            continue;
        }
        Eigen::VectorXcd a = rho.col(j), b = rho.col(j | bit);
        rho.col(j) = s * (a + b);
        rho.col(j | bit) = s * (a - b);
    }
}

void diagonal_signs(Mat &rho, const std::vector<double> &sign) {
    const Eigen::Index d = rho.rows();
    for (Eigen::Index c = 0; c < d; c++) {
        for (Eigen::Index r = 0; r < d; r++) {
            rho(r, c) *= sign[r] * sign[c];
        }
    }
}

void permute(Mat &rho, const std::vector<Eigen::Index> &perm) {
    const Eigen::Index d = rho.rows();
    Mat out(d, d);
    for (Eigen::Index c = 0; c < d; c++) {
        for (Eigen::Index r = 0; r < d; r++) {
            out(perm[r], perm[c]) = rho(r, c);
        }
    }
    rho = std::move(out);
}

void mix(Mat &rho, double q, const DensePauli &p) {
    if (q > 0) {
        rho = (1 - q) * rho + q * conjugate(rho, p);
    }
}

void reset_z(Mat &rho, uint32_t q) {
    const Eigen::Index d = rho.rows();
    const Eigen::Index bit = Eigen::Index{1} << q;
    Mat out = Mat::Zero(d, d);
    for (Eigen::Index c = 0; c < d; c++) {
        if (c & bit) {
            continue;
        }
        for (Eigen::Index r = 0; r < d; r++) {
            if (!(r & bit)) {
                out(r, c) = rho(r, c) + rho(r | bit, c | bit);
            }
        }
    }
    rho = std::move(out);
}

/// Outcome-resolved parts (P0 rho P0, P1 rho P1) of a Z measurement.
std::pair<Mat, Mat> split_z(const Mat &rho, uint32_t q) {
    const Eigen::Index d = rho.rows();
    const Eigen::Index bit = Eigen::Index{1} << q;
    Mat a = Mat::Zero(d, d), b = Mat::Zero(d, d);
    for (Eigen::Index c = 0; c < d; c++) {
        for (Eigen::Index r = 0; r < d; r++) {
            if ((r & bit) == (c & bit)) {
                ((r & bit) ? b : a)(r, c) = rho(r, c);
            }
        }
    }
    return {std::move(a), std::move(b)};
}

std::pair<Mat, Mat> split_pauli(const Mat &rho, const DensePauli &p) {
    Mat lp = left_pauli(rho, p);
    Mat rp = right_pauli(rho, p);
    Mat pp = left_pauli(rp, p);
    return {0.25 * (rho + lp + rp + pp), 0.25 * (rho - lp - rp + pp)};
}

/// Density matrices indexed by the value of the classical register.
class State {
  public:
    State(uint32_t n, const std::vector<PauliString> &stabilizers) : n_(n) {
        const Eigen::Index d = Eigen::Index{1} << n;
        Mat rho = Mat::Identity(d, d) / static_cast<double>(d);
        for (const auto &s : stabilizers) {
            if (s.n > n) {
                fail(ErrorCode::InvalidArgument, "initial stabilizer wider than the circuit");
            }
            rho = split_pauli(rho, DensePauli{s.x, s.z}).first;
        }
        double tr = rho.trace().real();
        if (!(tr > 1e-12)) {
            fail(ErrorCode::InvalidArgument, "initial stabilizers are inconsistent");
        }
        blocks_[0] = rho / tr;
    }

    template <typename F>
    void each(F &&f) {
        for (auto &[reg, rho] : blocks_) {
            f(rho);
        }
    }

    /// Replaces every block by two outcome-resolved blocks, storing the outcome in `slot` (or
    /// discarding it when slot < 0).
    void measure(const std::function<std::pair<Mat, Mat>(const Mat &)> &splitter, double flip, int slot) {
        std::map<uint64_t, Mat> next;
        for (auto &[reg, rho] : blocks_) {
            auto [a, b] = splitter(rho);
            if (slot < 0) {
                add(next, reg, a + b);
                continue;
            }
            uint64_t bit = uint64_t{1} << slot;
            add(next, reg, (1 - flip) * a + flip * b);
            add(next, reg | bit, (1 - flip) * b + flip * a);
        }
        blocks_ = std::move(next);
    }

    double parity_probability(uint64_t mask) const {
        double p = 0;
        for (const auto &[reg, rho] : blocks_) {
            if (std::popcount(reg & mask) & 1) {
                p += rho.trace().real();
            }
        }
        return p;
    }

    void release(int slot) {
        std::map<uint64_t, Mat> next;
        uint64_t bit = uint64_t{1} << slot;
        for (auto &[reg, rho] : blocks_) {
            add(next, reg & ~bit, rho);
        }
        blocks_ = std::move(next);
    }

  private:
    static void add(std::map<uint64_t, Mat> &m, uint64_t reg, Mat value) {
        auto it = m.find(reg);
        if (it == m.end()) {
            m.emplace(reg, std::move(value));
        } else {
            it->second += value;
        }
    }

    uint32_t n_;
    std::map<uint64_t, Mat> blocks_;
};

/// Parity probabilities of every detector and observable, in circuit order.
DenseMarginals run(const Circuit &c, const std::vector<PauliString> &stabilizers) {
    const uint32_t n = c.num_qubits;
    const size_t num_meas = c.num_measurements();

    // Last annotation referring to each measurement.
    std::vector<int64_t> last_use(num_meas, -1);
    {
        int64_t ann = 0;
        for (const auto &layer : c.layers) {
            for (const auto &ins : layer.ops) {
                if (ins.is_annotation()) {
                    for (uint32_t r : ins.records) {
                        last_use[r] = ann;
                    }
                    ann++;
                }
            }
        }
    }

    State st(n, stabilizers);
    std::vector<int> slot_of(num_meas, -1);
    std::vector<bool> slot_busy;
    auto take_slot = [&]() {
        for (size_t s = 0; s < slot_busy.size(); s++) {
            if (!slot_busy[s]) {
                slot_busy[s] = true;
                return static_cast<int>(s);
            }
        }
        slot_busy.push_back(true);
        if (slot_busy.size() > 20) {
            fail(ErrorCode::InvalidArgument, "too many live measurement records for the dense oracle");
        }
        return static_cast<int>(slot_busy.size() - 1);
    };

    DenseMarginals out;
    out.observables.assign(c.num_observables(), 0.0);
    std::vector<bool> obs_seen(c.num_observables(), false);
    size_t m = 0;
    int64_t ann = 0;
    const Eigen::Index dim = Eigen::Index{1} << n;

    for (const auto &layer : c.layers) {
        for (const Instruction &ins : layer.ops) {
            const auto &t = ins.targets;
            switch (ins.op) {
                case Op::ResetZ:
                case Op::ResetX:
                    st.each([&](Mat &rho) {
                        for (uint32_t q : t) {
                            reset_z(rho, q);
                            if (ins.op == Op::ResetX) {
                                hadamard(rho, q);
                            }
                        }
                    });
                    break;
                case Op::H:
                    st.each([&](Mat &rho) {
                        for (uint32_t q : t) {
                            hadamard(rho, q);
                        }
                    });
                    break;
                case Op::TwirlId:
                    break;
                case Op::CX: {
                    std::vector<Eigen::Index> perm(dim);
                    for (Eigen::Index i = 0; i < dim; i++) {
                        Eigen::Index j = i;
                        for (size_t k = 0; k + 1 < t.size(); k += 2) {
                            if ((j >> t[k]) & 1) {
                                j ^= Eigen::Index{1} << t[k + 1];
                            }
                        }
                        perm[i] = j;
                    }
                    st.each([&](Mat &rho) { permute(rho, perm); });
                    break;
                }
                case Op::CZ:
                case Op::Hop: {
                    std::vector<std::pair<uint32_t, uint32_t>> pairs;
                    if (ins.op == Op::CZ) {
                        for (size_t k = 0; k + 1 < t.size(); k += 2) {
                            pairs.emplace_back(t[k], t[k + 1]);
                        }
                    } else {
                        for (size_t k = 1; k < t.size(); k++) {
                            pairs.emplace_back(t[0], t[k]);
                        }
                    }
                    std::vector<double> sign(dim, 1.0);
                    for (Eigen::Index i = 0; i < dim; i++) {
                        for (auto [a, b] : pairs) {
                            if (((i >> a) & 1) && ((i >> b) & 1)) {
                                sign[i] = -sign[i];
                            }
                        }
                    }
                    st.each([&](Mat &rho) { diagonal_signs(rho, sign); });
                    break;
                }
                case Op::MeasureZ:
                case Op::MeasureX:
                    for (uint32_t q : t) {
                        int slot = last_use[m] >= 0 ? take_slot() : -1;
                        slot_of[m] = slot;
                        bool xb = ins.op == Op::MeasureX;
                        st.measure(
                            [&](const Mat &rho) {
                                if (!xb) {
                                    return split_z(rho, q);
                                }
                                Mat h = rho;
                                hadamard(h, q);
                                auto [a, b] = split_z(h, q);
                                hadamard(a, q);
                                hadamard(b, q);
                                return std::make_pair(std::move(a), std::move(b));
                            },
                            ins.arg, slot);
                        m++;
                    }
                    break;
                case Op::Mpp: {
                    DensePauli p;
                    for (size_t k = 0; k < t.size(); k++) {
                        if (ins.paulis[k] & 1) {
                            p.x |= uint64_t{1} << t[k];
                        }
                        if (ins.paulis[k] & 2) {
                            p.z |= uint64_t{1} << t[k];
                        }
                    }
                    int slot = last_use[m] >= 0 ? take_slot() : -1;
                    slot_of[m] = slot;
                    st.measure([&](const Mat &rho) { return split_pauli(rho, p); }, 0.0, slot);
                    m++;
                    break;
                }
                case Op::XError:
                case Op::ZError:
                    st.each([&](Mat &rho) {
                        for (uint32_t q : t) {
                            mix(rho, ins.arg, single(q, ins.op == Op::XError ? 1 : 2));
                        }
                    });
                    break;
                case Op::Depolarize1:
                    st.each([&](Mat &rho) {
                        for (uint32_t q : t) {
                            if (ins.arg <= 0) {
                                continue;
                            }
                            Mat acc = (1 - ins.arg) * rho;
                            for (int code = 1; code < 4; code++) {
                                acc += (ins.arg / 3) * conjugate(rho, single(q, code));
                            }
                            rho = std::move(acc);
                        }
                    });
                    break;
                case Op::Depolarize2:
                    st.each([&](Mat &rho) {
                        for (size_t k = 0; k + 1 < t.size(); k += 2) {
                            if (ins.arg <= 0) {
                                continue;
                            }
                            Mat acc = (1 - 15 * ins.arg / 16) * rho;
                            for (int code = 1; code < 16; code++) {
                                DensePauli a = single(t[k], code & 3), b = single(t[k + 1], code >> 2);
                                acc += (ins.arg / 16) * conjugate(rho, DensePauli{a.x | b.x, a.z | b.z});
                            }
                            rho = std::move(acc);
                        }
                    });
                    break;
                case Op::Noise: {
                    const auto &ch = c.channels.at(ins.index);
                    st.each([&](Mat &rho) {
                        for (const auto &stage : ch.stages) {
                            DensePauli p;
                            for (size_t j = 0; j < t.size(); j++) {
                                if ((stage.pauli.x >> j) & 1) {
                                    p.x |= uint64_t{1} << t[j];
                                }
                                if ((stage.pauli.z >> j) & 1) {
                                    p.z |= uint64_t{1} << t[j];
                                }
                            }
                            mix(rho, stage.prob, p);
                        }
                    });
                    break;
                }
                case Op::Detector:
                case Op::Observable: {
                    uint64_t mask = 0;
                    for (uint32_t r : ins.records) {
                        mask ^= uint64_t{1} << slot_of[r];
                    }
                    double prob = st.parity_probability(mask);
                    if (ins.op == Op::Detector) {
                        out.detectors.push_back(prob);
                    } else {
                        if (obs_seen[ins.index]) {
                            fail(ErrorCode::InvalidArgument, "dense oracle needs one instruction per observable");
                        }
                        obs_seen[ins.index] = true;
                        out.observables[ins.index] = prob;
                    }
                    for (uint32_t r : ins.records) {
                        if (last_use[r] == ann && slot_of[r] >= 0) {
                            st.release(slot_of[r]);
                            slot_busy[slot_of[r]] = false;
                            slot_of[r] = -1;
                        }
                    }
                    ann++;
                    break;
                }
            }
        }
    }
    return out;
}

}  // namespace

DenseMarginals dense_marginals(const Circuit &c, const std::vector<PauliString> &initial_stabilizers) {
    if (c.num_qubits > kDenseMaxQubits) {
        fail(ErrorCode::InvalidArgument,
             "dense oracle limited to " + std::to_string(kDenseMaxQubits) + " qubits");
    }
    c.validate();
    DenseMarginals ref = run(c.noiseless(), initial_stabilizers);
    DenseMarginals noisy = run(c, initial_stabilizers);
    auto relative = [](std::vector<double> &v, const std::vector<double> &r, const char *what) {
        for (size_t k = 0; k < v.size(); k++) {
            if (r[k] > 1e-9 && r[k] < 1 - 1e-9) {
                fail(ErrorCode::Circuit, std::string(what) + " " + std::to_string(k) + " is not deterministic");
            }
            if (r[k] > 0.5) {
                v[k] = 1 - v[k];
            }
        }
    };
    relative(noisy.detectors, ref.detectors, "detector");
    relative(noisy.observables, ref.observables, "observable");
    return noisy;
}

std::vector<PauliString> layout_stabilizers(const circuit::Layout &layout) {
    const uint32_t width = layout.num_qubits() + (layout.full_patch ? 1 : 0);
    if (width > PauliString::kMaxQubits) {
        fail(ErrorCode::InvalidArgument, "layout too wide for dense Pauli strings");
    }
    std::vector<PauliString> out;
    for (const auto &chk : layout.checks) {
        PauliString s = PauliString::identity(width);
        for (uint32_t q : chk.data()) {
            (chk.basis == circuit::CheckBasis::Z ? s.z : s.x) |= uint64_t{1} << q;
        }
        out.push_back(s);
    }
    if (layout.full_patch) {
        const uint64_t ref = uint64_t{1} << layout.num_qubits();
        PauliString zz = PauliString::identity(width), xx = PauliString::identity(width);
        for (uint32_t q : layout.logical_z()) {
            zz.z |= uint64_t{1} << q;
        }
        for (uint32_t q : layout.logical_x()) {
            xx.x |= uint64_t{1} << q;
        }
        zz.z |= ref;
        xx.x |= ref;
        out.push_back(zz);
        out.push_back(xx);
    }
    return out;
}

}  // namespace hopqec::sim
