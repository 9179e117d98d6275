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

#include "hopqec/sim/frame_sim.h"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstring>
#include <istream>
#include <ostream>
#include <random>

#include "hopqec/error.h"

namespace hopqec::sim {

using circuit::Circuit;
using circuit::Instruction;
using circuit::Op;

BitTable::BitTable(size_t num_rows, size_t num_cols)
    : rows(num_rows), cols(num_cols), row_words((num_cols + 63) / 64), words(num_rows * row_words, 0) {
}

bool BitTable::row_is_zero(size_t r) const {
    const uint64_t *p = row(r);
    for (size_t w = 0; w < row_words; w++) {
        if (p[w]) {
            return false;
        }
    }
    return true;
}

std::vector<uint32_t> BitTable::row_bits(size_t r) const {
    std::vector<uint32_t> out;
    const uint64_t *p = row(r);
    for (size_t w = 0; w < row_words; w++) {
        for (uint64_t v = p[w]; v; v &= v - 1) {
            out.push_back(static_cast<uint32_t>(w * 64 + std::countr_zero(v)));
        }
    }
    return out;
}

void BitTable::append(const BitTable &other) {
    if (rows == 0 && words.empty()) {
        cols = other.cols;
        row_words = other.row_words;
    }
    if (other.cols != cols) {
        fail(ErrorCode::InvalidArgument, "cannot append bit tables of different widths");
    }
    words.insert(words.end(), other.words.begin(), other.words.end());
    rows += other.rows;
}

namespace {

uint64_t splitmix64(uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

uint64_t stream_seed(uint64_t seed, uint64_t batch, uint64_t layer) {
    return splitmix64(splitmix64(splitmix64(seed) ^ batch) ^ (layer * 0x632be59bd9b4e019ULL));
}

double uniform_open0(std::mt19937_64 &rng) {
    // (0, 1]
    return (static_cast<double>(rng() >> 11) + 1.0) * 0x1.0p-53;
}

/// Calls f(k) for each index k in [0, n) independently selected with probability p.
template <typename F>
void for_each_hit(std::mt19937_64 &rng, double p, uint64_t n, F &&f) {
    if (p <= 0 || n == 0) {
        return;
    }
    if (p >= 1) {
        for (uint64_t k = 0; k < n; k++) {
            f(k);
        }
        return;
    }
    const double log_q = std::log1p(-p);
    uint64_t k = 0;
    while (true) {
        double gap = std::floor(std::log(uniform_open0(rng)) / log_q);
        if (gap >= static_cast<double>(n - k)) {
            return;
        }
        k += static_cast<uint64_t>(gap);
        f(k);
        k++;
        if (k >= n) {
            return;
        }
    }
}

inline void flip_bit(uint64_t *lanes, size_t shot) {
    lanes[shot / 64] ^= uint64_t{1} << (shot % 64);
}

}  // namespace

FrameSimulator::FrameSimulator(const Circuit &c)
    : circuit_(c), num_det_(c.num_detectors()), num_obs_(c.num_observables()) {
    for (const auto &layer : c.layers) {
        for (const auto &ins : layer.ops) {
            if (ins.op == Op::Noise && ins.index >= c.channels.size()) {
                fail(ErrorCode::Circuit, "noise instruction refers to an unknown channel");
            }
        }
    }
}

void FrameSimulator::run_batch(
    uint64_t seed, uint64_t batch_index, size_t shots, bool gauge, BitTable &detectors, BitTable &observables) {
    run(gauge ? Mode::Gauge : Mode::Noisy, seed, batch_index, shots, nullptr, detectors, observables);
}

void FrameSimulator::run_injected(
    const std::vector<FrameInjection> &lanes, BitTable &detectors, BitTable &observables) {
    for (const auto &f : lanes) {
        if (f.layer >= circuit_.layers.size() || f.op >= circuit_.layers[f.layer].ops.size()) {
            fail(ErrorCode::InvalidArgument, "injection position outside the circuit");
        }
        for (auto [q, b] : f.paulis) {
            if (q >= circuit_.num_qubits) {
                fail(ErrorCode::InvalidArgument, "injection qubit outside the circuit");
            }
        }
    }
    run(Mode::Injected, 0, 0, lanes.size(), &lanes, detectors, observables);
}

void FrameSimulator::run(Mode mode, uint64_t seed, uint64_t batch_index, size_t shots,
                         const std::vector<FrameInjection> *lanes, BitTable &detectors, BitTable &observables) {
    if (shots == 0 || shots > kBatchShots) {
        fail(ErrorCode::InvalidArgument, "batch size must lie in [1, 1024]");
    }
    const bool gauge = mode == Mode::Gauge;
    const bool noiseless = mode != Mode::Noisy;
    // Injection lanes ordered by position.
    std::vector<std::pair<uint64_t, size_t>> pending;
    if (lanes) {
        for (size_t s = 0; s < lanes->size(); s++) {
            pending.emplace_back((uint64_t{(*lanes)[s].layer} << 32) | (*lanes)[s].op, s);
        }
        std::sort(pending.begin(), pending.end());
    }
    size_t next_pending = 0;
    constexpr size_t W = kBatchWords;
    const size_t nq = circuit_.num_qubits;
    x_.assign(nq * W, 0);
    z_.assign(nq * W, 0);
    records_.assign(circuit_.num_measurements() * W, 0);
    detectors = BitTable(shots, num_det_);
    observables = BitTable(shots, num_obs_);

    auto X = [&](uint32_t q) { return x_.data() + q * W; };
    auto Z = [&](uint32_t q) { return z_.data() + q * W; };
    size_t m = 0;
    size_t det = 0;
    std::vector<uint64_t> acc(W);

    auto emit = [&](BitTable &table, size_t col, const std::vector<uint32_t> &records) {
        std::fill(acc.begin(), acc.end(), 0);
        for (uint32_t r : records) {
            const uint64_t *src = records_.data() + size_t{r} * W;
            for (size_t w = 0; w < W; w++) {
                acc[w] ^= src[w];
            }
        }
        for (size_t w = 0; w < W; w++) {
            for (uint64_t v = acc[w]; v; v &= v - 1) {
                size_t s = w * 64 + std::countr_zero(v);
                if (s < shots) {
                    table.flip(s, col);
                }
            }
        }
    };

    auto inject_after = [&](size_t li, size_t oi) {
        const uint64_t key = (uint64_t{li} << 32) | oi;
        while (next_pending < pending.size() && pending[next_pending].first == key) {
            size_t s = pending[next_pending++].second;
            const FrameInjection &f = (*lanes)[s];
            for (auto [q, b] : f.paulis) {
                if (b & 1) {
                    flip_bit(X(q), s);
                }
                if (b & 2) {
                    flip_bit(Z(q), s);
                }
            }
            if (f.record >= 0) {
                flip_bit(records_.data() + static_cast<size_t>(f.record) * W, s);
            }
        }
    };

    for (size_t li = 0; li < circuit_.layers.size(); li++) {
        std::mt19937_64 rng(stream_seed(seed, batch_index, li));
        auto random_words = [&](uint64_t *dst, bool xor_in) {
            for (size_t w = 0; w < W; w++) {
                uint64_t v = rng();
                dst[w] = xor_in ? dst[w] ^ v : v;
            }
        };
        const auto &ops = circuit_.layers[li].ops;
        for (size_t oi = 0; oi < ops.size(); oi++) {
            const Instruction &ins = ops[oi];
            const auto &t = ins.targets;
            if (noiseless && ins.is_noise()) {
                inject_after(li, oi);
                continue;
            }
            switch (ins.op) {
                case Op::ResetZ:
                    for (uint32_t q : t) {
                        std::memset(X(q), 0, W * 8);
                        if (gauge) {
                            random_words(Z(q), false);
                        } else {
                            std::memset(Z(q), 0, W * 8);
                        }
                    }
                    break;
                case Op::ResetX:
                    for (uint32_t q : t) {
                        std::memset(Z(q), 0, W * 8);
                        if (gauge) {
                            random_words(X(q), false);
                        } else {
                            std::memset(X(q), 0, W * 8);
                        }
                    }
                    break;
                case Op::H:
                    for (uint32_t q : t) {
                        std::swap_ranges(X(q), X(q) + W, Z(q));
                    }
                    break;
                case Op::TwirlId:
                    break;
                case Op::CX:
                    for (size_t k = 0; k + 1 < t.size(); k += 2) {
                        uint64_t *xc = X(t[k]), *zc = Z(t[k]), *xt = X(t[k + 1]), *zt = Z(t[k + 1]);
                        for (size_t w = 0; w < W; w++) {
                            xt[w] ^= xc[w];
                            zc[w] ^= zt[w];
                        }
                    }
                    break;
                case Op::CZ:
                    for (size_t k = 0; k + 1 < t.size(); k += 2) {
                        uint64_t *xa = X(t[k]), *za = Z(t[k]), *xb = X(t[k + 1]), *zb = Z(t[k + 1]);
                        for (size_t w = 0; w < W; w++) {
                            za[w] ^= xb[w];
                            zb[w] ^= xa[w];
                        }
                    }
                    break;
                case Op::Hop: {
                    // CZ between the check qubit and each data qubit.
                    uint64_t *xa = X(t[0]), *za = Z(t[0]);
                    for (size_t k = 1; k < t.size(); k++) {
                        uint64_t *xb = X(t[k]), *zb = Z(t[k]);
                        for (size_t w = 0; w < W; w++) {
                            za[w] ^= xb[w];
                            zb[w] ^= xa[w];
                        }
                    }
                    break;
                }
                case Op::MeasureZ:
                case Op::MeasureX:
                    for (uint32_t q : t) {
                        uint64_t *rec = records_.data() + m * W;
                        const bool zb = ins.op == Op::MeasureZ;
                        std::memcpy(rec, zb ? X(q) : Z(q), W * 8);
                        if (gauge) {
                            random_words(zb ? Z(q) : X(q), true);
                        }
                        m++;
                    }
                    if (!noiseless) {
                        const size_t first = m - t.size();
                        for_each_hit(rng, ins.arg, uint64_t{t.size()} * kBatchShots, [&](uint64_t k) {
                            flip_bit(records_.data() + (first + k / kBatchShots) * W, k % kBatchShots);
                        });
                    }
                    break;
                case Op::Mpp: {
                    uint64_t *rec = records_.data() + m * W;
                    std::memset(rec, 0, W * 8);
                    for (size_t k = 0; k < t.size(); k++) {
                        uint8_t b = ins.paulis[k];
                        if (b & 2) {  // Z component reads the X frame
                            for (size_t w = 0; w < W; w++) {
                                rec[w] ^= X(t[k])[w];
                            }
                        }
                        if (b & 1) {
                            for (size_t w = 0; w < W; w++) {
                                rec[w] ^= Z(t[k])[w];
                            }
                        }
                    }
                    if (gauge) {
                        std::vector<uint64_t> r(W);
                        random_words(r.data(), false);
                        for (size_t k = 0; k < t.size(); k++) {
                            for (size_t w = 0; w < W; w++) {
                                if (ins.paulis[k] & 1) {
                                    X(t[k])[w] ^= r[w];
                                }
                                if (ins.paulis[k] & 2) {
                                    Z(t[k])[w] ^= r[w];
                                }
                            }
                        }
                    }
                    m++;
                    break;
                }
                case Op::XError:
                case Op::ZError: {
                    const bool xe = ins.op == Op::XError;
                    for_each_hit(rng, ins.arg, uint64_t{t.size()} * kBatchShots, [&](uint64_t k) {
                        uint32_t q = t[k / kBatchShots];
                        flip_bit(xe ? X(q) : Z(q), k % kBatchShots);
                    });
                    break;
                }
                case Op::Depolarize1:
                    for_each_hit(rng, ins.arg, uint64_t{t.size()} * kBatchShots, [&](uint64_t k) {
                        uint32_t q = t[k / kBatchShots];
                        size_t s = k % kBatchShots;
                        uint64_t c = rng() % 3 + 1;  // 1 = X, 2 = Z, 3 = Y
                        if (c & 1) {
                            flip_bit(X(q), s);
                        }
                        if (c & 2) {
                            flip_bit(Z(q), s);
                        }
                    });
                    break;
                case Op::Depolarize2: {
                    const size_t pairs = t.size() / 2;
                    for_each_hit(rng, ins.arg * 15.0 / 16.0, uint64_t{pairs} * kBatchShots, [&](uint64_t k) {
                        size_t pr = k / kBatchShots;
                        size_t s = k % kBatchShots;
                        uint64_t c = rng() % 15 + 1;
                        uint32_t qs[2] = {t[2 * pr], t[2 * pr + 1]};
                        uint64_t codes[2] = {c & 3, c >> 2};
                        for (int j = 0; j < 2; j++) {
                            if (codes[j] & 1) {
                                flip_bit(X(qs[j]), s);
                            }
                            if (codes[j] & 2) {
                                flip_bit(Z(qs[j]), s);
                            }
                        }
                    });
                    break;
                }
                case Op::Noise: {
                    const auto &ch = circuit_.channels[ins.index];
                    for (const auto &stage : ch.stages) {
                        for_each_hit(rng, stage.prob, kBatchShots, [&](uint64_t s) {
                            for (size_t j = 0; j < t.size(); j++) {
                                if ((stage.pauli.x >> j) & 1) {
                                    flip_bit(X(t[j]), s);
                                }
                                if ((stage.pauli.z >> j) & 1) {
                                    flip_bit(Z(t[j]), s);
                                }
                            }
                        });
                    }
                    break;
                }
                case Op::Detector:
                    emit(detectors, det++, ins.records);
                    break;
                case Op::Observable:
                    emit(observables, ins.index, ins.records);
                    break;
            }
            inject_after(li, oi);
        }
    }
}

void validate_determinism(const Circuit &c, uint64_t seed, size_t shots) {
    FrameSimulator sim(c);
    BitTable det, obs;
    sim.run_batch(seed, 0, std::min(shots, kBatchShots), true, det, obs);
    for (size_t s = 0; s < det.rows; s++) {
        auto bits = det.row_bits(s);
        if (!bits.empty()) {
            fail(ErrorCode::Circuit, "detector " + std::to_string(bits[0]) + " is not deterministic");
        }
        bits = obs.row_bits(s);
        if (!bits.empty()) {
            fail(ErrorCode::Circuit, "observable " + std::to_string(bits[0]) + " is not deterministic");
        }
    }
}

void sample_batches(
    const Circuit &c, uint64_t shots, uint64_t seed, const BatchSink &sink, const SampleOptions &options) {
    if (options.validate) {
        validate_determinism(c);
    }
    FrameSimulator sim(c);
    BitTable det, obs;
    for (uint64_t batch = 0, done = 0; done < shots; batch++) {
        size_t n = static_cast<size_t>(std::min<uint64_t>(kBatchShots, shots - done));
        sim.run_batch(seed, batch, n, false, det, obs);
        sink(det, obs);
        done += n;
    }
}

SampleResult sample(const Circuit &c, uint64_t shots, uint64_t seed, const SampleOptions &options) {
    SampleResult r;
    r.shots = shots;
    r.seed = seed;
    r.detectors = BitTable(0, c.num_detectors());
    r.observables = BitTable(0, c.num_observables());
    sample_batches(
        c, shots, seed,
        [&](const BitTable &det, const BitTable &obs) {
            r.detectors.append(det);
            r.observables.append(obs);
        },
        options);
    return r;
}

namespace {

constexpr char kMagic[8] = {'H', 'O', 'P', 'Q', 'S', 'M', 'P', '1'};

template <typename T>
void put(std::ostream &out, T v) {
    unsigned char buf[sizeof(T)];
    for (size_t k = 0; k < sizeof(T); k++) {
        buf[k] = static_cast<unsigned char>((static_cast<uint64_t>(v) >> (8 * k)) & 0xff);
    }
    out.write(reinterpret_cast<const char *>(buf), sizeof(T));
}

template <typename T>
T get(std::istream &in) {
    unsigned char buf[sizeof(T)];
    if (!in.read(reinterpret_cast<char *>(buf), sizeof(T))) {
        fail(ErrorCode::Io, "truncated sample file header");
    }
    uint64_t v = 0;
    for (size_t k = 0; k < sizeof(T); k++) {
        v |= uint64_t{buf[k]} << (8 * k);
    }
    return static_cast<T>(v);
}

std::vector<unsigned char> row_bytes(const SampleResult &r, size_t s) {
    const size_t nd = r.detectors.cols, no = r.observables.cols;
    std::vector<unsigned char> row((nd + no + 7) / 8, 0);
    for (size_t k = 0; k < nd + no; k++) {
        bool b = k < nd ? r.detectors.get(s, k) : r.observables.get(s, k - nd);
        if (b) {
            row[k / 8] |= static_cast<unsigned char>(1u << (k % 8));
        }
    }
    return row;
}

}  // namespace

void write_samples(std::ostream &out, const SampleResult &r) {
    out.write(kMagic, 8);
    put<uint64_t>(out, r.shots);
    put<uint64_t>(out, r.seed);
    put<uint32_t>(out, static_cast<uint32_t>(r.detectors.cols));
    put<uint32_t>(out, static_cast<uint32_t>(r.observables.cols));
    for (size_t s = 0; s < r.shots; s++) {
        auto row = row_bytes(r, s);
        out.write(reinterpret_cast<const char *>(row.data()), static_cast<std::streamsize>(row.size()));
    }
    if (!out) {
        fail(ErrorCode::Io, "failed to write samples");
    }
}

SampleResult read_samples(std::istream &in) {
    char magic[8];
    if (!in.read(magic, 8) || std::memcmp(magic, kMagic, 8) != 0) {
        fail(ErrorCode::Io, "not a sample file");
    }
    SampleResult r;
    r.shots = get<uint64_t>(in);
    r.seed = get<uint64_t>(in);
    size_t nd = get<uint32_t>(in), no = get<uint32_t>(in);
    r.detectors = BitTable(r.shots, nd);
    r.observables = BitTable(r.shots, no);
    std::vector<unsigned char> row((nd + no + 7) / 8);
    for (size_t s = 0; s < r.shots; s++) {
        if (!in.read(reinterpret_cast<char *>(row.data()), static_cast<std::streamsize>(row.size()))) {
            fail(ErrorCode::Io, "truncated sample file");
        }
        for (size_t k = 0; k < nd + no; k++) {
            if ((row[k / 8] >> (k % 8)) & 1) {
                if (k < nd) {
                    r.detectors.flip(s, k);
                } else {
                    r.observables.flip(s, k - nd);
                }
            }
        }
    }
    return r;
}

void write_samples_hex(std::ostream &out, const SampleResult &r) {
    static const char *kHex = "0123456789abcdef";
    for (size_t s = 0; s < r.shots; s++) {
        for (unsigned char b : row_bytes(r, s)) {
            out << kHex[b >> 4] << kHex[b & 15];
        }
        out << '\n';
    }
}

}  // namespace hopqec::sim
