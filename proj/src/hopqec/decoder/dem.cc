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

#include "hopqec/decoder/dem.h"

#include <algorithm>
#include <map>
#include <ostream>

#include "hopqec/error.h"
#include "hopqec/sim/frame_sim.h"

namespace hopqec::decoder {

using circuit::Circuit;
using circuit::Op;

std::vector<ElementaryFault> enumerate_faults(const Circuit &c) {
    std::vector<ElementaryFault> out;
    int64_t m = 0;
    for (uint32_t li = 0; li < c.layers.size(); li++) {
        const auto &ops = c.layers[li].ops;
        for (uint32_t oi = 0; oi < ops.size(); oi++) {
            const auto &ins = ops[oi];
            const auto &t = ins.targets;
            auto add = [&](double p, std::vector<std::pair<uint32_t, uint8_t>> paulis, int64_t record = -1) {
                if (p > 0) {
                    out.push_back(ElementaryFault{li, oi, p, std::move(paulis), record});
                }
            };
            switch (ins.op) {
                case Op::XError:
                case Op::ZError:
                    for (uint32_t q : t) {
                        add(ins.arg, {{q, ins.op == Op::XError ? 1 : 2}});
                    }
                    break;
                case Op::Depolarize1:
                    for (uint32_t q : t) {
                        for (uint8_t b = 1; b < 4; b++) {
                            add(ins.arg / 3, {{q, b}});
                        }
                    }
                    break;
                case Op::Depolarize2:
                    for (size_t k = 0; k + 1 < t.size(); k += 2) {
                        for (uint8_t code = 1; code < 16; code++) {
                            std::vector<std::pair<uint32_t, uint8_t>> ps;
                            if (code & 3) {
                                ps.emplace_back(t[k], code & 3);
                            }
                            if (code >> 2) {
                                ps.emplace_back(t[k + 1], code >> 2);
                            }
                            add(ins.arg / 16, std::move(ps));
                        }
                    }
                    break;
                case Op::Noise:
                    for (const auto &stage : c.channels.at(ins.index).stages) {
                        std::vector<std::pair<uint32_t, uint8_t>> ps;
                        for (size_t j = 0; j < t.size(); j++) {
                            uint8_t b = static_cast<uint8_t>(((stage.pauli.x >> j) & 1) | (((stage.pauli.z >> j) & 1) << 1));
                            if (b) {
                                ps.emplace_back(t[j], b);
                            }
                        }
                        add(stage.prob, std::move(ps));
                    }
                    break;
                case Op::MeasureZ:
                case Op::MeasureX:
                    for (size_t k = 0; k < t.size(); k++) {
                        add(ins.arg, {}, m + static_cast<int64_t>(k));
                    }
                    break;
                default:
                    break;
            }
            m += static_cast<int64_t>(ins.num_measurements());
        }
    }
    return out;
}

std::vector<Fault> fault_symptoms(const Circuit &c, const std::vector<ElementaryFault> &faults) {
    std::vector<Fault> out;
    out.reserve(faults.size());
    sim::FrameSimulator simulator(c);
    std::vector<sim::FrameInjection> lanes;
    sim::BitTable det, obs;
    for (size_t start = 0; start < faults.size(); start += sim::kBatchShots) {
        size_t end = std::min(faults.size(), start + sim::kBatchShots);
        lanes.clear();
        for (size_t k = start; k < end; k++) {
            const auto &f = faults[k];
            lanes.push_back(sim::FrameInjection{f.layer, f.op, f.paulis, f.record});
        }
        simulator.run_injected(lanes, det, obs);
        for (size_t s = 0; s < lanes.size(); s++) {
            Fault f;
            f.p = faults[start + s].p;
            f.detectors = det.row_bits(s);
            for (uint32_t o : obs.row_bits(s)) {
                f.observables |= uint64_t{1} << o;
            }
            out.push_back(std::move(f));
        }
    }
    return out;
}

DetectorErrorModel extract_dem(const Circuit &c) {
    if (c.num_observables() > 64) {
        fail(ErrorCode::InvalidArgument, "at most 64 observables are supported");
    }
    DetectorErrorModel dem;
    dem.num_detectors = static_cast<uint32_t>(c.num_detectors());
    dem.num_observables = static_cast<uint32_t>(c.num_observables());
    for (const auto &layer : c.layers) {
        for (const auto &ins : layer.ops) {
            if (ins.op == Op::Detector) {
                dem.detector_sectors.push_back(ins.index);
            }
        }
    }
    std::map<std::pair<std::vector<uint32_t>, uint64_t>, double> merged;
    for (auto &f : fault_symptoms(c, enumerate_faults(c))) {
        if (f.detectors.empty() && f.observables == 0) {
            continue;
        }
        auto key = std::make_pair(std::move(f.detectors), f.observables);
        auto it = merged.find(key);
        if (it == merged.end()) {
            merged.emplace(std::move(key), f.p);
        } else {
            it->second = merge_probability(it->second, f.p);
        }
    }
    for (auto &[key, p] : merged) {
        dem.faults.push_back(Fault{p, key.first, key.second});
    }
    return dem;
}

void write_dem(std::ostream &out, const DetectorErrorModel &dem) {
    out << "DETECTORS " << dem.num_detectors << "\nOBSERVABLES " << dem.num_observables << "\n";
    std::map<uint32_t, std::vector<uint32_t>> by_sector;
    for (uint32_t d = 0; d < dem.detector_sectors.size(); d++) {
        if (dem.detector_sectors[d] != 0) {
            by_sector[dem.detector_sectors[d]].push_back(d);
        }
    }
    for (const auto &[sector, dets] : by_sector) {
        out << "SECTOR " << sector;
        for (uint32_t d : dets) {
            out << " D" << d;
        }
        out << "\n";
    }
    out.precision(17);
    for (const auto &f : dem.faults) {
        out << "ERROR(" << f.p << ")";
        for (uint32_t d : f.detectors) {
            out << " D" << d;
        }
        for (uint32_t o = 0; o < 64; o++) {
            if ((f.observables >> o) & 1) {
                out << " L" << o;
            }
        }
        out << "\n";
    }
}

}  // namespace hopqec::decoder
