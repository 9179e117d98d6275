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


#include "hopqec/experiments/campaign.h"

#include <algorithm>
#include <charconv>
#include <atomic>
#include <cmath>
#include <exception>
#include <fstream>
#include <istream>
#include <map>
#include <mutex>
#include <ostream>
#include <sstream>
#include <thread>

#include "hopqec/channel_compile/compile.h"
#include "hopqec/circuit/layout.h"
#include "hopqec/decoder/decoder.h"
#include "hopqec/error.h"
#include "hopqec/experiments/stats.h"
#include "hopqec/open_system/channel_io.h"
#include "hopqec/open_system/hop_channel.h"
#include "hopqec/version.h"
#include "json.hpp"

namespace hopqec::experiments {

const char *schedule_name(Schedule s) {
    return s == Schedule::Hop ? "hop" : "std";
}

Schedule parse_schedule(std::string_view text) {
    if (text == "hop") {
        return Schedule::Hop;
    }
    if (text == "std" || text == "standard") {
        return Schedule::Standard;
    }
    fail(ErrorCode::InvalidArgument, "unknown schedule '" + std::string(text) + "' (expected std or hop)");
}

int steps_per_round(Schedule s) {
    return s == Schedule::Hop ? circuit::kHopLayersPerRound : circuit::kStandardLayersPerRound;
}

void CampaignConfig::validate() const {
    if (schedules.empty()) {
        fail(ErrorCode::InvalidArgument, "campaign needs at least one schedule");
    }
    if (distances.empty() || p1_grid.empty()) {
        fail(ErrorCode::InvalidArgument, "campaign needs at least one distance and one p1 value");
    }
    for (int d : distances) {
        if (d < 3 || d % 2 == 0) {
            fail(ErrorCode::InvalidArgument, "distances must be odd and at least 3, got " + std::to_string(d));
        }
    }
    for (size_t k = 0; k < p1_grid.size(); k++) {
        double p1 = p1_grid[k];
        // p = 10 p1 is a probability, and p_pm = p / 2.
        if (!std::isfinite(p1) || p1 < 0 || p1 > 0.1) {
            fail(ErrorCode::InvalidArgument, "p1 values must lie in [0, 0.1]");
        }
        if (k > 0 && !(p1 > p1_grid[k - 1])) {
            fail(ErrorCode::InvalidArgument, "p1_grid must be strictly increasing");
        }
    }
    if (max_shots == 0) {
        fail(ErrorCode::InvalidArgument, "max_shots must be positive");
    }
}

CampaignConfig parse_campaign_config(std::string_view json_text) {
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(json_text);
    } catch (const nlohmann::json::exception &e) {
        fail(ErrorCode::InvalidArgument, std::string("campaign config is not valid JSON: ") + e.what());
    }
    if (!doc.is_object()) {
        fail(ErrorCode::InvalidArgument, "campaign config must be a JSON object");
    }
    static const char *known[] = {"schedule", "distances", "p1_grid", "max_shots", "target_failures",
                                  "seed", "output_dir", "threads"};
    for (const auto &[key, value] : doc.items()) {
        if (std::find(std::begin(known), std::end(known), key) == std::end(known)) {
            fail(ErrorCode::InvalidArgument, "unknown campaign config key '" + key + "'");
        }
    }
    CampaignConfig cfg;
    try {
        if (doc.contains("schedule")) {
            const auto &s = doc.at("schedule");
            cfg.schedules.clear();
            if (s.is_array()) {
                for (const auto &item : s) {
                    cfg.schedules.push_back(parse_schedule(item.get<std::string>()));
                }
            } else {
                cfg.schedules.push_back(parse_schedule(s.get<std::string>()));
            }
        }
        cfg.distances = doc.at("distances").get<std::vector<int>>();
        cfg.p1_grid = doc.at("p1_grid").get<std::vector<double>>();
        cfg.max_shots = doc.value("max_shots", cfg.max_shots);
        cfg.target_failures = doc.value("target_failures", cfg.target_failures);
        cfg.seed = doc.value("seed", cfg.seed);
        cfg.output_dir = doc.value("output_dir", cfg.output_dir);
        cfg.threads = doc.value("threads", cfg.threads);
    } catch (const nlohmann::json::exception &e) {
        fail(ErrorCode::InvalidArgument, std::string("campaign config: ") + e.what());
    }
    cfg.validate();
    return cfg;
}

CampaignConfig load_campaign_config(const std::string &path) {
    std::ifstream in(path);
    if (!in) {
        fail(ErrorCode::Io, "cannot open campaign config " + path);
    }
    std::stringstream buf;
    buf << in.rdbuf();
    return parse_campaign_config(buf.str());
}

PointNoise prepare_point_noise(double p1, bool with_hop_channels) {
    PointNoise noise;
    noise.p1 = p1;
    noise.p = 10 * p1;
    noise.hop.five.num_qubits = 5;
    noise.hop.three.num_qubits = 3;
    if (noise.p == 0) {
        return noise;
    }
    auto five = open_system::hop_gate_channel(noise.p, 4);
    noise.lambda = five.lambda;
    if (with_hop_channels) {
        using channel_compile::NegativeShiftPolicy;
        noise.hop.five = channel_compile::corrected_compile(five.channel, noise.p, NegativeShiftPolicy::Clamp);
        noise.hop.three = channel_compile::corrected_compile(
            open_system::extract_hop_channel(noise.p, 2), noise.p, NegativeShiftPolicy::Clamp);
    }
    return noise;
}

circuit::Circuit campaign_circuit(Schedule s, int d, const PointNoise &noise) {
    auto layout = circuit::Layout::build(d);
    auto budget = circuit::NoiseBudget::from_p(noise.p, noise.lambda);
    if (s == Schedule::Hop) {
        return circuit::hop_circuit(layout, d, budget, noise.hop);
    }
    return circuit::standard_circuit(layout, d, budget);
}

namespace {

// Shortest text that reads back to the same double.
std::string fmt(double v) {
    char buf[64];
    auto res = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, res.ptr);
}

uint64_t mix(uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

uint64_t point_seed(uint64_t seed, Schedule s, int d, size_t p1_index) {
    return mix(mix(mix(seed) ^ static_cast<uint64_t>(s)) ^ (static_cast<uint64_t>(d) << 20) ^ p1_index);
}

std::string point_name(Schedule s, int d, double p1) {
    std::ostringstream os;
    os << "schedule=" << schedule_name(s) << " d=" << d << " p1=" << p1;
    return os.str();
}

// Runs job(k) for k in [0, n) on `threads` workers; the first exception wins.
template <typename Job>
void parallel_for(size_t n, unsigned threads, Job job) {
    std::atomic<size_t> next{0};
    std::exception_ptr error;
    std::mutex error_mutex;
    auto worker = [&] {
        while (true) {
            size_t k = next.fetch_add(1);
            if (k >= n) {
                return;
            }
            try {
                job(k);
            } catch (...) {
                std::lock_guard<std::mutex> lock(error_mutex);
                if (!error) {
                    error = std::current_exception();
                }
                next = n;
            }
        }
    };
    unsigned count = std::max(1u, std::min<unsigned>(threads, static_cast<unsigned>(n)));
    if (count == 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        for (unsigned t = 0; t < count; t++) {
            pool.emplace_back(worker);
        }
        for (auto &t : pool) {
            t.join();
        }
    }
    if (error) {
        std::rethrow_exception(error);
    }
}

}  // namespace

std::vector<CampaignRow> run_campaign(
    const CampaignConfig &config, const std::function<void(const CampaignRow &)> &on_row) {
    config.validate();
    unsigned threads = config.threads ? config.threads : std::max(1u, std::thread::hardware_concurrency());
    bool any_hop = std::find(config.schedules.begin(), config.schedules.end(), Schedule::Hop) !=
                   config.schedules.end();

    std::vector<PointNoise> noise(config.p1_grid.size());
    parallel_for(noise.size(), threads, [&](size_t k) {
        try {
            noise[k] = prepare_point_noise(config.p1_grid[k], any_hop);
        } catch (const Error &e) {
            fail(e.code(), "p1=" + std::to_string(config.p1_grid[k]) + ": " + e.what());
        }
    });

    struct Point {
        Schedule schedule;
        int d;
        size_t p1_index;
    };
    std::vector<Point> points;
    for (Schedule s : config.schedules) {
        for (int d : config.distances) {
            for (size_t k = 0; k < config.p1_grid.size(); k++) {
                points.push_back({s, d, k});
            }
        }
    }
    // Largest circuits first keeps the pool busy at the end.
    std::vector<size_t> order(points.size());
    for (size_t k = 0; k < order.size(); k++) {
        order[k] = k;
    }
    std::stable_sort(order.begin(), order.end(), [&](size_t a, size_t b) { return points[a].d > points[b].d; });

    std::vector<CampaignRow> rows(points.size());
    std::mutex callback_mutex;
    parallel_for(order.size(), threads, [&](size_t slot) {
        const Point &pt = points[order[slot]];
        double p1 = config.p1_grid[pt.p1_index];
        CampaignRow row;
        row.schedule = pt.schedule;
        row.d = pt.d;
        row.p1 = p1;
        try {
            auto c = campaign_circuit(pt.schedule, pt.d, noise[pt.p1_index]);
            auto stats = decoder::logical_failure_rate(
                c, config.max_shots, point_seed(config.seed, pt.schedule, pt.d, pt.p1_index),
                config.target_failures);
            row.shots = stats.shots;
            row.failures = stats.failures;
            row.p_l = stats.p_l;
            row.decomposition_warnings = stats.decomposition_warnings;
            auto ci = confidence_interval(stats.failures, stats.shots);
            row.ci_low = ci.low;
            row.ci_high = ci.high;
        } catch (const Error &e) {
            fail(e.code(), point_name(pt.schedule, pt.d, p1) + ": " + e.what());
        }
        rows[order[slot]] = row;
        if (on_row) {
            std::lock_guard<std::mutex> lock(callback_mutex);
            on_row(row);
        }
    });
    return rows;
}

Metadata campaign_metadata(const CampaignConfig &config) {
    auto join = [](const auto &values) {
        std::ostringstream os;
        for (size_t k = 0; k < values.size(); k++) {
            os << (k ? " " : "") << values[k];
        }
        return os.str();
    };
    std::vector<std::string> names;
    for (Schedule s : config.schedules) {
        names.emplace_back(schedule_name(s));
    }
    return {
        {"tool", std::string("hopqec ") + kVersion},
        {"seed", std::to_string(config.seed)},
        {"schedules", join(names)},
        {"distances", join(config.distances)},
        {"rounds", "d noisy rounds plus one noiseless round"},
        {"max_shots", std::to_string(config.max_shots)},
        {"target_failures", std::to_string(config.target_failures)},
        {"confidence", "0.999 binomial likelihood ratio"},
        {"noise", "p = 10 p1; p_pm = p / 2; standard p2 = lambda matched to the 5-qubit HOP fidelity"},
        {"channels", std::string("Lindblad extraction (") + open_system::kDefaultNormalization +
                         "), Pauli twirl, second-order compilation with negative shifts clamped"},
    };
}

void write_campaign_csv(std::ostream &out, const std::vector<CampaignRow> &rows, const Metadata &metadata) {
    for (const auto &[key, value] : metadata) {
        out << "# " << key << ": " << value << "\n";
    }
    out << "schedule,d,p1,shots,failures,p_L,ci_low,ci_high,decomposition_warnings\n";
    for (const auto &r : rows) {
        out << schedule_name(r.schedule) << "," << r.d << "," << fmt(r.p1) << "," << r.shots << "," << r.failures
            << "," << fmt(r.p_l) << "," << fmt(r.ci_low) << "," << fmt(r.ci_high) << "," << r.decomposition_warnings
            << "\n";
    }
}

std::vector<CampaignRow> read_campaign_csv(std::istream &in, Metadata *metadata) {
    std::vector<CampaignRow> rows;
    std::string line;
    bool header_seen = false;
    size_t line_no = 0;
    while (std::getline(in, line)) {
        line_no++;
        if (!line.empty() && line.back() == '\r') {
            line.pop_back();
        }
        if (line.empty()) {
            continue;
        }
        if (line[0] == '#') {
            auto colon = line.find(':');
            if (metadata && colon != std::string::npos) {
                size_t start = line.find_first_not_of(' ', 1);
                size_t value = line.find_first_not_of(' ', colon + 1);
                metadata->emplace_back(line.substr(start, colon - start),
                                       value == std::string::npos ? "" : line.substr(value));
            }
            continue;
        }
        if (!header_seen) {
            if (line.rfind("schedule,d,p1,shots,failures", 0) != 0) {
                fail(ErrorCode::Io, "campaign CSV: unexpected header '" + line + "'");
            }
            header_seen = true;
            continue;
        }
        std::vector<std::string> cells;
        std::stringstream ss(line);
        std::string cell;
        while (std::getline(ss, cell, ',')) {
            cells.push_back(cell);
        }
        if (cells.size() < 8) {
            fail(ErrorCode::Io, "campaign CSV line " + std::to_string(line_no) + ": expected at least 8 columns");
        }
        CampaignRow r;
        try {
            r.schedule = parse_schedule(cells[0]);
            r.d = std::stoi(cells[1]);
            r.p1 = std::stod(cells[2]);
            r.shots = std::stoull(cells[3]);
            r.failures = std::stoull(cells[4]);
            r.p_l = std::stod(cells[5]);
            r.ci_low = std::stod(cells[6]);
            r.ci_high = std::stod(cells[7]);
            r.decomposition_warnings = cells.size() > 8 ? std::stoull(cells[8]) : 0;
        } catch (const std::logic_error &) {
            fail(ErrorCode::Io, "campaign CSV line " + std::to_string(line_no) + ": malformed number");
        }
        rows.push_back(r);
    }
    if (!header_seen) {
        fail(ErrorCode::Io, "campaign CSV: missing header");
    }
    return rows;
}

}  // namespace hopqec::experiments
