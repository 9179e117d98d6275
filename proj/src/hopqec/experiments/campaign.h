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


#ifndef HOPQEC_EXPERIMENTS_CAMPAIGN_H
#define HOPQEC_EXPERIMENTS_CAMPAIGN_H

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "hopqec/circuit/builders.h"
#include "hopqec/circuit/circuit.h"

namespace hopqec::experiments {

enum class Schedule { Standard, Hop };

/// "std" or "hop".
const char *schedule_name(Schedule s);
Schedule parse_schedule(std::string_view text);

/// Syndrome-measurement steps per round of each schedule.
int steps_per_round(Schedule s);

struct CampaignConfig {
    std::vector<Schedule> schedules{Schedule::Hop};
    std::vector<int> distances;
    std::vector<double> p1_grid;
    uint64_t max_shots = 100000;
    uint64_t target_failures = 1000;
    uint64_t seed = 0;
    std::string output_dir;
    /// Worker threads; 0 picks the hardware concurrency.
    unsigned threads = 0;

    /// Distances odd and at least 3, p1 grid non-negative and strictly increasing, max_shots > 0.
    void validate() const;
};

/// JSON document:
///
///     {
///       "schedule": "hop",            // or "std", or a list such as ["std", "hop"]
///       "distances": [3, 5, 7],
///       "p1_grid": [4e-4, 6e-4, 8e-4],
///       "max_shots": 100000,          // optional
///       "target_failures": 1000,      // optional
///       "seed": 1,                    // optional
///       "output_dir": "out",          // optional
///       "threads": 0                  // optional
///     }
CampaignConfig parse_campaign_config(std::string_view json_text);
CampaignConfig load_campaign_config(const std::string &path);

/// Noise ingredients of one physical operating point, shared by every distance.
struct PointNoise {
    double p1 = 0;
    double p = 0;       ///< gate-channel strength, 10 p1
    double lambda = 0;  ///< matched two-qubit depolarizing strength for the standard schedule
    circuit::HopChannels hop;
};

/// Extracts and compiles the gate channels at p = 10 p1 (second order, negative shifts clamped).
/// The standard schedule only needs lambda; `with_hop_channels` = false skips the 3-qubit channel.
PointNoise prepare_point_noise(double p1, bool with_hop_channels = true);

/// `d` noisy rounds followed by the noiseless projection round.
circuit::Circuit campaign_circuit(Schedule s, int d, const PointNoise &noise);

struct CampaignRow {
    Schedule schedule = Schedule::Hop;
    int d = 0;
    double p1 = 0;
    uint64_t shots = 0;
    uint64_t failures = 0;
    double p_l = 0;
    double ci_low = 0;
    double ci_high = 0;
    size_t decomposition_warnings = 0;
};

/// Runs every (schedule, d, p1) point on a thread pool. Each point samples until max_shots or
/// until target_failures failures are observed (checked at 1024-shot batch boundaries) and reports
/// the 99.9% likelihood-ratio interval. Point seeds derive from the config seed and the point's
/// grid position, so results do not depend on the thread count. Rows come back ordered by
/// schedule, d, p1. Errors are rethrown with the failing point named.
std::vector<CampaignRow> run_campaign(
    const CampaignConfig &config, const std::function<void(const CampaignRow &)> &on_row = {});

using Metadata = std::vector<std::pair<std::string, std::string>>;

/// Tool version, seed, stopping rule and channel provenance for a campaign's CSV header.
Metadata campaign_metadata(const CampaignConfig &config);

/// CSV with `# key: value` metadata lines, then the header
/// schedule,d,p1,shots,failures,p_L,ci_low,ci_high,decomposition_warnings.
void write_campaign_csv(std::ostream &out, const std::vector<CampaignRow> &rows, const Metadata &metadata);
std::vector<CampaignRow> read_campaign_csv(std::istream &in, Metadata *metadata = nullptr);

}  // namespace hopqec::experiments

#endif
