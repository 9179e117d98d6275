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


#ifndef HOPQEC_EXPERIMENTS_FITS_H
#define HOPQEC_EXPERIMENTS_FITS_H

#include <iosfwd>
#include <vector>

#include "hopqec/experiments/campaign.h"

namespace hopqec::experiments {

struct Crossing {
    int d_low = 0;
    int d_high = 0;
    double p1 = 0;
};

struct ThresholdEstimate {
    double p_th = 0;    ///< mean of the pairwise crossings
    double spread = 0;  ///< half the range of the pairwise crossings
    std::vector<Crossing> crossings;
};

/// For each pair of adjacent distances, interpolates log p_L linearly in log p1 over the p1 values
/// both curves share (rows with p_L = 0 are skipped) and takes the first point where the
/// larger distance stops being better. Pairs without such a point are left out; if none has one
/// the threshold is undetermined.
ThresholdEstimate estimate_threshold(const std::vector<CampaignRow> &rows, Schedule schedule);

/// log10 p_L = log_c + m log10 p1 for one distance.
struct FitLine {
    int d = 0;
    double log_c = 0;
    double m = 0;
};

/// y = slope d + intercept.
struct Line {
    double slope = 0;
    double intercept = 0;
    double at(double d) const {
        return slope * d + intercept;
    }
};

/// Linear extrapolations of m(d) and log10 c(d).
struct MetaLines {
    Line m;
    Line log_c;

    /// log10 of the extrapolated p_L at (p1, d).
    double log10_p_l(double p1, double d) const;
};

/// Ordinary least squares of y on x (at least two distinct x values).
Line least_squares(const std::vector<double> &x, const std::vector<double> &y);

/// Per-distance fits of log10 p_L against log10 p1 using the rows of `schedule` with
/// 0 < p1 <= p1_max and p_L > 0. Every distance needs two such points.
std::vector<FitLine> fit_lines(const std::vector<CampaignRow> &rows, Schedule schedule, double p1_max);

/// Straight-line fits of m(d) and log c(d) across distances.
MetaLines fit_meta_lines(const std::vector<FitLine> &lines);

struct ResourceEstimate {
    double p1 = 0;
    int required_d = 0;
    long long physical_qubits = 0;
    int steps_per_round = 0;
    long long spacetime_volume = 0;
};

/// Smallest odd d >= 3 whose extrapolated p_L is at most `target_p_l`, with qubit count 2 d^2 - 1
/// and volume qubits x steps per round x d rounds. Fails with NoFiniteDistance when the
/// extrapolation never reaches the target.
ResourceEstimate resources(const MetaLines &meta, double p1, double target_p_l, Schedule schedule);

/// CSV of the fits: `kind,key,a,b` rows, `line,<d>,<log_c>,<m>` per distance then
/// `meta,m,<slope>,<intercept>` and `meta,log_c,<slope>,<intercept>`.
void write_fits_csv(std::ostream &out, const std::vector<FitLine> &lines, const MetaLines &meta,
                    const Metadata &metadata);

/// Reads the meta-lines of a fits CSV; when only per-distance lines are present they are fitted.
MetaLines read_fits_csv(std::istream &in);

}  // namespace hopqec::experiments

#endif
