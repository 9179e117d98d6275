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


#include "hopqec/experiments/fits.h"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <istream>
#include <map>
#include <optional>
#include <ostream>
#include <set>
#include <sstream>
#include <string>

#include "hopqec/error.h"

namespace hopqec::experiments {

namespace {

// Shortest text that reads back to the same double.
std::string fmt(double v) {
    char buf[64];
    auto res = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, res.ptr);
}

// log10 p_L keyed by p1 for one (schedule, d) curve.
std::map<double, double> curve(const std::vector<CampaignRow> &rows, Schedule schedule, int d) {
    std::map<double, double> out;
    for (const auto &r : rows) {
        if (r.schedule == schedule && r.d == d && r.p1 > 0 && r.p_l > 0) {
            out[r.p1] = std::log10(r.p_l);
        }
    }
    return out;
}

std::optional<double> first_crossing(const std::map<double, double> &low, const std::map<double, double> &high) {
    std::vector<std::pair<double, double>> diff;  // (log10 p1, log p_L(high) - log p_L(low))
    for (const auto &[p1, y] : high) {
        auto it = low.find(p1);
        if (it != low.end()) {
            diff.emplace_back(std::log10(p1), y - it->second);
        }
    }
    for (size_t k = 0; k + 1 < diff.size(); k++) {
        auto [x0, g0] = diff[k];
        auto [x1, g1] = diff[k + 1];
        if (g0 < 0 && g1 >= 0) {
            double x = x0 + g0 / (g0 - g1) * (x1 - x0);
            return std::pow(10.0, x);
        }
    }
    return std::nullopt;
}

}  // namespace

ThresholdEstimate estimate_threshold(const std::vector<CampaignRow> &rows, Schedule schedule) {
    std::set<int> ds;
    for (const auto &r : rows) {
        if (r.schedule == schedule) {
            ds.insert(r.d);
        }
    }
    if (ds.size() < 2) {
        fail(ErrorCode::ThresholdUndetermined,
             std::string("threshold needs at least two distances for schedule ") + schedule_name(schedule));
    }
    ThresholdEstimate est;
    std::vector<int> dv(ds.begin(), ds.end());
    for (size_t k = 0; k + 1 < dv.size(); k++) {
        if (auto p = first_crossing(curve(rows, schedule, dv[k]), curve(rows, schedule, dv[k + 1]))) {
            est.crossings.push_back({dv[k], dv[k + 1], *p});
        }
    }
    if (est.crossings.empty()) {
        fail(ErrorCode::ThresholdUndetermined,
             std::string("no crossing of adjacent-distance curves within the p1 grid for schedule ") +
                 schedule_name(schedule));
    }
    double lo = est.crossings[0].p1, hi = lo, sum = 0;
    for (const auto &c : est.crossings) {
        sum += c.p1;
        lo = std::min(lo, c.p1);
        hi = std::max(hi, c.p1);
    }
    est.p_th = sum / static_cast<double>(est.crossings.size());
    est.spread = 0.5 * (hi - lo);
    return est;
}

double MetaLines::log10_p_l(double p1, double d) const {
    return log_c.at(d) + m.at(d) * std::log10(p1);
}

Line least_squares(const std::vector<double> &x, const std::vector<double> &y) {
    if (x.size() != y.size() || x.size() < 2) {
        fail(ErrorCode::InvalidArgument, "least squares needs at least two points");
    }
    double n = static_cast<double>(x.size());
    double mx = 0, my = 0;
    for (size_t k = 0; k < x.size(); k++) {
        mx += x[k];
        my += y[k];
    }
    mx /= n;
    my /= n;
    double sxx = 0, sxy = 0;
    for (size_t k = 0; k < x.size(); k++) {
        sxx += (x[k] - mx) * (x[k] - mx);
        sxy += (x[k] - mx) * (y[k] - my);
    }
    if (!(sxx > 0)) {
        fail(ErrorCode::InvalidArgument, "least squares needs two distinct abscissae");
    }
    Line line;
    line.slope = sxy / sxx;
    line.intercept = my - line.slope * mx;
    return line;
}

std::vector<FitLine> fit_lines(const std::vector<CampaignRow> &rows, Schedule schedule, double p1_max) {
    std::map<int, std::pair<std::vector<double>, std::vector<double>>> points;
    for (const auto &r : rows) {
        if (r.schedule != schedule) {
            continue;
        }
        auto &pt = points[r.d];
        if (r.p1 > 0 && r.p1 <= p1_max && r.p_l > 0) {
            pt.first.push_back(std::log10(r.p1));
            pt.second.push_back(std::log10(r.p_l));
        }
    }
    if (points.empty()) {
        fail(ErrorCode::InvalidArgument, std::string("no rows for schedule ") + schedule_name(schedule));
    }
    std::vector<FitLine> out;
    for (const auto &[d, xy] : points) {
        if (xy.first.size() < 2) {
            fail(ErrorCode::InvalidArgument,
                 "insufficient points for d=" + std::to_string(d) + ": need two rows with failures below p1_max");
        }
        Line l = least_squares(xy.first, xy.second);
        out.push_back({d, l.intercept, l.slope});
    }
    return out;
}

MetaLines fit_meta_lines(const std::vector<FitLine> &lines) {
    std::vector<double> d, m, c;
    for (const auto &l : lines) {
        d.push_back(l.d);
        m.push_back(l.m);
        c.push_back(l.log_c);
    }
    return {least_squares(d, m), least_squares(d, c)};
}

ResourceEstimate resources(const MetaLines &meta, double p1, double target_p_l, Schedule schedule) {
    if (!(p1 > 0 && p1 < 1) || !(target_p_l > 0)) {
        fail(ErrorCode::InvalidArgument, "resources need 0 < p1 < 1 and a positive target");
    }
    double target = std::log10(target_p_l);
    // log10 p_L(d) = a d + b is affine in d.
    double b = meta.log10_p_l(p1, 0);
    double a = meta.log10_p_l(p1, 1) - b;
    double d_real = 3;
    if (a * 3 + b > target) {
        if (!(a < 0)) {
            fail(ErrorCode::NoFiniteDistance,
                 "extrapolated logical rate does not decrease with distance at p1=" + std::to_string(p1));
        }
        d_real = (target - b) / a;
    }
    if (d_real > 1e6) {
        fail(ErrorCode::NoFiniteDistance, "required distance exceeds 10^6 at p1=" + std::to_string(p1));
    }
    int d = std::max(3, static_cast<int>(std::ceil(d_real - 1e-12)));
    if (d % 2 == 0) {
        d++;
    }
    // Guard against rounding at the boundary.
    while (d > 3 && a * (d - 2) + b <= target) {
        d -= 2;
    }
    while (a * d + b > target) {
        d += 2;
    }
    ResourceEstimate est;
    est.p1 = p1;
    est.required_d = d;
    est.physical_qubits = 2LL * d * d - 1;
    est.steps_per_round = steps_per_round(schedule);
    est.spacetime_volume = est.physical_qubits * est.steps_per_round * d;
    return est;
}

void write_fits_csv(std::ostream &out, const std::vector<FitLine> &lines, const MetaLines &meta,
                    const Metadata &metadata) {
    for (const auto &[key, value] : metadata) {
        out << "# " << key << ": " << value << "\n";
    }
    out << "kind,key,a,b\n";
    for (const auto &l : lines) {
        out << "line," << l.d << "," << fmt(l.log_c) << "," << fmt(l.m) << "\n";
    }
    out << "meta,m," << fmt(meta.m.slope) << "," << fmt(meta.m.intercept) << "\n";
    out << "meta,log_c," << fmt(meta.log_c.slope) << "," << fmt(meta.log_c.intercept) << "\n";
}

MetaLines read_fits_csv(std::istream &in) {
    std::vector<FitLine> lines;
    std::optional<Line> m, c;
    std::string line;
    bool header = false;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') {
            line.pop_back();
        }
        if (line.empty() || line[0] == '#') {
            continue;
        }
        if (!header) {
            if (line != "kind,key,a,b") {
                fail(ErrorCode::Io, "fits CSV: unexpected header '" + line + "'");
            }
            header = true;
            continue;
        }
        std::vector<std::string> cells;
        std::stringstream ss(line);
        std::string cell;
        while (std::getline(ss, cell, ',')) {
            cells.push_back(cell);
        }
        if (cells.size() != 4) {
            fail(ErrorCode::Io, "fits CSV: expected 4 columns in '" + line + "'");
        }
        try {
            double a = std::stod(cells[2]), b = std::stod(cells[3]);
            if (cells[0] == "line") {
                lines.push_back({std::stoi(cells[1]), a, b});
            } else if (cells[0] == "meta" && cells[1] == "m") {
                m = Line{a, b};
            } else if (cells[0] == "meta" && cells[1] == "log_c") {
                c = Line{a, b};
            } else {
                fail(ErrorCode::Io, "fits CSV: unknown row '" + line + "'");
            }
        } catch (const std::logic_error &) {
            fail(ErrorCode::Io, "fits CSV: malformed number in '" + line + "'");
        }
    }
    if (m && c) {
        return {*m, *c};
    }
    if (lines.size() >= 2) {
        return fit_meta_lines(lines);
    }
    fail(ErrorCode::Io, "fits CSV has neither meta-lines nor two per-distance lines");
}

}  // namespace hopqec::experiments
