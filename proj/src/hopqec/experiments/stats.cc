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


#include "hopqec/experiments/stats.h"

#include <cmath>
#include <string>

#include <boost/math/distributions/chi_squared.hpp>

#include "hopqec/error.h"

namespace hopqec::experiments {

double chi2_one_dof_quantile(double level) {
    if (!(level > 0 && level < 1)) {
        fail(ErrorCode::InvalidArgument, "confidence level must lie in (0, 1), got " + std::to_string(level));
    }
    return boost::math::quantile(boost::math::chi_squared_distribution<double>(1.0), level);
}

double binomial_log_likelihood(uint64_t failures, uint64_t shots, double q) {
    double k = static_cast<double>(failures);
    double n = static_cast<double>(shots);
    double value = 0;
    if (failures > 0) {
        value += k * std::log(q);
    }
    if (failures < shots) {
        value += (n - k) * std::log1p(-q);
    }
    return value;
}

namespace {

// Finds the point between `inside` (above the cut) and `outside` (below it) where the
// log-likelihood crosses `cut`.
double bisect(uint64_t failures, uint64_t shots, double cut, double inside, double outside) {
    for (int it = 0; it < 200; it++) {
        double mid = 0.5 * (inside + outside);
        if (mid == inside || mid == outside) {
            break;
        }
        if (binomial_log_likelihood(failures, shots, mid) >= cut) {
            inside = mid;
        } else {
            outside = mid;
        }
    }
    return 0.5 * (inside + outside);
}

}  // namespace

Interval confidence_interval(uint64_t failures, uint64_t shots, double level) {
    if (shots == 0) {
        fail(ErrorCode::InvalidArgument, "confidence interval needs at least one shot");
    }
    if (failures > shots) {
        fail(ErrorCode::InvalidArgument, "failures exceed shots");
    }
    double q_hat = static_cast<double>(failures) / static_cast<double>(shots);
    double cut = binomial_log_likelihood(failures, shots, q_hat) - 0.5 * chi2_one_dof_quantile(level);

    Interval out;
    // The likelihood is finite and positive at both ends only when 0 < failures < shots; at the
    // extremes the corresponding endpoint is the boundary itself.
    out.low = failures == 0 ? 0.0 : bisect(failures, shots, cut, q_hat, 0.0);
    out.high = failures == shots ? 1.0 : bisect(failures, shots, cut, q_hat, 1.0);
    return out;
}

}  // namespace hopqec::experiments
