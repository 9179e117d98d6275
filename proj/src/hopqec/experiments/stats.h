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


#ifndef HOPQEC_EXPERIMENTS_STATS_H
#define HOPQEC_EXPERIMENTS_STATS_H

#include <cstdint>

namespace hopqec::experiments {

struct Interval {
    double low = 0;
    double high = 0;
};

/// Quantile of the chi-squared distribution with one degree of freedom.
double chi2_one_dof_quantile(double level);

/// Binomial log-likelihood ln L(q) for `failures` successes out of `shots`, with 0 ln 0 = 0.
double binomial_log_likelihood(uint64_t failures, uint64_t shots, double q);

/// Relative-likelihood interval {q : ln L(q) >= ln L(q_hat) - chi2_1(level) / 2} around the
/// maximum-likelihood estimate q_hat = failures / shots. Each endpoint is found by bisection.
Interval confidence_interval(uint64_t failures, uint64_t shots, double level = 0.999);

}  // namespace hopqec::experiments

#endif
