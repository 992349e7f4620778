// Copyright 2026 The qkit Authors
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

// Statistical oracles shared by the unit and acceptance suites.

#pragma once

#include <cmath>
#include <cstdint>
#include <span>
#include <vector>

#include <boost/math/special_functions/binomial.hpp>
#include <boost/math/special_functions/gamma.hpp>

namespace qkit::oracle {

/// Pearson chi-square statistic. Bins with zero expectation must be empty
/// and are skipped; they do not count toward degrees of freedom.
struct ChiSquare {
    double statistic = 0;
    std::size_t dof = 0;
    double p_value = 1;
};

inline ChiSquare chi_square(std::span<const std::uint64_t> observed, std::span<const double> expected) {
    ChiSquare r;
    std::size_t bins = 0;
    for (std::size_t i = 0; i < observed.size(); ++i) {
        if (expected[i] <= 0) {
            if (observed[i] != 0) {
                r.p_value = 0;
                return r;
            }
            continue;
        }
        const double d = double(observed[i]) - expected[i];
        r.statistic += d * d / expected[i];
        ++bins;
    }
    r.dof = bins > 0 ? bins - 1 : 0;
    r.p_value = r.dof == 0 ? 1.0 : boost::math::gamma_q(double(r.dof) / 2.0, r.statistic / 2.0);
    return r;
}

/// Standard deviation of a binomial frequency over n trials.
inline double binomial_sigma(double p, std::uint64_t n) { return std::sqrt(p * (1 - p) / double(n)); }

inline bool within_sigmas(double observed, double p, std::uint64_t n, double k) {
    return std::abs(observed - p) <= k * binomial_sigma(p, n) + 1e-12;
}

inline double binomial_pmf(std::uint64_t n, std::uint64_t k, double p) {
    return boost::math::binomial_coefficient<double>(static_cast<unsigned>(n), static_cast<unsigned>(k)) *
           std::pow(p, double(k)) * std::pow(1 - p, double(n - k));
}

}  // namespace qkit::oracle
