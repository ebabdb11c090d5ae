// Copyright 2026 The xshadow Authors
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

#ifndef XSHADOW_STATS_H
#define XSHADOW_STATS_H

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace xshadow {

double mean(std::span<const double> values);
/// Sample standard deviation (n - 1 denominator); 0 for fewer than two values.
double sample_std(std::span<const double> values);

/// Standard deviation of `resamples` bootstrap means.
double bootstrap_stderr(std::span<const double> values, int resamples, std::uint64_t seed);

struct LinearFit {
    double slope = 0.0;
    double intercept = 0.0;
};

/// Least-squares line through (x, y).
LinearFit linear_fit(std::span<const double> x, std::span<const double> y);
/// Fit of log(y) against log(x).
LinearFit loglog_fit(std::span<const double> x, std::span<const double> y);

/// `count` sizes from lo to hi, evenly spaced in log, rounded, increasing.
std::vector<std::size_t> log_spaced_sizes(std::size_t lo, std::size_t hi, int count);

}  // namespace xshadow

#endif
