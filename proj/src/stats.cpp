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

#include "xshadow/stats.h"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "xshadow/kernels.h"

namespace xshadow {

double mean(std::span<const double> values) {
    if (values.empty()) {
        throw std::invalid_argument("mean of an empty sample");
    }
    return kernels::block_sum(values) / static_cast<double>(values.size());
}

double sample_std(std::span<const double> values) {
    if (values.size() < 2) {
        return 0.0;
    }
    const double m = mean(values);
    double ss = 0.0;
    for (double v : values) {
        ss += (v - m) * (v - m);
    }
    return std::sqrt(ss / static_cast<double>(values.size() - 1));
}

double bootstrap_stderr(std::span<const double> values, int resamples, std::uint64_t seed) {
    if (values.empty()) {
        throw std::invalid_argument("bootstrap of an empty sample");
    }
    if (resamples < 2) {
        return 0.0;
    }
    const auto means = kernels::bootstrap_means(values, resamples, seed);
    return sample_std(means);
}

LinearFit linear_fit(std::span<const double> x, std::span<const double> y) {
    if (x.size() != y.size() || x.size() < 2) {
        throw std::invalid_argument("linear fit needs at least two paired points");
    }
    const double n = static_cast<double>(x.size());
    double sx = 0.0, sy = 0.0;
    for (std::size_t k = 0; k < x.size(); ++k) {
        sx += x[k];
        sy += y[k];
    }
    const double mx = sx / n, my = sy / n;
    double sxx = 0.0, sxy = 0.0;
    for (std::size_t k = 0; k < x.size(); ++k) {
        sxx += (x[k] - mx) * (x[k] - mx);
        sxy += (x[k] - mx) * (y[k] - my);
    }
    if (sxx == 0.0) {
        throw std::invalid_argument("linear fit with constant x");
    }
    const double slope = sxy / sxx;
    return {slope, my - slope * mx};
}

LinearFit loglog_fit(std::span<const double> x, std::span<const double> y) {
    std::vector<double> lx, ly;
    for (std::size_t k = 0; k < x.size() && k < y.size(); ++k) {
        if (!(x[k] > 0.0) || !(y[k] > 0.0)) {
            throw std::invalid_argument("log-log fit needs positive values");
        }
        lx.push_back(std::log(x[k]));
        ly.push_back(std::log(y[k]));
    }
    if (x.size() != y.size()) {
        throw std::invalid_argument("log-log fit needs paired points");
    }
    return linear_fit(lx, ly);
}

std::vector<std::size_t> log_spaced_sizes(std::size_t lo, std::size_t hi, int count) {
    if (lo < 1 || hi < lo || count < 1) {
        throw std::invalid_argument("invalid size grid");
    }
    std::vector<std::size_t> out;
    for (int k = 0; k < count; ++k) {
        const double frac = count == 1 ? 1.0 : static_cast<double>(k) / (count - 1);
        const double v = std::exp(std::log(static_cast<double>(lo)) * (1.0 - frac) + std::log(static_cast<double>(hi)) * frac);
        const auto size = static_cast<std::size_t>(std::llround(v));
        if (out.empty() || size > out.back()) {
            out.push_back(size);
        }
    }
    return out;
}

}  // namespace xshadow
