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

#include "xshadow/kernels.h"

#include <algorithm>
#include <stdexcept>

#include "xshadow/rng.h"

namespace xshadow::kernels {

namespace {

// Below this many elements the OpenMP fork costs more than the loop.
constexpr std::ptrdiff_t kParallelThreshold = 1 << 12;
constexpr std::size_t kSumBlock = 1 << 12;

void require_power_of_two(std::size_t size) {
    if (size == 0 || (size & (size - 1)) != 0) {
        throw std::invalid_argument("walsh transform needs a power-of-two length");
    }
}

}  // namespace

void walsh_inplace_serial(std::span<double> data) {
    require_power_of_two(data.size());
    const std::size_t size = data.size();
    for (std::size_t half = 1; half < size; half <<= 1) {
        for (std::size_t base = 0; base < size; base += 2 * half) {
            for (std::size_t j = base; j < base + half; ++j) {
                const double a = data[j];
                const double b = data[j + half];
                data[j] = a + b;
                data[j + half] = a - b;
            }
        }
    }
}

void walsh_inplace(std::span<double> data) {
    require_power_of_two(data.size());
    const auto size = static_cast<std::ptrdiff_t>(data.size());
    double* const d = data.data();
    const auto butterflies = [d](std::ptrdiff_t base, std::ptrdiff_t half) {
        for (std::ptrdiff_t j = 0; j < half; ++j) {
            const double a = d[base + j];
            const double b = d[base + j + half];
            d[base + j] = a + b;
            d[base + j + half] = a - b;
        }
    };
    // Split over blocks while there are several; the last level is one block.
    std::ptrdiff_t half = 1;
    for (; 2 * half < size; half <<= 1) {
#pragma omp parallel for schedule(static) if (size >= kParallelThreshold)
        for (std::ptrdiff_t base = 0; base < size; base += 2 * half) {
            butterflies(base, half);
        }
    }
    if (half < size) {
        const std::ptrdiff_t step = std::max<std::ptrdiff_t>(half / 64, 1);
#pragma omp parallel for schedule(static) if (size >= kParallelThreshold)
        for (std::ptrdiff_t j = 0; j < half; j += step) {
            for (std::ptrdiff_t k = j; k < j + step; ++k) {
                const double a = d[k];
                const double b = d[k + half];
                d[k] = a + b;
                d[k + half] = a - b;
            }
        }
    }
}

std::size_t odd_parity_count_serial(std::span<const Word> records, Word w) {
    std::size_t odd = 0;
    for (Word s : records) {
        odd += static_cast<std::size_t>(parity(w, s));
    }
    return odd;
}

std::size_t odd_parity_count(std::span<const Word> records, Word w) {
    const auto size = static_cast<std::ptrdiff_t>(records.size());
    const Word* r = records.data();
    std::size_t odd = 0;
#pragma omp parallel for schedule(static) reduction(+ : odd) if (size >= kParallelThreshold)
    for (std::ptrdiff_t k = 0; k < size; ++k) {
        odd += static_cast<std::size_t>(parity(w, r[k]));
    }
    return odd;
}

std::vector<double> histogram_serial(std::span<const Word> records, int n) {
    std::vector<double> counts(std::size_t{1} << n, 0.0);
    for (Word s : records) {
        counts[s] += 1.0;
    }
    return counts;
}

std::vector<double> histogram(std::span<const Word> records, int n) {
    const std::size_t bins = std::size_t{1} << n;
    const auto size = static_cast<std::ptrdiff_t>(records.size());
    if (size < kParallelThreshold * 4) {
        return histogram_serial(records, n);
    }
    std::vector<std::uint64_t> total(bins, 0);
#pragma omp parallel
    {
        std::vector<std::uint64_t> local(bins, 0);
#pragma omp for schedule(static) nowait
        for (std::ptrdiff_t k = 0; k < size; ++k) {
            ++local[records[k]];
        }
#pragma omp critical
        for (std::size_t b = 0; b < bins; ++b) {
            total[b] += local[b];
        }
    }
    return std::vector<double>(total.begin(), total.end());
}

void apply_1q_serial(std::span<Complex> amps, int q, const Complex (&u)[4]) {
    const std::size_t stride = std::size_t{1} << q;
    for (std::size_t i = 0; i < amps.size(); ++i) {
        if (i & stride) {
            continue;
        }
        const Complex a0 = amps[i];
        const Complex a1 = amps[i | stride];
        amps[i] = u[0] * a0 + u[1] * a1;
        amps[i | stride] = u[2] * a0 + u[3] * a1;
    }
}

void apply_1q(std::span<Complex> amps, int q, const Complex (&u)[4]) {
    const auto size = static_cast<std::ptrdiff_t>(amps.size());
    const std::ptrdiff_t stride = std::ptrdiff_t{1} << q;
    Complex* const a = amps.data();
    const Complex u0 = u[0], u1 = u[1], u2 = u[2], u3 = u[3];
#pragma omp parallel for collapse(2) schedule(static) if (size / 2 >= kParallelThreshold)
    for (std::ptrdiff_t base = 0; base < size; base += 2 * stride) {
        for (std::ptrdiff_t j = 0; j < stride; ++j) {
            const Complex a0 = a[base + j];
            const Complex a1 = a[base + j + stride];
            a[base + j] = u0 * a0 + u1 * a1;
            a[base + j + stride] = u2 * a0 + u3 * a1;
        }
    }
}

double block_sum_serial(std::span<const double> values) {
    double total = 0.0;
    for (std::size_t start = 0; start < values.size(); start += kSumBlock) {
        const std::size_t stop = std::min(values.size(), start + kSumBlock);
        double partial = 0.0;
        for (std::size_t k = start; k < stop; ++k) {
            partial += values[k];
        }
        total += partial;
    }
    return total;
}

double block_sum(std::span<const double> values) {
    const auto blocks = static_cast<std::ptrdiff_t>((values.size() + kSumBlock - 1) / kSumBlock);
    std::vector<double> partials(static_cast<std::size_t>(blocks), 0.0);
#pragma omp parallel for schedule(static) if (blocks >= 8)
    for (std::ptrdiff_t b = 0; b < blocks; ++b) {
        const std::size_t start = static_cast<std::size_t>(b) * kSumBlock;
        const std::size_t stop = std::min(values.size(), start + kSumBlock);
        double partial = 0.0;
        for (std::size_t k = start; k < stop; ++k) {
            partial += values[k];
        }
        partials[static_cast<std::size_t>(b)] = partial;
    }
    double total = 0.0;
    for (double p : partials) {
        total += p;
    }
    return total;
}

namespace {

double one_resample_mean(std::span<const double> values, std::uint64_t seed, int r) {
    Rng rng = make_stream(seed, static_cast<std::uint64_t>(r));
    const std::uint64_t m = values.size();
    double sum = 0.0;
    for (std::uint64_t k = 0; k < m; ++k) {
        sum += values[uniform_below(rng, m)];
    }
    return sum / static_cast<double>(m);
}

}  // namespace

std::vector<double> bootstrap_means_serial(std::span<const double> values, int resamples,
                                           std::uint64_t seed) {
    std::vector<double> means(static_cast<std::size_t>(std::max(resamples, 0)));
    for (int r = 0; r < resamples; ++r) {
        means[r] = one_resample_mean(values, seed, r);
    }
    return means;
}

std::vector<double> bootstrap_means(std::span<const double> values, int resamples,
                                    std::uint64_t seed) {
    std::vector<double> means(static_cast<std::size_t>(std::max(resamples, 0)));
#pragma omp parallel for schedule(dynamic)
    for (int r = 0; r < resamples; ++r) {
        means[r] = one_resample_mean(values, seed, r);
    }
    return means;
}

}  // namespace xshadow::kernels
