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

// Serial reference against OpenMP version of each hot kernel.

#include <benchmark/benchmark.h>

#include <complex>
#include <vector>

#include "xshadow/kernels.h"
#include "xshadow/rng.h"

using namespace xshadow;

namespace {

std::vector<Word> random_records(std::size_t count, int n) {
    Rng rng(11);
    std::vector<Word> out(count);
    for (auto& r : out) {
        r = rng() & low_mask(n);
    }
    return out;
}

std::vector<double> random_values(std::size_t count) {
    Rng rng(12);
    std::vector<double> out(count);
    for (auto& v : out) {
        v = uniform01(rng) - 0.5;
    }
    return out;
}

template <bool Serial>
void BM_Walsh(benchmark::State& state) {
    const auto data = random_values(std::size_t{1} << state.range(0));
    for (auto _ : state) {
        auto copy = data;
        if constexpr (Serial) {
            kernels::walsh_inplace_serial(copy);
        } else {
            kernels::walsh_inplace(copy);
        }
        benchmark::DoNotOptimize(copy.data());
    }
}

template <bool Serial>
void BM_OddParity(benchmark::State& state) {
    const auto records = random_records(static_cast<std::size_t>(state.range(0)), 8);
    for (auto _ : state) {
        benchmark::DoNotOptimize(Serial ? kernels::odd_parity_count_serial(records, 0x5A)
                                        : kernels::odd_parity_count(records, 0x5A));
    }
    state.SetItemsProcessed(state.iterations() * state.range(0));
}

template <bool Serial>
void BM_Histogram(benchmark::State& state) {
    const auto records = random_records(static_cast<std::size_t>(state.range(0)), 8);
    for (auto _ : state) {
        auto h = Serial ? kernels::histogram_serial(records, 8) : kernels::histogram(records, 8);
        benchmark::DoNotOptimize(h.data());
    }
    state.SetItemsProcessed(state.iterations() * state.range(0));
}

template <bool Serial>
void BM_Apply1q(benchmark::State& state) {
    std::vector<std::complex<double>> amps(std::size_t{1} << state.range(0), {0.5, 0.0});
    const std::complex<double> u[4] = {{0.6, 0.0}, {0.0, 0.8}, {0.0, 0.8}, {0.6, 0.0}};
    for (auto _ : state) {
        if constexpr (Serial) {
            kernels::apply_1q_serial(amps, 3, u);
        } else {
            kernels::apply_1q(amps, 3, u);
        }
        benchmark::DoNotOptimize(amps.data());
    }
}

template <bool Serial>
void BM_BlockSum(benchmark::State& state) {
    const auto values = random_values(static_cast<std::size_t>(state.range(0)));
    for (auto _ : state) {
        benchmark::DoNotOptimize(Serial ? kernels::block_sum_serial(values) : kernels::block_sum(values));
    }
    state.SetItemsProcessed(state.iterations() * state.range(0));
}

template <bool Serial>
void BM_Bootstrap(benchmark::State& state) {
    const auto values = random_values(static_cast<std::size_t>(state.range(0)));
    for (auto _ : state) {
        auto m = Serial ? kernels::bootstrap_means_serial(values, 50, 3) : kernels::bootstrap_means(values, 50, 3);
        benchmark::DoNotOptimize(m.data());
    }
}

}  // namespace

BENCHMARK(BM_Walsh<true>)->Arg(12)->Arg(16);
BENCHMARK(BM_Walsh<false>)->Arg(12)->Arg(16);
BENCHMARK(BM_OddParity<true>)->Arg(1 << 20);
BENCHMARK(BM_OddParity<false>)->Arg(1 << 20);
BENCHMARK(BM_Histogram<true>)->Arg(1 << 20);
BENCHMARK(BM_Histogram<false>)->Arg(1 << 20);
BENCHMARK(BM_Apply1q<true>)->Arg(12)->Arg(18);
BENCHMARK(BM_Apply1q<false>)->Arg(12)->Arg(18);
BENCHMARK(BM_BlockSum<true>)->Arg(1 << 20);
BENCHMARK(BM_BlockSum<false>)->Arg(1 << 20);
BENCHMARK(BM_Bootstrap<true>)->Arg(1 << 16);
BENCHMARK(BM_Bootstrap<false>)->Arg(1 << 16);

BENCHMARK_MAIN();
