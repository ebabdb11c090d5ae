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

// Each OpenMP kernel against its serial reference, at several thread counts.
// Results must match bit for bit.

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <omp.h>

#include "xshadow/kernels.h"
#include "xshadow/rng.h"

using namespace xshadow;

namespace {

const int kThreadCounts[] = {1, 2, 3, 8};

std::vector<double> random_values(std::size_t count, std::uint64_t seed) {
    Rng rng(seed);
    std::vector<double> v(count);
    for (double& x : v) {
        x = uniform01(rng) * 10.0 - 3.0;
    }
    return v;
}

std::vector<Word> random_words(std::size_t count, int n, std::uint64_t seed) {
    Rng rng(seed);
    std::vector<Word> v(count);
    for (Word& x : v) {
        x = static_cast<Word>(rng()) & low_mask(n);
    }
    return v;
}

struct ThreadGuard {
    int saved = omp_get_max_threads();
    ~ThreadGuard() { omp_set_num_threads(saved); }
};

}  // namespace

TEST_CASE("walsh_inplace matches serial") {
    ThreadGuard guard;
    for (int n : {1, 5, 12, 16}) {
        const auto base = random_values(std::size_t{1} << n, 11 + n);
        auto expected = base;
        kernels::walsh_inplace_serial(expected);
        for (int t : kThreadCounts) {
            omp_set_num_threads(t);
            auto got = base;
            kernels::walsh_inplace(got);
            CHECK(got == expected);
        }
    }
}

TEST_CASE("odd_parity_count matches serial") {
    ThreadGuard guard;
    const auto records = random_words(100003, 10, 5);
    for (Word w : {Word{0}, Word{1}, Word{0b1011001}, Word{0x3FF}}) {
        const auto expected = kernels::odd_parity_count_serial(records, w);
        for (int t : kThreadCounts) {
            omp_set_num_threads(t);
            CHECK(kernels::odd_parity_count(records, w) == expected);
        }
    }
    CHECK(kernels::odd_parity_count_serial(records, 0) == 0);
}

TEST_CASE("histogram matches serial") {
    ThreadGuard guard;
    const auto records = random_words(70001, 9, 6);
    const auto expected = kernels::histogram_serial(records, 9);
    double total = 0.0;
    for (double c : expected) {
        total += c;
    }
    CHECK(total == 70001.0);
    for (int t : kThreadCounts) {
        omp_set_num_threads(t);
        CHECK(kernels::histogram(records, 9) == expected);
    }
}

TEST_CASE("apply_1q matches serial") {
    ThreadGuard guard;
    const int n = 14;
    Rng rng(9);
    std::vector<kernels::Complex> base(std::size_t{1} << n);
    for (auto& a : base) {
        a = {uniform01(rng) - 0.5, uniform01(rng) - 0.5};
    }
    const kernels::Complex u[4] = {{0.6, 0.0}, {0.0, 0.8}, {0.0, 0.8}, {0.6, 0.0}};
    for (int q : {0, 5, 13}) {
        auto expected = base;
        kernels::apply_1q_serial(expected, q, u);
        for (int t : kThreadCounts) {
            omp_set_num_threads(t);
            auto got = base;
            kernels::apply_1q(got, q, u);
            CHECK(got == expected);
        }
    }
}

TEST_CASE("block_sum matches serial and is near the plain sum") {
    ThreadGuard guard;
    const auto values = random_values(123457, 12);
    const double expected = kernels::block_sum_serial(values);
    double plain = 0.0;
    for (double v : values) {
        plain += v;
    }
    CHECK(expected == doctest::Approx(plain).epsilon(1e-12));
    for (int t : kThreadCounts) {
        omp_set_num_threads(t);
        CHECK(kernels::block_sum(values) == expected);
    }
    CHECK(kernels::block_sum(std::vector<double>{}) == 0.0);
}

TEST_CASE("bootstrap_means matches serial") {
    ThreadGuard guard;
    const auto values = random_values(5000, 13);
    const auto expected = kernels::bootstrap_means_serial(values, 64, 77);
    CHECK(expected.size() == 64);
    for (int t : kThreadCounts) {
        omp_set_num_threads(t);
        CHECK(kernels::bootstrap_means(values, 64, 77) == expected);
    }
    // A different seed gives different resamples.
    CHECK(kernels::bootstrap_means_serial(values, 64, 78) != expected);
}
