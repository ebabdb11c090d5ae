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

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <stdexcept>

#include "oracles.h"
#include "xshadow/errors.h"
#include "xshadow/noise.h"

using namespace xshadow;

namespace {

const FlipRates kDefaultRates{0.07, 0.05};

std::vector<FlipRates> mixed_rates(int n) {
    std::vector<FlipRates> r;
    for (int q = 0; q < n; ++q) {
        r.push_back({0.03 + 0.02 * q, 0.08 - 0.01 * q});
    }
    return r;
}

double chain_oracle(const std::vector<FlipRates>& rates, double gamma, Word s, Word sp) {
    std::vector<double> p10, p01;
    for (const auto& r : rates) {
        p10.push_back(r.p10);
        p01.push_back(r.p01);
    }
    return oracle::chain_transition(p10, p01, gamma, s, sp);
}

}  // namespace

TEST_CASE("independent flips: zero rates give the identity") {
    const auto m = independent_flip_model(3, FlipRates{});
    for (Word s = 0; s < 8; ++s) {
        for (Word sp = 0; sp < 8; ++sp) {
            CHECK(m->transition(s, sp) == (s == sp ? 1.0 : 0.0));
        }
    }
}

TEST_CASE("independent flips: single-qubit entries follow the rate names") {
    const auto m = independent_flip_model(1, kDefaultRates);
    CHECK(m->transition(1, 0) == doctest::Approx(0.05));
    CHECK(m->transition(0, 1) == doctest::Approx(0.07));
    CHECK(m->transition(0, 0) == doctest::Approx(0.95));
    CHECK(m->transition(1, 1) == doctest::Approx(0.93));
    CHECK(m->name() == "independent");
}

TEST_CASE("independent flips: two qubits equal the Kronecker product") {
    const std::vector<FlipRates> rates{{0.07, 0.05}, {0.2, 0.1}};
    const auto m = independent_flip_model(rates);
    Eigen::Matrix2d a[2];
    for (int q = 0; q < 2; ++q) {
        // a[q](s, s') = R_q(s | s')
        a[q] << 1 - rates[q].p01, rates[q].p10, rates[q].p01, 1 - rates[q].p10;
    }
    const auto dense = dense_transition(*m);
    for (Word s = 0; s < 4; ++s) {
        for (Word sp = 0; sp < 4; ++sp) {
            const double expected = a[0](s & 1, sp & 1) * a[1](s >> 1, sp >> 1);
            CHECK(dense[s * 4 + sp] == doctest::Approx(expected).epsilon(1e-14));
        }
    }
}

TEST_CASE("rates are validated") {
    CHECK_THROWS_AS(independent_flip_model(2, FlipRates{1.5, 0.0}), std::invalid_argument);
    CHECK_THROWS_AS(independent_flip_model(2, FlipRates{0.0, -0.1}), std::invalid_argument);
    CHECK_THROWS_AS(independent_flip_model({}), std::invalid_argument);
    CHECK_THROWS_AS(crosstalk_model(2, kDefaultRates, 1.0), std::invalid_argument);
    CHECK_THROWS_AS(crosstalk_model(2, kDefaultRates, -0.1), std::invalid_argument);
}

TEST_CASE("crosstalk: gamma 0 equals the independent model") {
    const auto rates = mixed_rates(4);
    const auto a = crosstalk_model(rates, 0.0);
    const auto b = independent_flip_model(rates);
    for (Word s = 0; s < 16; ++s) {
        for (Word sp = 0; sp < 16; ++sp) {
            CHECK(std::abs(a->transition(s, sp) - b->transition(s, sp)) < 1e-12);
        }
    }
}

TEST_CASE("crosstalk: hand-evaluated entry") {
    const auto m = crosstalk_model(2, FlipRates{0.1, 0.1}, 0.5);
    CHECK(m->transition(0b11, 0b00) == doctest::Approx(0.015).epsilon(1e-14));
    CHECK(m->name() == "chain_crosstalk");
}

TEST_CASE("crosstalk: rows match the enumeration oracle and are stochastic") {
    for (int n = 1; n <= 6; ++n) {
        for (double gamma : {0.0, 0.5, 0.9}) {
            const auto rates = mixed_rates(n);
            const auto m = crosstalk_model(rates, gamma);
            const Word dim = Word{1} << n;
            for (Word sp = 0; sp < dim; ++sp) {
                double total = 0.0;
                for (Word s = 0; s < dim; ++s) {
                    const double p = m->transition(s, sp);
                    CHECK(p >= 0.0);
                    CHECK(std::abs(p - chain_oracle(rates, gamma, s, sp)) < 1e-15);
                    total += p;
                }
                CHECK(std::abs(total - 1.0) < 1e-12);
            }
        }
    }
}

TEST_CASE("crosstalk: rate inflation is capped at 1") {
    const auto m = crosstalk_model(2, FlipRates{0.8, 0.8}, 0.9);
    // Qubit 1 after a flip of qubit 0: min(1, 0.8 * 1.9) = 1.
    CHECK(m->transition(0b11, 0b00) == doctest::Approx(0.8));
    CHECK(m->transition(0b01, 0b00) == doctest::Approx(0.0));
}

TEST_CASE("twirl of identity noise is a delta") {
    const auto tw = twirl(identity_noise(4));
    const auto& row = tw.row();
    CHECK(row[0] == 1.0);
    for (Word s = 1; s < 16; ++s) {
        CHECK(row[s] == 0.0);
    }
    const auto g = exact_g(tw);
    for (Word w = 0; w < 16; ++w) {
        CHECK(g(w) == 1.0);
    }
}

TEST_CASE("twirl of symmetric independent flips is the product row") {
    for (int n = 1; n <= 4; ++n) {
        const double eta = 0.13;
        const auto tw = twirl(independent_flip_model(n, FlipRates{eta, eta}));
        for (Word s = 0; s < (Word{1} << n); ++s) {
            const int k = std::popcount(s);
            CHECK(tw.row()[s] == doctest::Approx(std::pow(eta, k) * std::pow(1 - eta, n - k)).epsilon(1e-13));
        }
    }
}

TEST_CASE("twirled row matches the enumeration oracle and the serial path") {
    for (int n = 1; n <= 6; ++n) {
        const auto m = crosstalk_model(mixed_rates(n), 0.6);
        const auto expected = oracle::twirled_row(n, [&](Word s, Word sp) { return m->transition(s, sp); });
        const auto fast = twirled_row(*m);
        const auto serial = twirled_row_serial(*m);
        double total = 0.0;
        for (std::size_t s = 0; s < expected.size(); ++s) {
            CHECK(std::abs(fast[s] - expected[s]) < 1e-14);
            CHECK(fast[s] == serial[s]);
            total += fast[s];
        }
        CHECK(std::abs(total - 1.0) < 1e-10);
    }
}

TEST_CASE("twirled noise is translation invariant") {
    const int n = 4;
    const auto tw = twirl(crosstalk_model(mixed_rates(n), 0.5));
    for (Word s = 0; s < 16; ++s) {
        for (Word sp = 0; sp < 16; ++sp) {
            for (Word u = 0; u < 16; ++u) {
                CHECK(std::abs(tw.transition(s ^ u, sp ^ u) - tw.transition(s, sp)) < 1e-12);
            }
        }
    }
    // The raw crosstalk channel is not.
    const auto raw = crosstalk_model(mixed_rates(n), 0.5);
    CHECK(std::abs(raw->transition(0b0001, 0b0000) - raw->transition(0b0000, 0b0001)) > 1e-3);
}

TEST_CASE("exact_g examples and invariants") {
    const auto g = exact_g(twirl(independent_flip_model(4, FlipRates{0.1, 0.1})));
    CHECK(g(0b0011) == doctest::Approx(0.64).epsilon(1e-12));
    CHECK(g(0) == 1.0);
    const auto g2 = exact_g(twirl(crosstalk_model(mixed_rates(5), 0.7)));
    CHECK(g2(0) == 1.0);
    for (double v : g2.values()) {
        CHECK(std::abs(v) <= 1.0);
    }
    CHECK(g2.at(BitString(5, 3)) == g2(3));
}

TEST_CASE("inverse Walsh transform of the spectrum recovers the twirled row") {
    const int n = 7;
    const auto tw = twirl(crosstalk_model(mixed_rates(n), 0.4));
    const auto g = exact_g(tw);
    const auto back = oracle::walsh(g.values());
    for (Word s = 0; s < (Word{1} << n); ++s) {
        CHECK(std::abs(back[s] / (1 << n) - tw.row()[s]) < 1e-10);
    }
}

TEST_CASE("symmetric independent flips: closed-form spectrum") {
    for (int n = 1; n <= 6; ++n) {
        for (double eta : {0.05, 0.1, 0.2}) {
            const auto g = exact_g(twirl(independent_flip_model(n, FlipRates{eta, eta})));
            for (Word w = 0; w < (Word{1} << n); ++w) {
                CHECK(std::abs(g(w) - std::pow(1 - 2 * eta, std::popcount(w))) < 1e-10);
            }
        }
    }
}

TEST_CASE("crosstalk at the default rates: mean |g| decays with weight") {
    const int n = 8;
    const auto g = exact_g(twirl(crosstalk_model(n, kDefaultRates, 0.5)));
    double previous = 1.0;
    for (int k = 1; k <= n; ++k) {
        double sum = 0.0;
        const auto words = words_of_weight(n, k);
        for (Word w : words) {
            sum += std::abs(g(w));
        }
        const double mean = sum / static_cast<double>(words.size());
        CHECK(mean < previous);
        previous = mean;
    }
    CHECK(g.mean_at_weight(0) == 1.0);
}

TEST_CASE("exact twirl capability limits") {
    CHECK_THROWS_AS(twirl(independent_flip_model(15, kDefaultRates), TwirlMode::Exact), CapabilityError);
    const auto sampled = twirl(independent_flip_model(15, kDefaultRates), TwirlMode::Sampled);
    CHECK_FALSE(sampled.has_table());
    CHECK_THROWS_AS(sampled.row(), CapabilityError);
    CHECK_THROWS_AS(exact_g(sampled), CapabilityError);
    Rng rng(1);
    CHECK(sampled.sample(rng) < (Word{1} << 15));
}

TEST_CASE("noisy_outcome sampling") {
    Rng rng(12);
    SUBCASE("identity noise returns the ideal outcome") {
        const auto m = identity_noise(5);
        for (Word s = 0; s < 32; ++s) {
            CHECK(noisy_outcome(*m, BitString(5, s), rng) == BitString(5, s));
        }
    }
    SUBCASE("0 -> 1 flip frequency") {
        const auto m = independent_flip_model(1, kDefaultRates);
        int ones = 0;
        const int shots = 1000000;
        for (int k = 0; k < shots; ++k) {
            ones += noisy_outcome(*m, BitString(1, 0), rng).bits();
        }
        CHECK(std::abs(ones / static_cast<double>(shots) - 0.05) < 0.001);
    }
    SUBCASE("crosstalk rows by sampling") {
        const auto m = crosstalk_model(4, kDefaultRates, 0.8);
        for (Word ideal : {Word{0}, Word{0b1011}}) {
            std::vector<double> freq(16, 0.0), exact(16);
            const int shots = 1000000;
            for (int k = 0; k < shots; ++k) {
                freq[m->sample(ideal, rng)] += 1.0 / shots;
            }
            for (Word s = 0; s < 16; ++s) {
                exact[s] = m->transition(s, ideal);
            }
            CHECK(oracle::total_variation(freq, exact) < 0.005);
        }
    }
    SUBCASE("length mismatch") {
        CHECK_THROWS_AS(noisy_outcome(*identity_noise(3), BitString(4, 0), rng), std::invalid_argument);
    }
}

TEST_CASE("twirled sampler draws from the twirled row") {
    const auto tw = twirl(crosstalk_model(3, kDefaultRates, 0.5));
    Rng rng(21);
    std::vector<double> freq(8, 0.0);
    const int shots = 1000000;
    for (int k = 0; k < shots; ++k) {
        freq[tw.sample(rng)] += 1.0 / shots;
    }
    CHECK(oracle::total_variation(freq, tw.row()) < 0.005);
}
