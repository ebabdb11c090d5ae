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
#include "xshadow/shadows.h"

using namespace xshadow;

namespace {

const double kInvSqrt3 = 1.0 / std::sqrt(3.0);

DirectionSet tetrahedron() {
    return DirectionSet({{"a", {kInvSqrt3, kInvSqrt3, kInvSqrt3}},
                         {"b", {kInvSqrt3, -kInvSqrt3, -kInvSqrt3}},
                         {"c", {-kInvSqrt3, kInvSqrt3, -kInvSqrt3}},
                         {"d", {-kInvSqrt3, -kInvSqrt3, kInvSqrt3}}});
}

Correlator random_correlator(int n, Rng& rng, bool allow_identity = true) {
    const Direction paulis[3] = {direction_x(), direction_y(), direction_z()};
    Word pattern = 0;
    do {
        pattern = static_cast<Word>(uniform_below(rng, Word{1} << n));
    } while (!allow_identity && pattern == 0);
    std::vector<Direction> obs;
    for (int q = 0; q < n; ++q) {
        if ((pattern >> q) & 1U) {
            obs.push_back(paulis[uniform_below(rng, 3)]);
        }
    }
    return Correlator(BitString(n, pattern), obs);
}

MeasurementSetting random_setting(int n, std::size_t k, Rng& rng) {
    MeasurementSetting st(static_cast<std::size_t>(n));
    for (auto& x : st) {
        x = static_cast<std::uint8_t>(uniform_below(rng, k));
    }
    return st;
}

// sum_{nu, s} weight(nu, s) * op(nu, s) over every generalised outcome.
template <typename Weight, typename Op>
oracle::Mat outcome_sum(int n, std::size_t k, Weight&& weight, Op&& op) {
    const std::size_t dim = std::size_t{1} << n;
    oracle::Mat total = oracle::Mat::Zero(dim, dim);
    for (const auto& st : oracle::all_settings(n, k)) {
        for (Word s = 0; s < dim; ++s) {
            total += weight(st, s) * op(st, BitString(n, s));
        }
    }
    return total;
}

}  // namespace

TEST_CASE("Pauli directions give xi = 3 sigma") {
    const XiTable xi = compute_xi(DirectionSet::pauli());
    for (int a = 0; a < 3; ++a) {
        CHECK((xi.xi(a) - 3.0 * oracle::pauli(a)).cwiseAbs().maxCoeff() < 1e-12);
    }
    const std::vector<Direction> obs{direction_x(), direction_y(), direction_z()};
    CHECK(kappa(xi, obs) == doctest::Approx(3.0).epsilon(1e-12));
}

TEST_CASE("xi operators are traceless and Hermitian") {
    for (const auto& set : {DirectionSet::pauli(), tetrahedron()}) {
        const XiTable xi = compute_xi(set);
        for (std::size_t nu = 0; nu < xi.size(); ++nu) {
            CHECK(std::abs(xi.xi(nu).trace()) < 1e-12);
            CHECK((xi.xi(nu) - xi.xi(nu).adjoint()).cwiseAbs().maxCoeff() < 1e-12);
            // half_trace agrees with the explicit trace.
            for (int a = 0; a < 3; ++a) {
                std::array<double, 3> axis{0, 0, 0};
                axis[a] = 1.0;
                const double explicit_trace = 0.5 * (xi.xi(nu) * oracle::pauli(a)).trace().real();
                CHECK(std::abs(xi.half_trace(nu, {"m", axis}) - explicit_trace) < 1e-12);
            }
        }
    }
}

TEST_CASE("single-qubit shadows are unbiased") {
    for (const auto& set : {DirectionSet::pauli(), tetrahedron()}) {
        const XiTable xi = compute_xi(set);
        for (int trial = 0; trial < 20; ++trial) {
            const auto rho = oracle::density(haar_random_state(1, 300 + trial));
            const auto total = outcome_sum(
                1, set.size(),
                [&](const MeasurementSetting& st, Word s) {
                    return oracle::born(rho, set, st, s) / static_cast<double>(set.size());
                },
                [&](const MeasurementSetting& st, const BitString& s) { return dense_shadow(xi, st, s); });
            CHECK(oracle::max_abs(total - rho) < 1e-10);
        }
    }
}

TEST_CASE("incomplete direction sets are rejected") {
    CHECK_THROWS_AS(compute_xi(DirectionSet({direction_x(), direction_y()})), NotInformationallyCompleteError);
    CHECK_THROWS_AS(compute_xi(DirectionSet({direction_z(), {"mz", {0, 0, -1}}})), NotInformationallyCompleteError);
    CHECK_THROWS_AS(compute_xi(DirectionSet({direction_x()})), NotInformationallyCompleteError);
}

TEST_CASE("unmitigated shade examples") {
    const XiTable xi = compute_xi(DirectionSet::pauli());
    const auto dirs = DirectionSet::pauli();
    const MeasurementSetting z1{2}, x1{0};
    CHECK(unmitigated_shade(xi, Correlator::identity(1), z1, BitString(1, 1)) == 1.0);
    CHECK(unmitigated_shade(xi, Correlator::parse("z@0", 1, dirs), z1, BitString(1, 0)) == doctest::Approx(3.0));
    CHECK(unmitigated_shade(xi, Correlator::parse("z@0", 1, dirs), z1, BitString(1, 1)) == doctest::Approx(-3.0));
    CHECK(std::abs(unmitigated_shade(xi, Correlator::parse("z@0", 1, dirs), x1, BitString(1, 0))) < 1e-12);
    CHECK(std::abs(unmitigated_shade(xi, Correlator::parse("z@0", 1, dirs), x1, BitString(1, 1))) < 1e-12);
    CHECK_THROWS_AS(unmitigated_shade(xi, Correlator::identity(2), z1, BitString(1, 0)), std::invalid_argument);
}

TEST_CASE("Fourier shadow trace examples and matching condition") {
    const XiTable xi = compute_xi(DirectionSet::pauli());
    const auto dirs = DirectionSet::pauli();
    const Correlator c = Correlator::parse("z@1", 2, dirs);
    const MeasurementSetting st{0, 2};
    CHECK(fourier_shadow_trace(xi, c, st, BitString::parse("10")) == doctest::Approx(12.0));
    CHECK(fourier_shadow_trace(xi, c, st, BitString::parse("01")) == 0.0);
    CHECK(fourier_shadow_trace(xi, Correlator::identity(3), MeasurementSetting{0, 1, 2}, BitString::zeros(3)) == 8.0);

    // Exhaustive at n = 4: zero whenever w != v, and the explicit tau trace when equal.
    const int n = 4;
    Rng rng(7);
    for (int trial = 0; trial < 20; ++trial) {
        const Correlator cc = random_correlator(n, rng);
        const auto setting = random_setting(n, 3, rng);
        const auto corr = dense_correlator(cc);
        for (Word w = 0; w < 16; ++w) {
            const double got = fourier_shadow_trace(xi, cc, setting, BitString(n, w));
            if (w != cc.pattern().bits()) {
                CHECK(got == 0.0);
            }
            std::vector<Eigen::Matrix2cd> tau;
            for (int q = 0; q < n; ++q) {
                tau.push_back((w >> q) & 1U ? Eigen::Matrix2cd(xi.xi(setting[q])) : Eigen::Matrix2cd::Identity());
            }
            const double expected = (oracle::product_operator(tau) * corr).trace().real();
            CHECK(std::abs(got - expected) < 1e-10);
        }
    }
}

TEST_CASE("mitigated shade examples") {
    const XiTable xi = compute_xi(DirectionSet::pauli());
    const auto dirs = DirectionSet::pauli();
    CHECK(mitigated_shade(xi, 1.0, Correlator::identity(2), MeasurementSetting{0, 1}, BitString(2, 3)) == 1.0);
    CHECK(mitigated_shade(xi, 0.8, Correlator::parse("z@0", 1, dirs), MeasurementSetting{2}, BitString(1, 1)) ==
          doctest::Approx(-3.75));
    CHECK_THROWS_AS(mitigated_shade(xi, 1e-7, Correlator::parse("z@0", 1, dirs), MeasurementSetting{2}, BitString(1, 1)),
                    UnmitigatableComponentError);
    CHECK_THROWS_AS(mitigated_shade(xi, 0.01, Correlator::parse("z@0", 1, dirs), MeasurementSetting{2}, BitString(1, 1), 0.1),
                    UnmitigatableComponentError);
    // Negative g is used as is.
    CHECK(mitigated_shade(xi, -0.5, Correlator::parse("z@0", 1, dirs), MeasurementSetting{2}, BitString(1, 0)) ==
          doctest::Approx(-6.0));
}

TEST_CASE("with g = 1 the mitigated shade equals the unmitigated one") {
    const XiTable xi = compute_xi(DirectionSet::pauli());
    const Direction paulis[3] = {direction_x(), direction_y(), direction_z()};
    for (int n = 1; n <= 3; ++n) {
        const Word dim = Word{1} << n;
        for (Word v = 0; v < dim; ++v) {
            // Every assignment of observables on the support.
            const int d = std::popcount(v);
            int combos = 1;
            for (int k = 0; k < d; ++k) {
                combos *= 3;
            }
            for (int mu = 0; mu < combos; ++mu) {
                std::vector<Direction> obs;
                for (int k = 0, r = mu; k < d; ++k, r /= 3) {
                    obs.push_back(paulis[r % 3]);
                }
                const Correlator c(BitString(n, v), obs);
                for (const auto& st : oracle::all_settings(n, 3)) {
                    for (Word s = 0; s < dim; ++s) {
                        CHECK(mitigated_shade(xi, 1.0, c, st, BitString(n, s)) ==
                              doctest::Approx(unmitigated_shade(xi, c, st, BitString(n, s))).epsilon(1e-14));
                    }
                }
            }
        }
    }
}

TEST_CASE("shade bound") {
    const XiTable xi = compute_xi(DirectionSet::pauli());
    const std::vector<Direction> obs{direction_x(), direction_y(), direction_z()};
    const double k = kappa(xi, obs);
    Rng rng(31);
    for (int trial = 0; trial < 500; ++trial) {
        const Correlator c = random_correlator(5, rng);
        const double g = 0.2 + 0.8 * uniform01(rng);
        const double shade = mitigated_shade(xi, g, c, random_setting(5, 3, rng), BitString(5, rng() & 31));
        CHECK(std::abs(shade) <= std::pow(k, c.degree()) / g + 1e-12);
    }
}

TEST_CASE("dense shadow examples") {
    const XiTable xi = compute_xi(DirectionSet::pauli());
    const auto rho = dense_shadow(xi, MeasurementSetting{2}, BitString(1, 0));
    CHECK(std::abs(rho(0, 0) - Complex(2.0)) < 1e-12);
    CHECK(std::abs(rho(1, 1) - Complex(-1.0)) < 1e-12);
    CHECK(std::abs(rho(0, 1)) < 1e-12);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(rho);
    CHECK(es.eigenvalues()(0) == doctest::Approx(-1.0));
    CHECK(es.eigenvalues()(1) == doctest::Approx(2.0));
    CHECK_THROWS_AS(dense_shadow(xi, MeasurementSetting(5, 0), BitString(5, 0)), CapabilityError);
}

TEST_CASE("dense shadows have unit trace and reproduce the shades") {
    const XiTable xi = compute_xi(DirectionSet::pauli());
    Rng rng(41);
    for (int trial = 0; trial < 100; ++trial) {
        const int n = 3;
        const auto st = random_setting(n, 3, rng);
        const BitString s(n, rng() & 7);
        const Correlator c = random_correlator(n, rng);
        const auto shadow = dense_shadow(xi, st, s);
        CHECK(std::abs(shadow.trace() - Complex(1.0)) < 1e-12);
        const double traced = (shadow * dense_correlator(c)).trace().real();
        CHECK(std::abs(traced - unmitigated_shade(xi, c, st, s)) < 1e-10);
    }
}

TEST_CASE("inversion symmetry of the per-qubit factors") {
    const XiTable xi = compute_xi(tetrahedron());
    for (std::uint8_t nu = 0; nu < 4; ++nu) {
        const auto a = dense_shadow(xi, MeasurementSetting{nu}, BitString(1, 0));
        const auto b = dense_shadow(xi, MeasurementSetting{nu}, BitString(1, 1));
        CHECK(oracle::max_abs(0.5 * (a + b) - 0.5 * Eigen::MatrixXcd::Identity(2, 2)) < 1e-12);
    }
}

TEST_CASE("kron_qubits puts qubit 0 in the low bit") {
    std::vector<Gate> f{oracle::pauli(0), oracle::pauli(2), oracle::pauli(1)};
    std::vector<Eigen::Matrix2cd> g(f.begin(), f.end());
    CHECK(oracle::max_abs(kron_qubits(f) - oracle::product_operator(g)) < 1e-15);
}

TEST_CASE("noiseless shadows average to the state") {
    const auto dirs = DirectionSet::pauli();
    const XiTable xi = compute_xi(dirs);
    for (int n = 1; n <= 3; ++n) {
        for (int trial = 0; trial < 5; ++trial) {
            const auto rho = oracle::density(haar_random_state(n, 500 + 10 * n + trial));
            const double norm = std::pow(3.0, n);
            const auto total = outcome_sum(
                n, 3, [&](const MeasurementSetting& st, Word s) { return oracle::born(rho, dirs, st, s) / norm; },
                [&](const MeasurementSetting& st, const BitString& s) { return dense_shadow(xi, st, s); });
            CHECK(oracle::max_abs(total - rho) < 1e-8);
        }
    }
}

TEST_CASE("mitigated dense shadow with identity noise equals the plain shadow") {
    const XiTable xi = compute_xi(DirectionSet::pauli());
    const auto tw = twirl(identity_noise(2));
    Rng rng(3);
    for (int trial = 0; trial < 20; ++trial) {
        const auto st = random_setting(2, 3, rng);
        const BitString s(2, rng() & 3);
        CHECK(oracle::max_abs(dense_mitigated_shadow(xi, tw, st, s) - dense_shadow(xi, st, s)) < 1e-12);
    }
}

TEST_CASE("mitigated shadows are unbiased under noise") {
    const auto dirs = DirectionSet::pauli();
    const XiTable xi = compute_xi(dirs);
    for (int n = 2; n <= 3; ++n) {
        const std::vector<std::shared_ptr<const NoiseModel>> models{
            independent_flip_model(n, FlipRates{0.07, 0.05}), crosstalk_model(n, FlipRates{0.07, 0.05}, 0.5)};
        for (const auto& model : models) {
            const auto rho = oracle::density(haar_random_state(n, 700 + n));
            const double norm = std::pow(3.0, n);
            const Word dim = Word{1} << n;
            // Twirled channel, as seen by the tomography protocol.
            const auto tw = twirl(model);
            const auto total = outcome_sum(
                n, 3,
                [&](const MeasurementSetting& st, Word s) {
                    double q = 0.0;
                    for (Word sp = 0; sp < dim; ++sp) {
                        q += tw.transition(s, sp) * oracle::born(rho, dirs, st, sp) / norm;
                    }
                    return q;
                },
                [&](const MeasurementSetting& st, const BitString& s) {
                    return dense_mitigated_shadow(xi, tw, st, s);
                });
            CHECK(oracle::max_abs(total - rho) < 1e-8);
            // Untwirled channel inverted directly.
            const auto raw = dense_transition(*model);
            const auto total_raw = outcome_sum(
                n, 3,
                [&](const MeasurementSetting& st, Word s) {
                    double q = 0.0;
                    for (Word sp = 0; sp < dim; ++sp) {
                        q += raw[s * dim + sp] * oracle::born(rho, dirs, st, sp) / norm;
                    }
                    return q;
                },
                [&](const MeasurementSetting& st, const BitString& s) {
                    return dense_mitigated_shadow(xi, raw, st, s);
                });
            CHECK(oracle::max_abs(total_raw - rho) < 1e-8);
        }
    }
}

TEST_CASE("Fourier shortcut equals the dense mitigated shadow") {
    const XiTable xi = compute_xi(DirectionSet::pauli());
    const int n = 3;
    const auto tw = twirl(crosstalk_model(n, FlipRates{0.07, 0.05}, 0.5));
    const auto g = exact_g(tw);
    Rng rng(51);
    for (int trial = 0; trial < 100; ++trial) {
        const auto st = random_setting(n, 3, rng);
        const BitString s(n, rng() & 7);
        const Correlator c = random_correlator(n, rng);
        const double dense = (dense_mitigated_shadow(xi, tw, st, s) * dense_correlator(c)).trace().real();
        CHECK(std::abs(mitigated_shade(xi, g(c.pattern().bits()), c, st, s) - dense) < 1e-8);
    }
}

TEST_CASE("singular noise is reported") {
    const XiTable xi = compute_xi(DirectionSet::pauli());
    const auto tw = twirl(independent_flip_model(2, FlipRates{0.5, 0.5}));
    CHECK_THROWS_AS(dense_mitigated_shadow(xi, tw, MeasurementSetting{0, 0}, BitString(2, 0)), SingularNoiseError);
    CHECK_THROWS_AS(dense_twirled_transition(twirl(identity_noise(5))), CapabilityError);
}
