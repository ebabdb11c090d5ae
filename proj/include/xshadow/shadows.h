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

#ifndef XSHADOW_SHADOWS_H
#define XSHADOW_SHADOWS_H

// Product classical shadows rho^nu_s = (x)_i (1 + (-1)^{s_i} xi^{nu_i}) / 2,
// their shades against product correlators, and the readout-mitigated shade
// (-1)^{v.s} / g(v) prod_{i in v} tr(xi^{nu_i} sigma^{mu_i}) / 2.
//
// The dense_* functions build explicit 2^n x 2^n operators and exist only as
// oracles for small n.

#include <array>
#include <span>
#include <vector>

#include <Eigen/Dense>

#include "xshadow/bitspace.h"
#include "xshadow/noise.h"
#include "xshadow/qsim.h"

namespace xshadow {

using DenseOperator = Eigen::MatrixXcd;

inline constexpr int kMaxDenseQubits = 4;
inline constexpr double kDefaultGFloor = 1e-6;

/// Traceless single-qubit operators xi^nu for every direction of a set.
class XiTable {
  public:
    XiTable(DirectionSet directions, std::vector<Gate> xi);

    const DirectionSet& directions() const { return directions_; }
    std::size_t size() const { return xi_.size(); }
    const Gate& xi(std::size_t nu) const { return xi_[nu]; }
    /// Bloch vector b with xi = b.sigma.
    const std::array<double, 3>& bloch(std::size_t nu) const { return bloch_[nu]; }
    /// tr(xi^nu sigma^mu) / 2.
    double half_trace(std::size_t nu, const Direction& mu) const;

  private:
    DirectionSet directions_;
    std::vector<Gate> xi_;
    std::vector<std::array<double, 3>> bloch_;
};

/// Least-squares single-qubit shadows for the uniform frame over S.
///
/// The frame map takes the Bloch coordinates (r0, r) of an operator
/// (r0 1 + r.sigma)/2 to the outcome probabilities
///   p(nu, s) = (r0 + (-1)^s nu.r) / (2 |S|).
/// Its pseudo-inverse applied to the indicator of outcome (nu, 0) gives the
/// shadow (1 + xi^nu)/2. Singular values below 1e-9 of the largest count as
/// zero; a rank below 4 throws NotInformationallyCompleteError.
XiTable compute_xi(const DirectionSet& directions);

/// max |tr(xi^nu sigma^mu)| / 2 over nu in the table and mu in observables.
double kappa(const XiTable& xi, std::span<const Direction> observables);

/// Per-record factors of one correlator, precomputed for bulk evaluation.
class ShadeKernel {
  public:
    ShadeKernel(const XiTable& xi, const Correlator& c);

    Word pattern() const { return pattern_; }
    /// prod_{i in v} tr(xi^{nu_i} sigma^{mu_i}) / 2.
    double magnitude(const std::uint8_t* setting) const {
        double product = 1.0;
        for (std::size_t k = 0; k < qubits_.size(); ++k) {
            product *= factors_[k * stride_ + setting[qubits_[k]]];
        }
        return product;
    }

  private:
    Word pattern_;
    std::size_t stride_;
    std::vector<int> qubits_;
    std::vector<double> factors_;
};

/// Shade of the unmitigated shadow: prod_i [v_i = 0 ? 1 : (-1)^{s_i} tr(xi sigma)/2].
double unmitigated_shade(const XiTable& xi, const Correlator& c, SettingView setting, const BitString& s);

/// tr(tau^nu_w C) where tau^nu_w = (x)_i [w_i = 0 ? 1 : xi^{nu_i}] is the
/// Walsh transform of the shadows over s. Zero unless w == v.
double fourier_shadow_trace(const XiTable& xi, const Correlator& c, SettingView setting, const BitString& w);

/// Mitigated shade with the Fourier component g_v = g(v). Throws
/// UnmitigatableComponentError if |g_v| < g_floor.
double mitigated_shade(const XiTable& xi, double g_v, const Correlator& c, SettingView setting,
                       const BitString& s, double g_floor = kDefaultGFloor);

/// (x)_i A_i with qubit 0 the least significant tensor factor.
DenseOperator kron_qubits(std::span<const Gate> factors);

/// Dense correlator operator (n <= 4).
DenseOperator dense_correlator(const Correlator& c);

/// Dense product shadow (n <= 4, else CapabilityError).
DenseOperator dense_shadow(const XiTable& xi, SettingView setting, const BitString& s);

/// sum_{s'} rho^nu_{s'} Rinv(s' | s) for a dense transition table
/// (entry [s * 2^n + s'] = R(s | s')). Throws SingularNoiseError if R has
/// no inverse, CapabilityError if n > 4.
DenseOperator dense_mitigated_shadow(const XiTable& xi, std::span<const double> transition,
                                     SettingView setting, const BitString& s);

/// Same, with R the exact twirled channel.
DenseOperator dense_mitigated_shadow(const XiTable& xi, const TwirledNoise& tw, SettingView setting,
                                     const BitString& s);

/// Dense table of the twirled channel, entry [s * 2^n + s'] = Rbar(s | s').
std::vector<double> dense_twirled_transition(const TwirledNoise& tw);

}  // namespace xshadow

#endif
