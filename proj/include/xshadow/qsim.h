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

#ifndef XSHADOW_QSIM_H
#define XSHADOW_QSIM_H

#include <array>
#include <complex>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Dense>

#include "xshadow/bitspace.h"
#include "xshadow/rng.h"

namespace xshadow {

using Complex = std::complex<double>;
using Gate = Eigen::Matrix2cd;

inline constexpr int kMaxSimQubits = 12;

/// A labelled axis on the Bloch sphere.
struct Direction {
    std::string label;
    std::array<double, 3> axis{0.0, 0.0, 1.0};

    bool is_unit(double tol = 1e-12) const;
    bool operator==(const Direction&) const = default;
};

Direction direction_x();
Direction direction_y();
Direction direction_z();

/// Finite set of measurement axes, sampled uniformly per qubit per shot.
class DirectionSet {
  public:
    /// Throws std::invalid_argument if empty, a label is repeated, empty or
    /// contains ',', '@', ';' or whitespace, or an axis is not a unit vector.
    explicit DirectionSet(std::vector<Direction> directions);

    /// {x, y, z}.
    static DirectionSet pauli();

    std::size_t size() const { return directions_.size(); }
    const Direction& operator[](std::size_t k) const { return directions_[k]; }
    const std::vector<Direction>& directions() const { return directions_; }
    std::optional<std::size_t> index_of(std::string_view label) const;
    std::vector<std::string> labels() const;

  private:
    std::vector<Direction> directions_;
};

/// Per-qubit indices into a DirectionSet. Index i is qubit i.
using MeasurementSetting = std::vector<std::uint8_t>;
using SettingView = std::span<const std::uint8_t>;

/// Product observable: identity off the pattern, mu.sigma on each set bit.
/// `observables` lists one direction per set bit of the pattern, in
/// ascending qubit order.
class Correlator {
  public:
    Correlator(BitString pattern, std::vector<Direction> observables);

    /// Identity correlator on n qubits.
    static Correlator identity(int n);
    /// Parses "x@0;z@3" (or space separated). Labels resolve against
    /// `known`; "I" is the identity.
    static Correlator parse(std::string_view text, int n, const DirectionSet& known);

    const BitString& pattern() const { return pattern_; }
    const std::vector<Direction>& observables() const { return observables_; }
    int degree() const { return hamming_weight(pattern_); }
    /// Qubit index of each observable.
    std::vector<int> support() const;
    std::string to_string() const;

  private:
    BitString pattern_;
    std::vector<Direction> observables_;
};

class StateVector {
  public:
    /// |0...0> on n qubits, 1 <= n <= 12.
    explicit StateVector(int n);
    /// Throws std::invalid_argument unless amplitudes has length 2^n and
    /// unit norm within 1e-10.
    StateVector(int n, std::vector<Complex> amplitudes);

    int num_qubits() const { return n_; }
    std::span<const Complex> amplitudes() const { return amps_; }
    std::span<Complex> mutable_amplitudes() { return amps_; }
    double norm() const;
    std::vector<double> probabilities() const;

    void apply(int qubit, const Gate& gate);
    void apply_cz(int a, int b);

  private:
    int n_;
    std::vector<Complex> amps_;
};

/// mu.sigma for a unit axis.
Gate pauli_operator(const std::array<double, 3>& axis);

/// Projector (1 + (-1)^s d.sigma)/2 onto outcome s of direction d.
Gate direction_projector(const Direction& d, int s);

/// Unitary G with G^dagger P^z_s G = P^d_s. Row s of G is <d, s|; each row's
/// first nonzero entry is made real positive. Throws std::invalid_argument
/// for a non-unit axis.
Gate rotation_gate(const Direction& d);

/// Brickwork random circuit: each layer applies exp(-i a/2 n.sigma) with
/// a uniform in [0, 2 pi) and n uniform on the sphere to every qubit, then
/// CZ on pairs (q, q+1) with q = layer mod 2, layer mod 2 + 2, ...
/// Deterministic in the seed; depth 0 gives |0...0>.
StateVector random_circuit_state(int n, int depth, std::uint64_t seed);

/// Haar-random pure state (normalized complex Gaussian vector).
StateVector haar_random_state(int n, std::uint64_t seed);

/// Rotates psi into the setting's measurement basis and draws one outcome.
BitString ideal_outcome_sample(const StateVector& psi, const DirectionSet& directions,
                               SettingView setting, Rng& rng);

/// Outcome distribution of psi measured in the given setting.
std::vector<double> setting_distribution(const StateVector& psi, const DirectionSet& directions,
                                         SettingView setting);

/// Draws ideal outcomes for arbitrary settings. When |S|^n 2^n is small the
/// cumulative distribution of every setting is cached up front; otherwise
/// each call rotates the state.
class OutcomeSampler {
  public:
    OutcomeSampler(const StateVector& psi, const DirectionSet& directions);

    Word sample(SettingView setting, Rng& rng) const;
    bool cached() const { return !cdf_.empty(); }

  private:
    std::size_t setting_index(SettingView setting) const;

    StateVector psi_;
    DirectionSet directions_;
    std::size_t outcomes_;
    std::vector<double> cdf_;  // settings x outcomes, row-major
};

/// Draws a cumulative table index for u in [0, 1).
std::size_t sample_cdf(std::span<const double> cdf, double u);

/// <psi| C |psi>. Throws std::invalid_argument on a qubit-count mismatch.
double exact_expectation(const StateVector& psi, const Correlator& c);

}  // namespace xshadow

#endif
