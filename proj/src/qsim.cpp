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

#include "xshadow/qsim.h"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <numbers>
#include <numeric>
#include <random>
#include <stdexcept>

#include "xshadow/kernels.h"

namespace xshadow {

namespace {

constexpr Complex kI{0.0, 1.0};

void require_qubits(int n) {
    if (n < 1 || n > kMaxSimQubits) {
        throw std::invalid_argument("qubit count " + std::to_string(n) + " outside [1, 12]");
    }
}

void apply_gate(std::span<Complex> amps, int q, const Gate& g) {
    const Complex u[4] = {g(0, 0), g(0, 1), g(1, 0), g(1, 1)};
    kernels::apply_1q(amps, q, u);
}

bool valid_label(std::string_view label) {
    if (label.empty() || label == "I") {
        return false;
    }
    return std::none_of(label.begin(), label.end(), [](char c) {
        return c == ',' || c == '@' || c == ';' || std::isspace(static_cast<unsigned char>(c));
    });
}

}  // namespace

bool Direction::is_unit(double tol) const {
    const double norm = std::sqrt(axis[0] * axis[0] + axis[1] * axis[1] + axis[2] * axis[2]);
    return std::abs(norm - 1.0) <= tol;
}

Direction direction_x() { return {"x", {1.0, 0.0, 0.0}}; }
Direction direction_y() { return {"y", {0.0, 1.0, 0.0}}; }
Direction direction_z() { return {"z", {0.0, 0.0, 1.0}}; }

DirectionSet::DirectionSet(std::vector<Direction> directions) : directions_(std::move(directions)) {
    if (directions_.empty()) {
        throw std::invalid_argument("direction set is empty");
    }
    if (directions_.size() > 255) {
        throw std::invalid_argument("direction set has more than 255 entries");
    }
    for (std::size_t k = 0; k < directions_.size(); ++k) {
        const Direction& d = directions_[k];
        if (!valid_label(d.label)) {
            throw std::invalid_argument("invalid direction label '" + d.label + "'");
        }
        if (!d.is_unit()) {
            throw std::invalid_argument("direction '" + d.label + "' is not a unit vector");
        }
        for (std::size_t j = 0; j < k; ++j) {
            if (directions_[j].label == d.label) {
                throw std::invalid_argument("duplicate direction label '" + d.label + "'");
            }
        }
    }
}

DirectionSet DirectionSet::pauli() { return DirectionSet({direction_x(), direction_y(), direction_z()}); }

std::optional<std::size_t> DirectionSet::index_of(std::string_view label) const {
    for (std::size_t k = 0; k < directions_.size(); ++k) {
        if (directions_[k].label == label) {
            return k;
        }
    }
    return std::nullopt;
}

std::vector<std::string> DirectionSet::labels() const {
    std::vector<std::string> out;
    for (const auto& d : directions_) {
        out.push_back(d.label);
    }
    return out;
}

Correlator::Correlator(BitString pattern, std::vector<Direction> observables)
    : pattern_(pattern), observables_(std::move(observables)) {
    if (static_cast<int>(observables_.size()) != hamming_weight(pattern_)) {
        throw std::invalid_argument("correlator needs one observable per set pattern bit");
    }
    for (const auto& d : observables_) {
        if (!d.is_unit()) {
            throw std::invalid_argument("correlator observable '" + d.label + "' is not a unit vector");
        }
    }
}

Correlator Correlator::identity(int n) { return Correlator(BitString::zeros(n), {}); }

Correlator Correlator::parse(std::string_view text, int n, const DirectionSet& known) {
    std::vector<std::pair<int, Direction>> terms;
    std::size_t pos = 0;
    while (pos < text.size()) {
        const std::size_t end = text.find_first_of("; \t", pos);
        const std::string_view token = text.substr(pos, end == std::string_view::npos ? end : end - pos);
        pos = end == std::string_view::npos ? text.size() : end + 1;
        if (token.empty() || token == "I") {
            continue;
        }
        const std::size_t at = token.find('@');
        if (at == std::string_view::npos || at == 0 || at + 1 == token.size()) {
            throw std::invalid_argument("correlator term '" + std::string(token) +
                                        "' is not of the form label@qubit");
        }
        const std::string label(token.substr(0, at));
        const std::string qubit_text(token.substr(at + 1));
        std::size_t used = 0;
        int qubit = -1;
        try {
            qubit = std::stoi(qubit_text, &used);
        } catch (const std::exception&) {
            used = 0;
        }
        if (used != qubit_text.size() || qubit < 0 || qubit >= n) {
            throw std::invalid_argument("correlator term '" + std::string(token) +
                                        "' has an invalid qubit index");
        }
        const auto idx = known.index_of(label);
        if (!idx) {
            throw std::invalid_argument("correlator term '" + std::string(token) +
                                        "' uses unknown direction '" + label + "'");
        }
        for (const auto& [q, d] : terms) {
            if (q == qubit) {
                throw std::invalid_argument("correlator acts twice on qubit " + std::to_string(qubit));
            }
        }
        terms.emplace_back(qubit, known[*idx]);
    }
    std::sort(terms.begin(), terms.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
    Word bits = 0;
    std::vector<Direction> observables;
    for (auto& [q, d] : terms) {
        bits |= Word{1} << q;
        observables.push_back(std::move(d));
    }
    return Correlator(BitString(n, bits), std::move(observables));
}

std::vector<int> Correlator::support() const {
    std::vector<int> out;
    for (int i = 0; i < pattern_.size(); ++i) {
        if (pattern_.bit(i)) {
            out.push_back(i);
        }
    }
    return out;
}

std::string Correlator::to_string() const {
    if (observables_.empty()) {
        return "I";
    }
    std::string out;
    const auto qubits = support();
    for (std::size_t k = 0; k < qubits.size(); ++k) {
        if (k) {
            out += ';';
        }
        out += observables_[k].label + "@" + std::to_string(qubits[k]);
    }
    return out;
}

StateVector::StateVector(int n) : n_(n) {
    require_qubits(n);
    amps_.assign(std::size_t{1} << n, Complex{0.0, 0.0});
    amps_[0] = 1.0;
}

StateVector::StateVector(int n, std::vector<Complex> amplitudes) : n_(n), amps_(std::move(amplitudes)) {
    require_qubits(n);
    if (amps_.size() != (std::size_t{1} << n)) {
        throw std::invalid_argument("statevector needs 2^n amplitudes");
    }
    if (std::abs(norm() - 1.0) > 1e-10) {
        throw std::invalid_argument("statevector is not normalized");
    }
}

double StateVector::norm() const {
    double total = 0.0;
    for (const auto& a : amps_) {
        total += std::norm(a);
    }
    return std::sqrt(total);
}

std::vector<double> StateVector::probabilities() const {
    std::vector<double> p(amps_.size());
    std::transform(amps_.begin(), amps_.end(), p.begin(), [](const Complex& a) { return std::norm(a); });
    return p;
}

void StateVector::apply(int qubit, const Gate& gate) {
    if (qubit < 0 || qubit >= n_) {
        throw std::invalid_argument("gate qubit out of range");
    }
    apply_gate(amps_, qubit, gate);
}

void StateVector::apply_cz(int a, int b) {
    if (a < 0 || a >= n_ || b < 0 || b >= n_ || a == b) {
        throw std::invalid_argument("invalid CZ qubits");
    }
    const std::size_t mask = (std::size_t{1} << a) | (std::size_t{1} << b);
    for (std::size_t i = 0; i < amps_.size(); ++i) {
        if ((i & mask) == mask) {
            amps_[i] = -amps_[i];
        }
    }
}

Gate pauli_operator(const std::array<double, 3>& axis) {
    Gate m;
    m << Complex(axis[2], 0.0), Complex(axis[0], -axis[1]), Complex(axis[0], axis[1]), Complex(-axis[2], 0.0);
    return m;
}

Gate direction_projector(const Direction& d, int s) {
    const double sign = s ? -1.0 : 1.0;
    return 0.5 * (Gate::Identity() + sign * pauli_operator(d.axis));
}

Gate rotation_gate(const Direction& d) {
    if (!d.is_unit()) {
        throw std::invalid_argument("rotation_gate: direction '" + d.label + "' is not a unit vector");
    }
    const double theta = std::acos(std::clamp(d.axis[2], -1.0, 1.0));
    const double phi = std::atan2(d.axis[1], d.axis[0]);
    const Complex phase = std::polar(1.0, phi);
    // Eigenvectors of d.sigma: |d,0> = (cos t/2, e^{i phi} sin t/2),
    // |d,1> = (sin t/2, -e^{i phi} cos t/2).
    const Complex plus[2] = {std::cos(theta / 2), phase * std::sin(theta / 2)};
    const Complex minus[2] = {std::sin(theta / 2), -phase * std::cos(theta / 2)};
    Gate g;
    for (int col = 0; col < 2; ++col) {
        g(0, col) = std::conj(plus[col]);
        g(1, col) = std::conj(minus[col]);
    }
    for (int row = 0; row < 2; ++row) {
        const int lead = std::abs(g(row, 0)) > 1e-15 ? 0 : 1;
        const Complex fix = std::abs(g(row, lead)) / g(row, lead);
        g.row(row) *= fix;
    }
    return g;
}

StateVector random_circuit_state(int n, int depth, std::uint64_t seed) {
    require_qubits(n);
    if (depth < 0) {
        throw std::invalid_argument("circuit depth must be non-negative");
    }
    StateVector psi(n);
    Rng rng = make_stream(seed, 0);
    for (int layer = 0; layer < depth; ++layer) {
        for (int q = 0; q < n; ++q) {
            const double z = 2.0 * uniform01(rng) - 1.0;
            const double az = 2.0 * std::numbers::pi * uniform01(rng);
            const double angle = 2.0 * std::numbers::pi * uniform01(rng);
            const double r = std::sqrt(std::max(0.0, 1.0 - z * z));
            const std::array<double, 3> axis{r * std::cos(az), r * std::sin(az), z};
            const Gate g = std::cos(angle / 2) * Gate::Identity() - kI * std::sin(angle / 2) * pauli_operator(axis);
            psi.apply(q, g);
        }
        for (int q = layer % 2; q + 1 < n; q += 2) {
            psi.apply_cz(q, q + 1);
        }
    }
    return psi;
}

StateVector haar_random_state(int n, std::uint64_t seed) {
    require_qubits(n);
    Rng rng = make_stream(seed, 0);
    std::vector<Complex> amps(std::size_t{1} << n);
    double total = 0.0;
    for (auto& a : amps) {
        // Box-Muller from the portable uniform.
        const double u1 = 1.0 - uniform01(rng);
        const double u2 = uniform01(rng);
        const double r = std::sqrt(-2.0 * std::log(u1));
        a = std::polar(r, 2.0 * std::numbers::pi * u2);
        total += std::norm(a);
    }
    const double scale = 1.0 / std::sqrt(total);
    for (auto& a : amps) {
        a *= scale;
    }
    return StateVector(n, std::move(amps));
}

std::vector<double> setting_distribution(const StateVector& psi, const DirectionSet& directions,
                                         SettingView setting) {
    if (static_cast<int>(setting.size()) != psi.num_qubits()) {
        throw std::invalid_argument("setting length does not match the state's qubit count");
    }
    std::vector<Complex> amps(psi.amplitudes().begin(), psi.amplitudes().end());
    for (int q = 0; q < psi.num_qubits(); ++q) {
        if (setting[q] >= directions.size()) {
            throw std::invalid_argument("setting index outside the direction set");
        }
        const Direction& d = directions[setting[q]];
        if (d.axis[2] == 1.0) {
            continue;  // z needs no rotation
        }
        apply_gate(amps, q, rotation_gate(d));
    }
    std::vector<double> p(amps.size());
    std::transform(amps.begin(), amps.end(), p.begin(), [](const Complex& a) { return std::norm(a); });
    return p;
}

std::size_t sample_cdf(std::span<const double> cdf, double u) {
    const double target = u * cdf.back();
    const auto it = std::upper_bound(cdf.begin(), cdf.end(), target);
    return std::min<std::size_t>(static_cast<std::size_t>(it - cdf.begin()), cdf.size() - 1);
}

BitString ideal_outcome_sample(const StateVector& psi, const DirectionSet& directions,
                               SettingView setting, Rng& rng) {
    std::vector<double> cdf = setting_distribution(psi, directions, setting);
    std::partial_sum(cdf.begin(), cdf.end(), cdf.begin());
    return BitString(psi.num_qubits(), static_cast<Word>(sample_cdf(cdf, uniform01(rng))));
}

OutcomeSampler::OutcomeSampler(const StateVector& psi, const DirectionSet& directions)
    : psi_(psi), directions_(directions), outcomes_(std::size_t{1} << psi.num_qubits()) {
    const int n = psi.num_qubits();
    const double settings = std::pow(static_cast<double>(directions.size()), n);
    if (settings * static_cast<double>(outcomes_) > static_cast<double>(1 << 24)) {
        return;
    }
    const auto count = static_cast<std::ptrdiff_t>(settings);
    cdf_.resize(static_cast<std::size_t>(count) * outcomes_);
#pragma omp parallel for schedule(dynamic)
    for (std::ptrdiff_t idx = 0; idx < count; ++idx) {
        MeasurementSetting setting(n);
        std::size_t rest = static_cast<std::size_t>(idx);
        for (int q = 0; q < n; ++q) {
            setting[q] = static_cast<std::uint8_t>(rest % directions.size());
            rest /= directions.size();
        }
        const auto p = setting_distribution(psi, directions, setting);
        double* row = cdf_.data() + static_cast<std::size_t>(idx) * outcomes_;
        std::partial_sum(p.begin(), p.end(), row);
    }
}

std::size_t OutcomeSampler::setting_index(SettingView setting) const {
    std::size_t idx = 0;
    for (int q = psi_.num_qubits() - 1; q >= 0; --q) {
        idx = idx * directions_.size() + setting[q];
    }
    return idx;
}

Word OutcomeSampler::sample(SettingView setting, Rng& rng) const {
    if (cdf_.empty()) {
        return ideal_outcome_sample(psi_, directions_, setting, rng).bits();
    }
    const std::span<const double> row(cdf_.data() + setting_index(setting) * outcomes_, outcomes_);
    return static_cast<Word>(sample_cdf(row, uniform01(rng)));
}

double exact_expectation(const StateVector& psi, const Correlator& c) {
    if (c.pattern().size() != psi.num_qubits()) {
        throw std::invalid_argument("correlator and state have different qubit counts");
    }
    std::vector<Complex> phi(psi.amplitudes().begin(), psi.amplitudes().end());
    const auto qubits = c.support();
    for (std::size_t k = 0; k < qubits.size(); ++k) {
        apply_gate(phi, qubits[k], pauli_operator(c.observables()[k].axis));
    }
    Complex overlap{0.0, 0.0};
    const auto amps = psi.amplitudes();
    for (std::size_t i = 0; i < phi.size(); ++i) {
        overlap += std::conj(amps[i]) * phi[i];
    }
    return overlap.real();
}

}  // namespace xshadow
