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

#include "xshadow/shadows.h"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "xshadow/errors.h"

namespace xshadow {

namespace {

void require_setting(const XiTable& xi, SettingView setting, int n) {
    if (static_cast<int>(setting.size()) != n) {
        throw std::invalid_argument("setting length does not match the correlator");
    }
    for (auto nu : setting) {
        if (nu >= xi.size()) {
            throw std::invalid_argument("setting index outside the direction set");
        }
    }
}

void require_dense(int n) {
    if (n > kMaxDenseQubits) {
        throw CapabilityError("dense operators limited to 4 qubits, got " + std::to_string(n));
    }
}

// Product of the tr(xi sigma)/2 factors over the correlator's support.
double support_product(const XiTable& xi, const Correlator& c, SettingView setting) {
    const auto qubits = c.support();
    double product = 1.0;
    for (std::size_t k = 0; k < qubits.size(); ++k) {
        product *= xi.half_trace(setting[qubits[k]], c.observables()[k]);
    }
    return product;
}

}  // namespace

XiTable::XiTable(DirectionSet directions, std::vector<Gate> xi)
    : directions_(std::move(directions)), xi_(std::move(xi)) {
    if (xi_.size() != directions_.size()) {
        throw std::invalid_argument("one xi operator per direction is required");
    }
    for (const auto& m : xi_) {
        // xi = bx sigma_x + by sigma_y + bz sigma_z.
        bloch_.push_back({m(1, 0).real(), m(1, 0).imag(), m(0, 0).real()});
    }
}

double XiTable::half_trace(std::size_t nu, const Direction& mu) const {
    const auto& b = bloch_[nu];
    return b[0] * mu.axis[0] + b[1] * mu.axis[1] + b[2] * mu.axis[2];
}

XiTable compute_xi(const DirectionSet& directions) {
    const auto count = static_cast<Eigen::Index>(directions.size());
    Eigen::MatrixXd frame(2 * count, 4);
    const double scale = 1.0 / (2.0 * static_cast<double>(count));
    for (Eigen::Index k = 0; k < count; ++k) {
        const auto& axis = directions[static_cast<std::size_t>(k)].axis;
        for (int s = 0; s < 2; ++s) {
            const double sign = s ? -1.0 : 1.0;
            frame.row(2 * k + s) << scale, scale * sign * axis[0], scale * sign * axis[1], scale * sign * axis[2];
        }
    }
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(frame, Eigen::ComputeThinU | Eigen::ComputeThinV);
    const auto& sv = svd.singularValues();
    const double cutoff = 1e-9 * sv(0);
    if (sv.size() < 4) {
        throw NotInformationallyCompleteError("direction set does not span the qubit operator space");
    }
    for (Eigen::Index k = 0; k < sv.size(); ++k) {
        if (sv(k) <= cutoff) {
            throw NotInformationallyCompleteError("direction set does not span the qubit operator space");
        }
    }
    const Eigen::MatrixXd pinv = svd.matrixV() * sv.cwiseInverse().asDiagonal() * svd.matrixU().transpose();

    std::vector<Gate> xi;
    for (Eigen::Index k = 0; k < count; ++k) {
        // Shadow of outcome (nu, 0) has coordinates pinv e_{2k}.
        const Eigen::Vector4d r = pinv.col(2 * k);
        const Gate shadow = 0.5 * (r(0) * Gate::Identity() + pauli_operator({r(1), r(2), r(3)}));
        xi.push_back(2.0 * shadow - Gate::Identity());
    }
    return XiTable(directions, std::move(xi));
}

double kappa(const XiTable& xi, std::span<const Direction> observables) {
    double best = 0.0;
    for (std::size_t nu = 0; nu < xi.size(); ++nu) {
        for (const auto& mu : observables) {
            best = std::max(best, std::abs(xi.half_trace(nu, mu)));
        }
    }
    return best;
}

ShadeKernel::ShadeKernel(const XiTable& xi, const Correlator& c)
    : pattern_(c.pattern().bits()), stride_(xi.size()), qubits_(c.support()) {
    for (std::size_t k = 0; k < qubits_.size(); ++k) {
        for (std::size_t nu = 0; nu < xi.size(); ++nu) {
            factors_.push_back(xi.half_trace(nu, c.observables()[k]));
        }
    }
}

double unmitigated_shade(const XiTable& xi, const Correlator& c, SettingView setting, const BitString& s) {
    const int n = c.pattern().size();
    require_setting(xi, setting, n);
    if (s.size() != n) {
        throw std::invalid_argument("outcome length does not match the correlator");
    }
    const auto qubits = c.support();
    double product = 1.0;
    for (std::size_t k = 0; k < qubits.size(); ++k) {
        const double sign = s.bit(qubits[k]) ? -1.0 : 1.0;
        product *= sign * xi.half_trace(setting[qubits[k]], c.observables()[k]);
    }
    return product;
}

double fourier_shadow_trace(const XiTable& xi, const Correlator& c, SettingView setting, const BitString& w) {
    const int n = c.pattern().size();
    require_setting(xi, setting, n);
    if (w.size() != n) {
        throw std::invalid_argument("wavevector length does not match the correlator");
    }
    // Per qubit: tr(1)=2, tr(sigma)=0, tr(xi)=0, tr(xi sigma)=2 half_trace.
    if (w.bits() != c.pattern().bits()) {
        return 0.0;
    }
    const double idle = std::ldexp(1.0, n - c.degree());
    return idle * std::ldexp(support_product(xi, c, setting), c.degree());
}

double mitigated_shade(const XiTable& xi, double g_v, const Correlator& c, SettingView setting,
                       const BitString& s, double g_floor) {
    const int n = c.pattern().size();
    require_setting(xi, setting, n);
    if (s.size() != n) {
        throw std::invalid_argument("outcome length does not match the correlator");
    }
    if (!(std::abs(g_v) >= g_floor)) {
        throw UnmitigatableComponentError("|g(" + c.pattern().to_string() + ")| = " + std::to_string(std::abs(g_v)) +
                                          " is below the floor " + std::to_string(g_floor));
    }
    const double sign = dot_mod2_sign(c.pattern(), s);
    return sign / g_v * support_product(xi, c, setting);
}

DenseOperator kron_qubits(std::span<const Gate> factors) {
    DenseOperator out = DenseOperator::Identity(1, 1);
    // Each new factor goes in front, so qubit 0 ends up least significant.
    for (const Gate& a : factors) {
        DenseOperator next(out.rows() * 2, out.cols() * 2);
        for (int r = 0; r < 2; ++r) {
            for (int col = 0; col < 2; ++col) {
                next.block(r * out.rows(), col * out.cols(), out.rows(), out.cols()) = out * a(r, col);
            }
        }
        out = std::move(next);
    }
    return out;
}

DenseOperator dense_correlator(const Correlator& c) {
    const int n = c.pattern().size();
    require_dense(n);
    std::vector<Gate> factors(static_cast<std::size_t>(n), Gate::Identity());
    const auto qubits = c.support();
    for (std::size_t k = 0; k < qubits.size(); ++k) {
        factors[qubits[k]] = pauli_operator(c.observables()[k].axis);
    }
    return kron_qubits(factors);
}

DenseOperator dense_shadow(const XiTable& xi, SettingView setting, const BitString& s) {
    const int n = s.size();
    require_dense(n);
    require_setting(xi, setting, n);
    std::vector<Gate> factors;
    for (int i = 0; i < n; ++i) {
        const double sign = s.bit(i) ? -1.0 : 1.0;
        factors.push_back(0.5 * (Gate::Identity() + sign * xi.xi(setting[i])));
    }
    return kron_qubits(factors);
}

DenseOperator dense_mitigated_shadow(const XiTable& xi, std::span<const double> transition, SettingView setting,
                                     const BitString& s) {
    const int n = s.size();
    require_dense(n);
    const Eigen::Index dim = Eigen::Index{1} << n;
    if (static_cast<Eigen::Index>(transition.size()) != dim * dim) {
        throw std::invalid_argument("transition table must be 2^n x 2^n");
    }
    const Eigen::MatrixXd r = Eigen::Map<const Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>>(
        transition.data(), dim, dim);
    Eigen::FullPivLU<Eigen::MatrixXd> lu(r);
    if (!lu.isInvertible()) {
        throw SingularNoiseError("transition matrix is singular");
    }
    const Eigen::MatrixXd rinv = lu.inverse();
    DenseOperator out = DenseOperator::Zero(dim, dim);
    for (Eigen::Index sp = 0; sp < dim; ++sp) {
        const double weight = rinv(sp, s.bits());
        if (weight != 0.0) {
            out += weight * dense_shadow(xi, setting, BitString(n, static_cast<Word>(sp)));
        }
    }
    return out;
}

std::vector<double> dense_twirled_transition(const TwirledNoise& tw) {
    const int n = tw.num_qubits();
    require_dense(n);
    const Word dim = Word{1} << n;
    const auto& row = tw.row();
    std::vector<double> out(static_cast<std::size_t>(dim) * dim);
    for (Word s = 0; s < dim; ++s) {
        for (Word sp = 0; sp < dim; ++sp) {
            out[static_cast<std::size_t>(s) * dim + sp] = row[s ^ sp];
        }
    }
    return out;
}

DenseOperator dense_mitigated_shadow(const XiTable& xi, const TwirledNoise& tw, SettingView setting,
                                     const BitString& s) {
    if (tw.num_qubits() != s.size()) {
        throw std::invalid_argument("outcome length does not match the noise");
    }
    const auto table = dense_twirled_transition(tw);
    return dense_mitigated_shadow(xi, table, setting, s);
}

}  // namespace xshadow
