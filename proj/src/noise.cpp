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

#include "xshadow/noise.h"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "xshadow/errors.h"
#include "xshadow/kernels.h"

namespace xshadow {

namespace {

void validate_rates(const std::vector<FlipRates>& rates) {
    if (rates.empty() || static_cast<int>(rates.size()) > kMaxBits) {
        throw std::invalid_argument("noise model needs between 1 and 24 qubits");
    }
    for (std::size_t i = 0; i < rates.size(); ++i) {
        const auto& r = rates[i];
        if (!(r.p10 >= 0.0 && r.p10 <= 1.0)) {
            throw std::invalid_argument("p10[" + std::to_string(i) + "] outside [0, 1]");
        }
        if (!(r.p01 >= 0.0 && r.p01 <= 1.0)) {
            throw std::invalid_argument("p01[" + std::to_string(i) + "] outside [0, 1]");
        }
    }
}

}  // namespace

ChainFlipModel::ChainFlipModel(std::vector<FlipRates> rates, double gamma)
    : rates_(std::move(rates)), gamma_(gamma) {
    validate_rates(rates_);
    if (!(gamma >= 0.0 && gamma < 1.0)) {
        throw std::invalid_argument("gamma outside [0, 1)");
    }
}

double ChainFlipModel::flip_rate(int qubit, bool ideal_bit, bool previous_flipped) const {
    const FlipRates& r = rates_[qubit];
    const double base = ideal_bit ? r.p10 : r.p01;
    if (previous_flipped && qubit > 0) {
        return std::min(1.0, base * (1.0 + gamma_));
    }
    return base;
}

double ChainFlipModel::transition(Word observed, Word ideal) const {
    const Word flips = observed ^ ideal;
    double p = 1.0;
    bool previous = false;
    for (int i = 0; i < num_qubits(); ++i) {
        const bool flipped = (flips >> i) & 1U;
        const double rate = flip_rate(i, (ideal >> i) & 1U, previous);
        p *= flipped ? rate : 1.0 - rate;
        previous = flipped;
    }
    return p;
}

Word ChainFlipModel::sample(Word ideal, Rng& rng) const {
    Word observed = ideal;
    bool previous = false;
    for (int i = 0; i < num_qubits(); ++i) {
        const double rate = flip_rate(i, (ideal >> i) & 1U, previous);
        // Always consume one draw per qubit so streams stay aligned.
        previous = uniform01(rng) < rate;
        if (previous) {
            observed ^= Word{1} << i;
        }
    }
    return observed;
}

std::shared_ptr<const NoiseModel> independent_flip_model(std::vector<FlipRates> rates) {
    return std::make_shared<ChainFlipModel>(std::move(rates), 0.0);
}

std::shared_ptr<const NoiseModel> independent_flip_model(int n, FlipRates rates) {
    if (n < 1 || n > kMaxBits) {
        throw std::invalid_argument("noise model needs between 1 and 24 qubits");
    }
    return independent_flip_model(std::vector<FlipRates>(static_cast<std::size_t>(n), rates));
}

std::shared_ptr<const NoiseModel> crosstalk_model(std::vector<FlipRates> rates, double gamma) {
    return std::make_shared<ChainFlipModel>(std::move(rates), gamma);
}

std::shared_ptr<const NoiseModel> crosstalk_model(int n, FlipRates rates, double gamma) {
    if (n < 1 || n > kMaxBits) {
        throw std::invalid_argument("noise model needs between 1 and 24 qubits");
    }
    return crosstalk_model(std::vector<FlipRates>(static_cast<std::size_t>(n), rates), gamma);
}

std::shared_ptr<const NoiseModel> identity_noise(int n) { return independent_flip_model(n, FlipRates{}); }

BitString noisy_outcome(const NoiseModel& model, const BitString& ideal, Rng& rng) {
    if (ideal.size() != model.num_qubits()) {
        throw std::invalid_argument("outcome length does not match the noise model");
    }
    return BitString(ideal.size(), model.sample(ideal.bits(), rng));
}

std::vector<double> dense_transition(const NoiseModel& model) {
    const int n = model.num_qubits();
    if (n > kMaxExactBits / 2) {
        throw CapabilityError("dense transition matrix limited to 7 qubits");
    }
    if (!model.exact_rows()) {
        throw CapabilityError("noise model '" + model.name() + "' has no exact rows");
    }
    const Word dim = Word{1} << n;
    std::vector<double> out(static_cast<std::size_t>(dim) * dim);
    for (Word s = 0; s < dim; ++s) {
        for (Word sp = 0; sp < dim; ++sp) {
            out[static_cast<std::size_t>(s) * dim + sp] = model.transition(s, sp);
        }
    }
    return out;
}

std::vector<double> twirled_row_serial(const NoiseModel& model) {
    const Word dim = Word{1} << model.num_qubits();
    std::vector<double> row(dim, 0.0);
    for (Word s = 0; s < dim; ++s) {
        double total = 0.0;
        for (Word t = 0; t < dim; ++t) {
            total += model.transition(s ^ t, t);
        }
        row[s] = total / dim;
    }
    return row;
}

std::vector<double> twirled_row(const NoiseModel& model) {
    const Word dim = Word{1} << model.num_qubits();
    std::vector<double> row(dim, 0.0);
    const auto count = static_cast<std::ptrdiff_t>(dim);
#pragma omp parallel for schedule(static) if (count >= 64)
    for (std::ptrdiff_t k = 0; k < count; ++k) {
        const Word s = static_cast<Word>(k);
        double total = 0.0;
        for (Word t = 0; t < dim; ++t) {
            total += model.transition(s ^ t, t);
        }
        row[s] = total / dim;
    }
    return row;
}

TwirledNoise::TwirledNoise(std::shared_ptr<const NoiseModel> model, std::optional<std::vector<double>> row)
    : model_(std::move(model)), row_(std::move(row)) {
    if (!model_) {
        throw std::invalid_argument("twirled noise needs a model");
    }
    if (row_ && row_->size() != (std::size_t{1} << model_->num_qubits())) {
        throw std::invalid_argument("twirled row has the wrong length");
    }
}

const std::vector<double>& TwirledNoise::row() const {
    if (!row_) {
        throw CapabilityError("twirled noise was built without an exact table");
    }
    return *row_;
}

double TwirledNoise::transition(Word observed, Word ideal) const { return row()[observed ^ ideal]; }

Word TwirledNoise::sample(Rng& rng) const {
    const Word t = static_cast<Word>(rng()) & low_mask(num_qubits());
    return model_->sample(t, rng) ^ t;
}

TwirledNoise twirl(std::shared_ptr<const NoiseModel> model, TwirlMode mode) {
    if (!model) {
        throw std::invalid_argument("twirl needs a model");
    }
    if (mode == TwirlMode::Sampled) {
        if (!model->samplable()) {
            throw CapabilityError("noise model '" + model->name() + "' cannot be sampled");
        }
        return TwirledNoise(std::move(model), std::nullopt);
    }
    if (!model->exact_rows()) {
        throw CapabilityError("noise model '" + model->name() + "' has no exact rows");
    }
    if (model->num_qubits() > kMaxExactBits) {
        throw CapabilityError("exact twirl limited to 14 qubits; use sampled mode");
    }
    auto row = twirled_row(*model);
    return TwirledNoise(std::move(model), std::move(row));
}

FourierComponents::FourierComponents(std::vector<double> spectrum)
    : n_(table_bits(spectrum.size())), spectrum_(std::move(spectrum)) {
    if (n_ < 1) {
        throw std::invalid_argument("spectrum length must be 2^n with n >= 1");
    }
}

double FourierComponents::at(const BitString& w) const {
    if (w.size() != n_) {
        throw std::invalid_argument("wavevector length does not match the spectrum");
    }
    return spectrum_[w.bits()];
}

double FourierComponents::mean_at_weight(int k) const {
    const auto words = words_of_weight(n_, k);
    if (words.empty()) {
        throw std::invalid_argument("no wavevectors of weight " + std::to_string(k));
    }
    double total = 0.0;
    for (Word w : words) {
        total += spectrum_[w];
    }
    return total / static_cast<double>(words.size());
}

FourierComponents exact_g(const TwirledNoise& tw) {
    auto spectrum = walsh_transform(tw.row());
    // The row sums to one; pin g(0) to the exact normalization.
    spectrum[0] = 1.0;
    return FourierComponents(std::move(spectrum));
}

}  // namespace xshadow
