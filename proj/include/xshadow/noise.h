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

#ifndef XSHADOW_NOISE_H
#define XSHADOW_NOISE_H

// Classical readout channels R(s | s') from ideal outcome s' to observed
// outcome s, their X-twirled averages and Fourier spectra.

#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "xshadow/bitspace.h"
#include "xshadow/rng.h"

namespace xshadow {

/// Single-qubit flip probabilities.
struct FlipRates {
    double p10 = 0.0;  // P(read 0 | ideal 1)
    double p01 = 0.0;  // P(read 1 | ideal 0)

    bool operator==(const FlipRates&) const = default;
};

class NoiseModel {
  public:
    virtual ~NoiseModel() = default;

    virtual int num_qubits() const = 0;
    virtual std::string name() const = 0;
    virtual bool exact_rows() const { return true; }
    virtual bool samplable() const { return true; }

    /// R(observed | ideal).
    virtual double transition(Word observed, Word ideal) const = 0;
    /// Draws an observed outcome for the given ideal one.
    virtual Word sample(Word ideal, Rng& rng) const = 0;
};

/// Flip model on a directed chain. Qubit i flips with its base rate for the
/// ideal bit; if qubit i-1 flipped in the same shot the rate becomes
/// min(1, rate (1 + gamma)). gamma = 0 is the independent-flip model.
class ChainFlipModel final : public NoiseModel {
  public:
    ChainFlipModel(std::vector<FlipRates> rates, double gamma);

    int num_qubits() const override { return static_cast<int>(rates_.size()); }
    std::string name() const override { return gamma_ == 0.0 ? "independent" : "chain_crosstalk"; }
    double transition(Word observed, Word ideal) const override;
    Word sample(Word ideal, Rng& rng) const override;

    const std::vector<FlipRates>& rates() const { return rates_; }
    double gamma() const { return gamma_; }

  private:
    double flip_rate(int qubit, bool ideal_bit, bool previous_flipped) const;

    std::vector<FlipRates> rates_;
    double gamma_;
};

/// Product channel R = prod_i R_i. Throws std::invalid_argument if a rate is
/// outside [0, 1] or rates is empty / longer than 24.
std::shared_ptr<const NoiseModel> independent_flip_model(std::vector<FlipRates> rates);
std::shared_ptr<const NoiseModel> independent_flip_model(int n, FlipRates rates);

/// Chain crosstalk with coupling gamma in [0, 1).
std::shared_ptr<const NoiseModel> crosstalk_model(std::vector<FlipRates> rates, double gamma);
std::shared_ptr<const NoiseModel> crosstalk_model(int n, FlipRates rates, double gamma);

/// Perfect readout.
std::shared_ptr<const NoiseModel> identity_noise(int n);

/// Draws s with probability R(s | ideal).
BitString noisy_outcome(const NoiseModel& model, const BitString& ideal, Rng& rng);

/// Dense R as a 2^n x 2^n row-major table, entry [s * 2^n + s'] = R(s | s').
/// Capped at kMaxExactBits / 2 qubits.
std::vector<double> dense_transition(const NoiseModel& model);

enum class TwirlMode { Exact, Sampled };

/// X-twirled channel Rbar(s | s') = Rbar(s (+) s' | 0). Holds the exact row
/// Rbar(. | 0) when built in exact mode and always keeps the underlying model
/// for sampling.
class TwirledNoise {
  public:
    TwirledNoise(std::shared_ptr<const NoiseModel> model, std::optional<std::vector<double>> row);

    int num_qubits() const { return model_->num_qubits(); }
    bool has_table() const { return row_.has_value(); }
    /// Rbar(. | 0). Throws CapabilityError without an exact table.
    const std::vector<double>& row() const;
    /// Rbar(observed | ideal).
    double transition(Word observed, Word ideal) const;
    /// One draw from Rbar(. | 0): random t, noisy read of t, unflip.
    Word sample(Rng& rng) const;
    const NoiseModel& model() const { return *model_; }

  private:
    std::shared_ptr<const NoiseModel> model_;
    std::optional<std::vector<double>> row_;
};

/// Rbar(s | 0) = 2^-n sum_t R(s (+) t | t) for every s.
std::vector<double> twirled_row(const NoiseModel& model);
std::vector<double> twirled_row_serial(const NoiseModel& model);

/// Exact mode enumerates all t (needs exact rows and n <= 14); sampled mode
/// keeps only the sampler. Throws CapabilityError when the model cannot
/// support the requested mode.
TwirledNoise twirl(std::shared_ptr<const NoiseModel> model, TwirlMode mode = TwirlMode::Exact);

/// Spectrum g(w) = sum_s (-1)^(w.s) Rbar(s | 0), indexed by the word of w.
class FourierComponents {
  public:
    explicit FourierComponents(std::vector<double> spectrum);

    int num_qubits() const { return n_; }
    double operator()(Word w) const { return spectrum_[w]; }
    double at(const BitString& w) const;
    const std::vector<double>& values() const { return spectrum_; }
    /// Mean of g over all wavevectors of Hamming weight k.
    double mean_at_weight(int k) const;

  private:
    int n_;
    std::vector<double> spectrum_;
};

/// Full spectrum by Walsh transform of the exact twirled row. Throws
/// CapabilityError without an exact table.
FourierComponents exact_g(const TwirledNoise& tw);

}  // namespace xshadow

#endif
