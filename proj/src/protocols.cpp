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

#include "xshadow/protocols.h"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "xshadow/errors.h"
#include "xshadow/kernels.h"
#include "xshadow/rng.h"
#include "xshadow/stats.h"

namespace xshadow {

namespace {

std::ptrdiff_t chunk_count(std::size_t shots) { return static_cast<std::ptrdiff_t>((shots + kShotChunk - 1) / kShotChunk); }

void require_shots(std::size_t shots) {
    if (shots < 1) {
        throw std::invalid_argument("shot count must be at least 1");
    }
}

EstimateReport summarize(std::span<const double> values, const EstimatorOptions& options) {
    if (values.empty()) {
        throw std::invalid_argument("estimator needs a nonempty dataset");
    }
    EstimateReport report;
    report.value = mean(values);
    report.samples = values.size();
    report.resamples = options.bootstrap_resamples;
    report.std_error = bootstrap_stderr(values, options.bootstrap_resamples, options.bootstrap_seed);
    return report;
}

}  // namespace

TomographyDataset::TomographyDataset(int n_, DirectionSet directions_, std::uint64_t seed_)
    : n(n_), directions(std::move(directions_)), seed(seed_) {
    if (n < 1 || n > kMaxBits) {
        throw std::invalid_argument("tomography dataset qubit count outside [1, 24]");
    }
}

void TomographyDataset::append(SettingView setting, Word outcome) {
    if (static_cast<int>(setting.size()) != n) {
        throw std::invalid_argument("setting length does not match the dataset");
    }
    if ((outcome & ~low_mask(n)) != 0) {
        throw std::invalid_argument("outcome longer than the dataset's qubit count");
    }
    for (auto nu : setting) {
        if (nu >= directions.size()) {
            throw std::invalid_argument("setting index outside the direction set");
        }
    }
    settings.insert(settings.end(), setting.begin(), setting.end());
    outcomes.push_back(outcome);
}

CalibrationDataset run_calibration(const NoiseModel& model, std::size_t shots, std::uint64_t seed) {
    require_shots(shots);
    const int n = model.num_qubits();
    const Word mask = low_mask(n);
    CalibrationDataset data{n, seed, std::vector<Word>(shots)};
    Word* out = data.records.data();
    const std::ptrdiff_t chunks = chunk_count(shots);
#pragma omp parallel for schedule(dynamic)
    for (std::ptrdiff_t c = 0; c < chunks; ++c) {
        Rng rng = make_stream(seed, static_cast<std::uint64_t>(c));
        const std::size_t start = static_cast<std::size_t>(c) * kShotChunk;
        const std::size_t stop = std::min(shots, start + kShotChunk);
        for (std::size_t k = start; k < stop; ++k) {
            // |0> after X^t is |t>; the ideal outcome is t itself.
            const Word t = static_cast<Word>(rng()) & mask;
            out[k] = model.sample(t, rng) ^ t;
        }
    }
    return data;
}

double estimate_g(const CalibrationDataset& data, const BitString& w) {
    if (data.records.empty()) {
        throw std::invalid_argument("estimate_g needs a nonempty calibration dataset");
    }
    if (w.size() != data.n) {
        throw std::invalid_argument("wavevector length does not match the calibration dataset");
    }
    const std::size_t odd = kernels::odd_parity_count(data.records, w.bits());
    const std::size_t m = data.records.size();
    return (static_cast<double>(m) - 2.0 * static_cast<double>(odd)) / static_cast<double>(m);
}

TomographyDataset run_tomography(const StateVector& psi, const DirectionSet& directions, const NoiseModel& model,
                                 std::size_t shots, std::uint64_t seed) {
    require_shots(shots);
    const int n = psi.num_qubits();
    if (model.num_qubits() != n) {
        throw std::invalid_argument("noise model and state have different qubit counts");
    }
    const OutcomeSampler sampler(psi, directions);
    const Word mask = low_mask(n);
    TomographyDataset data(n, directions, seed);
    data.settings.resize(shots * static_cast<std::size_t>(n));
    data.outcomes.resize(shots);
    const std::ptrdiff_t chunks = chunk_count(shots);
    const std::uint64_t choices = directions.size();
#pragma omp parallel for schedule(dynamic)
    for (std::ptrdiff_t c = 0; c < chunks; ++c) {
        Rng rng = make_stream(seed, static_cast<std::uint64_t>(c));
        const std::size_t start = static_cast<std::size_t>(c) * kShotChunk;
        const std::size_t stop = std::min(shots, start + kShotChunk);
        for (std::size_t k = start; k < stop; ++k) {
            std::uint8_t* setting = data.settings.data() + k * static_cast<std::size_t>(n);
            for (int q = 0; q < n; ++q) {
                setting[q] = static_cast<std::uint8_t>(uniform_below(rng, choices));
            }
            const Word ideal = sampler.sample(SettingView(setting, static_cast<std::size_t>(n)), rng);
            const Word t = static_cast<Word>(rng()) & mask;
            data.outcomes[k] = model.sample(ideal ^ t, rng) ^ t;
        }
    }
    return data;
}

std::vector<double> mitigated_shade_samples(const TomographyDataset& data, const XiTable& xi, const Correlator& c,
                                            double g_v, double g_floor) {
    if (c.pattern().size() != data.n) {
        throw std::invalid_argument("correlator and dataset have different qubit counts");
    }
    if (!(std::abs(g_v) >= g_floor)) {
        throw UnmitigatableComponentError("|g(" + c.pattern().to_string() + ")| = " + std::to_string(std::abs(g_v)) +
                                          " is below the floor " + std::to_string(g_floor));
    }
    const ShadeKernel kernel(xi, c);
    const Word v = kernel.pattern();
    const double inv_g = 1.0 / g_v;
    std::vector<double> values(data.size());
    const auto count = static_cast<std::ptrdiff_t>(data.size());
    const std::size_t n = static_cast<std::size_t>(data.n);
#pragma omp parallel for schedule(static)
    for (std::ptrdiff_t l = 0; l < count; ++l) {
        const double sign = parity(v, data.outcomes[l]) ? -inv_g : inv_g;
        values[l] = sign * kernel.magnitude(data.settings.data() + static_cast<std::size_t>(l) * n);
    }
    return values;
}

std::vector<double> unmitigated_shade_samples(const TomographyDataset& data, const XiTable& xi, const Correlator& c) {
    if (c.pattern().size() != data.n) {
        throw std::invalid_argument("correlator and dataset have different qubit counts");
    }
    const std::size_t n = static_cast<std::size_t>(data.n);
    const auto qubits = c.support();
    std::vector<double> values(data.size());
    const auto count = static_cast<std::ptrdiff_t>(data.size());
#pragma omp parallel for schedule(static)
    for (std::ptrdiff_t l = 0; l < count; ++l) {
        const std::uint8_t* setting = data.settings.data() + static_cast<std::size_t>(l) * n;
        double product = 1.0;
        for (std::size_t k = 0; k < qubits.size(); ++k) {
            const double sign = (data.outcomes[l] >> qubits[k]) & 1U ? -1.0 : 1.0;
            product *= sign * xi.half_trace(setting[qubits[k]], c.observables()[k]);
        }
        values[l] = product;
    }
    return values;
}

EstimateReport estimate_correlator_with_g(const TomographyDataset& data, double g_v, const Correlator& c,
                                          const XiTable& xi, const EstimatorOptions& options) {
    const auto values = mitigated_shade_samples(data, xi, c, g_v, options.g_floor);
    return summarize(values, options);
}

EstimateReport estimate_correlator_mitigated(const TomographyDataset& data, const CalibrationDataset& cal,
                                             const Correlator& c, const XiTable& xi, const EstimatorOptions& options) {
    if (cal.n != data.n) {
        throw std::invalid_argument("calibration and tomography datasets have different qubit counts");
    }
    const double g_hat = estimate_g(cal, c.pattern());
    if (!(std::abs(g_hat) >= options.g_floor)) {
        throw UnmitigatableComponentError("|g-hat(" + c.pattern().to_string() + ")| = " +
                                          std::to_string(std::abs(g_hat)) + " is below the floor " +
                                          std::to_string(options.g_floor));
    }
    if (!options.joint_bootstrap) {
        return estimate_correlator_with_g(data, g_hat, c, xi, options);
    }
    // Joint mode: resample both datasets and recompute g-hat per resample.
    const auto scaled = mitigated_shade_samples(data, xi, c, 1.0, 0.0);
    EstimateReport report;
    report.samples = data.size();
    report.resamples = options.bootstrap_resamples;
    report.value = mean(scaled) / g_hat;
    std::vector<double> means(static_cast<std::size_t>(std::max(options.bootstrap_resamples, 0)));
    const Word v = c.pattern().bits();
    const std::uint64_t m_tomo = scaled.size();
    const std::uint64_t m_cal = cal.size();
#pragma omp parallel for schedule(dynamic)
    for (int r = 0; r < options.bootstrap_resamples; ++r) {
        Rng rng = make_stream(options.bootstrap_seed, static_cast<std::uint64_t>(r));
        std::int64_t signed_sum = 0;
        for (std::uint64_t k = 0; k < m_cal; ++k) {
            signed_sum += parity(v, cal.records[uniform_below(rng, m_cal)]) ? -1 : 1;
        }
        const double g_r = static_cast<double>(signed_sum) / static_cast<double>(m_cal);
        double sum = 0.0;
        for (std::uint64_t k = 0; k < m_tomo; ++k) {
            sum += scaled[uniform_below(rng, m_tomo)];
        }
        // A resampled g of zero gives an infinite mean and an infinite
        // standard error, which is the honest answer at that sample size.
        means[r] = sum / static_cast<double>(m_tomo) / g_r;
    }
    report.std_error = sample_std(means);
    return report;
}

EstimateReport estimate_correlator_unmitigated(const TomographyDataset& data, const Correlator& c, const XiTable& xi,
                                               const EstimatorOptions& options) {
    const auto values = unmitigated_shade_samples(data, xi, c);
    return summarize(values, options);
}

EstimateReport estimate_correlator_independent_model(const TomographyDataset& data, const Correlator& c,
                                                     const XiTable& xi, std::span<const FlipRates> assumed,
                                                     const EstimatorOptions& options) {
    if (c.pattern().size() != data.n) {
        throw std::invalid_argument("correlator and dataset have different qubit counts");
    }
    if (static_cast<int>(assumed.size()) != data.n) {
        throw std::invalid_argument("one assumed rate pair per qubit is required");
    }
    const auto qubits = c.support();
    // A = [[1 - p01, p10], [p01, 1 - p10]], A[s][s'] = R(s | s').
    // Corrected factor for outcome s: Ainv(0|s) - Ainv(1|s).
    std::vector<std::array<double, 2>> corrected;
    for (int q = 0; q < data.n; ++q) {
        const auto& r = assumed[q];
        if (!(r.p10 >= 0.0 && r.p10 <= 1.0 && r.p01 >= 0.0 && r.p01 <= 1.0)) {
            throw std::invalid_argument("assumed rate for qubit " + std::to_string(q) + " outside [0, 1]");
        }
        const double det = 1.0 - r.p01 - r.p10;
        if (std::abs(det) < 1e-12) {
            throw std::invalid_argument("assumed transition matrix of qubit " + std::to_string(q) + " is singular");
        }
        corrected.push_back({(1.0 - r.p10 + r.p01) / det, (r.p01 - r.p10 - 1.0) / det});
    }
    const std::size_t n = static_cast<std::size_t>(data.n);
    std::vector<double> values(data.size());
    const auto count = static_cast<std::ptrdiff_t>(data.size());
#pragma omp parallel for schedule(static)
    for (std::ptrdiff_t l = 0; l < count; ++l) {
        const std::uint8_t* setting = data.settings.data() + static_cast<std::size_t>(l) * n;
        double product = 1.0;
        for (std::size_t k = 0; k < qubits.size(); ++k) {
            const int q = qubits[k];
            const double factor = corrected[q][(data.outcomes[l] >> q) & 1U];
            product *= factor * xi.half_trace(setting[q], c.observables()[k]);
        }
        values[l] = product;
    }
    return summarize(values, options);
}

std::vector<FlipRates> calibrated_flip_rates(const CalibrationDataset& cal) {
    if (cal.records.empty()) {
        throw std::invalid_argument("calibrated_flip_rates needs a nonempty calibration dataset");
    }
    std::vector<FlipRates> rates;
    for (int q = 0; q < cal.n; ++q) {
        const std::size_t ones = kernels::odd_parity_count(cal.records, Word{1} << q);
        const double eta = static_cast<double>(ones) / static_cast<double>(cal.size());
        rates.push_back({eta, eta});
    }
    return rates;
}

double median_of_means(std::span<const double> values, std::size_t groups) {
    if (groups < 1 || groups > values.size()) {
        throw std::invalid_argument("median_of_means group count outside [1, " + std::to_string(values.size()) + "]");
    }
    std::vector<double> means;
    const std::size_t total = values.size();
    for (std::size_t g = 0; g < groups; ++g) {
        const std::size_t start = g * total / groups;
        const std::size_t stop = (g + 1) * total / groups;
        means.push_back(mean(values.subspan(start, stop - start)));
    }
    std::sort(means.begin(), means.end());
    const std::size_t mid = means.size() / 2;
    return means.size() % 2 ? means[mid] : 0.5 * (means[mid - 1] + means[mid]);
}

namespace {

void check_bound_inputs(double epsilon, double delta, double g) {
    if (!(epsilon > 0.0)) {
        throw std::invalid_argument("epsilon must be positive");
    }
    if (!(delta > 0.0 && delta < 1.0)) {
        throw std::invalid_argument("delta must lie in (0, 1)");
    }
    if (g == 0.0 || !std::isfinite(g)) {
        throw std::invalid_argument("g must be nonzero");
    }
}

std::uint64_t smallest_integer_exceeding(double x) {
    if (!(x < 1.8e19)) {
        throw std::invalid_argument("sample bound overflows a 64-bit count");
    }
    return static_cast<std::uint64_t>(std::floor(x)) + 1;
}

}  // namespace

std::uint64_t calibration_sample_bound(double epsilon, double delta, double g) {
    check_bound_inputs(epsilon, delta, g);
    return smallest_integer_exceeding(-32.0 * std::log(delta / 2.0) / (epsilon * epsilon) / (g * g));
}

std::uint64_t tomography_sample_bound(double epsilon, double delta, double kappa, int degree, double g) {
    check_bound_inputs(epsilon, delta, g);
    if (!(kappa >= 1.0)) {
        throw std::invalid_argument("kappa must be at least 1");
    }
    if (degree < 0) {
        throw std::invalid_argument("degree must be non-negative");
    }
    const double growth = std::pow(kappa, 2.0 * degree);
    return smallest_integer_exceeding(-2.0 * std::log(delta / 2.0) / (epsilon * epsilon) * growth / (g * g));
}

}  // namespace xshadow
