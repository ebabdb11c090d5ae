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

#ifndef XSHADOW_PROTOCOLS_H
#define XSHADOW_PROTOCOLS_H

// X-twirled calibration and tomography runs, and the correlator estimators
// built on them.
//
// Shot collection is split into chunks of kShotChunk shots; chunk c draws
// from RNG stream (seed, c), so datasets are identical for any thread count.

#include <cstdint>
#include <span>
#include <vector>

#include "xshadow/bitspace.h"
#include "xshadow/noise.h"
#include "xshadow/qsim.h"
#include "xshadow/shadows.h"

namespace xshadow {

inline constexpr std::size_t kShotChunk = std::size_t{1} << 14;
inline constexpr int kDefaultBootstrapResamples = 200;

struct CalibrationDataset {
    int n = 0;
    std::uint64_t seed = 0;
    std::vector<Word> records;

    std::size_t size() const { return records.size(); }
    bool operator==(const CalibrationDataset&) const = default;
};

struct TomographyDataset {
    TomographyDataset(int n, DirectionSet directions, std::uint64_t seed = 0);

    int n;
    DirectionSet directions;
    std::uint64_t seed;
    std::vector<std::uint8_t> settings;  // record l occupies [l n, (l+1) n)
    std::vector<Word> outcomes;

    std::size_t size() const { return outcomes.size(); }
    SettingView setting(std::size_t l) const { return {settings.data() + l * n, static_cast<std::size_t>(n)}; }
    void append(SettingView setting, Word outcome);
};

struct EstimateReport {
    double value = 0.0;
    double std_error = 0.0;
    int resamples = 0;
    std::size_t samples = 0;
};

struct EstimatorOptions {
    int bootstrap_resamples = kDefaultBootstrapResamples;
    std::uint64_t bootstrap_seed = 0;
    double g_floor = kDefaultGFloor;
    /// Resample the calibration records together with the tomography records
    /// so the reported error includes the uncertainty of g-hat.
    bool joint_bootstrap = false;
};

/// X-twirled calibration: per shot draw t, read |t> through the noise, unflip
/// with t. Deterministic in the seed.
CalibrationDataset run_calibration(const NoiseModel& model, std::size_t shots, std::uint64_t seed);

/// g-hat(w) = mean over records of (-1)^(w.s). Throws std::invalid_argument
/// on an empty dataset or length mismatch.
double estimate_g(const CalibrationDataset& data, const BitString& w);

/// X-twirled shadow tomography: per shot draw a uniform setting, an ideal
/// outcome s', a twirl t, and record (setting, noisy(s' (+) t) (+) t).
TomographyDataset run_tomography(const StateVector& psi, const DirectionSet& directions, const NoiseModel& model,
                                 std::size_t shots, std::uint64_t seed);

/// Per-record mitigated shades for a fixed Fourier component g_v.
std::vector<double> mitigated_shade_samples(const TomographyDataset& data, const XiTable& xi, const Correlator& c,
                                            double g_v, double g_floor = kDefaultGFloor);
std::vector<double> unmitigated_shade_samples(const TomographyDataset& data, const XiTable& xi, const Correlator& c);

/// Mean of mitigated shades with g-hat(v) from the calibration records.
/// Throws UnmitigatableComponentError when |g-hat(v)| < g_floor.
EstimateReport estimate_correlator_mitigated(const TomographyDataset& data, const CalibrationDataset& cal,
                                             const Correlator& c, const XiTable& xi,
                                             const EstimatorOptions& options = {});

/// Mean of mitigated shades with a known g(v).
EstimateReport estimate_correlator_with_g(const TomographyDataset& data, double g_v, const Correlator& c,
                                          const XiTable& xi, const EstimatorOptions& options = {});

/// Mean of unmitigated shades; the biased baseline.
EstimateReport estimate_correlator_unmitigated(const TomographyDataset& data, const Correlator& c,
                                               const XiTable& xi, const EstimatorOptions& options = {});

/// Independent-flip mitigation: each support factor (-1)^{s_i} is replaced
/// by A_i^{-1}(0 | s_i) - A_i^{-1}(1 | s_i) for the assumed single-qubit
/// transition matrix A_i. Throws std::invalid_argument if some A_i is
/// singular.
EstimateReport estimate_correlator_independent_model(const TomographyDataset& data, const Correlator& c,
                                                     const XiTable& xi, std::span<const FlipRates> assumed,
                                                     const EstimatorOptions& options = {});

/// Per-qubit symmetric flip rates read off the marginals of X-twirled
/// calibration records, i.e. the product model closest to the twirled noise.
std::vector<FlipRates> calibrated_flip_rates(const CalibrationDataset& cal);

/// Median of the means of `groups` contiguous groups. Throws
/// std::invalid_argument unless 1 <= groups <= values.size().
double median_of_means(std::span<const double> values, std::size_t groups);

/// Smallest integer exceeding -32 ln(delta/2) / (epsilon^2 g^2).
std::uint64_t calibration_sample_bound(double epsilon, double delta, double g);

/// Smallest integer exceeding -2 ln(delta/2) kappa^(2 degree) / (epsilon^2 g^2).
std::uint64_t tomography_sample_bound(double epsilon, double delta, double kappa, int degree, double g);

}  // namespace xshadow

#endif
