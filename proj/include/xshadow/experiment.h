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

#ifndef XSHADOW_EXPERIMENT_H
#define XSHADOW_EXPERIMENT_H

// Estimator comparison tables and bootstrap convergence studies.

#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "xshadow/noise.h"
#include "xshadow/protocols.h"
#include "xshadow/qsim.h"
#include "xshadow/shadows.h"

namespace xshadow {

inline constexpr const char* kReportHeader =
    "correlator_id,degree,pattern,truth,mitigated,mitigated_se,unmitigated,unmitigated_se,indep,indep_se,g_hat";

struct ComparisonRow {
    std::string id;       // e.g. "x@0;z@3"
    int degree = 0;
    std::string pattern;  // bitstring of v, qubit 0 rightmost
    double truth = 0.0;
    EstimateReport mitigated;
    EstimateReport unmitigated;
    EstimateReport independent;
    double g_hat = 0.0;
};

/// Mitigated, unmitigated and independent-flip estimates of each correlator
/// next to its exact value on psi. Correlator k bootstraps with stream
/// (options.bootstrap_seed, k).
std::vector<ComparisonRow> compare_estimators(const TomographyDataset& tomo, const CalibrationDataset& cal,
                                              const StateVector& psi, std::span<const Correlator> correlators,
                                              std::span<const FlipRates> assumed, const EstimatorOptions& options);

void write_report_csv(std::ostream& out, std::span<const ComparisonRow> rows);

/// RMS error against dataset size for one weight (or degree).
struct RmsCurve {
    int weight = 0;
    std::vector<std::size_t> sizes;
    std::vector<double> rms;

    /// Log-log least-squares slope of rms against size.
    double slope() const;
};

/// For every size m and repetition, resamples m calibration records with
/// replacement, estimates g-hat(w) for all w at once, and accumulates the
/// squared error of 1/g-hat(w) against 1/g(w). The RMS for weight k pools
/// all wavevectors of weight k. Needs n <= 14.
std::vector<RmsCurve> calibration_rms_study(const CalibrationDataset& base, const FourierComponents& exact,
                                            std::span<const int> weights, std::span<const std::size_t> sizes,
                                            int repetitions, std::uint64_t seed);

struct TomographyRmsStudy {
    std::vector<RmsCurve> mitigated;
    std::vector<RmsCurve> unmitigated;
};

/// For every size m and repetition, resamples m tomography records and
/// estimates each correlator with the mitigated shade (fixed g_values[k])
/// and the unmitigated shade. Squared errors against truths[k] are pooled
/// over correlators of equal degree.
TomographyRmsStudy tomography_rms_study(const TomographyDataset& base, const XiTable& xi,
                                        std::span<const Correlator> correlators, std::span<const double> truths,
                                        std::span<const double> g_values, std::span<const std::size_t> sizes,
                                        int repetitions, std::uint64_t seed);

void write_rms_csv(std::ostream& out, const std::string& weight_column, std::span<const RmsCurve> curves);

/// Per-weight means of the exact spectrum and of g-hat from the records.
void write_spectrum_csv(std::ostream& out, const FourierComponents& exact, const CalibrationDataset& cal);

/// g-hat(w) for every w, by Walsh transform of the record histogram.
std::vector<double> estimate_spectrum(const CalibrationDataset& cal);

}  // namespace xshadow

#endif
