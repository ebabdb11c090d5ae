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

#ifndef XSHADOW_CONFIG_H
#define XSHADOW_CONFIG_H

// Run configuration, read from a flat JSON object. Every key is optional;
// unknown keys and out-of-range values are rejected with a message naming
// the field.

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "xshadow/noise.h"
#include "xshadow/qsim.h"

namespace xshadow {

struct ExperimentConfig {
    int n = 8;
    int depth = 20;
    std::uint64_t seed = 1;
    std::uint64_t circuit_seed = 2026;
    DirectionSet directions = DirectionSet::pauli();

    // Readout noise: "identity", "independent" or "chain_crosstalk". gamma
    // only applies to chain_crosstalk.
    std::string noise_model = "chain_crosstalk";
    std::vector<FlipRates> rates = std::vector<FlipRates>(8, FlipRates{0.07, 0.05});  // one per qubit
    double gamma = 0.5;

    std::size_t calibration_shots = 1000000;
    std::size_t tomography_shots = 1000000;
    int bootstrap_resamples = 200;
    bool joint_bootstrap = false;
    double g_floor = 1e-6;

    // Correlators: explicit specs such as "x@0;z@3", then random ones.
    std::vector<std::string> correlators;
    std::vector<int> random_degrees{1, 2, 3, 4};
    int random_per_degree = 3;
    std::uint64_t correlator_seed = 7;

    // Rates assumed by the independent-flip baseline: "calibrated" reads
    // symmetric per-qubit rates off the calibration marginals, "nominal"
    // uses the configured p10/p01.
    std::string indep_rates = "calibrated";

    // Sample-bound inputs for the complexity command. kappa defaults to the
    // value of the direction set against x, y and z observables.
    double epsilon = 0.1;
    double delta = 0.05;
    std::optional<double> kappa;
    int degree = 2;
    double g = 1.0;

    // Calibration summary.
    int summary_max_weight = 2;
    int summary_top = 10;

    // Convergence study.
    std::size_t experiment_records = 1000000;
    std::size_t experiment_min_size = 1000;
    std::size_t experiment_max_size = 100000;
    int experiment_sizes = 8;
    int experiment_repetitions = 100;
    std::vector<int> experiment_weights{1, 2, 3, 4};

    std::string calibration_file = "calibration.txt";
    std::string tomography_file = "tomography.txt";
    std::string report_file = "report.csv";
    std::string experiment_dir = "experiment";

    /// Per-protocol seeds derived from `seed`.
    std::uint64_t calibration_seed() const;
    std::uint64_t tomography_seed() const;
    std::uint64_t bootstrap_seed() const;
};

/// Parses a JSON document. Throws std::invalid_argument naming the field.
ExperimentConfig parse_config(std::string_view json_text);
/// Reads and parses a file; throws std::runtime_error if it cannot be read.
ExperimentConfig load_config(const std::string& path);
/// Re-checks all invariants (used after command-line overrides).
void validate_config(const ExperimentConfig& config);

std::shared_ptr<const NoiseModel> build_noise(const ExperimentConfig& config);
StateVector build_state(const ExperimentConfig& config);
/// Explicit correlators followed by random_per_degree random ones for each
/// entry of random_degrees.
std::vector<Correlator> build_correlators(const ExperimentConfig& config);

/// `count` random correlators of the given degree: the pattern is uniform
/// over weight-`degree` words and each observable uniform over {x, y, z}.
std::vector<Correlator> random_correlators(int n, int degree, int count, std::uint64_t seed);

}  // namespace xshadow

#endif
