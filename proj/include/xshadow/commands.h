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

#ifndef XSHADOW_COMMANDS_H
#define XSHADOW_COMMANDS_H

// Bodies of the command-line subcommands. Each writes its data files and a
// human-readable summary to `log`; errors propagate as exceptions.

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>

#include "xshadow/config.h"
#include "xshadow/protocols.h"

namespace xshadow {

struct CommandOverrides {
    std::optional<std::uint64_t> seed;
    std::optional<std::size_t> shots;
    std::optional<std::string> out;
    std::optional<std::string> calibration_file;
    std::optional<std::string> tomography_file;
};

/// Applies --seed, and --shots to the field the command consumes, then
/// re-validates.
ExperimentConfig apply_overrides(ExperimentConfig config, const std::string& command,
                                 const CommandOverrides& overrides);

/// Writes a calibration dataset to `out` (default: calibration_file).
void cmd_calibrate(const ExperimentConfig& config, const std::optional<std::string>& out, std::ostream& log);
/// Writes a tomography dataset to `out` (default: tomography_file).
void cmd_tomography(const ExperimentConfig& config, const std::optional<std::string>& out, std::ostream& log);
/// Reads both datasets and writes the comparison CSV to `out` (default:
/// report_file; "-" is the log stream).
void cmd_estimate(const ExperimentConfig& config, const std::string& tomography_file,
                  const std::string& calibration_file, const std::optional<std::string>& out, std::ostream& log);
/// Prints both sample-size bounds and their inputs.
void cmd_complexity(const ExperimentConfig& config, std::ostream& log);
/// Convergence study; writes CSV tables into `out` (default: experiment_dir).
void cmd_experiment(const ExperimentConfig& config, const std::optional<std::string>& out, std::ostream& log);

/// Rates handed to the independent-flip baseline for a calibration dataset.
std::vector<FlipRates> assumed_independent_rates(const ExperimentConfig& config, const CalibrationDataset& cal);

}  // namespace xshadow

#endif
