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

// xshadow: command-line front end.
//
//   xshadow calibrate  [--config F] [--seed S] [--shots M] [--out FILE]
//   xshadow tomography [--config F] [--seed S] [--shots M] [--out FILE]
//   xshadow estimate   [--config F] [--tomography FILE] [--calibration FILE] [--out FILE|-]
//   xshadow complexity [--config F] [--epsilon E] [--delta D] [--kappa K] [--degree D] [--g G]
//   xshadow experiment [--config F] [--seed S] [--shots M] [--out DIR]

#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "xshadow/commands.h"

namespace {

struct CommonFlags {
    std::string config;
    std::optional<std::uint64_t> seed;
    std::optional<std::size_t> shots;
    std::optional<std::string> out;
};

void add_common(CLI::App* app, CommonFlags& flags) {
    app->add_option("--config", flags.config, "JSON config file (defaults apply when omitted)");
    app->add_option("--seed", flags.seed, "master seed, overrides the config");
    app->add_option("--shots", flags.shots, "shot count, overrides the config");
    app->add_option("--out", flags.out, "output path");
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Classical-shadow tomography with X-twirled readout calibration"};
    app.require_subcommand(1);

    CommonFlags flags;
    auto* calibrate = app.add_subcommand("calibrate", "collect an X-twirled calibration dataset");
    auto* tomography = app.add_subcommand("tomography", "collect an X-twirled shadow tomography dataset");
    auto* estimate = app.add_subcommand("estimate", "compare correlator estimators on stored datasets");
    auto* complexity = app.add_subcommand("complexity", "print calibration and tomography sample bounds");
    auto* experiment = app.add_subcommand("experiment", "bootstrap convergence study");
    for (auto* sub : {calibrate, tomography, estimate, complexity, experiment}) {
        add_common(sub, flags);
    }

    std::optional<std::string> tomography_file, calibration_file;
    estimate->add_option("--tomography", tomography_file, "tomography dataset (default: config tomography_file)");
    estimate->add_option("--calibration", calibration_file, "calibration dataset (default: config calibration_file)");

    std::optional<double> epsilon, delta, kappa, g;
    std::optional<int> degree;
    complexity->add_option("--epsilon", epsilon, "target accuracy");
    complexity->add_option("--delta", delta, "failure probability");
    complexity->add_option("--kappa", kappa, "shadow overlap bound");
    complexity->add_option("--degree", degree, "correlator degree");
    complexity->add_option("--g", g, "Fourier component");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e);
    }

    try {
        const std::string command = app.get_subcommands().front()->get_name();
        xshadow::ExperimentConfig config =
            flags.config.empty() ? xshadow::parse_config("{}") : xshadow::load_config(flags.config);
        if (epsilon) config.epsilon = *epsilon;
        if (delta) config.delta = *delta;
        if (kappa) config.kappa = *kappa;
        if (degree) config.degree = *degree;
        if (g) config.g = *g;
        xshadow::CommandOverrides overrides;
        overrides.seed = flags.seed;
        overrides.shots = flags.shots;
        config = xshadow::apply_overrides(config, command, overrides);

        if (command == "calibrate") {
            xshadow::cmd_calibrate(config, flags.out, std::cout);
        } else if (command == "tomography") {
            xshadow::cmd_tomography(config, flags.out, std::cout);
        } else if (command == "estimate") {
            xshadow::cmd_estimate(config, tomography_file.value_or(config.tomography_file),
                                  calibration_file.value_or(config.calibration_file), flags.out, std::cout);
        } else if (command == "complexity") {
            xshadow::cmd_complexity(config, std::cout);
        } else {
            xshadow::cmd_experiment(config, flags.out, std::cout);
        }
    } catch (const std::exception& e) {
        std::cerr << "xshadow: error: " << e.what() << '\n';
        return 1;
    }
    return 0;
}
