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

#include "xshadow/commands.h"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <stdexcept>

#include "xshadow/dataset_io.h"
#include "xshadow/errors.h"
#include "xshadow/experiment.h"
#include "xshadow/kernels.h"
#include "xshadow/rng.h"
#include "xshadow/stats.h"

namespace xshadow {

namespace {

std::string fmt(double x) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.10g", x);
    return buf;
}

std::ofstream open_report(const std::string& path) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) {
        throw std::runtime_error("cannot open '" + path + "' for writing");
    }
    return out;
}

void close_report(std::ofstream& out, const std::string& path) {
    out.flush();
    if (!out) {
        throw std::runtime_error("failed writing '" + path + "'");
    }
}

EstimatorOptions estimator_options(const ExperimentConfig& c) {
    EstimatorOptions opt;
    opt.bootstrap_resamples = c.bootstrap_resamples;
    opt.bootstrap_seed = c.bootstrap_seed();
    opt.g_floor = c.g_floor;
    opt.joint_bootstrap = c.joint_bootstrap;
    return opt;
}

}  // namespace

ExperimentConfig apply_overrides(ExperimentConfig config, const std::string& command,
                                 const CommandOverrides& overrides) {
    if (overrides.seed) {
        config.seed = *overrides.seed;
    }
    if (overrides.shots) {
        if (*overrides.shots < 1) {
            throw std::invalid_argument("--shots must be at least 1");
        }
        if (command == "calibrate") {
            config.calibration_shots = *overrides.shots;
        } else if (command == "tomography") {
            config.tomography_shots = *overrides.shots;
        } else if (command == "experiment") {
            config.experiment_records = *overrides.shots;
        }
    }
    validate_config(config);
    return config;
}

std::vector<FlipRates> assumed_independent_rates(const ExperimentConfig& config, const CalibrationDataset& cal) {
    if (config.indep_rates == "calibrated") {
        return calibrated_flip_rates(cal);
    }
    // Twirled data sees each qubit through the symmetrized channel, so the
    // nominal rates enter as their average.
    std::vector<FlipRates> out;
    for (const auto& r : config.rates) {
        const double eta = 0.5 * (r.p10 + r.p01);
        out.push_back({eta, eta});
    }
    return out;
}

void cmd_calibrate(const ExperimentConfig& config, const std::optional<std::string>& out, std::ostream& log) {
    const std::string path = out.value_or(config.calibration_file);
    const auto model = build_noise(config);
    const auto data = run_calibration(*model, config.calibration_shots, config.calibration_seed());
    save_calibration(path, data);

    log << "calibration dataset: " << path << '\n';
    log << "records: " << data.size() << '\n';
    log << "noise: " << config.noise_model << '\n';

    auto counts = kernels::histogram(data.records, data.n);
    std::vector<Word> order(counts.size());
    for (Word s = 0; s < order.size(); ++s) {
        order[s] = s;
    }
    std::stable_sort(order.begin(), order.end(), [&](Word a, Word b) { return counts[a] > counts[b]; });
    log << "top bitstrings:\n";
    for (int k = 0; k < config.summary_top && k < static_cast<int>(order.size()); ++k) {
        if (counts[order[k]] == 0.0) {
            break;
        }
        log << "  " << BitString(data.n, order[k]).to_string() << ' '
            << fmt(counts[order[k]] / static_cast<double>(data.size())) << '\n';
    }

    std::optional<FourierComponents> exact;
    if (data.n <= kMaxExactBits && model->exact_rows()) {
        exact = exact_g(twirl(model, TwirlMode::Exact));
    }
    log << "g_hat for |w| <= " << config.summary_max_weight << ":\n";
    log << "  w g_hat" << (exact ? " g_exact" : "") << '\n';
    for (int k = 1; k <= config.summary_max_weight; ++k) {
        for (const Word w : words_of_weight(data.n, k)) {
            const BitString wb(data.n, w);
            log << "  " << wb.to_string() << ' ' << fmt(estimate_g(data, wb));
            if (exact) {
                log << ' ' << fmt((*exact)(w));
            }
            log << '\n';
        }
    }
}

void cmd_tomography(const ExperimentConfig& config, const std::optional<std::string>& out, std::ostream& log) {
    const std::string path = out.value_or(config.tomography_file);
    const auto model = build_noise(config);
    const StateVector psi = build_state(config);
    const auto data = run_tomography(psi, config.directions, *model, config.tomography_shots, config.tomography_seed());
    save_tomography(path, data);
    log << "tomography dataset: " << path << '\n';
    log << "records: " << data.size() << '\n';
    log << "circuit: n=" << config.n << " depth=" << config.depth << " circuit_seed=" << config.circuit_seed << '\n';
}

void cmd_estimate(const ExperimentConfig& config, const std::string& tomography_file,
                  const std::string& calibration_file, const std::optional<std::string>& out, std::ostream& log) {
    const auto tomo = load_tomography(tomography_file, config.directions);
    const auto cal = load_calibration(calibration_file);
    if (tomo.n != cal.n) {
        throw std::invalid_argument("tomography file has n = " + std::to_string(tomo.n) +
                                    " but calibration file has n = " + std::to_string(cal.n));
    }
    if (tomo.n != config.n) {
        throw std::invalid_argument("datasets have n = " + std::to_string(tomo.n) + " but the config has n = " +
                                    std::to_string(config.n));
    }
    const StateVector psi = build_state(config);
    const auto correlators = build_correlators(config);
    const auto assumed = assumed_independent_rates(config, cal);
    const auto rows = compare_estimators(tomo, cal, psi, correlators, assumed, estimator_options(config));

    const std::string path = out.value_or(config.report_file);
    if (path == "-") {
        write_report_csv(log, rows);
        return;
    }
    auto file = open_report(path);
    write_report_csv(file, rows);
    close_report(file, path);
    log << "report: " << path << " (" << rows.size() << " correlators)\n";
}

void cmd_complexity(const ExperimentConfig& config, std::ostream& log) {
    double k = 0.0;
    if (config.kappa) {
        k = *config.kappa;
    } else {
        const std::vector<Direction> obs{direction_x(), direction_y(), direction_z()};
        k = kappa(compute_xi(config.directions), obs);
    }
    const auto cal = calibration_sample_bound(config.epsilon, config.delta, config.g);
    const auto tomo = tomography_sample_bound(config.epsilon, config.delta, k, config.degree, config.g);
    log << "epsilon=" << fmt(config.epsilon) << " delta=" << fmt(config.delta) << " g=" << fmt(config.g)
        << " kappa=" << fmt(k) << " degree=" << config.degree << '\n';
    log << "calibration_shots=" << cal << '\n';
    log << "tomography_shots=" << tomo << '\n';
}

void cmd_experiment(const ExperimentConfig& config, const std::optional<std::string>& out, std::ostream& log) {
    const std::filesystem::path dir = out.value_or(config.experiment_dir);
    std::error_code ec;
    std::filesystem::create_directories(dir, ec);
    if (ec) {
        throw std::runtime_error("cannot create '" + dir.string() + "': " + ec.message());
    }
    const auto model = build_noise(config);
    const auto exact = exact_g(twirl(model, TwirlMode::Exact));
    const StateVector psi = build_state(config);
    const XiTable xi = compute_xi(config.directions);

    log << "collecting " << config.experiment_records << " calibration and tomography records\n";
    const auto cal = run_calibration(*model, config.experiment_records, config.calibration_seed());
    const auto tomo =
        run_tomography(psi, config.directions, *model, config.experiment_records, config.tomography_seed());
    const auto sizes = log_spaced_sizes(config.experiment_min_size, config.experiment_max_size, config.experiment_sizes);

    const auto write = [&](const std::string& name, const auto& body) {
        const std::string path = (dir / name).string();
        auto file = open_report(path);
        body(file);
        close_report(file, path);
        log << "wrote " << path << '\n';
    };

    write("spectrum.csv", [&](std::ostream& f) { write_spectrum_csv(f, exact, cal); });

    const auto cal_curves = calibration_rms_study(cal, exact, config.experiment_weights, sizes,
                                                  config.experiment_repetitions, stream_seed(config.seed, 0x57D1));
    write("calibration_rms.csv", [&](std::ostream& f) { write_rms_csv(f, "weight", cal_curves); });

    const auto correlators = build_correlators(config);
    std::vector<double> truths, g_values;
    for (const auto& c : correlators) {
        truths.push_back(exact_expectation(psi, c));
        const double g = estimate_g(cal, c.pattern());
        if (!(std::abs(g) >= config.g_floor)) {
            throw UnmitigatableComponentError("correlator " + c.to_string() + ": |g-hat| below the floor");
        }
        g_values.push_back(g);
    }
    const auto tomo_study = tomography_rms_study(tomo, xi, correlators, truths, g_values, sizes,
                                                 config.experiment_repetitions, stream_seed(config.seed, 0x57D2));
    write("tomography_rms.csv", [&](std::ostream& f) { write_rms_csv(f, "degree", tomo_study.mitigated); });
    write("tomography_rms_unmitigated.csv",
          [&](std::ostream& f) { write_rms_csv(f, "degree", tomo_study.unmitigated); });

    write("slopes.csv", [&](std::ostream& f) {
        f << "study,weight,slope\n";
        for (const auto& c : cal_curves) {
            f << "calibration," << c.weight << ',' << fmt(c.slope()) << '\n';
        }
        for (const auto& c : tomo_study.mitigated) {
            f << "tomography_mitigated," << c.weight << ',' << fmt(c.slope()) << '\n';
        }
        for (const auto& c : tomo_study.unmitigated) {
            f << "tomography_unmitigated," << c.weight << ',' << fmt(c.slope()) << '\n';
        }
    });

    const auto assumed = assumed_independent_rates(config, cal);
    const auto rows = compare_estimators(tomo, cal, psi, correlators, assumed, estimator_options(config));
    write("comparison.csv", [&](std::ostream& f) { write_report_csv(f, rows); });
}

}  // namespace xshadow
