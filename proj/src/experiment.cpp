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

#include "xshadow/experiment.h"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <ostream>
#include <stdexcept>

#include "xshadow/errors.h"
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

std::string fmt_report_se(const EstimateReport& r) { return fmt(r.value) + "," + fmt(r.std_error); }

}  // namespace

std::vector<ComparisonRow> compare_estimators(const TomographyDataset& tomo, const CalibrationDataset& cal,
                                              const StateVector& psi, std::span<const Correlator> correlators,
                                              std::span<const FlipRates> assumed, const EstimatorOptions& options) {
    if (tomo.n != cal.n) {
        throw std::invalid_argument("tomography file has n = " + std::to_string(tomo.n) +
                                    " but calibration file has n = " + std::to_string(cal.n));
    }
    if (psi.num_qubits() != tomo.n) {
        throw std::invalid_argument("state and datasets have different qubit counts");
    }
    const XiTable xi = compute_xi(tomo.directions);
    std::vector<ComparisonRow> rows;
    for (std::size_t k = 0; k < correlators.size(); ++k) {
        const Correlator& c = correlators[k];
        EstimatorOptions opt = options;
        opt.bootstrap_seed = stream_seed(options.bootstrap_seed, k);
        ComparisonRow row;
        row.id = c.to_string();
        row.degree = c.degree();
        row.pattern = c.pattern().to_string();
        row.truth = exact_expectation(psi, c);
        row.g_hat = estimate_g(cal, c.pattern());
        try {
            row.mitigated = estimate_correlator_mitigated(tomo, cal, c, xi, opt);
        } catch (const UnmitigatableComponentError& e) {
            throw UnmitigatableComponentError("correlator " + row.id + ": " + e.what());
        }
        row.unmitigated = estimate_correlator_unmitigated(tomo, c, xi, opt);
        row.independent = estimate_correlator_independent_model(tomo, c, xi, assumed, opt);
        rows.push_back(std::move(row));
    }
    return rows;
}

void write_report_csv(std::ostream& out, std::span<const ComparisonRow> rows) {
    out << kReportHeader << '\n';
    for (const auto& r : rows) {
        out << r.id << ',' << r.degree << ',' << r.pattern << ',' << fmt(r.truth) << ','
            << fmt_report_se(r.mitigated) << ',' << fmt_report_se(r.unmitigated) << ','
            << fmt_report_se(r.independent) << ',' << fmt(r.g_hat) << '\n';
    }
}

double RmsCurve::slope() const {
    std::vector<double> x(sizes.begin(), sizes.end());
    return loglog_fit(x, rms).slope;
}

std::vector<double> estimate_spectrum(const CalibrationDataset& cal) {
    if (cal.records.empty()) {
        throw std::invalid_argument("estimate_spectrum needs a nonempty calibration dataset");
    }
    if (cal.n > kMaxExactBits) {
        throw CapabilityError("estimate_spectrum is limited to n <= 14");
    }
    auto h = kernels::histogram(cal.records, cal.n);
    kernels::walsh_inplace(h);
    const double m = static_cast<double>(cal.size());
    for (double& x : h) {
        x /= m;
    }
    return h;
}

std::vector<RmsCurve> calibration_rms_study(const CalibrationDataset& base, const FourierComponents& exact,
                                            std::span<const int> weights, std::span<const std::size_t> sizes,
                                            int repetitions, std::uint64_t seed) {
    const int n = base.n;
    if (exact.num_qubits() != n) {
        throw std::invalid_argument("exact spectrum and calibration dataset have different qubit counts");
    }
    if (n > kMaxExactBits) {
        throw CapabilityError("calibration_rms_study is limited to n <= 14");
    }
    if (base.records.empty() || repetitions < 1) {
        throw std::invalid_argument("calibration_rms_study needs records and at least one repetition");
    }
    std::vector<std::vector<Word>> words;
    for (const int k : weights) {
        words.push_back(words_of_weight(n, k));
    }
    const std::size_t table = std::size_t{1} << n;
    const std::uint64_t m_base = base.size();

    std::vector<RmsCurve> curves(weights.size());
    for (std::size_t i = 0; i < weights.size(); ++i) {
        curves[i].weight = weights[i];
        curves[i].sizes.assign(sizes.begin(), sizes.end());
    }
    for (std::size_t si = 0; si < sizes.size(); ++si) {
        const std::size_t m = sizes[si];
        // err[r * W + i]: summed squared error of weight i in repetition r.
        std::vector<double> err(static_cast<std::size_t>(repetitions) * weights.size(), 0.0);
#pragma omp parallel for schedule(dynamic)
        for (int r = 0; r < repetitions; ++r) {
            Rng rng = make_stream(seed, si * static_cast<std::uint64_t>(repetitions) + static_cast<std::uint64_t>(r));
            std::vector<double> h(table, 0.0);
            for (std::size_t k = 0; k < m; ++k) {
                h[base.records[uniform_below(rng, m_base)]] += 1.0;
            }
            kernels::walsh_inplace_serial(h);
            for (std::size_t i = 0; i < weights.size(); ++i) {
                double acc = 0.0;
                for (const Word w : words[i]) {
                    const double d = static_cast<double>(m) / h[w] - 1.0 / exact(w);
                    acc += d * d;
                }
                err[static_cast<std::size_t>(r) * weights.size() + i] = acc;
            }
        }
        for (std::size_t i = 0; i < weights.size(); ++i) {
            double total = 0.0;
            for (int r = 0; r < repetitions; ++r) {
                total += err[static_cast<std::size_t>(r) * weights.size() + i];
            }
            const double count = static_cast<double>(repetitions) * static_cast<double>(words[i].size());
            curves[i].rms.push_back(std::sqrt(total / count));
        }
    }
    return curves;
}

TomographyRmsStudy tomography_rms_study(const TomographyDataset& base, const XiTable& xi,
                                        std::span<const Correlator> correlators, std::span<const double> truths,
                                        std::span<const double> g_values, std::span<const std::size_t> sizes,
                                        int repetitions, std::uint64_t seed) {
    if (truths.size() != correlators.size() || g_values.size() != correlators.size()) {
        throw std::invalid_argument("tomography_rms_study needs one truth and one g per correlator");
    }
    if (base.size() == 0 || repetitions < 1) {
        throw std::invalid_argument("tomography_rms_study needs records and at least one repetition");
    }
    std::vector<ShadeKernel> kernels;
    std::vector<int> degrees;
    for (const auto& c : correlators) {
        if (c.pattern().size() != base.n) {
            throw std::invalid_argument("correlator and dataset have different qubit counts");
        }
        kernels.emplace_back(xi, c);
        degrees.push_back(c.degree());
    }
    // One curve per distinct degree, ascending.
    std::vector<int> curve_of;  // correlator -> curve index
    std::sort(degrees.begin(), degrees.end());
    degrees.erase(std::unique(degrees.begin(), degrees.end()), degrees.end());
    for (const auto& c : correlators) {
        curve_of.push_back(static_cast<int>(std::lower_bound(degrees.begin(), degrees.end(), c.degree()) -
                                            degrees.begin()));
    }
    std::vector<std::size_t> per_degree(degrees.size(), 0);
    for (const int c : curve_of) {
        ++per_degree[c];
    }

    TomographyRmsStudy study;
    for (const int d : degrees) {
        RmsCurve curve;
        curve.weight = d;
        curve.sizes.assign(sizes.begin(), sizes.end());
        study.mitigated.push_back(curve);
        study.unmitigated.push_back(curve);
    }

    const std::size_t kc = correlators.size();
    const std::size_t n = static_cast<std::size_t>(base.n);
    const std::uint64_t m_base = base.size();
    for (std::size_t si = 0; si < sizes.size(); ++si) {
        const std::size_t m = sizes[si];
        // Per repetition, per correlator: mitigated and unmitigated errors.
        std::vector<double> err(static_cast<std::size_t>(repetitions) * kc * 2, 0.0);
#pragma omp parallel for schedule(dynamic)
        for (int r = 0; r < repetitions; ++r) {
            Rng rng = make_stream(seed, si * static_cast<std::uint64_t>(repetitions) + static_cast<std::uint64_t>(r));
            std::vector<double> sum_signed(kc, 0.0);
            for (std::size_t j = 0; j < m; ++j) {
                const std::size_t l = uniform_below(rng, m_base);
                const std::uint8_t* setting = base.settings.data() + l * n;
                const Word s = base.outcomes[l];
                for (std::size_t k = 0; k < kc; ++k) {
                    const double mag = kernels[k].magnitude(setting);
                    sum_signed[k] += parity(kernels[k].pattern(), s) ? -mag : mag;
                }
            }
            for (std::size_t k = 0; k < kc; ++k) {
                // The unmitigated shade is the mitigated one with g = 1.
                const double raw = sum_signed[k] / static_cast<double>(m);
                const double mit = raw / g_values[k];
                double* e = err.data() + (static_cast<std::size_t>(r) * kc + k) * 2;
                e[0] = (mit - truths[k]) * (mit - truths[k]);
                e[1] = (raw - truths[k]) * (raw - truths[k]);
            }
        }
        std::vector<double> tot_mit(degrees.size(), 0.0), tot_raw(degrees.size(), 0.0);
        for (int r = 0; r < repetitions; ++r) {
            for (std::size_t k = 0; k < kc; ++k) {
                const double* e = err.data() + (static_cast<std::size_t>(r) * kc + k) * 2;
                tot_mit[curve_of[k]] += e[0];
                tot_raw[curve_of[k]] += e[1];
            }
        }
        for (std::size_t i = 0; i < degrees.size(); ++i) {
            const double count = static_cast<double>(repetitions) * static_cast<double>(per_degree[i]);
            study.mitigated[i].rms.push_back(std::sqrt(tot_mit[i] / count));
            study.unmitigated[i].rms.push_back(std::sqrt(tot_raw[i] / count));
        }
    }
    return study;
}

void write_rms_csv(std::ostream& out, const std::string& weight_column, std::span<const RmsCurve> curves) {
    out << weight_column << ",size,rms\n";
    for (const auto& c : curves) {
        for (std::size_t i = 0; i < c.sizes.size(); ++i) {
            out << c.weight << ',' << c.sizes[i] << ',' << fmt(c.rms[i]) << '\n';
        }
    }
}

void write_spectrum_csv(std::ostream& out, const FourierComponents& exact, const CalibrationDataset& cal) {
    const auto g_hat = estimate_spectrum(cal);
    out << "weight,count,g_exact_mean,g_hat_mean\n";
    for (int k = 0; k <= cal.n; ++k) {
        const auto words = words_of_weight(cal.n, k);
        double sum = 0.0;
        for (const Word w : words) {
            sum += g_hat[w];
        }
        out << k << ',' << words.size() << ',' << fmt(exact.mean_at_weight(k)) << ','
            << fmt(sum / static_cast<double>(words.size())) << '\n';
    }
}

}  // namespace xshadow
