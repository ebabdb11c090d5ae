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

#include "xshadow/config.h"

#include <cmath>
#include <fstream>
#include <functional>
#include <map>
#include <numeric>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

#include "xshadow/rng.h"

namespace xshadow {

namespace {

using Json = nlohmann::json;

[[noreturn]] void field_error(const std::string& field, const std::string& what) {
    throw std::invalid_argument("config field '" + field + "': " + what);
}

double as_double(const Json& v, const std::string& field) {
    if (!v.is_number()) {
        field_error(field, "expected a number");
    }
    const double x = v.get<double>();
    if (!std::isfinite(x)) {
        field_error(field, "must be finite");
    }
    return x;
}

std::int64_t as_int(const Json& v, const std::string& field) {
    if (v.is_number_integer()) {
        return v.get<std::int64_t>();
    }
    if (v.is_number_float()) {
        const double x = v.get<double>();
        if (std::isfinite(x) && x == std::floor(x) && std::abs(x) < 9.0e15) {
            return static_cast<std::int64_t>(x);
        }
    }
    field_error(field, "expected an integer");
}

std::uint64_t as_seed(const Json& v, const std::string& field) {
    if (v.is_number_unsigned()) {
        return v.get<std::uint64_t>();
    }
    const std::int64_t x = as_int(v, field);
    if (x < 0) {
        field_error(field, "must be nonnegative");
    }
    return static_cast<std::uint64_t>(x);
}

std::size_t as_count(const Json& v, const std::string& field) {
    const std::int64_t x = as_int(v, field);
    if (x < 1) {
        field_error(field, "must be at least 1");
    }
    return static_cast<std::size_t>(x);
}

std::string as_string(const Json& v, const std::string& field) {
    if (!v.is_string()) {
        field_error(field, "expected a string");
    }
    return v.get<std::string>();
}

std::vector<int> as_int_list(const Json& v, const std::string& field) {
    if (!v.is_array()) {
        field_error(field, "expected an array of integers");
    }
    std::vector<int> out;
    for (std::size_t k = 0; k < v.size(); ++k) {
        out.push_back(static_cast<int>(as_int(v[k], field + "[" + std::to_string(k) + "]")));
    }
    return out;
}

// A number broadcasts to every qubit; an array gives one value per qubit.
std::vector<double> as_rate_list(const Json& v, const std::string& field) {
    if (v.is_number()) {
        return {as_double(v, field)};
    }
    if (!v.is_array() || v.empty()) {
        field_error(field, "expected a number or a nonempty array of numbers");
    }
    std::vector<double> out;
    for (std::size_t k = 0; k < v.size(); ++k) {
        out.push_back(as_double(v[k], field + "[" + std::to_string(k) + "]"));
    }
    return out;
}

DirectionSet as_directions(const Json& v) {
    if (!v.is_array() || v.empty()) {
        field_error("directions", "expected a nonempty array");
    }
    std::vector<Direction> dirs;
    for (std::size_t k = 0; k < v.size(); ++k) {
        const std::string where = "directions[" + std::to_string(k) + "]";
        const Json& e = v[k];
        if (e.is_string()) {
            const std::string label = e.get<std::string>();
            if (label == "x") {
                dirs.push_back(direction_x());
            } else if (label == "y") {
                dirs.push_back(direction_y());
            } else if (label == "z") {
                dirs.push_back(direction_z());
            } else {
                field_error(where, "unknown built-in direction '" + label + "' (use x, y, z or {label, axis})");
            }
            continue;
        }
        if (!e.is_object() || !e.contains("label") || !e.contains("axis") || e.size() != 2) {
            field_error(where, "expected \"x\", \"y\", \"z\" or {\"label\": ..., \"axis\": [ax, ay, az]}");
        }
        Direction d;
        d.label = as_string(e["label"], where + ".label");
        const Json& axis = e["axis"];
        if (!axis.is_array() || axis.size() != 3) {
            field_error(where + ".axis", "expected three numbers");
        }
        for (int i = 0; i < 3; ++i) {
            d.axis[i] = as_double(axis[i], where + ".axis");
        }
        if (!d.is_unit(1e-9)) {
            field_error(where + ".axis", "must be a unit vector");
        }
        const double norm = std::sqrt(d.axis[0] * d.axis[0] + d.axis[1] * d.axis[1] + d.axis[2] * d.axis[2]);
        for (double& a : d.axis) {
            a /= norm;
        }
        dirs.push_back(std::move(d));
    }
    try {
        return DirectionSet(std::move(dirs));
    } catch (const std::invalid_argument& e) {
        field_error("directions", e.what());
    }
}

}  // namespace

std::uint64_t ExperimentConfig::calibration_seed() const { return stream_seed(seed, 0xCA11); }
std::uint64_t ExperimentConfig::tomography_seed() const { return stream_seed(seed, 0x7090); }
std::uint64_t ExperimentConfig::bootstrap_seed() const { return stream_seed(seed, 0xB007); }

ExperimentConfig parse_config(std::string_view json_text) {
    Json doc;
    try {
        doc = Json::parse(json_text.begin(), json_text.end());
    } catch (const Json::parse_error& e) {
        throw std::invalid_argument(std::string("config is not valid JSON: ") + e.what());
    }
    if (!doc.is_object()) {
        throw std::invalid_argument("config must be a JSON object");
    }

    ExperimentConfig c;
    std::vector<double> p10{0.07}, p01{0.05};

    using Setter = std::function<void(const Json&, const std::string&)>;
    const std::map<std::string, Setter> setters = {
        {"n", [&](const Json& v, const std::string& f) { c.n = static_cast<int>(as_int(v, f)); }},
        {"depth", [&](const Json& v, const std::string& f) { c.depth = static_cast<int>(as_int(v, f)); }},
        {"seed", [&](const Json& v, const std::string& f) { c.seed = as_seed(v, f); }},
        {"circuit_seed", [&](const Json& v, const std::string& f) { c.circuit_seed = as_seed(v, f); }},
        {"directions", [&](const Json& v, const std::string&) { c.directions = as_directions(v); }},
        {"noise_model", [&](const Json& v, const std::string& f) { c.noise_model = as_string(v, f); }},
        {"p10", [&](const Json& v, const std::string& f) { p10 = as_rate_list(v, f); }},
        {"p01", [&](const Json& v, const std::string& f) { p01 = as_rate_list(v, f); }},
        {"gamma", [&](const Json& v, const std::string& f) { c.gamma = as_double(v, f); }},
        {"calibration_shots", [&](const Json& v, const std::string& f) { c.calibration_shots = as_count(v, f); }},
        {"tomography_shots", [&](const Json& v, const std::string& f) { c.tomography_shots = as_count(v, f); }},
        {"bootstrap_resamples",
         [&](const Json& v, const std::string& f) { c.bootstrap_resamples = static_cast<int>(as_int(v, f)); }},
        {"joint_bootstrap",
         [&](const Json& v, const std::string& f) {
             if (!v.is_boolean()) {
                 field_error(f, "expected true or false");
             }
             c.joint_bootstrap = v.get<bool>();
         }},
        {"g_floor", [&](const Json& v, const std::string& f) { c.g_floor = as_double(v, f); }},
        {"correlators",
         [&](const Json& v, const std::string& f) {
             if (!v.is_array()) {
                 field_error(f, "expected an array of strings");
             }
             c.correlators.clear();
             for (std::size_t k = 0; k < v.size(); ++k) {
                 c.correlators.push_back(as_string(v[k], f + "[" + std::to_string(k) + "]"));
             }
         }},
        {"random_degrees", [&](const Json& v, const std::string& f) { c.random_degrees = as_int_list(v, f); }},
        {"random_per_degree",
         [&](const Json& v, const std::string& f) { c.random_per_degree = static_cast<int>(as_int(v, f)); }},
        {"correlator_seed", [&](const Json& v, const std::string& f) { c.correlator_seed = as_seed(v, f); }},
        {"indep_rates", [&](const Json& v, const std::string& f) { c.indep_rates = as_string(v, f); }},
        {"epsilon", [&](const Json& v, const std::string& f) { c.epsilon = as_double(v, f); }},
        {"delta", [&](const Json& v, const std::string& f) { c.delta = as_double(v, f); }},
        {"kappa", [&](const Json& v, const std::string& f) { c.kappa = as_double(v, f); }},
        {"degree", [&](const Json& v, const std::string& f) { c.degree = static_cast<int>(as_int(v, f)); }},
        {"g", [&](const Json& v, const std::string& f) { c.g = as_double(v, f); }},
        {"summary_max_weight",
         [&](const Json& v, const std::string& f) { c.summary_max_weight = static_cast<int>(as_int(v, f)); }},
        {"summary_top", [&](const Json& v, const std::string& f) { c.summary_top = static_cast<int>(as_int(v, f)); }},
        {"experiment_records", [&](const Json& v, const std::string& f) { c.experiment_records = as_count(v, f); }},
        {"experiment_min_size", [&](const Json& v, const std::string& f) { c.experiment_min_size = as_count(v, f); }},
        {"experiment_max_size", [&](const Json& v, const std::string& f) { c.experiment_max_size = as_count(v, f); }},
        {"experiment_sizes",
         [&](const Json& v, const std::string& f) { c.experiment_sizes = static_cast<int>(as_int(v, f)); }},
        {"experiment_repetitions",
         [&](const Json& v, const std::string& f) { c.experiment_repetitions = static_cast<int>(as_int(v, f)); }},
        {"experiment_weights", [&](const Json& v, const std::string& f) { c.experiment_weights = as_int_list(v, f); }},
        {"calibration_file", [&](const Json& v, const std::string& f) { c.calibration_file = as_string(v, f); }},
        {"tomography_file", [&](const Json& v, const std::string& f) { c.tomography_file = as_string(v, f); }},
        {"report_file", [&](const Json& v, const std::string& f) { c.report_file = as_string(v, f); }},
        {"experiment_dir", [&](const Json& v, const std::string& f) { c.experiment_dir = as_string(v, f); }},
    };

    for (const auto& [key, value] : doc.items()) {
        const auto it = setters.find(key);
        if (it == setters.end()) {
            field_error(key, "unknown key");
        }
        it->second(value, key);
    }

    if (c.n < 1 || c.n > kMaxSimQubits) {
        field_error("n", "must be in [1, " + std::to_string(kMaxSimQubits) + "]");
    }
    const auto expand = [&](const std::vector<double>& list, const std::string& field) {
        if (list.size() == 1) {
            return std::vector<double>(static_cast<std::size_t>(c.n), list[0]);
        }
        if (static_cast<int>(list.size()) != c.n) {
            field_error(field, "has " + std::to_string(list.size()) + " entries for n = " + std::to_string(c.n));
        }
        return list;
    };
    // Default degree lists stop at n; explicit ones are validated as given.
    const auto clip_default = [&](std::vector<int>& list, const char* key) {
        if (!doc.contains(key)) {
            std::erase_if(list, [&](int d) { return d > c.n; });
        }
    };
    clip_default(c.random_degrees, "random_degrees");
    clip_default(c.experiment_weights, "experiment_weights");
    const auto a = expand(p10, "p10");
    const auto b = expand(p01, "p01");
    c.rates.clear();
    for (int q = 0; q < c.n; ++q) {
        c.rates.push_back({a[q], b[q]});
    }
    validate_config(c);
    return c;
}

void validate_config(const ExperimentConfig& c) {
    if (c.n < 1 || c.n > kMaxSimQubits) {
        field_error("n", "must be in [1, " + std::to_string(kMaxSimQubits) + "]");
    }
    if (c.depth < 0) {
        field_error("depth", "must be nonnegative");
    }
    if (c.noise_model != "identity" && c.noise_model != "independent" && c.noise_model != "chain_crosstalk") {
        field_error("noise_model", "must be identity, independent or chain_crosstalk");
    }
    if (static_cast<int>(c.rates.size()) != c.n) {
        field_error("p10", "needs one rate per qubit");
    }
    for (int q = 0; q < c.n; ++q) {
        if (!(c.rates[q].p10 >= 0.0 && c.rates[q].p10 <= 1.0)) {
            field_error("p10", "entry " + std::to_string(q) + " outside [0, 1]");
        }
        if (!(c.rates[q].p01 >= 0.0 && c.rates[q].p01 <= 1.0)) {
            field_error("p01", "entry " + std::to_string(q) + " outside [0, 1]");
        }
    }
    if (!(c.gamma >= 0.0 && c.gamma < 1.0)) {
        field_error("gamma", "must be in [0, 1)");
    }
    if (c.calibration_shots < 1) {
        field_error("calibration_shots", "must be at least 1");
    }
    if (c.tomography_shots < 1) {
        field_error("tomography_shots", "must be at least 1");
    }
    if (c.bootstrap_resamples < 0) {
        field_error("bootstrap_resamples", "must be nonnegative");
    }
    if (!(c.g_floor > 0.0)) {
        field_error("g_floor", "must be positive");
    }
    for (const int d : c.random_degrees) {
        if (d < 0 || d > c.n) {
            field_error("random_degrees", "degree " + std::to_string(d) + " outside [0, n]");
        }
    }
    if (c.random_per_degree < 0) {
        field_error("random_per_degree", "must be nonnegative");
    }
    if (c.indep_rates != "calibrated" && c.indep_rates != "nominal") {
        field_error("indep_rates", "must be calibrated or nominal");
    }
    if (!(c.epsilon > 0.0)) {
        field_error("epsilon", "must be positive");
    }
    if (!(c.delta > 0.0 && c.delta < 1.0)) {
        field_error("delta", "must be in (0, 1)");
    }
    if (c.kappa && !(*c.kappa >= 1.0)) {
        field_error("kappa", "must be at least 1");
    }
    if (c.degree < 0) {
        field_error("degree", "must be nonnegative");
    }
    if (c.g == 0.0) {
        field_error("g", "must be nonzero");
    }
    if (c.summary_max_weight < 0 || c.summary_max_weight > c.n) {
        field_error("summary_max_weight", "must be in [0, n]");
    }
    if (c.summary_top < 0) {
        field_error("summary_top", "must be nonnegative");
    }
    if (c.experiment_min_size < 1) {
        field_error("experiment_min_size", "must be at least 1");
    }
    if (c.experiment_max_size < c.experiment_min_size) {
        field_error("experiment_max_size", "must be at least experiment_min_size");
    }
    if (c.experiment_sizes < 2) {
        field_error("experiment_sizes", "must be at least 2");
    }
    if (c.experiment_repetitions < 1) {
        field_error("experiment_repetitions", "must be at least 1");
    }
    for (const int w : c.experiment_weights) {
        if (w < 1 || w > c.n) {
            field_error("experiment_weights", "weight " + std::to_string(w) + " outside [1, n]");
        }
    }
    for (std::size_t k = 0; k < c.correlators.size(); ++k) {
        try {
            Correlator::parse(c.correlators[k], c.n, c.directions);
        } catch (const std::invalid_argument& e) {
            field_error("correlators[" + std::to_string(k) + "]", e.what());
        }
    }
}

ExperimentConfig load_config(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw std::runtime_error("cannot read config '" + path + "'");
    }
    std::ostringstream text;
    text << in.rdbuf();
    return parse_config(text.str());
}

std::shared_ptr<const NoiseModel> build_noise(const ExperimentConfig& c) {
    if (c.noise_model == "identity") {
        return identity_noise(c.n);
    }
    if (c.noise_model == "independent") {
        return independent_flip_model(c.rates);
    }
    return crosstalk_model(c.rates, c.gamma);
}

StateVector build_state(const ExperimentConfig& c) { return random_circuit_state(c.n, c.depth, c.circuit_seed); }

std::vector<Correlator> random_correlators(int n, int degree, int count, std::uint64_t seed) {
    if (n < 1 || n > kMaxBits || degree < 0 || degree > n || count < 0) {
        throw std::invalid_argument("random_correlators: need 0 <= degree <= n and count >= 0");
    }
    const Direction paulis[3] = {direction_x(), direction_y(), direction_z()};
    Rng rng = make_stream(seed, static_cast<std::uint64_t>(degree));
    std::vector<Correlator> out;
    std::vector<int> qubits(static_cast<std::size_t>(n));
    for (int k = 0; k < count; ++k) {
        std::iota(qubits.begin(), qubits.end(), 0);
        // Partial Fisher-Yates: the first `degree` entries are a uniform subset.
        Word pattern = 0;
        for (int i = 0; i < degree; ++i) {
            const auto j = static_cast<std::size_t>(i) + uniform_below(rng, static_cast<std::uint64_t>(n - i));
            std::swap(qubits[i], qubits[j]);
            pattern |= Word{1} << qubits[i];
        }
        std::vector<Direction> obs;
        for (int q = 0; q < n; ++q) {
            if ((pattern >> q) & 1U) {
                obs.push_back(paulis[uniform_below(rng, 3)]);
            }
        }
        out.emplace_back(BitString(n, pattern), std::move(obs));
    }
    return out;
}

std::vector<Correlator> build_correlators(const ExperimentConfig& c) {
    std::vector<Correlator> out;
    for (const auto& spec : c.correlators) {
        out.push_back(Correlator::parse(spec, c.n, c.directions));
    }
    for (const int d : c.random_degrees) {
        for (auto& corr : random_correlators(c.n, d, c.random_per_degree, c.correlator_seed)) {
            out.push_back(std::move(corr));
        }
    }
    return out;
}

}  // namespace xshadow
