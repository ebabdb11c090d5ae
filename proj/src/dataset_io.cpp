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

#include "xshadow/dataset_io.h"

#include <charconv>
#include <fstream>
#include <istream>
#include <ostream>
#include <stdexcept>
#include <string_view>

namespace xshadow {

namespace {

struct Header {
    int n = 0;
    std::string type;
    std::uint64_t seed = 0;
    std::vector<std::string> directions;
    bool has_n = false, has_type = false, has_seed = false, has_directions = false;
};

[[noreturn]] void parse_error(std::size_t line, const std::string& what) {
    throw std::runtime_error("dataset line " + std::to_string(line) + ": " + what);
}

std::vector<std::string> split(std::string_view text, char sep) {
    std::vector<std::string> out;
    std::size_t pos = 0;
    while (true) {
        const std::size_t next = text.find(sep, pos);
        out.emplace_back(text.substr(pos, next == std::string_view::npos ? next : next - pos));
        if (next == std::string_view::npos) {
            break;
        }
        pos = next + 1;
    }
    return out;
}

template <typename T>
T parse_number(std::string_view text, std::size_t line, const char* field) {
    T value{};
    const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
    if (ec != std::errc() || ptr != text.data() + text.size()) {
        parse_error(line, std::string("invalid ") + field + " '" + std::string(text) + "'");
    }
    return value;
}

// Consumes header lines; leaves `line` holding the first data row (if any).
Header read_header(std::istream& in, std::string& line, std::size_t& line_no, bool& have_row) {
    Header h;
    have_row = false;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') {
            line.pop_back();
        }
        if (line.empty()) {
            continue;
        }
        if (line[0] != '#') {
            have_row = true;
            break;
        }
        const std::string_view body = std::string_view(line).substr(1);
        const std::size_t eq = body.find('=');
        if (eq == std::string_view::npos) {
            parse_error(line_no, "header line without '='");
        }
        const std::string_view key = body.substr(0, eq);
        const std::string_view value = body.substr(eq + 1);
        if (key == "n") {
            h.n = parse_number<int>(value, line_no, "qubit count");
            h.has_n = true;
        } else if (key == "type") {
            h.type = std::string(value);
            h.has_type = true;
        } else if (key == "seed") {
            h.seed = parse_number<std::uint64_t>(value, line_no, "seed");
            h.has_seed = true;
        } else if (key == "directions") {
            h.directions = split(value, ',');
            h.has_directions = true;
        } else {
            parse_error(line_no, "unknown header key '" + std::string(key) + "'");
        }
    }
    if (!h.has_n || !h.has_type || !h.has_seed) {
        throw std::runtime_error("dataset header must contain #n, #type and #seed");
    }
    if (h.n < 1 || h.n > kMaxBits) {
        throw std::runtime_error("dataset qubit count outside [1, 24]");
    }
    return h;
}

Word parse_bits(std::string_view text, int n, std::size_t line_no) {
    if (static_cast<int>(text.size()) != n) {
        parse_error(line_no, "bitstring of length " + std::to_string(text.size()) + ", expected " + std::to_string(n));
    }
    Word bits = 0;
    for (char c : text) {
        if (c != '0' && c != '1') {
            parse_error(line_no, "bitstring contains '" + std::string(1, c) + "'");
        }
        bits = (bits << 1) | static_cast<Word>(c == '1');
    }
    return bits;
}

void append_bits(std::string& buffer, Word bits, int n) {
    for (int i = n - 1; i >= 0; --i) {
        buffer.push_back((bits >> i) & 1U ? '1' : '0');
    }
}

}  // namespace

void write_calibration(std::ostream& out, const CalibrationDataset& data) {
    std::string buffer = "#n=" + std::to_string(data.n) + "\n#type=calibration\n#seed=" + std::to_string(data.seed) + "\n";
    buffer.reserve(buffer.size() + data.size() * static_cast<std::size_t>(data.n + 1));
    for (Word s : data.records) {
        append_bits(buffer, s, data.n);
        buffer.push_back('\n');
    }
    out << buffer;
}

void write_tomography(std::ostream& out, const TomographyDataset& data) {
    std::string buffer = "#n=" + std::to_string(data.n) + "\n#type=tomography\n#seed=" + std::to_string(data.seed) +
                         "\n#directions=";
    const auto labels = data.directions.labels();
    for (std::size_t k = 0; k < labels.size(); ++k) {
        buffer += (k ? "," : "") + labels[k];
    }
    buffer.push_back('\n');
    for (std::size_t l = 0; l < data.size(); ++l) {
        const auto setting = data.setting(l);
        for (int q = data.n - 1; q >= 0; --q) {
            buffer += labels[setting[q]];
            buffer.push_back(q ? ',' : ' ');
        }
        append_bits(buffer, data.outcomes[l], data.n);
        buffer.push_back('\n');
    }
    out << buffer;
}

CalibrationDataset read_calibration(std::istream& in) {
    std::string line;
    std::size_t line_no = 0;
    bool have_row = false;
    const Header h = read_header(in, line, line_no, have_row);
    if (h.type != "calibration") {
        throw std::runtime_error("expected a calibration dataset, found type '" + h.type + "'");
    }
    CalibrationDataset data{h.n, h.seed, {}};
    while (have_row) {
        data.records.push_back(parse_bits(line, h.n, line_no));
        have_row = false;
        while (std::getline(in, line)) {
            ++line_no;
            if (!line.empty() && line.back() == '\r') {
                line.pop_back();
            }
            if (!line.empty()) {
                have_row = true;
                break;
            }
        }
    }
    return data;
}

TomographyDataset read_tomography(std::istream& in, const DirectionSet& directions) {
    std::string line;
    std::size_t line_no = 0;
    bool have_row = false;
    const Header h = read_header(in, line, line_no, have_row);
    if (h.type != "tomography") {
        throw std::runtime_error("expected a tomography dataset, found type '" + h.type + "'");
    }
    if (h.has_directions) {
        for (const auto& label : h.directions) {
            if (!directions.index_of(label)) {
                throw std::runtime_error("dataset direction '" + label + "' is not in the configured direction set");
            }
        }
    }
    TomographyDataset data(h.n, directions, h.seed);
    MeasurementSetting setting(static_cast<std::size_t>(h.n));
    while (have_row) {
        const std::size_t space = line.find(' ');
        if (space == std::string::npos) {
            parse_error(line_no, "tomography row needs '<labels> <bitstring>'");
        }
        const auto labels = split(std::string_view(line).substr(0, space), ',');
        if (static_cast<int>(labels.size()) != h.n) {
            parse_error(line_no, "expected " + std::to_string(h.n) + " setting labels");
        }
        for (int k = 0; k < h.n; ++k) {
            const auto idx = directions.index_of(labels[k]);
            if (!idx) {
                parse_error(line_no, "unknown direction label '" + labels[k] + "'");
            }
            setting[h.n - 1 - k] = static_cast<std::uint8_t>(*idx);
        }
        data.append(setting, parse_bits(std::string_view(line).substr(space + 1), h.n, line_no));
        have_row = false;
        while (std::getline(in, line)) {
            ++line_no;
            if (!line.empty() && line.back() == '\r') {
                line.pop_back();
            }
            if (!line.empty()) {
                have_row = true;
                break;
            }
        }
    }
    return data;
}

namespace {

std::ofstream open_out(const std::string& path) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) {
        throw std::runtime_error("cannot open '" + path + "' for writing");
    }
    return out;
}

std::ifstream open_in(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw std::runtime_error("cannot open '" + path + "' for reading");
    }
    return in;
}

void finish(std::ofstream& out, const std::string& path) {
    out.flush();
    if (!out) {
        throw std::runtime_error("failed writing '" + path + "'");
    }
}

}  // namespace

void save_calibration(const std::string& path, const CalibrationDataset& data) {
    auto out = open_out(path);
    write_calibration(out, data);
    finish(out, path);
}

void save_tomography(const std::string& path, const TomographyDataset& data) {
    auto out = open_out(path);
    write_tomography(out, data);
    finish(out, path);
}

CalibrationDataset load_calibration(const std::string& path) {
    auto in = open_in(path);
    return read_calibration(in);
}

TomographyDataset load_tomography(const std::string& path, const DirectionSet& directions) {
    auto in = open_in(path);
    return read_tomography(in, directions);
}

int peek_qubit_count(const std::string& path) {
    auto in = open_in(path);
    std::string line;
    while (std::getline(in, line) && !line.empty() && line[0] == '#') {
        if (line.rfind("#n=", 0) == 0) {
            return parse_number<int>(std::string_view(line).substr(3), 1, "qubit count");
        }
    }
    throw std::runtime_error("'" + path + "' has no #n header");
}

}  // namespace xshadow
