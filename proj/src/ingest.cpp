// Copyright 2026 The tcm-qubo Authors
//
//    Licensed under the Apache License, Version 2.0 (the "License");
//    you may not use this file except in compliance with the License.
//    You may obtain a copy of the License at
//
//        http://www.apache.org/licenses/LICENSE-2.0
//
//    Unless required by applicable law or agreed to in writing, software
//    distributed under the License is distributed on an "AS IS" BASIS,
//    WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
//    See the License for the specific language governing permissions and
//    limitations under the License.

#include "tcm/ingest.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <fstream>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "tcm/errors.hpp"

namespace tcm {

namespace {

std::ifstream open_input(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open '" + path.string() + "' for reading");
    return in;
}

// Lines without their terminator; accepts \n and \r\n.
bool next_line(std::istream& in, std::string& line) {
    if (!std::getline(in, line)) return false;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    return true;
}

std::vector<std::string_view> split(std::string_view line) {
    std::vector<std::string_view> fields;
    std::size_t start = 0;
    for (;;) {
        const std::size_t comma = line.find(',', start);
        fields.push_back(line.substr(start, comma - start));
        if (comma == std::string_view::npos) break;
        start = comma + 1;
    }
    return fields;
}

double parse_number(std::string_view field, const std::filesystem::path& path, std::size_t row,
                    const char* column) {
    double value = 0.0;
    const auto* first = field.data();
    const auto* last = field.data() + field.size();
    const auto [ptr, ec] = std::from_chars(first, last, value);
    if (ec != std::errc() || ptr != last || field.empty() || !std::isfinite(value)) {
        throw ParseError(path.string(), row, std::string("unparsable ") + column + " '" + std::string(field) + "'");
    }
    return value;
}

void expect_header(std::istream& in, const std::filesystem::path& path, std::string_view header) {
    std::string line;
    if (!next_line(in, line)) {
        throw ParseError(path.string(), 1, "missing header, expected '" + std::string(header) + "'");
    }
    if (line != header) throw ParseError(path.string(), 1, "header must be exactly '" + std::string(header) + "'");
}

}  // namespace

TestSuite load_properties_csv(const std::filesystem::path& path) {
    std::ifstream in = open_input(path);
    expect_header(in, path, kPropertiesHeader);

    TestSuite suite;
    std::unordered_map<std::string, std::size_t> seen;
    std::string line;
    for (std::size_t row = 2; next_line(in, line); ++row) {
        if (line.empty()) continue;
        const auto fields = split(line);
        if (fields.size() != 3) {
            throw ParseError(path.string(), row, "expected 3 columns, found " + std::to_string(fields.size()));
        }
        TestCase c;
        c.id = std::string(fields[0]);
        if (c.id.empty()) throw ParseError(path.string(), row, "empty test_id");
        c.exec_time = parse_number(fields[1], path, row, "avg_execution_time");
        c.failure_rate = parse_number(fields[2], path, row, "failure_rate");
        if (c.exec_time < 0.0) throw ParseError(path.string(), row, "negative avg_execution_time");
        if (c.failure_rate < 0.0 || c.failure_rate > 1.0) {
            throw ParseError(path.string(), row, "failure_rate " + std::string(fields[2]) + " outside [0, 1]");
        }
        if (!seen.emplace(c.id, row).second) throw ParseError(path.string(), row, "duplicate test_id '" + c.id + "'");
        suite.cases.push_back(std::move(c));
    }
    return suite;
}

TestSuite aggregate_log_csv(const std::filesystem::path& path) {
    std::ifstream in = open_input(path);
    expect_header(in, path, kLogHeader);

    struct Tally {
        double duration_sum = 0.0;
        std::size_t runs = 0;
        std::size_t failures = 0;
    };
    std::vector<std::string> order;
    std::unordered_map<std::string, Tally> tallies;

    std::string line;
    for (std::size_t row = 2; next_line(in, line); ++row) {
        if (line.empty()) continue;
        const auto fields = split(line);
        if (fields.size() != 3) {
            throw ParseError(path.string(), row, "expected 3 columns, found " + std::to_string(fields.size()));
        }
        RunRecord record;
        record.test_id = std::string(fields[0]);
        if (record.test_id.empty()) throw ParseError(path.string(), row, "empty test_id");
        record.duration = parse_number(fields[1], path, row, "duration");
        if (record.duration < 0.0) throw ParseError(path.string(), row, "negative duration");
        std::string verdict(fields[2]);
        std::transform(verdict.begin(), verdict.end(), verdict.begin(),
                       [](unsigned char ch) { return static_cast<char>(std::tolower(ch)); });
        if (verdict == "pass") {
            record.verdict = Verdict::Pass;
        } else if (verdict == "fail") {
            record.verdict = Verdict::Fail;
        } else {
            throw ParseError(path.string(), row, "unknown verdict '" + std::string(fields[2]) + "'");
        }

        auto [it, inserted] = tallies.try_emplace(record.test_id);
        if (inserted) order.push_back(record.test_id);
        it->second.duration_sum += record.duration;
        it->second.runs += 1;
        it->second.failures += record.verdict == Verdict::Fail ? 1 : 0;
    }

    TestSuite suite;
    suite.cases.reserve(order.size());
    for (const auto& id : order) {
        const Tally& t = tallies.at(id);
        suite.cases.push_back({id, t.duration_sum / static_cast<double>(t.runs),
                               static_cast<double>(t.failures) / static_cast<double>(t.runs)});
    }
    return suite;
}

void write_properties_csv(const TestSuite& suite, const std::filesystem::path& path) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("cannot open '" + path.string() + "' for writing");
    out << kPropertiesHeader << '\n';
    char buffer[64];
    auto number = [&buffer](double v) {
        const auto [ptr, ec] = std::to_chars(buffer, buffer + sizeof buffer, v);
        return std::string_view(buffer, static_cast<std::size_t>(ptr - buffer));
    };
    for (const auto& c : suite.cases) {
        out << c.id << ',' << number(c.exec_time);
        out << ',' << number(c.failure_rate) << '\n';
    }
    if (!out) throw IoError("failed writing '" + path.string() + "'");
}

TestSuite filter_zero_failure(const TestSuite& suite) {
    TestSuite out;
    std::copy_if(suite.cases.begin(), suite.cases.end(), std::back_inserter(out.cases),
                 [](const TestCase& c) { return c.failure_rate > 0.0; });
    return out;
}

}  // namespace tcm
