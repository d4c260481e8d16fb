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

#pragma once

#include <filesystem>
#include <string>

#include "tcm/suite.hpp"

namespace tcm {

enum class Verdict { Pass, Fail };

/// One historical execution of a test.
struct RunRecord {
    std::string test_id;
    double duration = 0.0;  // seconds
    Verdict verdict = Verdict::Pass;
};

inline constexpr const char* kPropertiesHeader = "test_id,avg_execution_time,failure_rate";
inline constexpr const char* kLogHeader = "test_id,duration,verdict";

/// Pre-aggregated dataset, one row per test case, failure_rate as a fraction.
TestSuite load_properties_csv(const std::filesystem::path& path);

/// Raw execution log; per test id the mean duration and the fraction of
/// failing runs, ordered by first appearance.
TestSuite aggregate_log_csv(const std::filesystem::path& path);

/// Writes the properties format with round-trip precision.
void write_properties_csv(const TestSuite& suite, const std::filesystem::path& path);

/// Keeps only cases with a nonzero failure rate, order preserved.
TestSuite filter_zero_failure(const TestSuite& suite);

}  // namespace tcm
