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

#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "tcm/qubo.hpp"

namespace tcm {

struct TestCase {
    std::string id;
    double exec_time = 0.0;     // seconds
    double failure_rate = 0.0;  // fraction of failing historical runs

    friend bool operator==(const TestCase&, const TestCase&) = default;
};

/// Ordered test cases; position i is decision variable t_i.
struct TestSuite {
    std::vector<TestCase> cases;

    std::size_t size() const noexcept { return cases.size(); }
    bool empty() const noexcept { return cases.empty(); }

    /// Throws ValidationError on duplicate ids or out-of-range properties.
    void validate() const;

    /// Cases at `indices`, in the given order.
    TestSuite subset(std::span<const Index> indices) const;

    /// Per-case values of a named property ("exec_time" or "failure_rate").
    std::vector<double> values(std::string_view property) const;

    /// Selection vector for a set of ids; unknown ids are rejected.
    BitVector bits_for(std::span<const std::string> ids) const;

    /// Ids of selected cases, sorted.
    std::vector<std::string> ids_for(const BitVector& bits) const;

    friend bool operator==(const TestSuite&, const TestSuite&) = default;
};

}  // namespace tcm
