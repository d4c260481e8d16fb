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

#include "tcm/suite.hpp"

#include <algorithm>
#include <cmath>
#include <unordered_map>
#include <unordered_set>

#include "tcm/errors.hpp"

namespace tcm {

void TestSuite::validate() const {
    std::unordered_set<std::string_view> seen;
    for (const auto& c : cases) {
        if (!seen.insert(c.id).second) throw ValidationError("duplicate test id '" + c.id + "'");
        if (!std::isfinite(c.exec_time) || c.exec_time < 0.0) {
            throw ValidationError("test '" + c.id + "': exec_time must be finite and >= 0");
        }
        if (!(c.failure_rate >= 0.0 && c.failure_rate <= 1.0)) {
            throw ValidationError("test '" + c.id + "': failure_rate must lie in [0, 1]");
        }
    }
}

TestSuite TestSuite::subset(std::span<const Index> indices) const {
    TestSuite out;
    out.cases.reserve(indices.size());
    for (const Index i : indices) {
        if (i < 0 || static_cast<std::size_t>(i) >= cases.size()) {
            throw ValidationError("subset index " + std::to_string(i) + " out of range");
        }
        out.cases.push_back(cases[static_cast<std::size_t>(i)]);
    }
    return out;
}

std::vector<double> TestSuite::values(std::string_view property) const {
    std::vector<double> out;
    out.reserve(cases.size());
    if (property == "exec_time") {
        for (const auto& c : cases) out.push_back(c.exec_time);
    } else if (property == "failure_rate") {
        for (const auto& c : cases) out.push_back(c.failure_rate);
    } else {
        throw ValidationError("unknown property '" + std::string(property) + "'");
    }
    return out;
}

BitVector TestSuite::bits_for(std::span<const std::string> ids) const {
    std::unordered_map<std::string_view, Index> position;
    for (std::size_t i = 0; i < cases.size(); ++i) position.emplace(cases[i].id, static_cast<Index>(i));
    BitVector bits = BitVector::Zero(static_cast<Index>(cases.size()));
    for (const auto& id : ids) {
        const auto it = position.find(id);
        if (it == position.end()) throw ValidationError("unknown test id '" + id + "'");
        bits(it->second) = 1;
    }
    return bits;
}

std::vector<std::string> TestSuite::ids_for(const BitVector& bits) const {
    if (static_cast<std::size_t>(bits.size()) != cases.size()) throw DimensionError("selection length mismatch");
    std::vector<std::string> ids;
    for (std::size_t i = 0; i < cases.size(); ++i) {
        if (bits(static_cast<Index>(i))) ids.push_back(cases[i].id);
    }
    std::sort(ids.begin(), ids.end());
    return ids;
}

}  // namespace tcm
