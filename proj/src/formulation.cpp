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

#include "tcm/formulation.hpp"

#include <algorithm>

namespace tcm {

void FormulationConfig::validate() const {
    double total = count_weight;
    if (!std::isfinite(count_weight) || count_weight < 0.0) throw ValidationError("count weight must be finite and >= 0");
    for (const auto& p : properties) {
        if (!std::isfinite(p.weight) || p.weight < 0.0) {
            throw ValidationError("weight of '" + p.name + "' must be finite and >= 0");
        }
        if (p.limit.kind == LimitRule::Kind::Explicit && !std::isfinite(p.limit.value)) {
            throw ValidationError("explicit limit of '" + p.name + "' must be finite");
        }
        total += p.weight;
    }
    if (!(total > 0.0)) throw ValidationError("at least one objective weight must be positive");
}

FormulationConfig FormulationConfig::test_minimization(double count_weight, double exec_time_weight,
                                                       double failure_rate_weight) {
    FormulationConfig config;
    config.count_weight = count_weight;
    config.properties = {
            {"exec_time", Direction::Minimize, exec_time_weight, LimitRule::zero()},
            {"failure_rate", Direction::Maximize, failure_rate_weight, LimitRule::sum_of_values()},
    };
    return config;
}

std::vector<double> scale_values(std::span<const double> raw, ValueScaling mode) {
    if (raw.empty()) throw ValidationError("cannot scale an empty value vector");
    for (const double v : raw) {
        if (!std::isfinite(v) || v < 0.0) throw ValidationError("property values must be finite and non-negative");
    }
    std::vector<double> out(raw.begin(), raw.end());
    const auto [lo, hi] = std::minmax_element(out.begin(), out.end());
    const double min = *lo;
    const double max = *hi;
    switch (mode) {
        case ValueScaling::None:
            break;
        case ValueScaling::MaxScale:
            if (max > 0.0) {
                for (double& v : out) v /= max;
            }
            break;
        case ValueScaling::MinMax:
            for (double& v : out) v = max > min ? (v - min) / (max - min) : 0.0;
            break;
    }
    return out;
}

double theoretical_limit(std::span<const double> values, const PropertySpec& spec) {
    switch (spec.limit.kind) {
        case LimitRule::Kind::SumOfValues:
            return std::accumulate(values.begin(), values.end(), 0.0);
        case LimitRule::Kind::Zero:
            return 0.0;
        case LimitRule::Kind::Explicit:
            return spec.limit.value;
    }
    return 0.0;
}

}  // namespace tcm
