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

#include <cmath>
#include <numeric>
#include <span>
#include <string>
#include <vector>

#include "tcm/errors.hpp"
#include "tcm/qubo.hpp"
#include "tcm/suite.hpp"

namespace tcm {

enum class Direction { Maximize, Minimize };

/// Target value of a property's summed selection.
struct LimitRule {
    enum class Kind { SumOfValues, Zero, Explicit };

    Kind kind = Kind::SumOfValues;
    double value = 0.0;  // used by Kind::Explicit

    static LimitRule sum_of_values() { return {Kind::SumOfValues, 0.0}; }
    static LimitRule zero() { return {Kind::Zero, 0.0}; }
    static LimitRule explicit_value(double v) { return {Kind::Explicit, v}; }

    friend bool operator==(const LimitRule&, const LimitRule&) = default;
};

struct PropertySpec {
    std::string name;  // a TestSuite::values() property
    Direction direction = Direction::Maximize;
    double weight = 0.0;
    LimitRule limit;

    friend bool operator==(const PropertySpec&, const PropertySpec&) = default;
};

enum class ValueScaling { MaxScale, MinMax, None };

/// Optional normalisation of each objective before weighting:
/// ByLimitSquared divides a property objective by L^2 (by (sum v)^2 when
/// L = 0) and the count objective by s^2.
enum class ObjectiveScaling { None, ByLimitSquared };

struct FormulationConfig {
    std::vector<PropertySpec> properties;
    double count_weight = 0.33;
    ValueScaling value_scaling = ValueScaling::MaxScale;
    ObjectiveScaling objective_scaling = ObjectiveScaling::None;

    void validate() const;

    /// Execution time (minimised, limit 0) and failure rate (maximised,
    /// limit = sum) alongside the selection count.
    static FormulationConfig test_minimization(double count_weight = 0.33, double exec_time_weight = 0.33,
                                               double failure_rate_weight = 0.33);

    friend bool operator==(const FormulationConfig&, const FormulationConfig&) = default;
};

/// Rescales non-negative values into [0, 1]. MaxScale divides by the maximum
/// (all-zero input unchanged); MinMax maps [min, max] onto [0, 1] (constant
/// input becomes zeros).
std::vector<double> scale_values(std::span<const double> raw, ValueScaling mode);

double theoretical_limit(std::span<const double> values, const PropertySpec& spec);

/// Expanded coefficients of one squared-distance objective.
template <typename Scalar>
struct ObjectiveTerms {
    Vector<Scalar> linear;
    UpperCouplings<Scalar> quadratic;
    Scalar offset{0};

    ObjectiveTerms& operator*=(Scalar factor) {
        linear *= factor;
        quadratic *= factor;
        offset *= factor;
        return *this;
    }

    QuboModel<Scalar> to_model() const { return QuboModel<Scalar>(linear, quadratic, offset); }
};

/// (sum_i v_i t_i - L)^2 expanded with t_i^2 = t_i:
/// linear v_i^2 - 2 L v_i, quadratic 2 v_i v_j, offset L^2.
template <typename Scalar = double>
ObjectiveTerms<Scalar> build_property_objective(std::span<const double> values, double limit) {
    const Index s = static_cast<Index>(values.size());
    const Eigen::Map<const Eigen::VectorXd> v(values.data(), s);
    ObjectiveTerms<Scalar> terms;
    terms.linear = (v.array().square() - 2.0 * limit * v.array()).matrix().template cast<Scalar>();
    const Eigen::MatrixXd outer = (2.0 * v * v.transpose()).triangularView<Eigen::StrictlyUpper>();
    terms.quadratic = outer.sparseView().template cast<Scalar>();
    terms.quadratic.makeCompressed();
    terms.offset = static_cast<Scalar>(limit * limit);
    return terms;
}

/// (sum_i t_i)^2: linear 1, quadratic 2, offset 0.
template <typename Scalar = double>
ObjectiveTerms<Scalar> build_count_objective(std::size_t s) {
    if (s < 1) throw ValidationError("count objective needs at least one test case");
    const std::vector<double> ones(s, 1.0);
    return build_property_objective<Scalar>(ones, 0.0);
}

/// Weighted sum of the count objective and every configured property
/// objective over the suite's test cases.
template <typename Scalar = double>
QuboModel<Scalar> build_overall_qubo(const TestSuite& suite, const FormulationConfig& config) {
    if (suite.empty()) throw ValidationError("cannot formulate an empty test suite");
    suite.validate();
    config.validate();

    const std::size_t s = suite.size();
    const bool normalise = config.objective_scaling == ObjectiveScaling::ByLimitSquared;

    ObjectiveTerms<Scalar> total = build_count_objective<Scalar>(s);
    total *= static_cast<Scalar>(config.count_weight / (normalise ? double(s) * double(s) : 1.0));

    for (const auto& spec : config.properties) {
        std::vector<double> values = suite.values(spec.name);
        const bool outside_unit =
                std::any_of(values.begin(), values.end(), [](double v) { return v < 0.0 || v > 1.0; });
        if (config.value_scaling != ValueScaling::None && outside_unit) {
            values = scale_values(values, config.value_scaling);
        }
        const double limit = theoretical_limit(values, spec);
        ObjectiveTerms<Scalar> terms = build_property_objective<Scalar>(values, limit);
        double factor = spec.weight;
        if (normalise) {
            const double sum = std::accumulate(values.begin(), values.end(), 0.0);
            const double norm = limit != 0.0 ? limit * limit : sum * sum;
            if (norm > 0.0) factor /= norm;
        }
        terms *= static_cast<Scalar>(factor);
        total.linear += terms.linear;
        total.quadratic += terms.quadratic;
        total.offset += terms.offset;
    }
    return total.to_model();
}

}  // namespace tcm
