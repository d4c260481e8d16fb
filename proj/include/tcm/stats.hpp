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

namespace tcm {

enum class Magnitude { Negligible, Small, Medium, Large };

std::string_view to_string(Magnitude m);

struct StatsReport {
    double p_value = 1.0;
    double a12 = 0.5;
    Magnitude magnitude = Magnitude::Negligible;
    bool significant = false;  // p < 0.05

    friend bool operator==(const StatsReport&, const StatsReport&) = default;
};

inline constexpr double kSignificanceLevel = 0.05;

double mean(std::span<const double> values);

/// Sample standard deviation (n - 1 denominator); 0 for fewer than two values.
double sample_stddev(std::span<const double> values);

/// Two-sided Mann-Whitney U p-value. Uses the exact null distribution of U
/// when the smaller sample has at most 8 values and there are no ties,
/// otherwise the normal approximation with tie and continuity correction.
double mann_whitney_u(std::span<const double> a, std::span<const double> b);

/// Mann-Whitney U statistic of `a` (pairs with a_i > b_j, ties counting half).
double u_statistic(std::span<const double> a, std::span<const double> b);

/// Two-sided p for statistic `u` under the exact no-ties null distribution.
double exact_u_p_value(double u, std::size_t m, std::size_t n);

/// Two-sided p for `u` by the normal approximation; `tie_term` is the sum of
/// t^3 - t over tie groups of the pooled sample.
double normal_u_p_value(double u, std::size_t m, std::size_t n, double tie_term = 0.0);

/// Vargha-Delaney A12: probability that a value from `a` exceeds one from `b`,
/// ties counting half. Below 0.5 means `a` tends to be smaller.
double a12(std::span<const double> a, std::span<const double> b);

/// Effect-size band of an A12 value.
Magnitude magnitude(double a12_value);

/// p-value, A12 and magnitude of `a` against `b`.
StatsReport compare(std::span<const double> a, std::span<const double> b);

}  // namespace tcm
