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

#include "tcm/stats.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <vector>

#include "tcm/errors.hpp"

namespace tcm {

namespace {

void require_samples(std::span<const double> a, std::span<const double> b) {
    if (a.empty() || b.empty()) throw ValidationError("both samples must be non-empty");
}

struct RankSummary {
    double rank_sum_a = 0.0;
    double tie_term = 0.0;  // sum over tie groups of t^3 - t
    bool has_ties = false;
};

// Mid-ranks over the pooled sample.
RankSummary rank_pooled(std::span<const double> a, std::span<const double> b) {
    struct Item {
        double value;
        bool from_a;
    };
    std::vector<Item> pooled;
    pooled.reserve(a.size() + b.size());
    for (double v : a) pooled.push_back({v, true});
    for (double v : b) pooled.push_back({v, false});
    std::sort(pooled.begin(), pooled.end(), [](const Item& x, const Item& y) { return x.value < y.value; });

    RankSummary summary;
    for (std::size_t i = 0; i < pooled.size();) {
        std::size_t j = i;
        while (j < pooled.size() && pooled[j].value == pooled[i].value) ++j;
        const double t = static_cast<double>(j - i);
        const double mid_rank = (static_cast<double>(i + 1) + static_cast<double>(j)) / 2.0;
        for (std::size_t k = i; k < j; ++k) {
            if (pooled[k].from_a) summary.rank_sum_a += mid_rank;
        }
        if (t > 1.0) {
            summary.has_ties = true;
            summary.tie_term += t * t * t - t;
        }
        i = j;
    }
    return summary;
}

double u_from_ranks(const RankSummary& r, std::size_t m) {
    const double md = static_cast<double>(m);
    return r.rank_sum_a - md * (md + 1.0) / 2.0;
}

// counts[u] = number of arrangements of m a-values among n b-values with
// statistic u, via f(m, n)[u] = f(m, n - 1)[u] + f(m - 1, n)[u - n].
std::vector<double> u_distribution(std::size_t m, std::size_t n) {
    std::vector<std::vector<std::vector<double>>> table(
            m + 1, std::vector<std::vector<double>>(n + 1));
    for (std::size_t i = 0; i <= m; ++i) {
        for (std::size_t j = 0; j <= n; ++j) {
            std::vector<double>& cell = table[i][j];
            cell.assign(i * j + 1, 0.0);
            if (i == 0 || j == 0) {
                cell[0] = 1.0;
                continue;
            }
            const auto& top_from_b = table[i][j - 1];  // largest value belongs to b: wins nothing
            for (std::size_t u = 0; u < top_from_b.size(); ++u) cell[u] += top_from_b[u];
            const auto& top_from_a = table[i - 1][j];  // largest value belongs to a: beats all j
            for (std::size_t u = 0; u < top_from_a.size(); ++u) cell[u + j] += top_from_a[u];
        }
        if (i > 0) table[i - 1].clear();
    }
    return table[m][n];
}

}  // namespace

std::string_view to_string(Magnitude m) {
    switch (m) {
        case Magnitude::Negligible: return "negligible";
        case Magnitude::Small: return "small";
        case Magnitude::Medium: return "medium";
        case Magnitude::Large: return "large";
    }
    return "unknown";
}

double mean(std::span<const double> values) {
    if (values.empty()) throw ValidationError("mean of an empty sample");
    return std::accumulate(values.begin(), values.end(), 0.0) / static_cast<double>(values.size());
}

double sample_stddev(std::span<const double> values) {
    if (values.size() < 2) return 0.0;
    const double mu = mean(values);
    double ss = 0.0;
    for (double v : values) ss += (v - mu) * (v - mu);
    return std::sqrt(ss / static_cast<double>(values.size() - 1));
}

double u_statistic(std::span<const double> a, std::span<const double> b) {
    require_samples(a, b);
    return u_from_ranks(rank_pooled(a, b), a.size());
}

double exact_u_p_value(double u, std::size_t m, std::size_t n) {
    const std::vector<double> counts = u_distribution(std::min(m, n), std::max(m, n));
    const auto k = static_cast<std::size_t>(std::llround(u));
    double lower = 0.0;
    double upper = 0.0;
    double total = 0.0;
    for (std::size_t v = 0; v < counts.size(); ++v) {
        total += counts[v];
        if (v <= k) lower += counts[v];
        if (v >= k) upper += counts[v];
    }
    return std::min(1.0, 2.0 * std::min(lower, upper) / total);
}

double mann_whitney_u(std::span<const double> a, std::span<const double> b) {
    require_samples(a, b);
    const RankSummary ranks = rank_pooled(a, b);
    const double u = u_from_ranks(ranks, a.size());
    const std::size_t m = a.size();
    const std::size_t n = b.size();

    if (std::min(m, n) <= 8 && !ranks.has_ties) return exact_u_p_value(u, m, n);
    return normal_u_p_value(u, m, n, ranks.tie_term);
}

double normal_u_p_value(double u, std::size_t m, std::size_t n, double tie_term) {
    const double md = static_cast<double>(m);
    const double nd = static_cast<double>(n);
    const double total = md + nd;
    const double variance = md * nd / 12.0 * ((total + 1.0) - tie_term / (total * (total - 1.0)));
    if (!(variance > 0.0)) return 1.0;
    const double deviation = std::max(0.0, std::abs(u - md * nd / 2.0) - 0.5);
    const double p = std::erfc(deviation / std::sqrt(variance) / std::sqrt(2.0));
    return std::clamp(p, std::numeric_limits<double>::min(), 1.0);
}

double a12(std::span<const double> a, std::span<const double> b) {
    require_samples(a, b);
    return u_statistic(a, b) / (static_cast<double>(a.size()) * static_cast<double>(b.size()));
}

Magnitude magnitude(double v) {
    if (!(v >= 0.0 && v <= 1.0)) throw ValidationError("A12 must lie in [0, 1]");
    if (v <= 0.29 || v >= 0.71) return Magnitude::Large;
    if (v <= 0.34 || v >= 0.64) return Magnitude::Medium;
    if (v <= 0.44 || v >= 0.56) return Magnitude::Small;
    return Magnitude::Negligible;
}

StatsReport compare(std::span<const double> a, std::span<const double> b) {
    StatsReport report;
    report.p_value = mann_whitney_u(a, b);
    report.a12 = a12(a, b);
    report.magnitude = magnitude(report.a12);
    report.significant = report.p_value < kSignificanceLevel;
    return report;
}

}  // namespace tcm
