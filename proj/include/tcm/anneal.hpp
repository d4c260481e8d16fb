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

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "tcm/errors.hpp"
#include "tcm/parallel.hpp"
#include "tcm/qubo.hpp"
#include "tcm/random.hpp"

namespace tcm {

/// Inverse-temperature endpoints of a geometric schedule.
struct BetaRange {
    double hot = 0.1;
    double cold = 10.0;

    friend bool operator==(const BetaRange&, const BetaRange&) = default;
};

struct AnnealParams {
    std::size_t num_reads = 100;
    std::size_t sweeps_per_read = 1000;
    std::optional<BetaRange> beta_range;  // nullopt: auto_schedule(model)
    std::uint64_t seed = 0;
    unsigned threads = 0;  // 0: hardware concurrency, capped by TCM_ANNEAL_THREADS

    void validate() const {
        if (num_reads < 1) throw ValidationError("num_reads must be >= 1");
        if (sweeps_per_read < 1) throw ValidationError("sweeps_per_read must be >= 1");
        if (beta_range) {
            const auto [hot, cold] = *beta_range;
            if (!(hot > 0.0) || !(cold > 0.0) || !(hot < cold) || !std::isfinite(cold)) {
                throw ValidationError("beta range must satisfy 0 < hot < cold");
            }
        }
    }
};

/// Reads sorted by (energy, bits, read index).
template <typename Scalar>
struct SampleSet {
    std::vector<Sample<Scalar>> samples;
    AnnealParams params;
};

/// Schedule endpoints: hot = ln 2 / largest per-variable flip-energy bound
/// |linear_i| + sum_j |quadratic_ij|, so nearly every uphill move is accepted
/// at the start; cold = ln 100 / smallest nonzero coefficient magnitude, so
/// the finest energy step is accepted with probability 1/100 at the end.
/// Falls back to (0.1, 10) for a model without coefficients.
template <typename Scalar>
BetaRange auto_schedule(const QuboModel<Scalar>& model) {
    const auto sym = model.symmetric_couplings();
    double largest_bound = 0.0;
    double finest_step = 0.0;
    auto consider = [&finest_step](double magnitude) {
        if (magnitude > 0.0) finest_step = finest_step == 0.0 ? magnitude : std::min(finest_step, magnitude);
    };
    for (Index i = 0; i < model.num_variables(); ++i) {
        double bound = std::abs(static_cast<double>(model.linear(i)));
        consider(bound);
        for (typename UpperCouplings<Scalar>::InnerIterator it(sym, i); it; ++it) {
            const double magnitude = std::abs(static_cast<double>(it.value()));
            bound += magnitude;
            consider(magnitude);
        }
        largest_bound = std::max(largest_bound, bound);
    }
    if (largest_bound == 0.0) return {};
    BetaRange range{std::log(2.0) / largest_bound, std::log(100.0) / finest_step};
    if (!(range.hot < range.cold)) range.cold = 2.0 * range.hot;
    return range;
}

/// Ordering of a SampleSet: energy, then lexicographic bits. Applied with a
/// stable sort over read order, so read index breaks remaining ties.
template <typename Scalar>
bool sample_order(const Sample<Scalar>& a, const Sample<Scalar>& b) {
    if (a.energy != b.energy) return a.energy < b.energy;
    return lexicographically_less(a.assignment, b.assignment);
}

namespace detail {

/// Neighbour lists of the symmetric coupling matrix in CSR form.
template <typename Scalar>
struct CouplingGraph {
    std::vector<int> row_start;
    std::vector<int> column;
    std::vector<Scalar> weight;

    explicit CouplingGraph(const QuboModel<Scalar>& model) {
        const auto sym = model.symmetric_couplings();
        row_start.assign(sym.outerIndexPtr(), sym.outerIndexPtr() + sym.outerSize() + 1);
        column.assign(sym.innerIndexPtr(), sym.innerIndexPtr() + sym.nonZeros());
        weight.assign(sym.valuePtr(), sym.valuePtr() + sym.nonZeros());
    }
};

template <typename Scalar>
BitVector anneal_chain(const QuboModel<Scalar>& model, const CouplingGraph<Scalar>& graph,
                       std::span<const double> betas, std::uint64_t seed) {
    const Index n = model.num_variables();
    Rng rng = make_rng(seed);

    BitVector x(n);
    for (Index i = 0; i < n; ++i) x(i) = static_cast<std::uint8_t>(rng() >> 63);

    // field_i = linear_i + sum_j J_ij x_j; flipping i changes energy by
    // +field_i (0 -> 1) or -field_i (1 -> 0).
    std::vector<Scalar> field(model.linear().data(), model.linear().data() + n);
    Scalar energy = model.offset();
    for (Index i = 0; i < n; ++i) {
        if (!x(i)) continue;
        energy += model.linear(i);
        for (int k = graph.row_start[i]; k < graph.row_start[i + 1]; ++k) field[graph.column[k]] += graph.weight[k];
    }
    for (Index i = 0; i < n; ++i) {
        if (x(i)) energy += (field[i] - model.linear(i)) / Scalar(2);
    }

    BitVector best = x;
    Scalar best_energy = energy;
    for (const double beta : betas) {
        for (Index i = 0; i < n; ++i) {
            const Scalar delta = x(i) ? -field[i] : field[i];
            if (delta > Scalar(0)) {
                const double exponent = beta * static_cast<double>(delta);
                if (exponent > 40.0 || uniform01(rng) >= std::exp(-exponent)) continue;
            }
            x(i) ^= 1;
            const Scalar sign = x(i) ? Scalar(1) : Scalar(-1);
            for (int k = graph.row_start[i]; k < graph.row_start[i + 1]; ++k) {
                field[graph.column[k]] += sign * graph.weight[k];
            }
            energy += delta;
            if (energy < best_energy) {
                best_energy = energy;
                best = x;
            }
        }
    }
    return best;
}

}  // namespace detail

/// Simulated annealing with single-bit Metropolis sweeps. Read k runs an
/// independent chain seeded with derive_seed(params.seed, k) from a uniformly
/// random start, raising beta geometrically from hot to cold over the sweeps,
/// and reports the lowest-energy state it visited. The result does not depend
/// on the number of worker threads.
template <typename Scalar>
SampleSet<Scalar> anneal(const QuboModel<Scalar>& model, const AnnealParams& params) {
    params.validate();
    if (model.num_variables() < 1) throw ValidationError("cannot anneal a model without variables");

    const BetaRange range = params.beta_range.value_or(auto_schedule(model));
    std::vector<double> betas(params.sweeps_per_read);
    if (betas.size() == 1) {
        betas[0] = range.cold;
    } else {
        const double ratio = std::log(range.cold / range.hot);
        for (std::size_t k = 0; k < betas.size(); ++k) {
            betas[k] = range.hot * std::exp(ratio * static_cast<double>(k) / static_cast<double>(betas.size() - 1));
        }
    }

    const detail::CouplingGraph<Scalar> graph(model);
    SampleSet<Scalar> set{std::vector<Sample<Scalar>>(params.num_reads), params};
    parallel_for(params.num_reads, effective_threads(params.threads), [&](std::size_t read) {
        BitVector x = detail::anneal_chain(model, graph, betas, derive_seed(params.seed, read));
        const Scalar e = evaluate(model, x);
        set.samples[read] = {std::move(x), e};
    });
    std::stable_sort(set.samples.begin(), set.samples.end(), sample_order<Scalar>);
    return set;
}

/// First sample under sample_order; earliest wins among exact ties.
template <typename Scalar>
Sample<Scalar> best_of(const SampleSet<Scalar>& set) {
    if (set.samples.empty()) throw ValidationError("empty sample set");
    return *std::min_element(set.samples.begin(), set.samples.end(), sample_order<Scalar>);
}

}  // namespace tcm
