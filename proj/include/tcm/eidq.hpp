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
#include <chrono>
#include <cmath>
#include <cstdint>
#include <numeric>
#include <span>
#include <vector>

#include "tcm/anneal.hpp"
#include "tcm/qubo.hpp"
#include "tcm/random.hpp"

namespace tcm {

struct EidqParams {
    std::size_t sub_size = 10;
    std::size_t max_iters = 16;
    std::size_t convergence = 3;  // consecutive non-improving iterations before stopping
    std::uint64_t seed = 0;
    bool rolling = true;  // skip variables already extracted in the current pass

    void validate() const {
        if (sub_size < 1) throw ValidationError("sub_size must be >= 1");
        if (max_iters < 1) throw ValidationError("max_iters must be >= 1");
        if (convergence < 1) throw ValidationError("convergence must be >= 1");
    }
};

/// |energy change| of flipping each bit of `state`.
template <typename Scalar>
Vector<Scalar> energy_impact(const QuboModel<Scalar>& model, const BitVector& state) {
    if (state.size() != model.num_variables()) throw DimensionError("state length does not match model");
    const Vector<Scalar> xs = state.template cast<Scalar>();
    const Vector<Scalar> field = model.linear() + model.symmetric_couplings() * xs;
    return field.cwiseAbs();
}

/// Indices of the `sub_size` largest impacts, lower index first on ties;
/// returned ascending.
template <typename Derived>
std::vector<Index> decompose(const Eigen::MatrixBase<Derived>& impacts, std::size_t sub_size) {
    const Index n = impacts.size();
    if (sub_size < 1 || static_cast<Index>(sub_size) > n) throw ValidationError("sub_size must lie in [1, n]");
    std::vector<Index> order(static_cast<std::size_t>(n));
    std::iota(order.begin(), order.end(), Index{0});
    std::stable_sort(order.begin(), order.end(), [&](Index a, Index b) { return impacts(a) > impacts(b); });
    order.resize(sub_size);
    std::sort(order.begin(), order.end());
    return order;
}

/// Sub-model over `indices` with every other variable frozen at its value in
/// `state`: couplings to frozen bits fold into the linear terms, frozen-only
/// terms into the offset. Sub-variable k is model variable indices[k].
template <typename Scalar>
QuboModel<Scalar> fold_submodel(const QuboModel<Scalar>& model, const BitVector& state,
                                std::span<const Index> indices) {
    const Index n = model.num_variables();
    if (state.size() != n) throw DimensionError("state length does not match model");
    std::vector<Index> local(static_cast<std::size_t>(n), -1);
    for (std::size_t k = 0; k < indices.size(); ++k) {
        const Index i = indices[k];
        if (i < 0 || i >= n || local[static_cast<std::size_t>(i)] != -1) {
            throw ValidationError("sub-problem indices must be distinct and in range");
        }
        local[static_cast<std::size_t>(i)] = static_cast<Index>(k);
    }

    Vector<Scalar> linear(static_cast<Index>(indices.size()));
    for (std::size_t k = 0; k < indices.size(); ++k) linear(static_cast<Index>(k)) = model.linear(indices[k]);
    Scalar offset = model.offset();
    for (Index i = 0; i < n; ++i) {
        if (local[static_cast<std::size_t>(i)] < 0 && state(i)) offset += model.linear(i);
    }

    std::vector<typename QuboModel<Scalar>::Triplet> couplings;
    const auto& q = model.quadratic();
    for (Index i = 0; i < q.outerSize(); ++i) {
        for (typename UpperCouplings<Scalar>::InnerIterator it(q, i); it; ++it) {
            const Index j = it.col();
            const Index li = local[static_cast<std::size_t>(i)];
            const Index lj = local[static_cast<std::size_t>(j)];
            if (li >= 0 && lj >= 0) {
                couplings.emplace_back(std::min(li, lj), std::max(li, lj), it.value());
            } else if (li >= 0) {
                if (state(j)) linear(li) += it.value();
            } else if (lj >= 0) {
                if (state(i)) linear(lj) += it.value();
            } else if (state(i) && state(j)) {
                offset += it.value();
            }
        }
    }
    return QuboModel<Scalar>(std::move(linear), couplings, offset);
}

/// Per-run bookkeeping of eidq_solve.
struct EidqTrace {
    std::size_t iterations = 0;
    std::size_t improvements = 0;
    double decompose_seconds = 0.0;
    double solve_seconds = 0.0;
};

/// Energy-impact decomposition loop. Starting from the empty selection, each
/// iteration extracts the highest-impact sub-problem, anneals it with seed
/// derive_seed(params.seed, iteration) and adopts the sub-solution only when
/// it lowers the whole-model energy. Stops after max_iters iterations or
/// `convergence` consecutive iterations without improvement.
/// With params.rolling, a pass walks down the impact order: each iteration
/// takes the highest-impact variables not yet extracted in the pass, and a new
/// pass starts once fewer than sub_size unvisited variables remain.
template <typename Scalar>
Sample<Scalar> eidq_solve(const QuboModel<Scalar>& model, const EidqParams& params, const AnnealParams& anneal_params,
                          EidqTrace* trace = nullptr) {
    params.validate();
    using Clock = std::chrono::steady_clock;
    const Index n = model.num_variables();
    const std::size_t sub_size = std::min<std::size_t>(params.sub_size, static_cast<std::size_t>(n));

    Sample<Scalar> incumbent{BitVector::Zero(n), Scalar(0)};
    incumbent.energy = evaluate(model, incumbent.assignment);
    EidqTrace local;
    if (n == 0) {
        if (trace) *trace = local;
        return incumbent;
    }

    std::size_t stale = 0;
    std::vector<bool> visited(static_cast<std::size_t>(n), false);
    std::size_t unvisited = static_cast<std::size_t>(n);
    for (std::size_t iter = 0; iter < params.max_iters && stale < params.convergence; ++iter) {
        auto t0 = Clock::now();
        Vector<Scalar> impacts = energy_impact(model, incumbent.assignment);
        if (params.rolling) {
            if (unvisited < sub_size) {
                std::fill(visited.begin(), visited.end(), false);
                unvisited = static_cast<std::size_t>(n);
            }
            // Impacts are non-negative, so visited variables rank below every unvisited one.
            for (Index i = 0; i < n; ++i) {
                if (visited[static_cast<std::size_t>(i)]) impacts(i) = Scalar(-1);
            }
        }
        const std::vector<Index> indices = decompose(impacts, sub_size);
        for (const Index i : indices) {
            if (params.rolling && !visited[static_cast<std::size_t>(i)]) {
                visited[static_cast<std::size_t>(i)] = true;
                --unvisited;
            }
        }
        const QuboModel<Scalar> sub = fold_submodel(model, incumbent.assignment, indices);
        auto t1 = Clock::now();

        AnnealParams sub_params = anneal_params;
        sub_params.seed = derive_seed(params.seed, iter);
        const Sample<Scalar> sub_best = best_of(anneal(sub, sub_params));
        auto t2 = Clock::now();

        BitVector candidate = incumbent.assignment;
        for (std::size_t k = 0; k < indices.size(); ++k) candidate(indices[k]) = sub_best.assignment(static_cast<Index>(k));
        const Scalar energy = evaluate(model, candidate);
        if (energy < incumbent.energy) {
            incumbent = {std::move(candidate), energy};
            stale = 0;
            ++local.improvements;
        } else {
            ++stale;
        }
        ++local.iterations;
        local.decompose_seconds += std::chrono::duration<double>(t1 - t0).count();
        local.solve_seconds += std::chrono::duration<double>(t2 - t1).count();
    }
    if (trace) *trace = local;
    return incumbent;
}

}  // namespace tcm
