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

#include "tcm/bootqa.hpp"

#include <chrono>
#include <cmath>
#include <numeric>
#include <set>

#include "tcm/random.hpp"

namespace tcm {

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
    return std::chrono::duration<double>(Clock::now() - start).count();
}

}  // namespace

DecompositionPlan plan_subsets(std::size_t s, std::size_t n, double beta, std::uint64_t seed) {
    if (s < 1) throw ValidationError("cannot decompose an empty suite");
    if (n < 1) throw ValidationError("sub-problem size must be >= 1");
    if (!(beta > 0.0 && beta <= 1.0)) throw ValidationError("coverage must lie in (0, 1]");

    DecompositionPlan plan;
    plan.n_target = n;
    plan.coverage_target = beta;
    plan.seed = seed;

    if (n >= s) {
        std::vector<Index> all(s);
        std::iota(all.begin(), all.end(), Index{0});
        plan.subsets.push_back(std::move(all));
        plan.achieved_coverage = 1.0;
        return plan;
    }

    const auto target = static_cast<std::size_t>(std::ceil(beta * static_cast<double>(s) - 1e-9));
    const std::size_t cap = kSubsetCapFactor * ((s + n - 1) / n);

    Rng rng = make_rng(seed);
    std::vector<Index> pool(s);
    std::iota(pool.begin(), pool.end(), Index{0});
    std::vector<bool> covered(s, false);
    std::size_t covered_count = 0;

    while (covered_count < target) {
        if (plan.subsets.size() == cap) {
            const double achieved = static_cast<double>(covered_count) / static_cast<double>(s);
            throw CoverageError("coverage " + std::to_string(achieved) + " below target " + std::to_string(beta) +
                                        " after " + std::to_string(cap) + " subsets",
                                achieved);
        }
        // Partial Fisher-Yates: the first n slots become a uniform n-subset.
        for (std::size_t k = 0; k < n; ++k) {
            const std::size_t pick = k + static_cast<std::size_t>(uniform_below(rng, s - k));
            std::swap(pool[k], pool[pick]);
        }
        std::vector<Index> subset(pool.begin(), pool.begin() + static_cast<std::ptrdiff_t>(n));
        std::sort(subset.begin(), subset.end());
        for (const Index i : subset) {
            if (!covered[static_cast<std::size_t>(i)]) {
                covered[static_cast<std::size_t>(i)] = true;
                ++covered_count;
            }
        }
        plan.subsets.push_back(std::move(subset));
    }
    plan.achieved_coverage = static_cast<double>(covered_count) / static_cast<double>(s);
    return plan;
}

Selection solve_subproblem(const TestSuite& suite, std::span<const Index> indices, const FormulationConfig& config,
                           const AnnealParams& params) {
    const TestSuite sub = suite.subset(indices);
    const Qubo model = build_overall_qubo(sub, config);
    const auto best = best_of(anneal(model, params));
    return {sub.ids_for(best.assignment), best.energy};
}

double whole_objective(const TestSuite& suite, const FormulationConfig& config, std::span<const std::string> ids) {
    return evaluate(build_overall_qubo(suite, config), suite.bits_for(ids));
}

Selection run_bootqa_plan(const TestSuite& suite, const DecompositionPlan& plan, const FormulationConfig& config,
                          const AnnealParams& params, std::uint64_t seed, BootqaTrace* trace) {
    const auto start = Clock::now();
    std::set<std::string> merged;
    for (std::size_t k = 0; k < plan.subsets.size(); ++k) {
        AnnealParams sub_params = params;
        sub_params.seed = derive_seed(seed, k);
        const Selection part = solve_subproblem(suite, plan.subsets[k], config, sub_params);
        merged.insert(part.selected_ids.begin(), part.selected_ids.end());
    }
    Selection result{{merged.begin(), merged.end()}, 0.0};
    result.objective_value = whole_objective(suite, config, result.selected_ids);
    if (trace) {
        trace->plan = plan;
        trace->solve_seconds = seconds_since(start);
    }
    return result;
}

Selection run_bootqa(const TestSuite& suite, std::size_t n, double beta, const FormulationConfig& config,
                     const AnnealParams& params, std::uint64_t seed, BootqaTrace* trace) {
    const auto start = Clock::now();
    DecompositionPlan plan = plan_subsets(suite.size(), n, beta, derive_seed(seed, kPlanStream));
    const double decompose = seconds_since(start);
    Selection result = run_bootqa_plan(suite, plan, config, params, seed, trace);
    if (trace) trace->decompose_seconds = decompose;
    return result;
}

}  // namespace tcm
