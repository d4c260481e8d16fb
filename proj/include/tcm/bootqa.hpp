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

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "tcm/anneal.hpp"
#include "tcm/formulation.hpp"
#include "tcm/suite.hpp"

namespace tcm {

/// Bootstrap subsets of a suite of `s` test cases.
struct DecompositionPlan {
    std::vector<std::vector<Index>> subsets;  // each sorted ascending
    std::size_t n_target = 0;
    double coverage_target = 0.0;
    double achieved_coverage = 0.0;
    std::uint64_t seed = 0;

    std::size_t num_subsets() const noexcept { return subsets.size(); }
};

struct Selection {
    std::vector<std::string> selected_ids;  // sorted
    double objective_value = 0.0;

    friend bool operator==(const Selection&, const Selection&) = default;
};

/// Subsets drawn per plan_subsets are capped at this many per ceil(s / n).
inline constexpr std::size_t kSubsetCapFactor = 20;

/// Draws independent subsets of `n` distinct indices from [0, s) until at
/// least ceil(beta * s) indices are covered. With n >= s the plan is a single
/// subset holding every index. Throws CoverageError when the cap of
/// 20 * ceil(s / n) subsets is reached first.
DecompositionPlan plan_subsets(std::size_t s, std::size_t n, double beta, std::uint64_t seed);

/// Formulates the test cases at `indices` as their own problem (limits and
/// scaling computed over the subset only), anneals it and returns the best
/// sample's selected ids. objective_value is the sub-problem energy.
Selection solve_subproblem(const TestSuite& suite, std::span<const Index> indices, const FormulationConfig& config,
                           const AnnealParams& params);

/// Phase timings of one BootQA run, in seconds.
struct BootqaTrace {
    DecompositionPlan plan;
    double decompose_seconds = 0.0;
    double solve_seconds = 0.0;
};

/// Solves every subset of `plan` (subset k annealed with seed
/// derive_seed(seed, k)), merges the selected ids and scores the merged
/// selection on the whole-suite model.
Selection run_bootqa_plan(const TestSuite& suite, const DecompositionPlan& plan, const FormulationConfig& config,
                          const AnnealParams& params, std::uint64_t seed, BootqaTrace* trace = nullptr);

/// plan_subsets with derive_seed(seed, kPlanStream), then run_bootqa_plan.
Selection run_bootqa(const TestSuite& suite, std::size_t n, double beta, const FormulationConfig& config,
                     const AnnealParams& params, std::uint64_t seed, BootqaTrace* trace = nullptr);

/// Seed stream reserved for subset drawing.
inline constexpr std::uint64_t kPlanStream = 0xB007'5EEDull;

/// Whole-suite objective of a selection.
double whole_objective(const TestSuite& suite, const FormulationConfig& config, std::span<const std::string> ids);

}  // namespace tcm
