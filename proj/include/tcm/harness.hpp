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
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "tcm/anneal.hpp"
#include "tcm/bootqa.hpp"
#include "tcm/formulation.hpp"
#include "tcm/stats.hpp"
#include "tcm/suite.hpp"

namespace tcm {

enum class Strategy { Sa, Vq, Bootqa, Eidq, Exact };

std::string_view to_string(Strategy s);
Strategy parse_strategy(std::string_view name);
std::string_view to_string(ValueScaling s);
ValueScaling parse_value_scaling(std::string_view name);
std::string_view to_string(ObjectiveScaling s);
ObjectiveScaling parse_objective_scaling(std::string_view name);

struct ExperimentConfig {
    std::string dataset_path;
    Strategy strategy = Strategy::Sa;
    std::size_t repetitions = 10;
    std::size_t sub_size = 30;
    double coverage = 0.9;
    double count_weight = 0.33;
    double exec_time_weight = 0.33;
    double failure_rate_weight = 0.33;
    ValueScaling value_scaling = ValueScaling::MaxScale;
    ObjectiveScaling objective_scaling = ObjectiveScaling::ByLimitSquared;
    std::size_t num_reads = 100;
    std::size_t sweeps_per_read = 1000;
    std::size_t eidq_max_iters = 16;
    std::size_t eidq_convergence = 3;
    bool eidq_rolling = true;
    std::uint64_t seed = 0;
    unsigned threads = 0;  // execution detail, not part of the deterministic payload

    void validate() const;
    FormulationConfig formulation() const;
    AnnealParams anneal_params() const;

    friend bool operator==(const ExperimentConfig&, const ExperimentConfig&) = default;
};

struct Timing {
    double decompose_seconds = 0.0;
    double solve_seconds = 0.0;
    double total_seconds = 0.0;

    friend bool operator==(const Timing&, const Timing&) = default;
};

struct RepetitionResult {
    Strategy strategy = Strategy::Sa;
    std::size_t repetition = 0;
    std::uint64_t seed = 0;
    Selection selection;
    double objective_value = 0.0;
    std::size_t subproblems = 0;  // bootqa: subsets M; eidq: iterations; otherwise 1
    Timing timing;

    friend bool operator==(const RepetitionResult&, const RepetitionResult&) = default;
};

struct MeanStd {
    double mean = 0.0;
    double stddev = 0.0;

    friend bool operator==(const MeanStd&, const MeanStd&) = default;
};

struct ExperimentReport {
    ExperimentConfig config;
    std::size_t suite_size = 0;
    std::size_t effective_sub_size = 0;
    std::vector<std::string> warnings;
    std::vector<RepetitionResult> repetitions;
    double fv = 0.0;
    MeanStd decompose_time;
    MeanStd solve_time;
    MeanStd total_time;
    std::optional<StatsReport> comparison;

    std::vector<double> objective_values() const;

    friend bool operator==(const ExperimentReport&, const ExperimentReport&) = default;
};

/// Mean of the per-repetition objective values.
double fv(std::span<const RepetitionResult> results);

/// Properties CSV or raw log CSV (picked by header), zero-failure cases removed.
TestSuite load_dataset(const std::filesystem::path& path);

/// Runs config.strategy config.repetitions times; repetition r uses seed
/// derive_seed(config.seed, r).
ExperimentReport run_solve(const ExperimentConfig& config, const TestSuite& suite);

struct SweepRow {
    Strategy strategy = Strategy::Bootqa;
    std::size_t requested_size = 0;
    std::size_t sub_size = 0;
    std::optional<double> fv;
    std::vector<double> objective_values;
    std::vector<std::string> warnings;
    std::string error;  // nonempty when this cell failed

    friend bool operator==(const SweepRow&, const SweepRow&) = default;
};

struct SweepReport {
    ExperimentConfig config;
    std::size_t suite_size = 0;
    std::vector<std::size_t> sizes;
    std::vector<SweepRow> rows;  // bootqa rows then eidq rows, each in size order
    std::optional<StatsReport> bootqa_vs_eidq;  // over per-size FV values
    std::vector<MeanStd> measured_total_time;   // parallel to rows

    std::vector<double> fvs(Strategy s) const;

    friend bool operator==(const SweepReport&, const SweepReport&) = default;
};

/// BootQA and EIDQ at every size; a failing cell is recorded, not fatal.
SweepReport run_sweep(const ExperimentConfig& config, const TestSuite& suite, std::span<const std::size_t> sizes);

/// Mann-Whitney p, A12 and magnitude of a's objective values against b's.
StatsReport compare_reports(const ExperimentReport& a, const ExperimentReport& b);

/// "start:stop:step" (inclusive) or a comma-separated list.
std::vector<std::size_t> parse_sizes(std::string_view text);

/// Report documents: a `deterministic` section (config, selections,
/// energies, fv, stats), a `measured` section (timings) and the SHA-256 of
/// the compact dump of the deterministic section.
std::string emit_report(const ExperimentReport& report);
ExperimentReport parse_report(std::string_view text);
std::string emit_sweep(const SweepReport& report);
SweepReport parse_sweep(std::string_view text);

/// Hex SHA-256 of the deterministic section of an emitted document.
std::string deterministic_hash(std::string_view document);

std::string read_file(const std::filesystem::path& path);
void write_file(const std::filesystem::path& path, std::string_view content);

}  // namespace tcm
