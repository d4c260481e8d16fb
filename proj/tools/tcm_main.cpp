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

// Command-line driver: solve, sweep, stats, ingest.

#include <CLI11.hpp>

#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "tcm/errors.hpp"
#include "tcm/harness.hpp"
#include "tcm/ingest.hpp"

namespace {

enum ExitCode { kOk = 0, kValidation = 2, kCoverage = 3, kIo = 4 };

// Runs one stage, mapping library errors onto exit codes with the stage name.
template <typename Fn>
int stage(const char* name, Fn&& fn) {
    try {
        fn();
        return kOk;
    } catch (const tcm::CoverageError& e) {
        std::cerr << "tcm: " << name << ": coverage failure: " << e.what() << '\n';
        return kCoverage;
    } catch (const tcm::IoError& e) {
        std::cerr << "tcm: " << name << ": " << e.what() << '\n';
        return kIo;
    } catch (const tcm::ValidationError& e) {
        std::cerr << "tcm: " << name << ": " << e.what() << '\n';
        return kValidation;
    }
}

void parse_weights(const std::string& text, tcm::ExperimentConfig& config) {
    std::vector<double> w;
    std::stringstream in(text);
    std::string field;
    while (std::getline(in, field, ',')) {
        try {
            std::size_t used = 0;
            w.push_back(std::stod(field, &used));
            if (used != field.size()) throw std::invalid_argument(field);
        } catch (const std::exception&) {
            throw tcm::ValidationError("bad weight '" + field + "'");
        }
    }
    if (w.size() != 3) throw tcm::ValidationError("--weights expects w_num,w_et,w_fr");
    config.count_weight = w[0];
    config.exec_time_weight = w[1];
    config.failure_rate_weight = w[2];
}

struct ExperimentOptions {
    tcm::ExperimentConfig config;
    std::string strategy = "sa";
    std::string weights = "0.33,0.33,0.33";
    std::string scaling = "max";
    std::string objective_scaling = "limit";
    std::string out;

    void attach(CLI::App* cmd, bool with_strategy) {
        cmd->add_option("--dataset", config.dataset_path, "Properties or run-log CSV")->required();
        if (with_strategy) cmd->add_option("--strategy", strategy, "sa|vq|bootqa|eidq|exact")->capture_default_str();
        if (with_strategy) cmd->add_option("--sub-size", config.sub_size, "Sub-problem size N")->capture_default_str();
        cmd->add_option("--coverage", config.coverage, "BootQA coverage beta")->capture_default_str();
        cmd->add_option("--reads", config.num_reads, "Annealer reads per solve")->capture_default_str();
        cmd->add_option("--sweeps", config.sweeps_per_read, "Sweeps per read")->capture_default_str();
        cmd->add_option("--reps", config.repetitions, "Repetitions")->capture_default_str();
        cmd->add_option("--seed", config.seed, "Root seed")->capture_default_str();
        cmd->add_option("--weights", weights, "w_num,w_et,w_fr")->capture_default_str();
        cmd->add_option("--scaling", scaling, "Property value scaling: max|minmax|none")->capture_default_str();
        cmd->add_option("--objective-scaling", objective_scaling, "Objective normalisation: limit|none")
                ->capture_default_str();
        cmd->add_option("--max-iters", config.eidq_max_iters, "EIDQ iteration cap")->capture_default_str();
        cmd->add_option("--convergence", config.eidq_convergence, "EIDQ non-improving iterations before stop")
                ->capture_default_str();
        cmd->add_flag("!--no-rolling", config.eidq_rolling, "EIDQ: always take the top impacts, no rolling pass");
        cmd->add_option("--threads", config.threads, "Annealer worker threads (0 = all cores)")->capture_default_str();
        cmd->add_option("--out", out, "Report path")->required();
    }

    void resolve(bool with_strategy) {
        if (with_strategy) config.strategy = tcm::parse_strategy(strategy);
        parse_weights(weights, config);
        config.value_scaling = tcm::parse_value_scaling(scaling);
        config.objective_scaling = tcm::parse_objective_scaling(objective_scaling);
        config.validate();
    }
};

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Test-suite minimisation as QUBO with annealing and decomposition strategies"};
    app.require_subcommand(1);

    ExperimentOptions solve_opts;
    auto* solve = app.add_subcommand("solve", "Run one strategy over repetitions");
    solve_opts.attach(solve, true);

    ExperimentOptions sweep_opts;
    std::string sizes_text = "10:160:10";
    auto* sweep = app.add_subcommand("sweep", "Sub-problem size sweep for bootqa and eidq");
    sweep_opts.attach(sweep, false);
    sweep->add_option("--sizes", sizes_text, "start:stop:step or comma list")->capture_default_str();

    std::string report_a, report_b, stats_out;
    auto* stats = app.add_subcommand("stats", "Compare two solve reports");
    stats->add_option("--a", report_a, "First report")->required();
    stats->add_option("--b", report_b, "Second report")->required();
    stats->add_option("--out", stats_out, "Write the comparison as JSON here as well");

    std::string log_path, properties_out;
    auto* ingest = app.add_subcommand("ingest", "Aggregate a run log into the properties format");
    ingest->add_option("--log", log_path, "Run-log CSV")->required();
    ingest->add_option("--out", properties_out, "Properties CSV to write")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? kOk : kValidation;
    }

    if (*solve) {
        tcm::TestSuite suite;
        if (int rc = stage("config", [&] { solve_opts.resolve(true); })) return rc;
        if (int rc = stage("ingest", [&] { suite = tcm::load_dataset(solve_opts.config.dataset_path); })) return rc;
        tcm::ExperimentReport report;
        if (int rc = stage("solve", [&] { report = tcm::run_solve(solve_opts.config, suite); })) return rc;
        if (int rc = stage("write", [&] { tcm::write_file(solve_opts.out, tcm::emit_report(report)); })) return rc;
        std::cout << tcm::to_string(report.config.strategy) << ": fv=" << report.fv << " over "
                  << report.repetitions.size() << " repetitions, " << report.suite_size << " test cases\n";
        for (const auto& w : report.warnings) std::cout << "warning: " << w << '\n';
        return kOk;
    }

    if (*sweep) {
        tcm::TestSuite suite;
        std::vector<std::size_t> sizes;
        if (int rc = stage("config", [&] {
                sweep_opts.resolve(false);
                sizes = tcm::parse_sizes(sizes_text);
            }))
            return rc;
        if (int rc = stage("ingest", [&] { suite = tcm::load_dataset(sweep_opts.config.dataset_path); })) return rc;
        tcm::SweepReport report;
        if (int rc = stage("sweep", [&] { report = tcm::run_sweep(sweep_opts.config, suite, sizes); })) return rc;
        if (int rc = stage("write", [&] { tcm::write_file(sweep_opts.out, tcm::emit_sweep(report)); })) return rc;
        std::cout << "strategy  N  fv\n";
        for (const auto& row : report.rows) {
            std::cout << tcm::to_string(row.strategy) << "  " << row.sub_size << "  ";
            if (row.fv) {
                std::cout << *row.fv;
            } else {
                std::cout << "failed: " << row.error;
            }
            std::cout << '\n';
        }
        if (report.bootqa_vs_eidq) {
            const auto& s = *report.bootqa_vs_eidq;
            std::cout << "bootqa vs eidq: p=" << s.p_value << " A12=" << s.a12 << " (" << tcm::to_string(s.magnitude)
                      << ")\n";
        }
        return kOk;
    }

    if (*stats) {
        tcm::ExperimentReport a, b;
        if (int rc = stage("read", [&] {
                a = tcm::parse_report(tcm::read_file(report_a));
                b = tcm::parse_report(tcm::read_file(report_b));
            }))
            return rc;
        tcm::StatsReport s;
        if (int rc = stage("stats", [&] { s = tcm::compare_reports(a, b); })) return rc;
        std::cout << "p=" << s.p_value << " A12=" << s.a12 << " magnitude=" << tcm::to_string(s.magnitude)
                  << " significant=" << (s.significant ? "yes" : "no") << '\n';
        if (!stats_out.empty()) {
            a.comparison = s;
            if (int rc = stage("write", [&] { tcm::write_file(stats_out, tcm::emit_report(a)); })) return rc;
        }
        return kOk;
    }

    if (*ingest) {
        tcm::TestSuite suite;
        if (int rc = stage("ingest", [&] { suite = tcm::aggregate_log_csv(log_path); })) return rc;
        if (int rc = stage("write", [&] { tcm::write_properties_csv(suite, properties_out); })) return rc;
        std::cout << "wrote " << suite.size() << " test cases to " << properties_out << '\n';
        return kOk;
    }
    return kOk;
}
