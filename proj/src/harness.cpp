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

#include "tcm/harness.hpp"

#include <openssl/evp.h>

#include <chrono>
#include <charconv>
#include <fstream>
#include <iomanip>
#include <sstream>

#include <json.hpp>

#include "tcm/eidq.hpp"
#include "tcm/errors.hpp"
#include "tcm/ingest.hpp"
#include "tcm/random.hpp"

namespace tcm {

using nlohmann::json;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
    return std::chrono::duration<double>(Clock::now() - start).count();
}

MeanStd summarize(const std::vector<double>& values) {
    if (values.empty()) return {};
    return {mean(values), sample_stddev(values)};
}

constexpr const char* kSeedTree =
        "root -> repetition r: derive_seed(root, r), shared by every strategy; "
        "sa: read k derive_seed(rep, k); "
        "vq: derive_seed(rep, 0) then read k; "
        "bootqa: plan derive_seed(rep, 0xB0075EED), subset k derive_seed(rep, k) then read k; "
        "eidq: iteration i derive_seed(rep, i) then read k";

}  // namespace

// ---------------------------------------------------------------- names

std::string_view to_string(Strategy s) {
    switch (s) {
        case Strategy::Sa: return "sa";
        case Strategy::Vq: return "vq";
        case Strategy::Bootqa: return "bootqa";
        case Strategy::Eidq: return "eidq";
        case Strategy::Exact: return "exact";
    }
    return "unknown";
}

Strategy parse_strategy(std::string_view name) {
    for (Strategy s : {Strategy::Sa, Strategy::Vq, Strategy::Bootqa, Strategy::Eidq, Strategy::Exact}) {
        if (to_string(s) == name) return s;
    }
    throw ValidationError("unknown strategy '" + std::string(name) + "'");
}

std::string_view to_string(ValueScaling s) {
    switch (s) {
        case ValueScaling::MaxScale: return "max";
        case ValueScaling::MinMax: return "minmax";
        case ValueScaling::None: return "none";
    }
    return "unknown";
}

ValueScaling parse_value_scaling(std::string_view name) {
    for (ValueScaling s : {ValueScaling::MaxScale, ValueScaling::MinMax, ValueScaling::None}) {
        if (to_string(s) == name) return s;
    }
    throw ValidationError("unknown value scaling '" + std::string(name) + "'");
}

std::string_view to_string(ObjectiveScaling s) {
    return s == ObjectiveScaling::None ? "none" : "limit";
}

ObjectiveScaling parse_objective_scaling(std::string_view name) {
    if (name == "none") return ObjectiveScaling::None;
    if (name == "limit") return ObjectiveScaling::ByLimitSquared;
    throw ValidationError("unknown objective scaling '" + std::string(name) + "'");
}

Magnitude parse_magnitude(std::string_view name) {
    for (Magnitude m : {Magnitude::Negligible, Magnitude::Small, Magnitude::Medium, Magnitude::Large}) {
        if (to_string(m) == name) return m;
    }
    throw ValidationError("unknown magnitude '" + std::string(name) + "'");
}

// ---------------------------------------------------------------- config

void ExperimentConfig::validate() const {
    if (repetitions < 1) throw ValidationError("repetitions must be >= 1");
    if (sub_size < 1) throw ValidationError("sub-size must be >= 1");
    if (!(coverage > 0.0 && coverage <= 1.0)) throw ValidationError("coverage must lie in (0, 1]");
    formulation().validate();
    anneal_params().validate();
    EidqParams{sub_size, eidq_max_iters, eidq_convergence, 0}.validate();
}

FormulationConfig ExperimentConfig::formulation() const {
    FormulationConfig f = FormulationConfig::test_minimization(count_weight, exec_time_weight, failure_rate_weight);
    f.value_scaling = value_scaling;
    f.objective_scaling = objective_scaling;
    return f;
}

AnnealParams ExperimentConfig::anneal_params() const {
    AnnealParams p;
    p.num_reads = num_reads;
    p.sweeps_per_read = sweeps_per_read;
    p.threads = threads;
    return p;
}

std::vector<double> ExperimentReport::objective_values() const {
    std::vector<double> out;
    out.reserve(repetitions.size());
    for (const auto& r : repetitions) out.push_back(r.objective_value);
    return out;
}

std::vector<double> SweepReport::fvs(Strategy s) const {
    std::vector<double> out;
    for (const auto& row : rows) {
        if (row.strategy == s && row.fv) out.push_back(*row.fv);
    }
    return out;
}

double fv(std::span<const RepetitionResult> results) {
    if (results.empty()) throw ValidationError("fv of an empty result list");
    double sum = 0.0;
    for (const auto& r : results) sum += r.objective_value;
    return sum / static_cast<double>(results.size());
}

// ---------------------------------------------------------------- runs

TestSuite load_dataset(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open '" + path.string() + "' for reading");
    std::string header;
    std::getline(in, header);
    if (!header.empty() && header.back() == '\r') header.pop_back();
    in.close();
    TestSuite suite = header == kLogHeader ? aggregate_log_csv(path) : load_properties_csv(path);
    return filter_zero_failure(suite);
}

namespace {

RepetitionResult run_repetition(const ExperimentConfig& config, const TestSuite& suite, const Qubo& whole,
                                std::size_t sub_size, std::size_t rep) {
    RepetitionResult result;
    result.strategy = config.strategy;
    result.repetition = rep;
    result.seed = derive_seed(config.seed, rep);
    result.subproblems = 1;

    const FormulationConfig formulation = config.formulation();
    AnnealParams params = config.anneal_params();
    const auto start = Clock::now();
    Sample<double> best;

    switch (config.strategy) {
        case Strategy::Sa:
        case Strategy::Vq: {
            params.seed = config.strategy == Strategy::Sa ? result.seed : derive_seed(result.seed, 0);
            best = best_of(anneal(whole, params));
            result.timing.solve_seconds = seconds_since(start);
            break;
        }
        case Strategy::Exact: {
            best = exact_solve(whole);
            result.timing.solve_seconds = seconds_since(start);
            break;
        }
        case Strategy::Bootqa: {
            BootqaTrace trace;
            result.selection = run_bootqa(suite, sub_size, config.coverage, formulation, params, result.seed, &trace);
            result.objective_value = result.selection.objective_value;
            result.subproblems = trace.plan.num_subsets();
            result.timing.decompose_seconds = trace.decompose_seconds;
            result.timing.solve_seconds = trace.solve_seconds;
            result.timing.total_seconds = seconds_since(start);
            return result;
        }
        case Strategy::Eidq: {
            EidqTrace trace;
            const EidqParams eidq{sub_size, config.eidq_max_iters, config.eidq_convergence, result.seed,
                                  config.eidq_rolling};
            best = eidq_solve(whole, eidq, params, &trace);
            result.subproblems = trace.iterations;
            result.timing.decompose_seconds = trace.decompose_seconds;
            result.timing.solve_seconds = trace.solve_seconds;
            break;
        }
    }
    result.selection = {suite.ids_for(best.assignment), best.energy};
    result.objective_value = best.energy;
    result.timing.total_seconds = seconds_since(start);
    return result;
}

}  // namespace

ExperimentReport run_solve(const ExperimentConfig& config, const TestSuite& suite) {
    config.validate();
    if (suite.empty()) throw ValidationError("dataset has no test cases with a nonzero failure rate");

    ExperimentReport report;
    report.config = config;
    report.config.threads = 0;
    report.suite_size = suite.size();
    report.effective_sub_size = config.sub_size;
    const bool decomposes = config.strategy == Strategy::Bootqa || config.strategy == Strategy::Eidq;
    if (decomposes && config.sub_size > suite.size()) {
        report.effective_sub_size = suite.size();
        report.warnings.push_back("sub-size " + std::to_string(config.sub_size) + " exceeds suite size " +
                                  std::to_string(suite.size()) + "; clamped");
    }

    const Qubo whole = build_overall_qubo(suite, config.formulation());
    for (std::size_t rep = 0; rep < config.repetitions; ++rep) {
        report.repetitions.push_back(run_repetition(config, suite, whole, report.effective_sub_size, rep));
    }

    report.fv = fv(report.repetitions);
    std::vector<double> decompose, solve, total;
    for (const auto& r : report.repetitions) {
        decompose.push_back(r.timing.decompose_seconds);
        solve.push_back(r.timing.solve_seconds);
        total.push_back(r.timing.total_seconds);
    }
    report.decompose_time = summarize(decompose);
    report.solve_time = summarize(solve);
    report.total_time = summarize(total);
    return report;
}

SweepReport run_sweep(const ExperimentConfig& config, const TestSuite& suite, std::span<const std::size_t> sizes) {
    if (sizes.empty()) throw ValidationError("sweep needs at least one size");
    for (const std::size_t n : sizes) {
        if (n < 1) throw ValidationError("sweep sizes must be >= 1");
    }
    SweepReport sweep;
    sweep.config = config;
    sweep.config.threads = 0;
    sweep.suite_size = suite.size();
    sweep.sizes.assign(sizes.begin(), sizes.end());

    for (const Strategy strategy : {Strategy::Bootqa, Strategy::Eidq}) {
        for (const std::size_t n : sizes) {
            SweepRow row;
            row.strategy = strategy;
            row.requested_size = n;
            row.sub_size = n;
            MeanStd timing;
            try {
                ExperimentConfig cell = config;
                cell.strategy = strategy;
                cell.sub_size = n;
                const ExperimentReport report = run_solve(cell, suite);
                row.sub_size = report.effective_sub_size;
                row.fv = report.fv;
                row.objective_values = report.objective_values();
                row.warnings = report.warnings;
                timing = report.total_time;
            } catch (const std::exception& e) {
                row.error = e.what();
            }
            sweep.rows.push_back(std::move(row));
            sweep.measured_total_time.push_back(timing);
        }
    }
    const auto a = sweep.fvs(Strategy::Bootqa);
    const auto b = sweep.fvs(Strategy::Eidq);
    if (!a.empty() && !b.empty()) sweep.bootqa_vs_eidq = compare(a, b);
    return sweep;
}

StatsReport compare_reports(const ExperimentReport& a, const ExperimentReport& b) {
    if (a.repetitions.size() < 2 || b.repetitions.size() < 2) {
        throw ValidationError("each report needs at least 2 repetitions");
    }
    return compare(a.objective_values(), b.objective_values());
}

std::vector<std::size_t> parse_sizes(std::string_view text) {
    auto number = [&](std::string_view field) {
        std::size_t v = 0;
        const auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), v);
        if (ec != std::errc() || ptr != field.data() + field.size() || field.empty()) {
            throw ValidationError("bad size '" + std::string(field) + "' in '" + std::string(text) + "'");
        }
        return v;
    };
    std::vector<std::size_t> sizes;
    if (text.find(':') != std::string_view::npos) {
        const auto c1 = text.find(':');
        const auto c2 = text.find(':', c1 + 1);
        if (c2 == std::string_view::npos) throw ValidationError("range must be start:stop:step");
        const std::size_t start = number(text.substr(0, c1));
        const std::size_t stop = number(text.substr(c1 + 1, c2 - c1 - 1));
        const std::size_t step = number(text.substr(c2 + 1));
        if (step == 0 || start == 0 || stop < start) throw ValidationError("invalid size range '" + std::string(text) + "'");
        for (std::size_t n = start; n <= stop; n += step) sizes.push_back(n);
    } else {
        std::size_t begin = 0;
        for (;;) {
            const auto comma = text.find(',', begin);
            sizes.push_back(number(text.substr(begin, comma - begin)));
            if (comma == std::string_view::npos) break;
            begin = comma + 1;
        }
    }
    for (const std::size_t n : sizes) {
        if (n < 1) throw ValidationError("sweep sizes must be >= 1");
    }
    return sizes;
}

// ---------------------------------------------------------------- json

namespace {

json config_json(const ExperimentConfig& c) {
    return {
            {"dataset", c.dataset_path},
            {"strategy", to_string(c.strategy)},
            {"repetitions", c.repetitions},
            {"sub_size", c.sub_size},
            {"coverage", c.coverage},
            {"weights", {{"num", c.count_weight}, {"exec_time", c.exec_time_weight}, {"failure_rate", c.failure_rate_weight}}},
            {"value_scaling", to_string(c.value_scaling)},
            {"objective_scaling", to_string(c.objective_scaling)},
            {"anneal", {{"reads", c.num_reads}, {"sweeps", c.sweeps_per_read}}},
            {"eidq", {{"max_iters", c.eidq_max_iters}, {"convergence", c.eidq_convergence}, {"rolling", c.eidq_rolling}}},
            {"seed", c.seed},
            {"seed_tree", kSeedTree},
    };
}

ExperimentConfig config_from(const json& j) {
    ExperimentConfig c;
    c.dataset_path = j.at("dataset").get<std::string>();
    c.strategy = parse_strategy(j.at("strategy").get<std::string>());
    c.repetitions = j.at("repetitions").get<std::size_t>();
    c.sub_size = j.at("sub_size").get<std::size_t>();
    c.coverage = j.at("coverage").get<double>();
    c.count_weight = j.at("weights").at("num").get<double>();
    c.exec_time_weight = j.at("weights").at("exec_time").get<double>();
    c.failure_rate_weight = j.at("weights").at("failure_rate").get<double>();
    c.value_scaling = parse_value_scaling(j.at("value_scaling").get<std::string>());
    c.objective_scaling = parse_objective_scaling(j.at("objective_scaling").get<std::string>());
    c.num_reads = j.at("anneal").at("reads").get<std::size_t>();
    c.sweeps_per_read = j.at("anneal").at("sweeps").get<std::size_t>();
    c.eidq_max_iters = j.at("eidq").at("max_iters").get<std::size_t>();
    c.eidq_convergence = j.at("eidq").at("convergence").get<std::size_t>();
    c.eidq_rolling = j.at("eidq").at("rolling").get<bool>();
    c.seed = j.at("seed").get<std::uint64_t>();
    return c;
}

json stats_json(const StatsReport& s) {
    return {{"p_value", s.p_value}, {"a12", s.a12}, {"magnitude", to_string(s.magnitude)}, {"significant", s.significant}};
}

StatsReport stats_from(const json& j) {
    return {j.at("p_value").get<double>(), j.at("a12").get<double>(),
            parse_magnitude(j.at("magnitude").get<std::string>()), j.at("significant").get<bool>()};
}

json mean_std_json(const MeanStd& m) { return {{"mean", m.mean}, {"stddev", m.stddev}}; }

MeanStd mean_std_from(const json& j) { return {j.at("mean").get<double>(), j.at("stddev").get<double>()}; }

json timing_json(const Timing& t) {
    return {{"decompose_seconds", t.decompose_seconds}, {"solve_seconds", t.solve_seconds}, {"total_seconds", t.total_seconds}};
}

Timing timing_from(const json& j) {
    return {j.at("decompose_seconds").get<double>(), j.at("solve_seconds").get<double>(),
            j.at("total_seconds").get<double>()};
}

std::string sha256_hex(std::string_view data) {
    unsigned char digest[EVP_MAX_MD_SIZE];
    unsigned int length = 0;
    if (EVP_Digest(data.data(), data.size(), digest, &length, EVP_sha256(), nullptr) != 1) {
        throw std::runtime_error("SHA-256 failed");
    }
    std::ostringstream hex;
    for (unsigned int i = 0; i < length; ++i) hex << std::hex << std::setw(2) << std::setfill('0') << int(digest[i]);
    return hex.str();
}

std::string finish_document(json deterministic, json measured) {
    json doc;
    doc["deterministic_sha256"] = sha256_hex(deterministic.dump());
    doc["deterministic"] = std::move(deterministic);
    doc["measured"] = std::move(measured);
    return doc.dump(2) + "\n";
}

json parse_json(std::string_view text) {
    try {
        return json::parse(text);
    } catch (const json::exception& e) {
        throw ValidationError(std::string("malformed report: ") + e.what());
    }
}

}  // namespace

std::string emit_report(const ExperimentReport& r) {
    json reps = json::array();
    json rep_timing = json::array();
    for (const auto& rep : r.repetitions) {
        reps.push_back({{"repetition", rep.repetition},
                        {"strategy", to_string(rep.strategy)},
                        {"seed", rep.seed},
                        {"selected_ids", rep.selection.selected_ids},
                        {"selection_objective", rep.selection.objective_value},
                        {"objective_value", rep.objective_value},
                        {"subproblems", rep.subproblems}});
        rep_timing.push_back(timing_json(rep.timing));
    }
    json det = {{"config", config_json(r.config)},
                {"suite_size", r.suite_size},
                {"effective_sub_size", r.effective_sub_size},
                {"warnings", r.warnings},
                {"repetitions", std::move(reps)},
                {"fv", r.fv}};
    if (r.comparison) det["stats"] = stats_json(*r.comparison);
    json measured = {{"repetitions", std::move(rep_timing)},
                     {"decompose_seconds", mean_std_json(r.decompose_time)},
                     {"solve_seconds", mean_std_json(r.solve_time)},
                     {"total_seconds", mean_std_json(r.total_time)}};
    return finish_document(std::move(det), std::move(measured));
}

ExperimentReport parse_report(std::string_view text) {
    const json doc = parse_json(text);
    try {
        const json& det = doc.at("deterministic");
        const json& measured = doc.at("measured");
        ExperimentReport r;
        r.config = config_from(det.at("config"));
        r.suite_size = det.at("suite_size").get<std::size_t>();
        r.effective_sub_size = det.at("effective_sub_size").get<std::size_t>();
        r.warnings = det.at("warnings").get<std::vector<std::string>>();
        const json& timings = measured.at("repetitions");
        const json& reps = det.at("repetitions");
        if (timings.size() != reps.size()) throw ValidationError("timing and repetition counts differ");
        for (std::size_t i = 0; i < reps.size(); ++i) {
            const json& j = reps[i];
            RepetitionResult rep;
            rep.repetition = j.at("repetition").get<std::size_t>();
            rep.strategy = parse_strategy(j.at("strategy").get<std::string>());
            rep.seed = j.at("seed").get<std::uint64_t>();
            rep.selection.selected_ids = j.at("selected_ids").get<std::vector<std::string>>();
            rep.selection.objective_value = j.at("selection_objective").get<double>();
            rep.objective_value = j.at("objective_value").get<double>();
            rep.subproblems = j.at("subproblems").get<std::size_t>();
            rep.timing = timing_from(timings[i]);
            r.repetitions.push_back(std::move(rep));
        }
        r.fv = det.at("fv").get<double>();
        if (det.contains("stats")) r.comparison = stats_from(det.at("stats"));
        r.decompose_time = mean_std_from(measured.at("decompose_seconds"));
        r.solve_time = mean_std_from(measured.at("solve_seconds"));
        r.total_time = mean_std_from(measured.at("total_seconds"));
        return r;
    } catch (const json::exception& e) {
        throw ValidationError(std::string("malformed report: ") + e.what());
    }
}

std::string emit_sweep(const SweepReport& s) {
    json rows = json::array();
    json timing = json::array();
    for (std::size_t i = 0; i < s.rows.size(); ++i) {
        const SweepRow& row = s.rows[i];
        json j = {{"strategy", to_string(row.strategy)},
                  {"requested_size", row.requested_size},
                  {"sub_size", row.sub_size},
                  {"fv", row.fv ? json(*row.fv) : json(nullptr)},
                  {"objective_values", row.objective_values},
                  {"warnings", row.warnings},
                  {"error", row.error}};
        rows.push_back(std::move(j));
        timing.push_back(mean_std_json(s.measured_total_time.at(i)));
    }
    json det = {{"config", config_json(s.config)}, {"suite_size", s.suite_size}, {"sizes", s.sizes}, {"rows", std::move(rows)}};
    if (s.bootqa_vs_eidq) det["stats_bootqa_vs_eidq"] = stats_json(*s.bootqa_vs_eidq);
    return finish_document(std::move(det), {{"total_seconds", std::move(timing)}});
}

SweepReport parse_sweep(std::string_view text) {
    const json doc = parse_json(text);
    try {
        const json& det = doc.at("deterministic");
        SweepReport s;
        s.config = config_from(det.at("config"));
        s.suite_size = det.at("suite_size").get<std::size_t>();
        s.sizes = det.at("sizes").get<std::vector<std::size_t>>();
        for (const json& j : det.at("rows")) {
            SweepRow row;
            row.strategy = parse_strategy(j.at("strategy").get<std::string>());
            row.requested_size = j.at("requested_size").get<std::size_t>();
            row.sub_size = j.at("sub_size").get<std::size_t>();
            if (!j.at("fv").is_null()) row.fv = j.at("fv").get<double>();
            row.objective_values = j.at("objective_values").get<std::vector<double>>();
            row.warnings = j.at("warnings").get<std::vector<std::string>>();
            row.error = j.at("error").get<std::string>();
            s.rows.push_back(std::move(row));
        }
        if (det.contains("stats_bootqa_vs_eidq")) s.bootqa_vs_eidq = stats_from(det.at("stats_bootqa_vs_eidq"));
        for (const json& j : doc.at("measured").at("total_seconds")) s.measured_total_time.push_back(mean_std_from(j));
        return s;
    } catch (const json::exception& e) {
        throw ValidationError(std::string("malformed sweep report: ") + e.what());
    }
}

std::string deterministic_hash(std::string_view document) {
    const json doc = parse_json(document);
    if (!doc.contains("deterministic")) throw ValidationError("document has no deterministic section");
    return sha256_hex(doc.at("deterministic").dump());
}

std::string read_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open '" + path.string() + "' for reading");
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return buffer.str();
}

void write_file(const std::filesystem::path& path, std::string_view content) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("cannot open '" + path.string() + "' for writing");
    out.write(content.data(), static_cast<std::streamsize>(content.size()));
    if (!out) throw IoError("failed writing '" + path.string() + "'");
}

}  // namespace tcm
