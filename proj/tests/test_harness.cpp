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


#include <catch2/catch_amalgamated.hpp>

#include <filesystem>
#include <random>

#include <json.hpp>

#include "oracles.hpp"
#include "tcm/errors.hpp"
#include "tcm/harness.hpp"
#include "tcm/random.hpp"

using namespace tcm;
using Catch::Approx;
namespace fs = std::filesystem;

namespace {

const fs::path kData = TCM_TEST_DATA_DIR;

ExperimentConfig small_config(Strategy s) {
    ExperimentConfig c;
    c.strategy = s;
    c.repetitions = 3;
    c.num_reads = 10;
    c.sweeps_per_read = 100;
    c.sub_size = 5;
    c.seed = 17;
    return c;
}

TestSuite small_suite() {
    std::mt19937_64 rng(50);
    return oracle::random_suite(rng, 12);
}

}  // namespace

TEST_CASE("strategy and scaling names round-trip") {
    for (Strategy s : {Strategy::Sa, Strategy::Vq, Strategy::Bootqa, Strategy::Eidq, Strategy::Exact}) {
        CHECK(parse_strategy(to_string(s)) == s);
    }
    for (ValueScaling s : {ValueScaling::MaxScale, ValueScaling::MinMax, ValueScaling::None}) {
        CHECK(parse_value_scaling(to_string(s)) == s);
    }
    CHECK(parse_objective_scaling("limit") == ObjectiveScaling::ByLimitSquared);
    CHECK(parse_objective_scaling("none") == ObjectiveScaling::None);
    CHECK_THROWS_AS(parse_strategy("qaoa"), ValidationError);
    CHECK_THROWS_AS(parse_value_scaling("log"), ValidationError);
    CHECK_THROWS_AS(parse_objective_scaling("z"), ValidationError);
}

TEST_CASE("size lists") {
    CHECK(parse_sizes("10:50:10") == std::vector<std::size_t>{10, 20, 30, 40, 50});
    CHECK(parse_sizes("10:55:10") == std::vector<std::size_t>{10, 20, 30, 40, 50});
    CHECK(parse_sizes("7") == std::vector<std::size_t>{7});
    CHECK(parse_sizes("3,9,4") == std::vector<std::size_t>{3, 9, 4});
    CHECK(parse_sizes("10:160:10").size() == 16);
    CHECK_THROWS_AS(parse_sizes("10:5:1"), ValidationError);
    CHECK_THROWS_AS(parse_sizes("1:5:0"), ValidationError);
    CHECK_THROWS_AS(parse_sizes("0:5:1"), ValidationError);
    CHECK_THROWS_AS(parse_sizes("1:5"), ValidationError);
    CHECK_THROWS_AS(parse_sizes("a,b"), ValidationError);
    CHECK_THROWS_AS(parse_sizes(""), ValidationError);
}

TEST_CASE("datasets load from either format and drop passing-only cases") {
    const TestSuite props = load_dataset(kData / "running_example.csv");
    const TestSuite log = load_dataset(kData / "running_example_log.csv");
    REQUIRE(props.size() == 2);
    REQUIRE(log.size() == 2);
    for (std::size_t i = 0; i < 2; ++i) {
        CHECK(log.cases[i].id == props.cases[i].id);
        CHECK(log.cases[i].exec_time == Approx(props.cases[i].exec_time));
        CHECK(log.cases[i].failure_rate == Approx(props.cases[i].failure_rate));
    }
    CHECK_THROWS_AS(load_dataset(kData / "missing.csv"), IoError);
}

TEST_CASE("fv is the mean objective value") {
    std::vector<RepetitionResult> rs(2);
    rs[0].objective_value = 1.0;
    rs[1].objective_value = 3.0;
    CHECK(fv(rs) == 2.0);
    rs.assign(10, rs[0]);
    CHECK(fv(rs) == 1.0);
    CHECK_THROWS_AS(fv(std::vector<RepetitionResult>{}), ValidationError);
}

TEST_CASE("exact strategy solves the running example") {
    ExperimentConfig c = small_config(Strategy::Exact);
    c.objective_scaling = ObjectiveScaling::None;
    const ExperimentReport r = run_solve(c, load_dataset(kData / "running_example.csv"));
    REQUIRE(r.repetitions.size() == 3);
    for (const auto& rep : r.repetitions) {
        CHECK(rep.selection.selected_ids == std::vector<std::string>{"t0"});
        CHECK(rep.objective_value == Approx(0.4653));
    }
    CHECK(r.fv == Approx(0.4653));
}

TEST_CASE("every strategy yields consistent repetitions") {
    const TestSuite suite = small_suite();
    const ExperimentConfig base = small_config(Strategy::Sa);
    const Qubo whole = build_overall_qubo(suite, base.formulation());
    const double optimum = exact_solve(whole).energy;
    for (Strategy s : {Strategy::Sa, Strategy::Vq, Strategy::Bootqa, Strategy::Eidq, Strategy::Exact}) {
        ExperimentConfig c = base;
        c.strategy = s;
        const ExperimentReport r = run_solve(c, suite);
        REQUIRE(r.repetitions.size() == c.repetitions);
        CHECK(r.suite_size == 12);
        for (std::size_t k = 0; k < r.repetitions.size(); ++k) {
            const auto& rep = r.repetitions[k];
            CHECK(rep.repetition == k);
            CHECK(rep.seed == derive_seed(c.seed, k));
            CHECK(rep.objective_value == Approx(evaluate(whole, suite.bits_for(rep.selection.selected_ids))).margin(1e-12));
            CHECK(rep.objective_value >= optimum - 1e-12);
            CHECK(std::is_sorted(rep.selection.selected_ids.begin(), rep.selection.selected_ids.end()));
        }
        CHECK(r.fv == Approx(mean(r.objective_values())));
    }
}

TEST_CASE("SA repetition uses its repetition seed") {
    const TestSuite suite = small_suite();
    const ExperimentConfig c = small_config(Strategy::Sa);
    const ExperimentReport r = run_solve(c, suite);
    AnnealParams p = c.anneal_params();
    p.seed = derive_seed(c.seed, 1);
    const auto best = best_of(anneal(build_overall_qubo(suite, c.formulation()), p));
    CHECK(r.repetitions[1].selection.selected_ids == suite.ids_for(best.assignment));
}

TEST_CASE("oversized sub-problems are clamped with a warning") {
    ExperimentConfig c = small_config(Strategy::Bootqa);
    c.sub_size = 40;
    const ExperimentReport r = run_solve(c, small_suite());
    CHECK(r.effective_sub_size == 12);
    REQUIRE(r.warnings.size() == 1);
    for (const auto& rep : r.repetitions) CHECK(rep.subproblems == 1);

    c.strategy = Strategy::Sa;
    CHECK(run_solve(c, small_suite()).warnings.empty());
}

TEST_CASE("harness validation") {
    ExperimentConfig c = small_config(Strategy::Sa);
    c.repetitions = 0;
    CHECK_THROWS_AS(run_solve(c, small_suite()), ValidationError);
    c = small_config(Strategy::Sa);
    c.coverage = 0.0;
    CHECK_THROWS_AS(run_solve(c, small_suite()), ValidationError);
    c = small_config(Strategy::Sa);
    c.count_weight = -0.1;
    CHECK_THROWS_AS(run_solve(c, small_suite()), ValidationError);
    c = small_config(Strategy::Sa);
    c.sub_size = 0;
    CHECK_THROWS_AS(run_solve(c, small_suite()), ValidationError);
    CHECK_THROWS_AS(run_solve(small_config(Strategy::Sa), TestSuite{}), ValidationError);
    c = small_config(Strategy::Exact);
    std::mt19937_64 rng(1);
    CHECK_THROWS_AS(run_solve(c, oracle::random_suite(rng, 30)), CapacityError);
}

TEST_CASE("reports round-trip and hash their deterministic section") {
    ExperimentReport r = run_solve(small_config(Strategy::Eidq), small_suite());
    const ExperimentReport other = run_solve(small_config(Strategy::Sa), small_suite());
    r.comparison = compare_reports(r, other);
    const std::string doc = emit_report(r);
    const ExperimentReport back = parse_report(doc);
    CHECK(back == r);
    CHECK(emit_report(back) == doc);

    const auto j = nlohmann::json::parse(doc);
    CHECK(j.contains("deterministic"));
    CHECK(j.contains("measured"));
    CHECK(j["deterministic_sha256"].get<std::string>() == deterministic_hash(doc));
    CHECK(deterministic_hash(doc).size() == 64);

    // Timings live outside the hashed section.
    ExperimentReport slower = r;
    slower.total_time.mean += 1.0;
    for (auto& rep : slower.repetitions) rep.timing.total_seconds += 1.0;
    CHECK(deterministic_hash(emit_report(slower)) == deterministic_hash(doc));

    ExperimentReport changed = r;
    changed.config.seed += 1;
    CHECK(deterministic_hash(emit_report(changed)) != deterministic_hash(doc));

    CHECK_THROWS_AS(parse_report("{}"), ValidationError);
    CHECK_THROWS_AS(parse_report("not json"), ValidationError);
    CHECK_THROWS_AS(deterministic_hash("{\"x\": 1}"), ValidationError);
}

TEST_CASE("runs are repeatable and thread-count independent") {
    ExperimentConfig c = small_config(Strategy::Bootqa);
    c.threads = 1;
    const std::string one = emit_report(run_solve(c, small_suite()));
    c.threads = 8;
    const std::string eight = emit_report(run_solve(c, small_suite()));
    CHECK(deterministic_hash(one) == deterministic_hash(eight));
}

TEST_CASE("comparisons need repeated runs") {
    ExperimentConfig c = small_config(Strategy::Sa);
    c.repetitions = 1;
    const ExperimentReport r = run_solve(c, small_suite());
    CHECK_THROWS_AS(compare_reports(r, r), ValidationError);
}

TEST_CASE("sweeps cover both decomposers and record failing cells") {
    ExperimentConfig c = small_config(Strategy::Bootqa);
    c.repetitions = 2;
    const std::vector<std::size_t> sizes{3, 6, 20};
    const SweepReport s = run_sweep(c, small_suite(), sizes);
    REQUIRE(s.rows.size() == 6);
    for (std::size_t k = 0; k < 6; ++k) {
        CHECK(s.rows[k].strategy == (k < 3 ? Strategy::Bootqa : Strategy::Eidq));
        CHECK(s.rows[k].requested_size == sizes[k % 3]);
        CHECK(s.rows[k].error.empty());
        CHECK(s.rows[k].fv.has_value());
    }
    CHECK(s.rows[2].sub_size == 12);
    CHECK(s.rows[2].warnings.size() == 1);
    REQUIRE(s.bootqa_vs_eidq.has_value());
    CHECK(*s.bootqa_vs_eidq == compare(s.fvs(Strategy::Bootqa), s.fvs(Strategy::Eidq)));

    const std::string doc = emit_sweep(s);
    CHECK(parse_sweep(doc) == s);
    CHECK(deterministic_hash(doc) == nlohmann::json::parse(doc)["deterministic_sha256"].get<std::string>());

    ExperimentConfig bad = c;
    bad.eidq_max_iters = 0;
    const SweepReport broken = run_sweep(bad, small_suite(), sizes);
    for (const auto& row : broken.rows) {
        CHECK_FALSE(row.error.empty());
        CHECK_FALSE(row.fv.has_value());
    }
    CHECK_FALSE(broken.bootqa_vs_eidq.has_value());
    CHECK_THROWS_AS(run_sweep(c, small_suite(), std::vector<std::size_t>{}), ValidationError);
}

TEST_CASE("file helpers report I/O failures") {
    const fs::path dir = fs::temp_directory_path() / "tcm_harness_io";
    fs::create_directories(dir);
    write_file(dir / "a.txt", "hello");
    CHECK(read_file(dir / "a.txt") == "hello");
    CHECK_THROWS_AS(read_file(dir / "nope.txt"), IoError);
    CHECK_THROWS_AS(write_file(dir / "no" / "such" / "b.txt", "x"), IoError);
    fs::remove_all(dir);
}
