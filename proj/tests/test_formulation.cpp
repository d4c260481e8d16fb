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

#include <random>

#include "oracles.hpp"
#include "tcm/errors.hpp"
#include "tcm/formulation.hpp"

using namespace tcm;
using Catch::Approx;

namespace {

TestSuite running_example() { return TestSuite{{{"t0", 10.0, 0.8}, {"t1", 20.0, 0.4}}}; }

}  // namespace

TEST_CASE("running example coefficients") {
    const Qubo m = build_overall_qubo(running_example(), FormulationConfig::test_minimization());
    CHECK(m.linear(0) == Approx(-0.0099).margin(1e-9));
    CHECK(m.linear(1) == Approx(0.396).margin(1e-9));
    // 2 w_num + 2 w_et (0.5)(1.0) + 2 w_fr (0.8)(0.4)
    CHECK(m.quadratic(0, 1) == Approx(1.2012).margin(1e-9));
    // w_fr (1.2)^2
    CHECK(m.offset() == Approx(0.4752).margin(1e-9));

    const Sample<double> best = exact_solve(m);
    BitVector want(2);
    want << 1, 0;
    CHECK(best.assignment == want);
    CHECK(best.energy == Approx(0.4653).margin(1e-9));
}

TEST_CASE("property objective expands the squared distance") {
    const std::vector<double> v{0.2, 0.5, 0.9};
    const auto terms = build_property_objective(v, 1.3);
    const Qubo m = terms.to_model();
    for (std::uint64_t mask = 0; mask < 8; ++mask) {
        const BitVector t = oracle::bits_of(mask, 3);
        double picked = 0.0;
        for (int i = 0; i < 3; ++i) picked += v[i] * t(i);
        REQUIRE(evaluate(m, t) == Approx((picked - 1.3) * (picked - 1.3)).margin(1e-12));
    }
}

TEST_CASE("count objective is the squared selection size") {
    const Qubo m = build_count_objective(4).to_model();
    for (std::uint64_t mask = 0; mask < 16; ++mask) {
        const double k = std::popcount(mask);
        REQUIRE(evaluate(m, oracle::bits_of(mask, 4)) == Approx(k * k));
    }
    CHECK_THROWS_AS(build_count_objective(0), ValidationError);
}

TEST_CASE("overall model equals the direct objective on random suites") {
    std::mt19937_64 rng(3);
    for (const auto vs : {ValueScaling::MaxScale, ValueScaling::MinMax, ValueScaling::None}) {
        for (const auto os : {ObjectiveScaling::None, ObjectiveScaling::ByLimitSquared}) {
            for (int trial = 0; trial < 10; ++trial) {
                const std::size_t s = 1 + rng() % 8;
                const TestSuite suite = oracle::random_suite(rng, s);
                FormulationConfig config = FormulationConfig::test_minimization(0.2, 0.5, 0.3);
                config.value_scaling = vs;
                config.objective_scaling = os;
                const Qubo m = build_overall_qubo(suite, config);
                for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << s); ++mask) {
                    const BitVector t = oracle::bits_of(mask, static_cast<Index>(s));
                    const double want = oracle::direct_objective(suite, config, t);
                    REQUIRE(evaluate(m, t) == Approx(want).epsilon(1e-12).margin(1e-9));
                }
            }
        }
    }
}

TEST_CASE("explicit limits are honoured") {
    FormulationConfig config;
    config.count_weight = 0.0;
    config.properties = {{"failure_rate", Direction::Maximize, 1.0, LimitRule::explicit_value(0.5)}};
    const Qubo m = build_overall_qubo(running_example(), config);
    CHECK(m.offset() == Approx(0.25));
    BitVector t(2);
    t << 0, 1;
    CHECK(evaluate(m, t) == Approx(0.01));
}

TEST_CASE("values already in the unit interval are not rescaled") {
    FormulationConfig config;
    config.count_weight = 0.0;
    config.properties = {{"failure_rate", Direction::Maximize, 1.0, LimitRule::sum_of_values()}};
    const Qubo m = build_overall_qubo(running_example(), config);
    CHECK(m.offset() == Approx(1.44));
}

TEST_CASE("scale_values modes") {
    const std::vector<double> raw{2.0, 4.0, 8.0};
    CHECK(scale_values(raw, ValueScaling::MaxScale) == std::vector<double>{0.25, 0.5, 1.0});
    const auto mm = scale_values(raw, ValueScaling::MinMax);
    CHECK(mm[0] == 0.0);
    CHECK(mm[1] == Approx(1.0 / 3.0));
    CHECK(mm[2] == 1.0);
    CHECK(scale_values(raw, ValueScaling::None) == raw);
    const std::vector<double> flat{3.0, 3.0};
    CHECK(scale_values(flat, ValueScaling::MinMax) == std::vector<double>{0.0, 0.0});
    const std::vector<double> zeros{0.0, 0.0};
    CHECK(scale_values(zeros, ValueScaling::MaxScale) == zeros);
    const std::vector<double> bad{1.0, -1.0};
    CHECK_THROWS_AS(scale_values(bad, ValueScaling::MaxScale), ValidationError);
    CHECK_THROWS_AS(scale_values(std::vector<double>{}, ValueScaling::MaxScale), ValidationError);
}

TEST_CASE("theoretical limits") {
    const std::vector<double> v{0.1, 0.2, 0.3};
    PropertySpec spec{"failure_rate", Direction::Maximize, 1.0, LimitRule::sum_of_values()};
    CHECK(theoretical_limit(v, spec) == Approx(0.6));
    spec.limit = LimitRule::zero();
    CHECK(theoretical_limit(v, spec) == 0.0);
    spec.limit = LimitRule::explicit_value(7.0);
    CHECK(theoretical_limit(v, spec) == 7.0);
}

TEST_CASE("formulation input validation") {
    FormulationConfig config = FormulationConfig::test_minimization();
    CHECK_THROWS_AS(build_overall_qubo(TestSuite{}, config), ValidationError);

    TestSuite dup{{{"a", 1.0, 0.5}, {"a", 2.0, 0.5}}};
    CHECK_THROWS_AS(build_overall_qubo(dup, config), ValidationError);

    TestSuite bad_rate{{{"a", 1.0, 1.5}}};
    CHECK_THROWS_AS(build_overall_qubo(bad_rate, config), ValidationError);

    config.count_weight = -1.0;
    CHECK_THROWS_AS(build_overall_qubo(running_example(), config), ValidationError);

    FormulationConfig zero = FormulationConfig::test_minimization(0.0, 0.0, 0.0);
    CHECK_THROWS_AS(build_overall_qubo(running_example(), zero), ValidationError);

    FormulationConfig unknown;
    unknown.properties = {{"coverage", Direction::Maximize, 1.0, LimitRule::sum_of_values()}};
    CHECK_THROWS_AS(build_overall_qubo(running_example(), unknown), ValidationError);
}

TEST_CASE("limit-squared scaling puts every term in the unit interval") {
    std::mt19937_64 rng(5);
    const TestSuite suite = oracle::random_suite(rng, 10);
    FormulationConfig config = FormulationConfig::test_minimization(1.0, 1.0, 1.0);
    config.objective_scaling = ObjectiveScaling::ByLimitSquared;
    const Qubo m = build_overall_qubo(suite, config);
    CHECK(evaluate(m, BitVector::Zero(10)) == Approx(1.0));  // only the miss term, fully missed
    CHECK(evaluate(m, BitVector::Ones(10)) == Approx(2.0));  // count and cost terms at their maximum
}

TEST_CASE("single precision formulation") {
    const auto m = build_overall_qubo<float>(running_example(), FormulationConfig::test_minimization());
    CHECK(m.linear(0) == Approx(-0.0099f).margin(1e-6));
    CHECK(m.quadratic(0, 1) == Approx(1.2012f).margin(1e-6));
}

TEST_CASE("worked property objectives") {
    const auto fr = build_property_objective(std::vector<double>{0.8, 0.4}, 1.2);
    CHECK(fr.linear(0) == Approx(-1.28));
    CHECK(fr.linear(1) == Approx(-0.8));
    CHECK(fr.quadratic.coeff(0, 1) == Approx(0.64));
    CHECK(fr.offset == Approx(1.44));

    const auto et = build_property_objective(std::vector<double>{0.5, 1.0}, 0.0);
    CHECK(et.linear(0) == Approx(0.25));
    CHECK(et.linear(1) == Approx(1.0));
    CHECK(et.quadratic.coeff(0, 1) == Approx(1.0));
    CHECK(et.offset == 0.0);

    const auto one = build_property_objective(std::vector<double>{1.0}, 1.0);
    const Qubo m = one.to_model();
    CHECK(m.num_interactions() == 0);
    CHECK(evaluate(m, BitVector::Ones(1)) == 0.0);
}

TEST_CASE("scaling every weight scales the model and keeps the argmin") {
    std::mt19937_64 rng(9);
    for (int trial = 0; trial < 20; ++trial) {
        const TestSuite suite = oracle::random_suite(rng, 1 + rng() % 10);
        const FormulationConfig base = FormulationConfig::test_minimization(0.3, 0.2, 0.5);
        const FormulationConfig big = FormulationConfig::test_minimization(0.9, 0.6, 1.5);
        const Qubo a = build_overall_qubo(suite, base);
        const Qubo b = build_overall_qubo(suite, big);
        CHECK(b.offset() == Approx(3.0 * a.offset()));
        CHECK(b.linear().isApprox(3.0 * a.linear(), 1e-12));
        CHECK(exact_solve(a).assignment == exact_solve(b).assignment);
    }
}

TEST_CASE("formulation is deterministic") {
    std::mt19937_64 rng(1);
    const TestSuite suite = oracle::random_suite(rng, 12);
    const auto config = FormulationConfig::test_minimization();
    const Qubo a = build_overall_qubo(suite, config);
    const Qubo b = build_overall_qubo(suite, config);
    CHECK(a.linear() == b.linear());
    CHECK(a.offset() == b.offset());
    CHECK(Eigen::MatrixXd(a.quadratic()) == Eigen::MatrixXd(b.quadratic()));
}
