#include <doctest.h>

#include "caga/bench.hpp"
#include "caga/errors.hpp"

using namespace caga;

TEST_SUITE("settings") {
    TEST_CASE("operator settings") {
        RunConfig c = baseline_config("f1");
        apply_setting(c, "pop", "10");
        apply_setting(c, "evals", "20000");
        CHECK(c.ga.total_generations() == 2000);
        apply_setting(c, "generations", "300");
        CHECK(c.ga.evaluation_budget == 3000);
        apply_setting(c, "crossover", "two-point");
        CHECK(c.ga.crossover.early == CrossoverKind::two_point);
        apply_setting(c, "crossover-late", "one-point");
        apply_setting(c, "crossover-switch", "0.5");
        CHECK(c.ga.crossover.at(Progress{60, 100}) == CrossoverKind::one_point);
        apply_setting(c, "best-period", "7");
        CHECK(c.ga.best->period == 7);
        apply_setting(c, "regular-version", "ordinary");
        CHECK(c.ga.regular->version.early == MutationVersion::ordinary);
        apply_setting(c, "reinit-start", "0.9");
        CHECK(c.ga.reinit->start_fraction == 0.9);
        apply_setting(c, "hyper-period", "4");
        REQUIRE(c.ga.hyper);
        CHECK(c.ga.hyper->period == 4);
    }

    TEST_CASE("disabling operators") {
        RunConfig c = baseline_config("f1");
        apply_setting(c, "disable", "mutation");
        CHECK_FALSE(c.ga.regular);
        CHECK_FALSE(c.ga.best);
        CHECK(c.ga.reinit);
        apply_setting(c, "reinit-period", "off");
        CHECK_FALSE(c.ga.reinit);
        apply_setting(c, "regular-period", "2");
        REQUIRE(c.ga.regular);
        CHECK(c.ga.regular->period == 2);
    }

    TEST_CASE("penalty and tolerance settings") {
        RunConfig c = baseline_config("ten_bar");
        apply_setting(c, "penalty-d-early", "0.02,0.2,2,6,2000");
        CHECK(c.constraints.displacement.early.v1 == 0.02);
        CHECK(c.constraints.displacement.early.p3 == 2000.0);
        apply_setting(c, "penalty-switch", "0.6");
        CHECK(c.constraints.stress.switch_fraction == 0.6);
        apply_setting(c, "tolerance", "0:1.01,0.5:1");
        REQUIRE(c.constraints.tolerance.steps.size() == 2);
        CHECK(c.constraints.tolerance.steps[0].multiplier == 1.01);
        apply_setting(c, "feasibility-tol", "1e-3");
        CHECK(c.constraints.feasibility_tolerance == 1e-3);
        CHECK_THROWS_AS(apply_setting(c, "penalty-s-late", "1,2,3"), ConfigError);
        CHECK_THROWS_AS(apply_setting(c, "penalty-s-late", "0.2,0.1,1,2,3"), ConfigError);
    }

    TEST_CASE("bad settings") {
        RunConfig c;
        CHECK_THROWS_AS(apply_setting(c, "colour", "red"), ConfigError);
        CHECK_THROWS_AS(apply_setting(c, "pop", "five"), ConfigError);
        CHECK_THROWS_AS(apply_setting(c, "pop", "5x"), ConfigError);
        CHECK_THROWS_AS(apply_setting(c, "crossover", "three-point"), ConfigError);
        CHECK_THROWS_AS(apply_setting(c, "disable", "everything"), ConfigError);
        for (const auto& key : setting_keys()) CHECK_FALSE(key.empty());
    }

    TEST_CASE("settings files") {
        const auto s = parse_settings("# baseline tweaks\npop = 10\n\nbest-period=3  # faster\n");
        REQUIRE(s.size() == 2);
        CHECK(s[0] == std::pair<std::string, std::string>{"pop", "10"});
        CHECK(s[1] == std::pair<std::string, std::string>{"best-period", "3"});
        CHECK_THROWS_AS(parse_settings("pop 10\n"), ConfigError);
        CHECK_THROWS_AS(load_settings("/nonexistent/settings.conf"), IoError);
    }

    TEST_CASE("value ranges") {
        CHECK(expand_values("1..4") == std::vector<std::string>{"1", "2", "3", "4"});
        CHECK(expand_values("0.1..0.5:0.2") == std::vector<std::string>{"0.1", "0.30000000000000004", "0.5"});
        CHECK(expand_values("1, 5,10") == std::vector<std::string>{"1", "5", "10"});
        CHECK(expand_values("gaussian") == std::vector<std::string>{"gaussian"});
        CHECK_THROWS_AS(expand_values("5..1"), ConfigError);
        CHECK_THROWS_AS(expand_values("1,,2"), ConfigError);
    }
}
