#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "test_support.hpp"

using namespace exdesign;
using test_support::make_problem;
using test_support::set_of;
using test_support::table;

TEST_CASE("apply_action follows the transition semantics") {
    auto t = table({"p", "q"});
    State s = set_of(*t, {"p"});

    ActionDef a = test_support::make_action(*t, {"swap", {"p"}, {"q"}, {"p"}, 1.0});
    auto next = apply_action(s, a);
    REQUIRE(next.has_value());
    CHECK(*next == set_of(*t, {"q"}));

    ActionDef blocked = test_support::make_action(*t, {"blocked", {"p"}, {"q"}, {}, 1.0});
    CHECK_FALSE(apply_action(set_of(*t, {}), blocked).has_value());

    ActionDef identity = test_support::make_action(*t, {"noop", {}, {}, {}, 1.0});
    auto same = apply_action(s, identity);
    REQUIRE(same.has_value());
    CHECK(*same == s);
}

TEST_CASE("apply_action is deterministic and stays inside the universe") {
    for (std::uint64_t seed = 0; seed < 30; ++seed) {
        PlanningProblem p = test_support::random_problem(seed);
        State s = p.init();
        for (const ActionDef& a : p.actions()) {
            auto r1 = apply_action(s, a);
            auto r2 = apply_action(s, a);
            CHECK(r1.has_value() == r2.has_value());
            if (r1) {
                CHECK(*r1 == *r2);
                CHECK(r1->universe_size() == p.fluents().size());
            }
        }
    }
}

TEST_CASE("execute_plan validates sequential application and the goal") {
    auto t = table({"p", "q", "r"});
    PlanningProblem p = make_problem(t,
                                     {{"make-q", {"p"}, {"q"}, {"p"}},
                                      {"needs-p", {"p"}, {"r"}, {}}},
                                     {"p"}, {"p"});

    SUBCASE("empty plan succeeds when the goal already holds") {
        auto result = execute_plan(p, Plan{});
        CHECK(result.valid);
        CHECK(result.final_state == p.init());
    }
    SUBCASE("a step whose precondition was deleted invalidates the plan") {
        // make-q deletes p, so needs-p cannot follow it
        auto result = execute_plan(p.with_task(p.init(), set_of(*t, {"r"})),
                                   Plan{{"make-q", "needs-p"}});
        CHECK_FALSE(result.valid);
    }
    SUBCASE("unknown action names invalidate rather than crash") {
        auto result = execute_plan(p, Plan{{"no-such-action"}});
        CHECK_FALSE(result.valid);
    }
    SUBCASE("valid prefix property") {
        auto goal_q = p.with_task(p.init(), set_of(*t, {"q"}));
        auto result = execute_plan(goal_q, Plan{{"needs-p", "make-q"}});
        CHECK(result.valid);
        // every prefix of a valid plan applies in sequence
        State s = goal_q.init();
        for (const std::string& step : std::vector<std::string>{"needs-p", "make-q"}) {
            auto next = apply_action(s, *goal_q.find_action(step));
            REQUIRE(next.has_value());
            s = *next;
        }
    }
}

TEST_CASE("plan_cost sums action costs") {
    auto t = table({"p"});
    PlanningProblem unit = make_problem(t, {{"step", {}, {"p"}, {}}}, {}, {"p"});
    CHECK(plan_cost(unit, Plan{{"step", "step", "step", "step", "step"}}) == 5.0);
    CHECK(plan_cost(unit, Plan{}) == 0.0);

    PlanningProblem weighted = make_problem(t,
                                            {{"two", {}, {"p"}, {}, 2.0},
                                             {"three", {}, {"p"}, {}, 3.0}},
                                            {}, {"p"});
    CHECK(plan_cost(weighted, Plan{{"two", "three"}}) == 5.0);
    CHECK_THROWS_AS(plan_cost(unit, Plan{{"missing"}}), std::invalid_argument);
}

TEST_CASE("plan_cost is additive over concatenation") {
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
        PlanningProblem p = test_support::random_problem(seed);
        std::vector<std::string> names;
        for (const ActionDef& a : p.actions()) names.push_back(a.name);
        std::mt19937_64 rng(seed ^ 0xabcd);
        Plan left, right;
        for (int i = 0; i < 4; ++i) {
            left.steps.push_back(names[rng() % names.size()]);
            right.steps.push_back(names[rng() % names.size()]);
        }
        Plan both = left;
        both.steps.insert(both.steps.end(), right.steps.begin(), right.steps.end());
        CHECK(plan_cost(p, both) == doctest::Approx(plan_cost(p, left) + plan_cost(p, right)));
    }
}

TEST_CASE("action set validation") {
    auto t = table({"p", "q"});
    SUBCASE("add and delete must be disjoint") {
        std::vector<ActionDef> bad = {test_support::make_action(*t, {"ok", {}, {"p"}, {}, 1.0})};
        bad[0].del.set(t->require("p"));
        CHECK_THROWS_AS(make_action_set(*t, std::move(bad)), std::invalid_argument);
    }
    SUBCASE("duplicate names rejected") {
        std::vector<ActionDef> dup = {test_support::make_action(*t, {"x", {}, {"p"}, {}, 1.0}),
                                      test_support::make_action(*t, {"x", {}, {"q"}, {}, 1.0})};
        CHECK_THROWS_AS(make_action_set(*t, std::move(dup)), std::invalid_argument);
    }
    SUBCASE("negative costs rejected") {
        std::vector<ActionDef> neg = {test_support::make_action(*t, {"x", {}, {"p"}, {}, -1.0})};
        CHECK_THROWS_AS(make_action_set(*t, std::move(neg)), std::invalid_argument);
    }
    SUBCASE("duplicate fluent names rejected") {
        CHECK_THROWS_AS(FluentTable({"p", "p"}), std::invalid_argument);
    }
}

TEST_CASE("fluent sets hash and compare canonically") {
    auto t = table({"a", "b", "c", "d"});
    FluentSet s1 = set_of(*t, {"a", "c"});
    FluentSet s2 = set_of(*t, {"c", "a"});
    CHECK(s1 == s2);
    CHECK(s1.hash() == s2.hash());
    CHECK(s1.count() == 2);
    CHECK(set_of(*t, {"a"}).subset_of(s1));
    CHECK_FALSE(s1.subset_of(set_of(*t, {"a"})));
}
