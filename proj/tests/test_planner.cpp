#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <set>

#include "exdesign/planner.hpp"
#include "test_support.hpp"

using namespace exdesign;
using test_support::make_problem;
using test_support::set_of;
using test_support::table;

namespace {

// n x n 4-connected grid, one position fluent per cell.
PlanningProblem grid_problem(int n, const std::string& start, const std::string& goal) {
    std::vector<std::string> names;
    for (int r = 0; r < n; ++r) {
        for (int c = 0; c < n; ++c) {
            names.push_back("at_" + std::to_string(r) + "_" + std::to_string(c));
        }
    }
    auto t = table(names);
    std::vector<test_support::ActionSpec> actions;
    auto cell = [](int r, int c) { return "at_" + std::to_string(r) + "_" + std::to_string(c); };
    for (int r = 0; r < n; ++r) {
        for (int c = 0; c < n; ++c) {
            const int dr[] = {0, 0, 1, -1};
            const int dc[] = {1, -1, 0, 0};
            for (int d = 0; d < 4; ++d) {
                int r2 = r + dr[d], c2 = c + dc[d];
                if (r2 < 0 || r2 >= n || c2 < 0 || c2 >= n) continue;
                actions.push_back({"go_" + std::to_string(r) + "_" + std::to_string(c) + "_" +
                                       std::to_string(r2) + "_" + std::to_string(c2),
                                   {cell(r, c)},
                                   {cell(r2, c2)},
                                   {cell(r, c)}});
            }
        }
    }
    return make_problem(t, actions, {start}, {goal});
}

}  // namespace

TEST_CASE("h_max basics") {
    SUBCASE("zero when the goal holds") {
        auto t = table({"p"});
        PlanningProblem p = make_problem(t, {{"noop", {}, {"p"}, {}}}, {"p"}, {"p"});
        CHECK(h_max(p, p.init()) == 0.0);
    }
    SUBCASE("chain of unit actions") {
        auto t = table({"p", "q", "r"});
        PlanningProblem p = make_problem(t,
                                         {{"pq", {"p"}, {"q"}, {}}, {"qr", {"q"}, {"r"}, {}}},
                                         {"p"}, {"r"});
        CHECK(h_max(p, p.init()) == 2.0);
    }
    SUBCASE("unreachable goal gives infinity") {
        auto t = table({"p", "q"});
        PlanningProblem p = make_problem(t, {{"noop", {"p"}, {"p"}, {}}}, {"p"}, {"q"});
        CHECK(std::isinf(h_max(p, p.init())));
    }
}

TEST_CASE("solve_optimal on closed-form cases") {
    SUBCASE("goal already satisfied gives the empty plan") {
        auto t = table({"p"});
        PlanningProblem p = make_problem(t, {{"noop", {}, {"p"}, {}}}, {"p"}, {"p"});
        SearchResult r = solve_optimal(p);
        REQUIRE(r.solved());
        CHECK(r.cost == 0.0);
        CHECK(r.plan->empty());
    }
    SUBCASE("3x3 grid corner to corner costs 4") {
        PlanningProblem p = grid_problem(3, "at_0_0", "at_2_2");
        SearchResult r = solve_optimal(p);
        REQUIRE(r.solved());
        CHECK(r.cost == 4.0);
        CHECK(r.cost == test_support::bfs_optimal_cost(p));
    }
    SUBCASE("goal no action adds is unsolvable") {
        auto t = table({"p", "q"});
        PlanningProblem p = make_problem(t, {{"pp", {"p"}, {"p"}, {}}}, {"p"}, {"q"});
        SearchResult r = solve_optimal(p);
        CHECK(r.outcome == SearchOutcome::Unsolvable);
        CHECK_FALSE(r.plan.has_value());
        CHECK(std::isinf(r.cost));
    }
}

TEST_CASE("solve_optimal reports timeouts with a lower bound") {
    PlanningProblem p = grid_problem(4, "at_0_0", "at_3_3");
    SearchLimits limits;
    limits.max_expansions = 1;
    SearchResult r = solve_optimal(p, limits);
    CHECK(r.outcome == SearchOutcome::Timeout);
    CHECK(r.lower_bound > 0.0);
    CHECK_FALSE(r.plan.has_value());
}

TEST_CASE("enumerate_plans is exhaustive under the bound") {
    SUBCASE("bound below the optimum finds nothing") {
        PlanningProblem p = grid_problem(3, "at_0_0", "at_2_2");
        CHECK(enumerate_plans(p, 3.0).empty());
    }
    SUBCASE("both symmetric 2x2 corner routes are found") {
        PlanningProblem p = grid_problem(2, "at_0_0", "at_1_1");
        auto plans = enumerate_plans(p, 2.0);
        REQUIRE(plans.size() == 2);
        std::set<std::vector<std::string>> found;
        for (const Plan& plan : plans) found.insert(plan.steps);
        CHECK(found.count({"go_0_0_0_1", "go_0_1_1_1"}) == 1);
        CHECK(found.count({"go_0_0_1_0", "go_1_0_1_1"}) == 1);
    }
    SUBCASE("bound equal to the optimum returns exactly the optimal plan set") {
        PlanningProblem p = grid_problem(3, "at_0_0", "at_2_2");
        auto plans = enumerate_plans(p, 4.0);
        CHECK(plans.size() == 6);  // binomial(4,2) monotone corner routes
        for (const Plan& plan : plans) {
            CHECK(plan.size() == 4);
            CHECK(execute_plan(p, plan).valid);
        }
    }
    SUBCASE("the node cap is a hard error") {
        PlanningProblem p = grid_problem(4, "at_0_0", "at_3_3");
        EnumerationLimits limits;
        limits.max_nodes = 10;
        CHECK_THROWS_AS(enumerate_plans(p, 20.0, limits), OracleLimitExceeded);
    }
}

TEST_CASE("h_max never exceeds the true optimal cost") {
    for (std::uint64_t seed = 200; seed < 300; ++seed) {
        PlanningProblem p = test_support::random_problem(seed);
        SearchResult r = solve_optimal(p);
        if (r.solved()) {
            CHECK(h_max(p, p.init()) <= r.cost);
        }
    }
}

TEST_CASE("h_max is admissible and solve_optimal matches the enumeration oracle") {
    int checked = 0;
    for (std::uint64_t seed = 0; seed < 120 && checked < 60; ++seed) {
        PlanningProblem p = test_support::random_problem(seed);
        SearchResult r = solve_optimal(p);
        if (r.outcome == SearchOutcome::Timeout) continue;

        if (r.solved()) {
            CHECK(h_max(p, p.init()) <= r.cost);
            CHECK(execute_plan(p, *r.plan).valid);
            CHECK(plan_cost(p, *r.plan) == r.cost);
        }
        std::vector<Plan> all;
        try {
            all = enumerate_plans(p, 6.0, {2'000'000});
        } catch (const OracleLimitExceeded&) {
            continue;
        }
        ++checked;
        double best = std::numeric_limits<double>::infinity();
        for (const Plan& plan : all) best = std::min(best, plan_cost(p, plan));
        if (!all.empty()) {
            REQUIRE(r.solved());
            CHECK(r.cost == best);
        } else if (r.solved()) {
            CHECK(r.cost > 6.0);
        }
    }
    CHECK(checked >= 40);
}

TEST_CASE("repeated searches give identical plans") {
    for (std::uint64_t seed = 0; seed < 25; ++seed) {
        PlanningProblem p = test_support::random_problem(seed);
        SearchResult r1 = solve_optimal(p);
        SearchResult r2 = solve_optimal(p);
        CHECK(r1.outcome == r2.outcome);
        if (r1.solved()) {
            CHECK(r1.cost == r2.cost);
            CHECK(r1.plan->steps == r2.plan->steps);
        }
    }
}
