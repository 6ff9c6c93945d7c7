#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "exdesign/design_search.hpp"
#include "exdesign/explicability.hpp"
#include "exdesign/fixtures.hpp"
#include "exdesign/planner.hpp"
#include "test_support.hpp"

using namespace exdesign;
using test_support::make_problem;
using test_support::set_of;
using test_support::table;

namespace {

ExplicableProblem identical_models(std::uint64_t seed) {
    PlanningProblem p = test_support::random_problem(seed);
    ModelPair pair{p.fluents_ptr(), p, p, {}};
    return {pair, Task{p.init(), p.goal()}};
}

ExplicableProblem demo_task(DemoSetting setting, int task_index) {
    FixtureFiles files = build_demo_fixture(setting);
    ParsedModel parsed = parse_model_pair(files.robot_domain, files.human_domain, files.problem);
    return {parsed.pair, parsed.tasks.tasks[task_index]};
}

}  // namespace

TEST_CASE("cost_distance") {
    CHECK(cost_distance(5, 5, true).log_value() == 0.0);
    CHECK(cost_distance(5, 5, true).value() == 1.0);
    CHECK(cost_distance(7, 5, true).log_value() == 2.0);
    CHECK(cost_distance(7, 5, true).value() == doctest::Approx(std::exp(2.0)));
    CHECK(cost_distance(3, 5, false).is_infinite());
    CHECK(cost_distance(1e9, 5, false).is_infinite());
}

TEST_CASE("huge exponents compare without overflow") {
    auto a = InexplicabilityScore::from_log(800);
    auto b = InexplicabilityScore::from_log(900);
    CHECK_FALSE(a.is_infinite());
    CHECK_FALSE(b.is_infinite());
    CHECK(a < b);
    CHECK(a < InexplicabilityScore::infinite());
    CHECK(std::isinf(a.value()));  // the exp view saturates, the log view does not
}

TEST_CASE("compile duplicates the fluent universe and unions constraints") {
    ExplicableProblem exp = identical_models(11);
    CompiledProblem compiled = compile(exp);
    CHECK(compiled.universe->size() == 2 * exp.pair.universe->size());

    // identical models: the compiled optimum equals the single-model optimum
    SearchResult direct = solve_optimal(exp.robot_problem());
    SearchResult mod = solve_optimal(compiled.problem);
    CHECK(direct.outcome == mod.outcome);
    if (direct.solved()) CHECK(direct.cost == mod.cost);
}

TEST_CASE("a move blocked only in the robot model is inapplicable in the compiled problem") {
    ExplicableProblem exp = demo_task(DemoSetting::A, 0);
    CompiledProblem compiled = compile(exp);
    // the passage next to the kitchen is table-blocked for the robot
    const ActionDef* blocked = compiled.problem.find_action("move cell_0_0 cell_0_1");
    REQUIRE(blocked != nullptr);
    CHECK_FALSE(apply_action(compiled.problem.init(), *blocked).has_value());
    // while the open passage works
    const ActionDef* open = compiled.problem.find_action("move cell_0_0 cell_1_0");
    REQUIRE(open != nullptr);
    CHECK(apply_action(compiled.problem.init(), *open).has_value());
}

TEST_CASE("the compiled load keeps the robot-side co-location requirement") {
    FixtureFiles files = build_ipc_fixture(IpcDomain::Driverlog, 2);
    ParsedModel parsed = parse_model_pair(files.robot_domain, files.human_domain, files.problem);
    ExplicableProblem exp{parsed.pair, parsed.tasks.tasks[0]};
    CompiledProblem compiled = compile(exp);
    bool found = false;
    for (const ActionDef& a : compiled.problem.actions()) {
        auto tokens = name_tokens(a.name);
        if (tokens[0] != "load") continue;
        found = true;
        const std::string loc = tokens[2];
        CHECK(a.pre.test(compiled.universe->require(robot_copy_name("truck-at " + loc))));
        CHECK_FALSE(a.pre.test(compiled.universe->require(human_copy_name("truck-at " + loc))));
    }
    CHECK(found);
}

TEST_CASE("human-only actions are excluded from the compiled problem") {
    FixtureFiles files = build_ipc_fixture(IpcDomain::Grid, 4);
    ParsedModel parsed = parse_model_pair(files.robot_domain, files.human_domain, files.problem);
    ExplicableProblem exp{parsed.pair, parsed.tasks.tasks[0]};
    CompiledProblem compiled = compile(exp);
    CHECK(compiled.problem.actions().size() == parsed.pair.robot.actions().size());
    for (const std::string& name : parsed.pair.human_only) {
        CHECK(compiled.problem.find_action(name) == nullptr);
    }
}

TEST_CASE("compile refuses non-unit costs") {
    auto t = table({"p", "q"});
    PlanningProblem expensive = make_problem(t, {{"go", {"p"}, {"q"}, {}, 2.0}}, {"p"}, {"q"});
    ModelPair pair{t, expensive, expensive, {}};
    ExplicableProblem exp{pair, Task{expensive.init(), expensive.goal()}};
    CHECK_THROWS_AS(compile(exp), std::invalid_argument);
    CHECK_THROWS_AS(score_plan(exp, Plan{{"go"}}), std::invalid_argument);
}

TEST_CASE("most_explicable_plan on identical models scores one") {
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
        ExplicableProblem exp = identical_models(seed);
        MostExplicableResult result = most_explicable_plan(exp);
        REQUIRE_FALSE(result.evaluation_failed);
        if (result.plan) {
            CHECK(result.ie_min.log_value() == 0.0);
            CHECK(execute_plan(exp.robot_problem(), *result.plan).valid);
            CHECK(execute_plan(exp.human_problem(), *result.plan).valid);
            CHECK(result.robot_cost == static_cast<double>(result.plan->size()));
        } else {
            CHECK(result.ie_min.is_infinite());
        }
    }
}

TEST_CASE("demo tasks without design are inexplicable by their detour length") {
    // booth by cell_1_2: robot detour 7 vs expected 5
    ExplicableProblem near_booth = demo_task(DemoSetting::B, 0);
    MostExplicableResult g1 = most_explicable_plan(near_booth);
    REQUIRE(g1.plan.has_value());
    CHECK(g1.ie_min.log_value() == 2.0);
    CHECK(g1.robot_cost == 7.0);
    // booth by cell_0_2: robot detour 8 vs expected 4
    MostExplicableResult g2 = most_explicable_plan(demo_task(DemoSetting::B, 1));
    REQUIRE(g2.plan.has_value());
    CHECK(g2.ie_min.log_value() == 4.0);
    CHECK(g2.robot_cost == 8.0);

    // cross-check the near booth against exhaustive enumeration
    auto expected = enumerate_plans(near_booth.human_problem(), 5.0, {2'000'000});
    REQUIRE_FALSE(expected.empty());
    for (const Plan& plan : expected) CHECK(plan.size() == 5);
    auto joint = enumerate_plans(compile(near_booth).problem, 7.0, {4'000'000});
    REQUIRE_FALSE(joint.empty());
    double best = std::numeric_limits<double>::infinity();
    for (const Plan& plan : joint) best = std::min(best, static_cast<double>(plan.size()));
    CHECK(best == 7.0);  // equals the compiled optimum found by search
}

TEST_CASE("goal unreachable for the human but reachable for the robot") {
    auto t = table({"p", "q", "r"});
    PlanningProblem robot = make_problem(t, {{"go", {"p"}, {"q"}, {}}}, {"p"}, {"q"});
    // the human believes go produces r instead, so q is unreachable
    PlanningProblem human = make_problem(t, {{"go", {"p"}, {"r"}, {}}}, {"p"}, {"q"});
    ModelPair pair{t, robot, human, {}};
    MostExplicableResult result =
        most_explicable_plan(ExplicableProblem{pair, Task{robot.init(), robot.goal()}});
    CHECK_FALSE(result.plan.has_value());
    CHECK(result.ie_min.is_infinite());
    CHECK(result.robot_cost == 1.0);  // the robot's own optimum stays reported
}

TEST_CASE("score_plan against the human expectation") {
    ExplicableProblem demo = demo_task(DemoSetting::B, 0);
    SearchResult robot_opt = solve_optimal(demo.robot_problem());
    REQUIRE(robot_opt.solved());

    SUBCASE("the robot's detour scores its extra length") {
        CHECK(score_plan(demo, *robot_opt.plan).log_value() == 2.0);
    }
    SUBCASE("a plan the human cannot execute scores infinity") {
        // prune a human move on the robot's own route
        DesignModification prune;
        prune.id = "x";
        prune.kind = DesignKind::PruneHumanAction;
        prune.target = {"move", "cell_1_0", "cell_2_0"};
        prune.cost = 1;
        Configuration cfg = apply_designs(demo.pair, {demo.task}, {&prune});
        ExplicableProblem pruned{cfg.pair, demo.task};
        CHECK(score_plan(pruned, *robot_opt.plan).is_infinite());
    }
    SUBCASE("a human-optimal plan that the robot cannot run is a hard error") {
        SearchResult human_opt = solve_optimal(demo.human_problem());
        REQUIRE(human_opt.solved());
        CHECK_THROWS_AS(score_plan(demo, *human_opt.plan), std::invalid_argument);
    }
    SUBCASE("scores grow monotonically with the cost gap") {
        InexplicabilityScore tight = cost_distance(5, 5, true);
        InexplicabilityScore loose = cost_distance(7, 5, true);
        InexplicabilityScore looser = cost_distance(9, 5, true);
        CHECK(tight < loose);
        CHECK(loose < looser);
    }
}

TEST_CASE("compiled plans are valid in both models and conversely") {
    int usable = 0;
    for (std::uint64_t seed = 0; seed < 40 && usable < 15; ++seed) {
        test_support::RandomPair rp = test_support::random_model_pair(seed);
        ExplicableProblem exp{rp.pair, rp.task};
        PlanningProblem robot = exp.robot_problem();
        PlanningProblem human = exp.human_problem();
        CompiledProblem compiled = compile(exp);

        std::vector<Plan> mod_plans, robot_plans;
        try {
            mod_plans = enumerate_plans(compiled.problem, 5.0, {1'000'000});
            robot_plans = enumerate_plans(robot, 5.0, {1'000'000});
        } catch (const OracleLimitExceeded&) {
            continue;
        }
        ++usable;
        for (const Plan& plan : mod_plans) {
            CHECK(execute_plan(robot, plan).valid);
            CHECK(execute_plan(human, plan).valid);
        }
        for (const Plan& plan : robot_plans) {
            if (execute_plan(human, plan).valid) {
                CHECK(execute_plan(compiled.problem, plan).valid);
            }
        }
    }
    CHECK(usable >= 10);
}
