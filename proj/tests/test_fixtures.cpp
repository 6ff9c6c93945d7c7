#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <filesystem>
#include <fstream>

#include "exdesign/fixtures.hpp"
#include "exdesign/planner.hpp"
#include "test_support.hpp"

using namespace exdesign;

TEST_CASE("fixture generation is a pure function of the seed") {
    for (IpcDomain domain : {IpcDomain::Blocksworld, IpcDomain::Grid, IpcDomain::Driverlog}) {
        FixtureFiles a = build_ipc_fixture(domain, 42);
        FixtureFiles b = build_ipc_fixture(domain, 42);
        CHECK(a.robot_domain == b.robot_domain);
        CHECK(a.human_domain == b.human_domain);
        CHECK(a.problem == b.problem);
        CHECK(a.design == b.design);
        FixtureFiles c = build_ipc_fixture(domain, 43);
        CHECK(a.problem != c.problem);
    }
    CHECK(build_demo_fixture(DemoSetting::C).problem == build_demo_fixture(DemoSetting::C).problem);
}

TEST_CASE("every built-in fixture parses and validates") {
    std::vector<FixtureFiles> all = {build_demo_fixture(DemoSetting::A),
                                     build_demo_fixture(DemoSetting::B),
                                     build_demo_fixture(DemoSetting::C),
                                     build_driverlog_sweep_fixture()};
    for (std::uint64_t seed = 1; seed <= 3; ++seed) {
        all.push_back(build_ipc_fixture(IpcDomain::Blocksworld, seed));
        all.push_back(build_ipc_fixture(IpcDomain::Grid, seed));
        all.push_back(build_ipc_fixture(IpcDomain::Driverlog, seed));
    }
    for (const FixtureFiles& files : all) {
        LoadedFixture fixture = load_fixture(files);
        CHECK_FALSE(fixture.model.tasks.tasks.empty());
        double sum = 0.0;
        for (double p : fixture.model.tasks.probabilities) sum += p;
        CHECK(sum == doctest::Approx(1.0));
    }
}

TEST_CASE("demo floor plan") {
    LoadedFixture fixture = load_fixture(build_demo_fixture(DemoSetting::C));
    const ModelPair& pair = fixture.model.pair;

    SUBCASE("the table cells are unreachable for the robot but not in its beliefs' absence") {
        for (const char* table_cell : {"at cell_0_1", "at cell_1_1"}) {
            FluentSet goal(pair.universe->size());
            goal.set(pair.universe->require(table_cell));
            SearchResult robot = solve_optimal(pair.robot.with_task(pair.robot.init(), goal));
            CHECK(robot.outcome == SearchOutcome::Unsolvable);
            SearchResult human = solve_optimal(pair.human.with_task(pair.human.init(), goal));
            CHECK(human.solved());
        }
    }
    SUBCASE("exactly six passages are blocked (24 directed adjacencies, 12 open)") {
        int adj = 0, open = 0;
        for (const std::string& name : pair.universe->names()) {
            auto tokens = name_tokens(name);
            if (tokens[0] == "adj" && pair.robot.init().test(pair.universe->require(name))) ++adj;
            if (tokens[0] == "open" && pair.robot.init().test(pair.universe->require(name))) ++open;
        }
        CHECK(adj == 24);
        CHECK(open == 12);
    }
    SUBCASE("the design space is the six passages") {
        CHECK(fixture.design.modifications.size() == 6);
    }
    SUBCASE("the around-the-tables service run is executable in the robot model") {
        Plan service{{"pick-up cell_0_0", "move cell_0_0 cell_1_0", "move cell_1_0 cell_2_0",
                      "move cell_2_0 cell_2_1", "move cell_2_1 cell_2_2", "move cell_2_2 cell_1_2",
                      "put-down cell_1_2"}};
        PlanningProblem robot = pair.robot.with_task(fixture.model.tasks.tasks[0].init,
                                                     fixture.model.tasks.tasks[0].goal);
        CHECK(execute_plan(robot, service).valid);
        // the human's through-the-tables expectation is not runnable by the robot
        Plan through{{"pick-up cell_0_0", "move cell_0_0 cell_0_1", "move cell_0_1 cell_0_2",
                      "move cell_0_2 cell_1_2", "put-down cell_1_2"}};
        CHECK_FALSE(execute_plan(robot, through).valid);
        PlanningProblem human = pair.human.with_task(fixture.model.tasks.tasks[0].init,
                                                     fixture.model.tasks.tasks[0].goal);
        CHECK(execute_plan(human, through).valid);
    }
    SUBCASE("settings differ in tasks and horizon") {
        LoadedFixture a = load_fixture(build_demo_fixture(DemoSetting::A));
        CHECK(a.model.tasks.tasks.size() == 1);
        CHECK(a.model.tasks.probabilities == std::vector<double>{1.0});
        CHECK(a.design.horizon == 1);
        LoadedFixture b = load_fixture(build_demo_fixture(DemoSetting::B));
        CHECK(b.model.tasks.tasks.size() == 2);
        CHECK(b.model.tasks.probabilities == std::vector<double>{0.5, 0.5});
        CHECK(b.design.horizon == 1);
        CHECK(fixture.design.horizon == 10);
        CHECK(fixture.design.weights.beta == 30.0);
    }
}

TEST_CASE("grid fixture: the human-only actions are the diagonal moves") {
    LoadedFixture fixture = load_fixture(build_ipc_fixture(IpcDomain::Grid, 9));
    CHECK_FALSE(fixture.model.pair.human_only.empty());
    std::size_t diagonal = 0;
    for (const ActionDef& a : fixture.model.pair.human.actions()) {
        const std::string head = name_tokens(a.name)[0];
        if (head == "move-ne" || head == "move-nw" || head == "move-se" || head == "move-sw") {
            ++diagonal;
        } else {
            CHECK(head == "move");
        }
    }
    CHECK(fixture.model.pair.human_only.size() == diagonal);
    for (const DesignModification& m : fixture.design.modifications) {
        CHECK(m.kind == DesignKind::PruneHumanAction);
    }
}

TEST_CASE("driverlog fixture: designs gate loading behind a disembark at the dock") {
    LoadedFixture fixture = load_fixture(build_ipc_fixture(IpcDomain::Driverlog, 3));
    CHECK(fixture.design.modifications.size() == 3);
    for (const DesignModification& m : fixture.design.modifications) {
        CHECK(m.kind == DesignKind::AddPreconditionBoth);
        REQUIRE(m.target.size() == 3);
        CHECK(m.target[0] == "load");
        REQUIRE(m.payload.size() == 1);
        CHECK(name_tokens(m.payload[0])[0] == "driver-at");
        // the required driver position is the load's own dock
        CHECK(name_tokens(m.payload[0])[1] == m.target[2]);
    }
}

TEST_CASE("blocksworld fixture: human-optimal plans undercut robot-optimal plans") {
    for (std::uint64_t seed = 1; seed <= 3; ++seed) {
        LoadedFixture fixture = load_fixture(build_ipc_fixture(IpcDomain::Blocksworld, seed));
        for (const Task& task : fixture.model.tasks.tasks) {
            SearchResult robot =
                solve_optimal(fixture.model.pair.robot.with_task(task.init, task.goal));
            SearchResult human =
                solve_optimal(fixture.model.pair.human.with_task(task.init, task.goal));
            REQUIRE(robot.solved());
            REQUIRE(human.solved());
            CHECK(human.cost < robot.cost);
        }
    }
}

TEST_CASE("write_fixture emits the four files") {
    namespace fs = std::filesystem;
    fs::path dir = fs::temp_directory_path() / "exdesign_fixture_test";
    fs::remove_all(dir);
    FixtureFiles files = build_demo_fixture(DemoSetting::A);
    auto written = write_fixture(files, dir.string());
    CHECK(written.size() == 4);
    for (const std::string& path : written) {
        std::ifstream in(path);
        CHECK(in.good());
    }
    fs::remove_all(dir);
}
