#ifndef EXDESIGN_FIXTURES_HPP
#define EXDESIGN_FIXTURES_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "exdesign/design_search.hpp"
#include "exdesign/pddl.hpp"

namespace exdesign {

// One fixture = robot domain, human domain, problem and design-space texts,
// all in the formats parse_model_pair / parse_design_spec accept.
struct FixtureFiles {
    std::string name;
    std::string robot_domain;
    std::string human_domain;
    std::string problem;
    std::string design;
};

enum class DemoSetting { A, B, C };  // one task / two tasks / two tasks, horizon 10

// Restaurant floor on a 3x3 grid. The robot cannot cross the six passages
// around the two table cells; the human model believes it can. Six unit-cost
// barrier designs, one per blocked passage.
FixtureFiles build_demo_fixture(DemoSetting setting);

enum class IpcDomain { Blocksworld, Grid, Driverlog };

const char* to_string(IpcDomain domain);

// Seeded small instance in the style of the three evaluation domains, three
// tasks with a uniform distribution each. Identical seeds produce
// byte-identical texts.
FixtureFiles build_ipc_fixture(IpcDomain domain, std::uint64_t seed);

// Single-task, single-package variant used for horizon sweeps: one useful
// load gate, one inert unload gate, at most two designs selectable.
FixtureFiles build_driverlog_sweep_fixture();

struct LoadedFixture {
    ParsedModel model;
    DesignSpec design;
};

LoadedFixture load_fixture(const FixtureFiles& files);

// Writes the four texts into directory as <name>.{robot,human,problem,design}.
std::vector<std::string> write_fixture(const FixtureFiles& files, const std::string& directory);

}  // namespace exdesign

#endif
