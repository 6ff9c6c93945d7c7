#include "exdesign/fixtures.hpp"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <sstream>

namespace exdesign {

namespace {

// splitmix64; stable across platforms, unlike <random> distributions.
struct Rng {
    std::uint64_t state;
    std::uint64_t next() {
        std::uint64_t z = (state += 0x9e3779b97f4a7c15ull);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
        return z ^ (z >> 31);
    }
    std::uint64_t below(std::uint64_t n) { return next() % n; }
    template <typename T>
    void shuffle(std::vector<T>& v) {
        for (std::size_t i = v.size(); i > 1; --i) std::swap(v[i - 1], v[below(i)]);
    }
};

std::string cell(int r, int c) {
    return "cell_" + std::to_string(r) + "_" + std::to_string(c);
}

struct Passage {
    int r1, c1, r2, c2;
};

const std::vector<Passage> kBlockedPassages = {
    {0, 0, 0, 1}, {0, 1, 0, 2}, {0, 1, 1, 1}, {1, 0, 1, 1}, {1, 1, 1, 2}, {1, 1, 2, 1},
};

std::string demo_domain(bool robot) {
    std::ostringstream out;
    out << "(define (domain restaurant-" << (robot ? "robot" : "human") << ")\n";
    out << "  (:types cell)\n";
    out << "  (:predicates (at ?c - cell) (adj ?a - cell ?b - cell)\n";
    out << "               (open ?a - cell ?b - cell) (tray-at ?c - cell) (holding))\n";
    out << "  (:action move\n    :parameters (?from - cell ?to - cell)\n";
    if (robot) {
        out << "    :precondition (and (at ?from) (adj ?from ?to) (open ?from ?to))\n";
    } else {
        out << "    :precondition (and (at ?from) (adj ?from ?to))\n";
    }
    out << "    :effect (and (at ?to) (not (at ?from))))\n";
    out << "  (:action pick-up\n    :parameters (?c - cell)\n";
    out << "    :precondition (and (at ?c) (tray-at ?c))\n";
    out << "    :effect (and (holding) (not (tray-at ?c))))\n";
    out << "  (:action put-down\n    :parameters (?c - cell)\n";
    out << "    :precondition (and (at ?c) (holding))\n";
    out << "    :effect (and (tray-at ?c) (not (holding))))\n";
    out << ")\n";
    return out.str();
}

bool passage_blocked(int r1, int c1, int r2, int c2) {
    for (const Passage& p : kBlockedPassages) {
        if ((p.r1 == r1 && p.c1 == c1 && p.r2 == r2 && p.c2 == c2) ||
            (p.r1 == r2 && p.c1 == c2 && p.r2 == r1 && p.c2 == c1)) {
            return true;
        }
    }
    return false;
}

std::string demo_problem(DemoSetting setting) {
    std::ostringstream out;
    out << "(define (problem serve-booths)\n  (:domain restaurant-robot)\n";
    out << "  (:objects";
    for (int r = 0; r < 3; ++r) {
        for (int c = 0; c < 3; ++c) out << ' ' << cell(r, c);
    }
    out << " - cell)\n  (:init (at " << cell(0, 0) << ") (tray-at " << cell(0, 0) << ")\n";
    for (int r = 0; r < 3; ++r) {
        for (int c = 0; c < 3; ++c) {
            const int dr[] = {0, 0, 1, -1};
            const int dc[] = {1, -1, 0, 0};
            for (int d = 0; d < 4; ++d) {
                int r2 = r + dr[d], c2 = c + dc[d];
                if (r2 < 0 || r2 > 2 || c2 < 0 || c2 > 2) continue;
                out << "    (adj " << cell(r, c) << ' ' << cell(r2, c2) << ")";
                if (!passage_blocked(r, c, r2, c2)) {
                    out << " (open " << cell(r, c) << ' ' << cell(r2, c2) << ")";
                }
                out << "\n";
            }
        }
    }
    out << "  )\n";
    // Booth one sits by cell_1_2, booth two by cell_0_2; the kitchen is cell_0_0.
    if (setting == DemoSetting::A) {
        out << "  (:task (:goal (and (tray-at " << cell(1, 2) << "))) (:prob 1))\n";
    } else {
        out << "  (:task (:goal (and (tray-at " << cell(1, 2) << "))) (:prob 0.5))\n";
        out << "  (:task (:goal (and (tray-at " << cell(0, 2) << "))) (:prob 0.5))\n";
    }
    out << ")\n";
    return out.str();
}

std::string demo_design(DemoSetting setting) {
    std::ostringstream out;
    out << "weights { alpha 1 beta 30 kappa 0.25 }\n";
    out << "gamma 0.9\n";
    out << "horizon " << (setting == DemoSetting::C ? 10 : 1) << "\n";
    for (const Passage& p : kBlockedPassages) {
        out << "modification {\n";
        out << "  id barrier-" << cell(p.r1, p.c1) << "-" << cell(p.r2, p.c2) << "\n";
        out << "  kind block-transition\n";
        out << "  removed-for (" << cell(p.r1, p.c1) << ' ' << cell(p.r2, p.c2) << ")\n";
        out << "  cost 1\n";
        out << "}\n";
    }
    return out.str();
}

// ---------------------------------------------------------------------------
// Blocksworld: the human model has no hand-empty bookkeeping, so it expects
// the robot to keep several blocks in hand at once.

std::string blocks_domain(bool robot) {
    std::ostringstream out;
    out << "(define (domain blocks-" << (robot ? "robot" : "human") << ")\n";
    out << "  (:types block)\n";
    out << "  (:predicates (on ?x - block ?y - block) (ontable ?x - block) (clear ?x - block)\n";
    out << "               (holding ?x - block) (handempty) (fresh-pick))\n";
    out << "  (:action pick-up\n    :parameters (?x - block)\n";
    if (robot) {
        out << "    :precondition (and (clear ?x) (ontable ?x) (handempty))\n";
        out << "    :effect (and (holding ?x) (fresh-pick) (not (clear ?x)) (not (ontable ?x))"
               " (not (handempty))))\n";
    } else {
        out << "    :precondition (and (clear ?x) (ontable ?x))\n";
        out << "    :effect (and (holding ?x) (fresh-pick) (not (clear ?x)) (not (ontable ?x))))\n";
    }
    out << "  (:action put-down\n    :parameters (?x - block)\n";
    out << "    :precondition (and (holding ?x))\n";
    if (robot) {
        out << "    :effect (and (ontable ?x) (clear ?x) (handempty) (not (holding ?x))))\n";
    } else {
        out << "    :effect (and (ontable ?x) (clear ?x) (not (holding ?x))))\n";
    }
    out << "  (:action stack\n    :parameters (?x - block ?y - block)\n";
    out << "    :precondition (and (holding ?x) (clear ?y))\n";
    if (robot) {
        out << "    :effect (and (on ?x ?y) (clear ?x) (handempty) (not (holding ?x))"
               " (not (clear ?y)) (not (fresh-pick))))\n";
    } else {
        out << "    :effect (and (on ?x ?y) (clear ?x) (not (holding ?x)) (not (clear ?y))"
               " (not (fresh-pick))))\n";
    }
    out << "  (:action unstack\n    :parameters (?x - block ?y - block)\n";
    if (robot) {
        out << "    :precondition (and (on ?x ?y) (clear ?x) (handempty))\n";
        out << "    :effect (and (holding ?x) (clear ?y) (not (on ?x ?y)) (not (clear ?x))"
               " (not (handempty)) (not (fresh-pick))))\n";
    } else {
        out << "    :precondition (and (on ?x ?y) (clear ?x))\n";
        out << "    :effect (and (holding ?x) (clear ?y) (not (on ?x ?y)) (not (clear ?x))"
               " (not (fresh-pick))))\n";
    }
    out << ")\n";
    return out.str();
}

std::string blocks_problem(Rng& rng) {
    std::vector<std::string> blocks = {"b1", "b2", "b3", "b4"};
    std::ostringstream out;
    out << "(define (problem restack)\n  (:domain blocks-robot)\n  (:objects";
    for (const std::string& b : blocks) out << ' ' << b;
    out << " - block)\n  (:init (handempty))\n";
    // Three tasks: a three-block tower plus a spare; rebuild the middle and
    // top of the tower onto the spare. Roles are reshuffled per task.
    for (int t = 0; t < 3; ++t) {
        std::vector<std::string> roles = blocks;
        rng.shuffle(roles);
        const std::string& top = roles[0];
        const std::string& mid = roles[1];
        const std::string& bot = roles[2];
        const std::string& spare = roles[3];
        out << "  (:task (:init (handempty) (on " << top << ' ' << mid << ") (on " << mid << ' '
            << bot << ") (ontable " << bot << ") (ontable " << spare << ") (clear " << top
            << ") (clear " << spare << "))\n";
        out << "         (:goal (and (on " << mid << ' ' << spare << ") (on " << top << ' ' << mid
            << "))))\n";
    }
    out << ")\n";
    return out.str();
}

std::string blocks_design(const std::vector<std::string>& decoy_blocks) {
    std::ostringstream out;
    out << "weights { alpha 1 beta 0.25 kappa 0.25 }\ngamma 0.9\nhorizon 1\n";
    out << "modification {\n  id stack-discipline\n  kind add-precondition-both\n";
    out << "  target-action (stack)\n  added-precondition ((fresh-pick))\n  cost 1\n}\n";
    for (const std::string& b : decoy_blocks) {
        out << "modification {\n  id confirm-pick-" << b << "\n  kind add-precondition-both\n";
        out << "  target-action (pick-up " << b << ")\n  added-precondition ((handempty))\n";
        out << "  cost 1\n}\n";
    }
    return out.str();
}

// ---------------------------------------------------------------------------
// Grid: the human model believes diagonal moves exist.

std::string grid_domain(bool robot) {
    std::ostringstream out;
    out << "(define (domain grid-" << (robot ? "robot" : "human") << ")\n";
    out << "  (:types cell)\n";
    out << "  (:predicates (at ?c - cell) (adj ?a - cell ?b - cell)\n";
    out << "               (diag-ne ?a - cell ?b - cell) (diag-nw ?a - cell ?b - cell)\n";
    out << "               (diag-se ?a - cell ?b - cell) (diag-sw ?a - cell ?b - cell))\n";
    out << "  (:action move\n    :parameters (?from - cell ?to - cell)\n";
    out << "    :precondition (and (at ?from) (adj ?from ?to))\n";
    out << "    :effect (and (at ?to) (not (at ?from))))\n";
    if (!robot) {
        const char* dirs[] = {"ne", "nw", "se", "sw"};
        for (const char* d : dirs) {
            out << "  (:action move-" << d << "\n    :parameters (?from - cell ?to - cell)\n";
            out << "    :precondition (and (at ?from) (diag-" << d << " ?from ?to))\n";
            out << "    :effect (and (at ?to) (not (at ?from))))\n";
        }
    }
    out << ")\n";
    return out.str();
}

std::string grid_problem(Rng& rng, int n) {
    std::ostringstream out;
    out << "(define (problem navigate)\n  (:domain grid-robot)\n  (:objects";
    for (int r = 0; r < n; ++r) {
        for (int c = 0; c < n; ++c) out << ' ' << cell(r, c);
    }
    out << " - cell)\n  (:init)\n";

    std::ostringstream statics;
    for (int r = 0; r < n; ++r) {
        for (int c = 0; c < n; ++c) {
            const int dr[] = {0, 0, 1, -1};
            const int dc[] = {1, -1, 0, 0};
            for (int d = 0; d < 4; ++d) {
                int r2 = r + dr[d], c2 = c + dc[d];
                if (r2 < 0 || r2 >= n || c2 < 0 || c2 >= n) continue;
                statics << " (adj " << cell(r, c) << ' ' << cell(r2, c2) << ")";
            }
            const int er[] = {1, 1, -1, -1};
            const int ec[] = {1, -1, 1, -1};
            const char* names[] = {"ne", "nw", "se", "sw"};
            for (int d = 0; d < 4; ++d) {
                int r2 = r + er[d], c2 = c + ec[d];
                if (r2 < 0 || r2 >= n || c2 < 0 || c2 >= n) continue;
                statics << " (diag-" << names[d] << ' ' << cell(r, c) << ' ' << cell(r2, c2) << ")";
            }
        }
    }

    for (int t = 0; t < 3; ++t) {
        // Start and goal always differ in both coordinates so a diagonal
        // shortcut exists.
        int r1 = static_cast<int>(rng.below(n));
        int c1 = static_cast<int>(rng.below(n));
        int r2 = static_cast<int>(rng.below(n - 1));
        int c2 = static_cast<int>(rng.below(n - 1));
        if (r2 >= r1) ++r2;
        if (c2 >= c1) ++c2;
        out << "  (:task (:init (at " << cell(r1, c1) << ")" << statics.str() << ")\n";
        out << "         (:goal (and (at " << cell(r2, c2) << "))))\n";
    }
    out << ")\n";
    return out.str();
}

std::string grid_design() {
    std::ostringstream out;
    out << "weights { alpha 1 beta 0.25 kappa 0.25 }\ngamma 0.9\nhorizon 1\n";
    const char* dirs[] = {"ne", "nw", "se", "sw"};
    for (const char* d : dirs) {
        out << "modification {\n  id no-diag-" << d << "\n  kind prune-human-action\n";
        out << "  target-action (move-" << d << ")\n  cost 1\n}\n";
    }
    return out.str();
}

// ---------------------------------------------------------------------------
// Driverlog: the human model believes packages load themselves into the
// truck from anywhere; the robot needs the truck at the package.

std::string driverlog_domain(bool robot) {
    std::ostringstream out;
    out << "(define (domain delivery-" << (robot ? "robot" : "human") << ")\n";
    out << "  (:types location package)\n";
    out << "  (:predicates (truck-at ?l - location) (driver-at ?l - location) (driver-in-truck)\n";
    out << "               (pkg-at ?p - package ?l - location) (pkg-in ?p - package)\n";
    out << "               (link ?a - location ?b - location))\n";
    out << "  (:action board\n    :parameters (?l - location)\n";
    out << "    :precondition (and (driver-at ?l) (truck-at ?l))\n";
    out << "    :effect (and (driver-in-truck) (not (driver-at ?l))))\n";
    out << "  (:action disembark\n    :parameters (?l - location)\n";
    out << "    :precondition (and (driver-in-truck) (truck-at ?l))\n";
    out << "    :effect (and (driver-at ?l) (not (driver-in-truck))))\n";
    out << "  (:action drive\n    :parameters (?from - location ?to - location)\n";
    out << "    :precondition (and (truck-at ?from) (driver-in-truck) (link ?from ?to))\n";
    out << "    :effect (and (truck-at ?to) (not (truck-at ?from))))\n";
    out << "  (:action load\n    :parameters (?p - package ?l - location)\n";
    if (robot) {
        out << "    :precondition (and (pkg-at ?p ?l) (truck-at ?l))\n";
    } else {
        out << "    :precondition (and (pkg-at ?p ?l))\n";
    }
    out << "    :effect (and (pkg-in ?p) (not (pkg-at ?p ?l))))\n";
    out << "  (:action unload\n    :parameters (?p - package ?l - location)\n";
    out << "    :precondition (and (pkg-in ?p) (truck-at ?l))\n";
    out << "    :effect (and (pkg-at ?p ?l) (not (pkg-in ?p))))\n";
    out << ")\n";
    return out.str();
}

std::string driverlog_problem(const std::vector<std::string>& spurs, const std::string& hub,
                              const std::string& dest, int tasks) {
    std::ostringstream out;
    out << "(define (problem deliver)\n  (:domain delivery-robot)\n  (:objects " << hub << ' '
        << dest;
    for (const std::string& s : spurs) out << ' ' << s;
    out << " - location p1 - package)\n  (:init)\n";

    std::ostringstream links;
    auto link = [&](const std::string& a, const std::string& b) {
        links << " (link " << a << ' ' << b << ") (link " << b << ' ' << a << ")";
    };
    link(hub, dest);
    for (const std::string& s : spurs) {
        link(hub, s);
        link(s, dest);
    }

    for (int t = 0; t < tasks; ++t) {
        const std::string& spur = spurs[t % spurs.size()];
        out << "  (:task (:init (truck-at " << hub << ") (driver-at " << hub << ") (pkg-at p1 "
            << spur << ")" << links.str() << ")\n";
        out << "         (:goal (and (pkg-at p1 " << dest << "))))\n";
    }
    out << ")\n";
    return out.str();
}

std::string driverlog_design(const std::vector<std::string>& spurs, const std::string& dest,
                             bool sweep) {
    std::ostringstream out;
    out << "weights { alpha 1 beta 0.25 kappa 0.25 }\ngamma 0.9\nhorizon 1\n";
    if (sweep) out << "max-design-size 2\n";
    for (const std::string& s : spurs) {
        out << "modification {\n  id dock-rule-" << s << "\n  kind add-precondition-both\n";
        out << "  target-action (load p1 " << s << ")\n  added-precondition ((driver-at " << s
            << "))\n  cost 1\n}\n";
    }
    if (sweep) {
        out << "modification {\n  id dock-rule-" << dest << "\n  kind add-precondition-both\n";
        out << "  target-action (unload p1 " << dest << ")\n  added-precondition ((driver-at "
            << dest << "))\n  cost 1\n}\n";
    }
    return out.str();
}

}  // namespace

const char* to_string(IpcDomain domain) {
    switch (domain) {
        case IpcDomain::Blocksworld: return "blocksworld";
        case IpcDomain::Grid: return "grid";
        case IpcDomain::Driverlog: return "driverlog";
    }
    return "?";
}

FixtureFiles build_demo_fixture(DemoSetting setting) {
    FixtureFiles f;
    f.name = setting == DemoSetting::A ? "demo-a" : (setting == DemoSetting::B ? "demo-b" : "demo-c");
    f.robot_domain = demo_domain(true);
    f.human_domain = demo_domain(false);
    f.problem = demo_problem(setting);
    f.design = demo_design(setting);
    return f;
}

FixtureFiles build_ipc_fixture(IpcDomain domain, std::uint64_t seed) {
    Rng rng{seed * 0x9e3779b97f4a7c15ull + 0x2545f4914f6cdd1dull};
    FixtureFiles f;
    f.name = std::string(to_string(domain)) + "-" + std::to_string(seed);
    switch (domain) {
        case IpcDomain::Blocksworld: {
            f.robot_domain = blocks_domain(true);
            f.human_domain = blocks_domain(false);
            f.problem = blocks_problem(rng);
            std::vector<std::string> decoys = {"b1", "b2", "b3", "b4"};
            rng.shuffle(decoys);
            decoys.resize(3);
            std::sort(decoys.begin(), decoys.end());
            f.design = blocks_design(decoys);
            break;
        }
        case IpcDomain::Grid: {
            int n = 3 + static_cast<int>(rng.below(2));  // 3 or 4
            f.robot_domain = grid_domain(true);
            f.human_domain = grid_domain(false);
            f.problem = grid_problem(rng, n);
            f.design = grid_design();
            break;
        }
        case IpcDomain::Driverlog: {
            std::vector<std::string> spurs = {"depot_a", "depot_b", "depot_c"};
            rng.shuffle(spurs);
            f.robot_domain = driverlog_domain(true);
            f.human_domain = driverlog_domain(false);
            f.problem = driverlog_problem(spurs, "hub", "market", 3);
            std::sort(spurs.begin(), spurs.end());
            f.design = driverlog_design(spurs, "market", false);
            break;
        }
    }
    return f;
}

FixtureFiles build_driverlog_sweep_fixture() {
    FixtureFiles f;
    f.name = "driverlog-sweep";
    f.robot_domain = driverlog_domain(true);
    f.human_domain = driverlog_domain(false);
    std::vector<std::string> spurs = {"depot_a"};
    f.problem = driverlog_problem(spurs, "hub", "market", 1);
    f.design = driverlog_design(spurs, "market", true);
    return f;
}

LoadedFixture load_fixture(const FixtureFiles& files) {
    ParsedModel model = parse_model_pair(files.robot_domain, files.human_domain, files.problem);
    DesignSpec design = parse_design_spec(files.design, model.pair);
    return {std::move(model), std::move(design)};
}

std::vector<std::string> write_fixture(const FixtureFiles& files, const std::string& directory) {
    namespace fs = std::filesystem;
    fs::create_directories(directory);
    const std::vector<std::pair<std::string, const std::string*>> parts = {
        {files.name + ".robot.pddl", &files.robot_domain},
        {files.name + ".human.pddl", &files.human_domain},
        {files.name + ".problem.pddl", &files.problem},
        {files.name + ".design", &files.design},
    };
    std::vector<std::string> written;
    for (const auto& [filename, text] : parts) {
        fs::path path = fs::path(directory) / filename;
        std::ofstream out(path);
        if (!out) throw std::runtime_error("cannot write " + path.string());
        out << *text;
        written.push_back(path.string());
    }
    return written;
}

}  // namespace exdesign
