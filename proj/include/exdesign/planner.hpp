#ifndef EXDESIGN_PLANNER_HPP
#define EXDESIGN_PLANNER_HPP

#include <chrono>
#include <cstdint>
#include <optional>
#include <vector>

#include "exdesign/model.hpp"

namespace exdesign {

enum class SearchOutcome { Solved, Unsolvable, Timeout };

struct SearchResult {
    SearchOutcome outcome = SearchOutcome::Unsolvable;
    std::optional<Plan> plan;                 // present iff Solved
    double cost = std::numeric_limits<double>::infinity();
    double lower_bound = 0.0;                 // best f seen at stop; meaningful on Timeout
    std::uint64_t expanded = 0;
    std::uint64_t generated = 0;
    double time_secs = 0.0;

    bool solved() const { return outcome == SearchOutcome::Solved; }
};

struct SearchLimits {
    std::uint64_t max_expansions = 5'000'000;
    std::optional<std::chrono::steady_clock::time_point> deadline;
};

// Delete-relaxation max heuristic. 0 when the goal already holds,
// +inf when the goal is relaxed-unreachable from s. Admissible.
double h_max(const PlanningProblem& problem, const State& s);

// A* with h_max. Deterministic: the open list breaks ties on (f, h,
// insertion order) and successors are generated in grounded-name order.
// Duplicate states are closed on best g and may be reopened.
SearchResult solve_optimal(const PlanningProblem& problem, const SearchLimits& limits = {});

struct EnumerationLimits {
    std::uint64_t max_nodes = 20'000'000;
};

struct OracleLimitExceeded : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Exhaustive depth-limited search for ALL valid plans of cost <= cost_bound,
// avoiding repeated states along a branch. Test oracle for small instances
// only; exceeding max_nodes throws OracleLimitExceeded.
std::vector<Plan> enumerate_plans(const PlanningProblem& problem, double cost_bound,
                                  const EnumerationLimits& limits = {});

}  // namespace exdesign

#endif
