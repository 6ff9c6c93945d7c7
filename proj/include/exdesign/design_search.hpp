#ifndef EXDESIGN_DESIGN_SEARCH_HPP
#define EXDESIGN_DESIGN_SEARCH_HPP

#include <functional>
#include <memory>
#include <mutex>
#include <string>
#include <unordered_map>
#include <vector>

#include "exdesign/design.hpp"
#include "exdesign/explicability.hpp"
#include "exdesign/pddl.hpp"

namespace exdesign {

// True when the modification's target matches the grounded action.
// Prune/add-precondition kinds match on a token prefix of the action name;
// block-transition matches any action mentioning both endpoints.
bool design_matches(const DesignModification& mod, const ActionDef& action);

// Hard-errors on unresolvable targets and unknown payload fluents.
void validate_design(const DesignModification& mod, const ModelPair& pair);

// A model pair after applying a design subset, with the tasks it is
// evaluated on. Canonical identity is (pair fingerprint, sorted ids).
struct Configuration {
    ModelPair pair;
    std::vector<Task> tasks;
    std::vector<std::string> applied_ids;  // sorted
    double design_cost = 0.0;
};

// Applies a subset of modifications to the base pair. Order-independent and
// idempotent: modifications are declarative, so pruning an already absent
// action is a no-op. Target resolvability is checked when the design file
// is parsed.
Configuration apply_designs(const ModelPair& base, const std::vector<Task>& tasks,
                            const std::vector<const DesignModification*>& subset);

struct ConfigEvaluation {
    std::vector<MostExplicableResult> per_task;
    double expected_ie = std::numeric_limits<double>::infinity();
    double expected_robot_cost = std::numeric_limits<double>::infinity();
    double design_cost = 0.0;
    double objective = std::numeric_limits<double>::infinity();
    bool failed = false;       // some task evaluation hit a resource limit
    std::string note;
};

// Per-(model pair, task) evaluation cache shared across configurations and
// searches. Keyed by structural fingerprints, so subsets that modify
// disjoint actions share results.
class EvalCache {
public:
    struct TaskEval {
        MostExplicableResult result;
        std::optional<Plan> robot_witness;  // an optimal robot-model plan
        std::optional<Plan> human_witness;  // an optimal human-model plan
    };

    TaskEval& lookup(const std::string& key, const std::function<TaskEval()>& compute);

private:
    std::mutex mutex_;
    std::unordered_map<std::string, std::unique_ptr<TaskEval>> entries_;
};

ConfigEvaluation evaluate_config(const Configuration& cfg, const std::vector<double>& distribution,
                                 const ObjectiveWeights& weights, const LongitudinalParams& params,
                                 EvalCache* cache = nullptr, const SearchLimits& limits = {});

// Keeps modifications whose matched actions occur in a witness optimal plan
// of the robot model or of the human model for some task of cfg.
std::vector<const DesignModification*> relevance_prune(
    const std::vector<const DesignModification*>& delta, const Configuration& cfg,
    EvalCache* cache = nullptr, const SearchLimits& limits = {});

struct DesignProblem {
    ModelPair pair;
    TaskSpec tasks;
    DesignSpec spec;
};

struct ExploredNode {
    std::vector<std::string> ids;
    double objective = std::numeric_limits<double>::infinity();
    double expected_ie = std::numeric_limits<double>::infinity();
    double expected_robot_cost = std::numeric_limits<double>::infinity();
    double design_cost = 0.0;
    bool failed = false;
};

struct DesignSearchResult {
    std::vector<std::string> chosen_ids;  // sorted
    ConfigEvaluation evaluation;
    ConfigEvaluation baseline;            // the empty design set
    std::vector<ExploredNode> log;
    bool anytime = false;                 // time limit hit before exhaustion
    double time_secs = 0.0;
};

struct SearchOptions {
    bool prune = true;
    SearchLimits planner_limits;
    EvalCache* cache = nullptr;
};

// Breadth-first search over design subsets in nondecreasing cardinality,
// starting from the empty set. Deterministic; ties broken by smaller design
// cost, then lexicographic id order.
DesignSearchResult search(const DesignProblem& problem, const SearchOptions& options = {});

}  // namespace exdesign

#endif
