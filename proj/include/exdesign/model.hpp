#ifndef EXDESIGN_MODEL_HPP
#define EXDESIGN_MODEL_HPP

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

namespace exdesign {

// Fixed, name-sorted fluent universe. Problems built over the same table
// share indices, so states hash and compare canonically.
class FluentTable {
public:
    explicit FluentTable(std::vector<std::string> names);

    int index_of(const std::string& name) const;  // -1 if absent
    int require(const std::string& name) const;   // throws if absent
    const std::string& name(int index) const { return names_[index]; }
    int size() const { return static_cast<int>(names_.size()); }
    const std::vector<std::string>& names() const { return names_; }

private:
    std::vector<std::string> names_;
    std::unordered_map<std::string, int> index_;
};

// Bitset over a fluent universe.
class FluentSet {
public:
    FluentSet() = default;
    explicit FluentSet(int universe_size);

    void set(int i);
    void reset(int i);
    bool test(int i) const;

    bool subset_of(const FluentSet& other) const;
    bool intersects(const FluentSet& other) const;
    FluentSet& unite(const FluentSet& other);
    FluentSet& subtract(const FluentSet& other);

    int count() const;
    int universe_size() const { return nbits_; }
    bool empty() const;

    std::vector<int> indices() const;
    std::size_t hash() const;

    bool operator==(const FluentSet& other) const { return nbits_ == other.nbits_ && words_ == other.words_; }
    bool operator!=(const FluentSet& other) const { return !(*this == other); }

private:
    int nbits_ = 0;
    std::vector<std::uint64_t> words_;
};

struct FluentSetHash {
    std::size_t operator()(const FluentSet& s) const { return s.hash(); }
};

// A state is the set of true fluents; everything else is false.
using State = FluentSet;

struct ActionDef {
    std::string name;  // grounded, tokens joined by single spaces
    FluentSet pre;
    FluentSet add;
    FluentSet del;
    double cost = 1.0;
};

struct Plan {
    std::vector<std::string> steps;

    bool empty() const { return steps.empty(); }
    std::size_t size() const { return steps.size(); }
};

// Grounded STRIPS problem. Actions are kept sorted by name and shared
// between copies, so re-targeting init/goal and design edits stay cheap.
class PlanningProblem {
public:
    PlanningProblem(std::shared_ptr<const FluentTable> fluents,
                    std::shared_ptr<const std::vector<ActionDef>> actions,
                    State init, FluentSet goal);

    const FluentTable& fluents() const { return *fluents_; }
    const std::shared_ptr<const FluentTable>& fluents_ptr() const { return fluents_; }
    const std::vector<ActionDef>& actions() const { return *actions_; }
    const std::shared_ptr<const std::vector<ActionDef>>& actions_ptr() const { return actions_; }
    const State& init() const { return init_; }
    const FluentSet& goal() const { return goal_; }

    const ActionDef* find_action(const std::string& name) const;

    // Same actions and fluents, different task.
    PlanningProblem with_task(State init, FluentSet goal) const;
    // Same fluents and task, different action set.
    PlanningProblem with_actions(std::shared_ptr<const std::vector<ActionDef>> actions) const;

    bool unit_costs() const;
    // Stable structural fingerprint; identical for isomorphic inputs
    // regardless of declaration order.
    std::string fingerprint() const;

private:
    std::shared_ptr<const FluentTable> fluents_;
    std::shared_ptr<const std::vector<ActionDef>> actions_;
    std::unordered_map<std::string, int> action_index_;
    State init_;
    FluentSet goal_;
};

// Sorts by name, validates well-formedness (unique names, add/del disjoint,
// nonnegative cost) against the given universe.
std::shared_ptr<const std::vector<ActionDef>> make_action_set(const FluentTable& fluents,
                                                              std::vector<ActionDef> actions);

// Transition function. Returns nullopt when preconditions are unmet.
std::optional<State> apply_action(const State& s, const ActionDef& a);

struct ExecutionResult {
    State final_state;
    bool valid = false;
};

// Applies the plan from init. valid iff every step applies in sequence
// (unknown action names count as inapplicable) and the goal holds at the end.
ExecutionResult execute_plan(const PlanningProblem& problem, const Plan& plan);

// Sum of step costs. Unresolved action names are a hard error.
double plan_cost(const PlanningProblem& problem, const Plan& plan);

std::string format_plan(const Plan& plan);

// Grounded names are tokens joined by single spaces: "move cell_0_0 cell_0_1".
std::vector<std::string> name_tokens(const std::string& name);

}  // namespace exdesign

#endif
