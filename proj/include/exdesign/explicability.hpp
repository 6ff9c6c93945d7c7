#ifndef EXDESIGN_EXPLICABILITY_HPP
#define EXDESIGN_EXPLICABILITY_HPP

#include <cmath>
#include <limits>
#include <optional>

#include "exdesign/model.hpp"
#include "exdesign/pddl.hpp"
#include "exdesign/planner.hpp"

namespace exdesign {

// exp(|c(plan) - c*|) kept in log form so huge cost gaps stay comparable.
// Infinite when the plan is invalid in the human model.
class InexplicabilityScore {
public:
    static InexplicabilityScore from_log(double log_value) { return InexplicabilityScore(log_value); }
    static InexplicabilityScore infinite() {
        return InexplicabilityScore(std::numeric_limits<double>::infinity());
    }

    bool is_infinite() const { return std::isinf(log_value_); }
    double log_value() const { return log_value_; }
    double value() const { return std::exp(log_value_); }

    // Total order on log values; never exponentiates.
    bool operator<(const InexplicabilityScore& o) const { return log_value_ < o.log_value_; }
    bool operator==(const InexplicabilityScore& o) const { return log_value_ == o.log_value_; }
    bool operator<=(const InexplicabilityScore& o) const { return log_value_ <= o.log_value_; }

private:
    explicit InexplicabilityScore(double log_value) : log_value_(log_value) {}
    double log_value_;
};

// Cost-based distance: exp(|c_plan - c_star|) when the plan reaches the goal
// in the human model, infinity otherwise. c_star is the human model's
// optimal cost, so every optimal human plan is equidistant.
InexplicabilityScore cost_distance(double c_plan, double c_star, bool valid_in_human);

// One task instantiated against both models of a pair.
struct ExplicableProblem {
    ModelPair pair;
    Task task;

    PlanningProblem robot_problem() const { return pair.robot.with_task(task.init, task.goal); }
    PlanningProblem human_problem() const { return pair.human.with_task(task.init, task.goal); }
};

// Transformed problem over two tagged copies of every fluent. Its optimal
// plans are exactly the plans jointly valid in both models with minimal
// human-model cost.
struct CompiledProblem {
    PlanningProblem problem;
    std::shared_ptr<const FluentTable> universe;  // the tagged universe
};

// Tagged fluent names in the compiled universe.
std::string robot_copy_name(const std::string& fluent);
std::string human_copy_name(const std::string& fluent);

// Builds the compiled problem: one action per shared action name whose
// preconditions and effects are the union of the tagged robot and human
// versions; actions only the human believes in are excluded. Requires unit
// costs in both models.
CompiledProblem compile(const ExplicableProblem& exp);

struct MostExplicableResult {
    std::optional<Plan> plan;  // present iff a jointly valid plan exists
    InexplicabilityScore ie_min = InexplicabilityScore::infinite();
    double robot_cost = std::numeric_limits<double>::infinity();
    bool evaluation_failed = false;  // planner hit a resource limit
};

// Solves the compiled problem optimally. When no jointly valid plan exists,
// ie_min is infinite and robot_cost falls back to the robot model's own
// optimal cost so the design objective stays well defined.
MostExplicableResult most_explicable_plan(const ExplicableProblem& exp,
                                          const SearchLimits& limits = {});

// Scores a given robot plan against the human's expectation. The plan must
// be valid in the robot model (hard error otherwise).
InexplicabilityScore score_plan(const ExplicableProblem& exp, const Plan& plan,
                                const SearchLimits& limits = {});

}  // namespace exdesign

#endif
