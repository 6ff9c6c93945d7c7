#include "exdesign/explicability.hpp"

#include <cmath>
#include <stdexcept>
#include <unordered_map>

namespace exdesign {

InexplicabilityScore cost_distance(double c_plan, double c_star, bool valid_in_human) {
    if (!valid_in_human) return InexplicabilityScore::infinite();
    return InexplicabilityScore::from_log(std::abs(c_plan - c_star));
}

std::string robot_copy_name(const std::string& fluent) { return "r# " + fluent; }
std::string human_copy_name(const std::string& fluent) { return "h# " + fluent; }

CompiledProblem compile(const ExplicableProblem& exp) {
    const PlanningProblem robot = exp.robot_problem();
    const PlanningProblem human = exp.human_problem();
    if (!robot.unit_costs() || !human.unit_costs()) {
        throw std::invalid_argument("explicability compilation requires unit action costs");
    }

    const FluentTable& base = *exp.pair.universe;
    const int n = base.size();
    std::vector<std::string> tagged;
    tagged.reserve(2 * n);
    for (const std::string& name : base.names()) {
        tagged.push_back(robot_copy_name(name));
        tagged.push_back(human_copy_name(name));
    }
    auto universe = std::make_shared<FluentTable>(std::move(tagged));

    std::vector<int> to_robot(n), to_human(n);
    for (int i = 0; i < n; ++i) {
        to_robot[i] = universe->require(robot_copy_name(base.name(i)));
        to_human[i] = universe->require(human_copy_name(base.name(i)));
    }
    auto tag = [&](const FluentSet& set, const std::vector<int>& map) {
        FluentSet out(universe->size());
        for (int i : set.indices()) out.set(map[i]);
        return out;
    };
    auto tag_both = [&](const FluentSet& set) {
        FluentSet out = tag(set, to_robot);
        out.unite(tag(set, to_human));
        return out;
    };

    std::vector<ActionDef> actions;
    for (const ActionDef& robot_action : robot.actions()) {
        const ActionDef* human_action = human.find_action(robot_action.name);
        if (human_action == nullptr) continue;  // no human counterpart, not jointly executable
        ActionDef a;
        a.name = robot_action.name;
        a.cost = 1.0;
        a.pre = tag(robot_action.pre, to_robot);
        a.pre.unite(tag(human_action->pre, to_human));
        a.add = tag(robot_action.add, to_robot);
        a.add.unite(tag(human_action->add, to_human));
        a.del = tag(robot_action.del, to_robot);
        a.del.unite(tag(human_action->del, to_human));
        actions.push_back(std::move(a));
    }

    State init = tag_both(exp.task.init);
    FluentSet goal = tag_both(exp.task.goal);
    PlanningProblem compiled(universe, make_action_set(*universe, std::move(actions)),
                             std::move(init), std::move(goal));
    return {std::move(compiled), universe};
}

MostExplicableResult most_explicable_plan(const ExplicableProblem& exp, const SearchLimits& limits) {
    MostExplicableResult result;

    const PlanningProblem human = exp.human_problem();
    SearchResult human_opt = solve_optimal(human, limits);
    if (human_opt.outcome == SearchOutcome::Timeout) {
        result.evaluation_failed = true;
        return result;
    }

    CompiledProblem compiled = compile(exp);
    SearchResult mod_opt = solve_optimal(compiled.problem, limits);
    if (mod_opt.outcome == SearchOutcome::Timeout) {
        result.evaluation_failed = true;
        return result;
    }

    if (mod_opt.solved()) {
        result.plan = mod_opt.plan;
        result.ie_min = cost_distance(mod_opt.cost, human_opt.cost, true);
        result.robot_cost = mod_opt.cost;
        return result;
    }

    // No jointly valid plan: fall back to the robot's own optimum.
    result.ie_min = InexplicabilityScore::infinite();
    SearchResult robot_opt = solve_optimal(exp.robot_problem(), limits);
    if (robot_opt.outcome == SearchOutcome::Timeout) {
        result.evaluation_failed = true;
        return result;
    }
    result.robot_cost = robot_opt.solved() ? robot_opt.cost : std::numeric_limits<double>::infinity();
    return result;
}

InexplicabilityScore score_plan(const ExplicableProblem& exp, const Plan& plan,
                                const SearchLimits& limits) {
    const PlanningProblem robot = exp.robot_problem();
    const PlanningProblem human = exp.human_problem();
    if (!robot.unit_costs() || !human.unit_costs()) {
        throw std::invalid_argument("explicability scoring requires unit action costs");
    }
    if (!execute_plan(robot, plan).valid) {
        throw std::invalid_argument("plan is not a valid robot plan");
    }
    if (!execute_plan(human, plan).valid) {
        return InexplicabilityScore::infinite();
    }
    SearchResult human_opt = solve_optimal(human, limits);
    if (!human_opt.solved()) {
        // The plan itself is valid in the human model, so this can only be a
        // resource limit on the optimal search.
        throw std::runtime_error("human model optimum unavailable (resource limit)");
    }
    return cost_distance(static_cast<double>(plan.size()), human_opt.cost, true);
}

}  // namespace exdesign
