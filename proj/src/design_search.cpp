#include "exdesign/design_search.hpp"

#include <algorithm>
#include <chrono>
#include <deque>
#include <set>
#include <sstream>

namespace exdesign {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

bool matches_prefix(const std::string& action_name, const std::vector<std::string>& target) {
    auto tokens = name_tokens(action_name);
    if (target.size() > tokens.size()) return false;
    for (std::size_t i = 0; i < target.size(); ++i) {
        if (tokens[i] != target[i]) return false;
    }
    return true;
}

bool mentions_both(const std::string& action_name, const std::string& a, const std::string& b) {
    auto tokens = name_tokens(action_name);
    bool has_a = false, has_b = false;
    for (std::size_t i = 1; i < tokens.size(); ++i) {
        if (tokens[i] == a) has_a = true;
        if (tokens[i] == b) has_b = true;
    }
    return has_a && has_b;
}

}  // namespace

bool design_matches(const DesignModification& mod, const ActionDef& action) {
    if (mod.kind == DesignKind::BlockTransition) {
        return mentions_both(action.name, mod.endpoints[0], mod.endpoints[1]);
    }
    return matches_prefix(action.name, mod.target);
}

namespace {

// Shape checks that hold for any configuration derived from the base pair.
void check_structure(const DesignModification& mod, const FluentTable& universe) {
    if (mod.cost < 0) throw std::invalid_argument("design " + mod.id + " has negative cost");
    if (mod.kind == DesignKind::BlockTransition) {
        if (mod.endpoints.size() != 2) {
            throw std::invalid_argument("design " + mod.id + " needs two endpoints");
        }
        return;
    }
    if (mod.target.empty()) {
        throw std::invalid_argument("design " + mod.id + " needs a target");
    }
    if (mod.kind == DesignKind::AddPreconditionHuman ||
        mod.kind == DesignKind::AddPreconditionBoth) {
        if (mod.payload.empty()) {
            throw std::invalid_argument("design " + mod.id + " adds an empty precondition");
        }
        for (const std::string& fluent : mod.payload) {
            if (universe.index_of(fluent) < 0) {
                throw std::invalid_argument("design " + mod.id + " references unknown fluent (" +
                                            fluent + ")");
            }
        }
    }
}

}  // namespace

void validate_design(const DesignModification& mod, const ModelPair& pair) {
    check_structure(mod, *pair.universe);
    auto count_matches = [&](const PlanningProblem& problem) {
        int n = 0;
        for (const ActionDef& a : problem.actions()) {
            if (design_matches(mod, a)) ++n;
        }
        return n;
    };
    switch (mod.kind) {
        case DesignKind::BlockTransition:
            if (count_matches(pair.human) == 0) {
                throw std::invalid_argument("design " + mod.id +
                                            " blocks a transition no human action crosses");
            }
            break;
        case DesignKind::PruneHumanAction:
        case DesignKind::AddPreconditionHuman:
            if (count_matches(pair.human) == 0) {
                throw std::invalid_argument("design " + mod.id + " targets no human action");
            }
            break;
        case DesignKind::PruneBothAction:
        case DesignKind::AddPreconditionBoth:
            if (count_matches(pair.robot) == 0 || count_matches(pair.human) == 0) {
                throw std::invalid_argument("design " + mod.id +
                                            " targets no action in one of the models");
            }
            break;
    }
}

namespace {

// Applies every modification of the subset to one model's action list.
std::shared_ptr<const std::vector<ActionDef>> apply_to_model(
    const PlanningProblem& model, const FluentTable& universe, bool is_human,
    const std::vector<const DesignModification*>& subset) {
    std::vector<ActionDef> actions(model.actions());
    for (const DesignModification* mod : subset) {
        const bool affects_this_model =
            is_human || mod->kind == DesignKind::PruneBothAction ||
            mod->kind == DesignKind::AddPreconditionBoth;
        if (!affects_this_model) continue;
        const bool prunes = mod->kind == DesignKind::PruneHumanAction ||
                            mod->kind == DesignKind::PruneBothAction ||
                            mod->kind == DesignKind::BlockTransition;
        if (prunes) {
            actions.erase(std::remove_if(actions.begin(), actions.end(),
                                         [&](const ActionDef& a) { return design_matches(*mod, a); }),
                          actions.end());
        } else {
            for (ActionDef& a : actions) {
                if (!design_matches(*mod, a)) continue;
                for (const std::string& fluent : mod->payload) {
                    a.pre.set(universe.require(fluent));
                }
            }
        }
    }
    return make_action_set(universe, std::move(actions));
}

}  // namespace

// Modifications are declarative ("this action is absent", "this action also
// needs ..."), so re-applying one to a pair it already shaped is a no-op.
// Resolvability of targets is checked strictly when the design spec is
// parsed; here only structural well-formedness is enforced.
Configuration apply_designs(const ModelPair& base, const std::vector<Task>& tasks,
                            const std::vector<const DesignModification*>& subset) {
    for (const DesignModification* mod : subset) check_structure(*mod, *base.universe);

    auto robot_actions = apply_to_model(base.robot, *base.universe, false, subset);
    auto human_actions = apply_to_model(base.human, *base.universe, true, subset);

    // Recompute the human-only set: pruning may retire shared names.
    std::set<std::string> robot_names;
    for (const ActionDef& a : *robot_actions) robot_names.insert(a.name);
    std::vector<std::string> human_only;
    for (const ActionDef& a : *human_actions) {
        if (!robot_names.count(a.name)) human_only.push_back(a.name);
    }

    std::vector<std::string> ids;
    double cost = 0.0;
    for (const DesignModification* mod : subset) {
        ids.push_back(mod->id);
        cost += mod->cost;
    }
    std::sort(ids.begin(), ids.end());

    return Configuration{ModelPair{base.universe, base.robot.with_actions(robot_actions),
                                   base.human.with_actions(human_actions), std::move(human_only)},
                         tasks, std::move(ids), cost};
}

EvalCache::TaskEval& EvalCache::lookup(const std::string& key,
                                       const std::function<TaskEval()>& compute) {
    {
        std::lock_guard<std::mutex> lock(mutex_);
        auto it = entries_.find(key);
        if (it != entries_.end()) return *it->second;
    }
    auto value = std::make_unique<TaskEval>(compute());
    std::lock_guard<std::mutex> lock(mutex_);
    auto [it, inserted] = entries_.emplace(key, std::move(value));
    return *it->second;
}

namespace {

std::string task_key(const std::string& pair_fingerprint, const Task& task) {
    std::ostringstream key;
    key << pair_fingerprint << "|T:";
    for (int i : task.init.indices()) key << i << ',';
    key << '>';
    for (int i : task.goal.indices()) key << i << ',';
    return key.str();
}

// Entries are immutable once cached, so witnesses are computed up front.
EvalCache::TaskEval compute_task_eval(const ModelPair& pair, const Task& task,
                                      const SearchLimits& limits) {
    EvalCache::TaskEval eval;
    ExplicableProblem exp{pair, task};
    eval.result = most_explicable_plan(exp, limits);
    SearchResult robot = solve_optimal(pair.robot.with_task(task.init, task.goal), limits);
    if (robot.solved()) eval.robot_witness = robot.plan;
    SearchResult human = solve_optimal(pair.human.with_task(task.init, task.goal), limits);
    if (human.solved()) eval.human_witness = human.plan;
    return eval;
}

double weighted_term(double weight, double value) {
    return weight == 0.0 ? 0.0 : weight * value;  // a zero weight drops the term, even at infinity
}

}  // namespace

ConfigEvaluation evaluate_config(const Configuration& cfg, const std::vector<double>& distribution,
                                 const ObjectiveWeights& weights, const LongitudinalParams& params,
                                 EvalCache* cache, const SearchLimits& limits) {
    if (distribution.size() != cfg.tasks.size()) {
        throw std::invalid_argument("distribution size does not match task count");
    }
    ConfigEvaluation eval;
    eval.design_cost = cfg.design_cost;

    const std::string pair_fp = cfg.pair.fingerprint();
    double expected_ie = 0.0;
    double expected_cost = 0.0;
    bool infinite_ie = false;
    bool infinite_cost = false;

    for (std::size_t t = 0; t < cfg.tasks.size(); ++t) {
        const Task& task = cfg.tasks[t];
        MostExplicableResult result;
        if (cache != nullptr) {
            EvalCache::TaskEval& entry = cache->lookup(
                task_key(pair_fp, task), [&] { return compute_task_eval(cfg.pair, task, limits); });
            result = entry.result;
        } else {
            result = compute_task_eval(cfg.pair, task, limits).result;
        }
        eval.per_task.push_back(result);
        if (result.evaluation_failed) {
            eval.failed = true;
            eval.note = "task " + std::to_string(t) + " evaluation hit a resource limit";
            return eval;  // objective stays infinite
        }
        if (distribution[t] == 0.0) continue;
        if (result.ie_min.is_infinite()) infinite_ie = true;
        else expected_ie += distribution[t] * result.ie_min.value();
        if (std::isinf(result.robot_cost)) infinite_cost = true;
        else expected_cost += distribution[t] * result.robot_cost;
    }

    eval.expected_ie = infinite_ie ? kInf : expected_ie;
    eval.expected_robot_cost = infinite_cost ? kInf : expected_cost;
    double factor = longitudinal_factor(params);
    eval.objective = weighted_term(weights.alpha, factor * eval.expected_ie) +
                     weighted_term(weights.beta, eval.design_cost) +
                     weighted_term(weights.kappa, eval.expected_robot_cost * params.horizon);
    return eval;
}

std::vector<const DesignModification*> relevance_prune(
    const std::vector<const DesignModification*>& delta, const Configuration& cfg,
    EvalCache* cache, const SearchLimits& limits) {
    // Union of action names across one optimal witness plan per model per task.
    std::set<std::string> witness_actions;
    const std::string pair_fp = cfg.pair.fingerprint();
    EvalCache local_cache;
    EvalCache* effective = cache != nullptr ? cache : &local_cache;
    for (const Task& task : cfg.tasks) {
        EvalCache::TaskEval& entry = effective->lookup(
            task_key(pair_fp, task), [&] { return compute_task_eval(cfg.pair, task, limits); });
        if (entry.robot_witness) {
            for (const std::string& step : entry.robot_witness->steps) witness_actions.insert(step);
        }
        if (entry.human_witness) {
            for (const std::string& step : entry.human_witness->steps) witness_actions.insert(step);
        }
    }

    std::vector<const DesignModification*> kept;
    for (const DesignModification* mod : delta) {
        bool relevant = false;
        for (const std::string& name : witness_actions) {
            ActionDef probe;
            probe.name = name;
            if (design_matches(*mod, probe)) {
                relevant = true;
                break;
            }
        }
        if (relevant) kept.push_back(mod);
    }
    return kept;
}

namespace {

std::string subset_key(const std::vector<std::string>& sorted_ids) {
    std::string key;
    for (const std::string& id : sorted_ids) {
        key += id;
        key.push_back('\n');
    }
    return key;
}

// true when (a_obj, a_cost, a_ids) is strictly better under the fixed tie order
bool better(double a_obj, double a_cost, const std::vector<std::string>& a_ids, double b_obj,
            double b_cost, const std::vector<std::string>& b_ids) {
    if (a_obj != b_obj) return a_obj < b_obj;
    if (a_cost != b_cost) return a_cost < b_cost;
    return a_ids < b_ids;
}

}  // namespace

DesignSearchResult search(const DesignProblem& problem, const SearchOptions& options) {
    const auto start = std::chrono::steady_clock::now();
    std::optional<std::chrono::steady_clock::time_point> deadline;
    if (problem.spec.time_limit_secs > 0.0) {
        deadline = start + std::chrono::duration_cast<std::chrono::steady_clock::duration>(
                               std::chrono::duration<double>(problem.spec.time_limit_secs));
    }

    EvalCache local_cache;
    EvalCache* cache = options.cache != nullptr ? options.cache : &local_cache;
    const ObjectiveWeights& weights = problem.spec.weights;
    const LongitudinalParams params = problem.spec.longitudinal();

    std::vector<const DesignModification*> all_mods;
    for (const DesignModification& mod : problem.spec.modifications) all_mods.push_back(&mod);
    std::sort(all_mods.begin(), all_mods.end(),
              [](const DesignModification* a, const DesignModification* b) { return a->id < b->id; });

    DesignSearchResult result;
    std::deque<std::vector<const DesignModification*>> queue;
    std::set<std::string> visited;

    queue.push_back({});
    visited.insert("");

    std::vector<std::string> incumbent_ids;
    double incumbent_cost = 0.0;
    ConfigEvaluation incumbent_eval;
    bool have_incumbent = false;
    bool first_node = true;

    const std::size_t max_size = problem.spec.max_design_size
                                     ? static_cast<std::size_t>(*problem.spec.max_design_size)
                                     : all_mods.size();

    while (!queue.empty()) {
        // The empty set is always evaluated, deadline or not.
        if (!first_node && deadline && std::chrono::steady_clock::now() >= *deadline) {
            result.anytime = true;
            break;
        }
        first_node = false;
        std::vector<const DesignModification*> subset = std::move(queue.front());
        queue.pop_front();

        Configuration cfg = apply_designs(problem.pair, problem.tasks.tasks, subset);
        ConfigEvaluation eval = evaluate_config(cfg, problem.tasks.probabilities, weights, params,
                                                cache, options.planner_limits);
        result.log.push_back({cfg.applied_ids, eval.objective, eval.expected_ie,
                              eval.expected_robot_cost, eval.design_cost, eval.failed});
        if (subset.empty()) result.baseline = eval;

        if (!have_incumbent ||
            better(eval.objective, cfg.design_cost, cfg.applied_ids, incumbent_eval.objective,
                   incumbent_cost, incumbent_ids)) {
            have_incumbent = true;
            incumbent_ids = cfg.applied_ids;
            incumbent_cost = cfg.design_cost;
            incumbent_eval = eval;
        }

        if (subset.size() >= max_size) continue;
        std::vector<const DesignModification*> candidates = all_mods;
        if (options.prune) {
            candidates = relevance_prune(candidates, cfg, cache, options.planner_limits);
        }
        for (const DesignModification* mod : candidates) {
            bool already = false;
            for (const DesignModification* m : subset) {
                if (m == mod) {
                    already = true;
                    break;
                }
            }
            if (already) continue;
            std::vector<const DesignModification*> child = subset;
            child.push_back(mod);
            std::sort(child.begin(), child.end(), [](const DesignModification* a,
                                                     const DesignModification* b) {
                return a->id < b->id;
            });
            std::vector<std::string> ids;
            for (const DesignModification* m : child) ids.push_back(m->id);
            if (visited.insert(subset_key(ids)).second) queue.push_back(std::move(child));
        }
    }

    result.chosen_ids = incumbent_ids;
    result.evaluation = incumbent_eval;
    result.time_secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return result;
}

}  // namespace exdesign
