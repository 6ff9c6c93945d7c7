#include "exdesign/planner.hpp"

#include <algorithm>
#include <limits>
#include <queue>
#include <unordered_map>

namespace exdesign {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

double elapsed_secs(std::chrono::steady_clock::time_point start) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

}  // namespace

double h_max(const PlanningProblem& problem, const State& s) {
    const int n = problem.fluents().size();
    if (problem.goal().subset_of(s)) return 0.0;

    std::vector<double> cost(n, kInf);
    for (int i = 0; i < n; ++i) {
        if (s.test(i)) cost[i] = 0.0;
    }

    const std::vector<ActionDef>& actions = problem.actions();
    bool changed = true;
    while (changed) {
        changed = false;
        for (const ActionDef& a : actions) {
            double pre_cost = 0.0;
            for (int i : a.pre.indices()) {
                pre_cost = std::max(pre_cost, cost[i]);
                if (pre_cost == kInf) break;
            }
            if (pre_cost == kInf) continue;
            double via = pre_cost + a.cost;
            for (int i : a.add.indices()) {
                if (via < cost[i]) {
                    cost[i] = via;
                    changed = true;
                }
            }
        }
    }

    double h = 0.0;
    for (int i : problem.goal().indices()) {
        h = std::max(h, cost[i]);
        if (h == kInf) break;
    }
    return h;
}

SearchResult solve_optimal(const PlanningProblem& problem, const SearchLimits& limits) {
    const auto start = std::chrono::steady_clock::now();
    SearchResult result;

    struct Node {
        State state;
        double g;
        int parent;       // index into nodes, -1 for root
        int action;       // index into actions(), -1 for root
    };
    struct Entry {
        double f;
        double h;
        std::uint64_t seq;
        int node;
        bool operator>(const Entry& o) const {
            if (f != o.f) return f > o.f;
            if (h != o.h) return h > o.h;
            return seq > o.seq;
        }
    };

    std::vector<Node> nodes;
    std::priority_queue<Entry, std::vector<Entry>, std::greater<Entry>> open;
    std::unordered_map<FluentSet, double, FluentSetHash> best_g;
    std::uint64_t seq = 0;

    double h0 = h_max(problem, problem.init());
    if (h0 < kInf) {
        nodes.push_back({problem.init(), 0.0, -1, -1});
        best_g.emplace(problem.init(), 0.0);
        open.push({h0, h0, seq++, 0});
        result.generated = 1;
    }

    const std::vector<ActionDef>& actions = problem.actions();
    double best_open_f = h0;

    while (!open.empty()) {
        if (result.expanded >= limits.max_expansions ||
            (limits.deadline && std::chrono::steady_clock::now() >= *limits.deadline)) {
            result.outcome = SearchOutcome::Timeout;
            result.lower_bound = open.top().f;
            result.time_secs = elapsed_secs(start);
            return result;
        }
        Entry entry = open.top();
        open.pop();
        const Node& node = nodes[entry.node];
        auto it = best_g.find(node.state);
        if (it != best_g.end() && it->second < node.g) continue;  // stale entry
        best_open_f = entry.f;

        if (problem.goal().subset_of(node.state)) {
            Plan plan;
            for (int i = entry.node; nodes[i].parent >= 0; i = nodes[i].parent) {
                plan.steps.push_back(actions[nodes[i].action].name);
            }
            std::reverse(plan.steps.begin(), plan.steps.end());
            result.outcome = SearchOutcome::Solved;
            result.cost = node.g;
            result.lower_bound = node.g;
            result.plan = std::move(plan);
            result.time_secs = elapsed_secs(start);
            return result;
        }

        ++result.expanded;
        const State state = node.state;  // copy; nodes may reallocate below
        const double g = node.g;
        for (int ai = 0; ai < static_cast<int>(actions.size()); ++ai) {
            const ActionDef& a = actions[ai];
            if (!a.pre.subset_of(state)) continue;
            State succ = state;
            succ.unite(a.add);
            succ.subtract(a.del);
            double succ_g = g + a.cost;
            auto found = best_g.find(succ);
            if (found != best_g.end() && found->second <= succ_g) continue;
            double h = h_max(problem, succ);
            if (h == kInf) continue;
            if (found == best_g.end()) {
                best_g.emplace(succ, succ_g);
            } else {
                found->second = succ_g;  // reopen with cheaper g
            }
            nodes.push_back({std::move(succ), succ_g, entry.node, ai});
            open.push({succ_g + h, h, seq++, static_cast<int>(nodes.size()) - 1});
            ++result.generated;
        }
    }

    result.outcome = SearchOutcome::Unsolvable;
    result.lower_bound = best_open_f;
    result.time_secs = elapsed_secs(start);
    return result;
}

namespace {

struct Enumerator {
    const PlanningProblem& problem;
    double bound;
    std::uint64_t max_nodes;
    std::uint64_t visited = 0;
    std::vector<Plan> found;
    std::vector<std::string> stack;
    std::vector<FluentSet> path_states;

    void dfs(const State& state, double g) {
        if (++visited > max_nodes) {
            throw OracleLimitExceeded("plan enumeration exceeded its node cap");
        }
        if (problem.goal().subset_of(state)) {
            found.push_back(Plan{stack});
        }
        for (const ActionDef& a : problem.actions()) {
            if (g + a.cost > bound) continue;
            if (!a.pre.subset_of(state)) continue;
            State succ = state;
            succ.unite(a.add);
            succ.subtract(a.del);
            bool on_path = false;
            for (const FluentSet& seen : path_states) {
                if (seen == succ) {
                    on_path = true;
                    break;
                }
            }
            if (on_path) continue;
            stack.push_back(a.name);
            path_states.push_back(succ);
            dfs(succ, g + a.cost);
            path_states.pop_back();
            stack.pop_back();
        }
    }
};

}  // namespace

std::vector<Plan> enumerate_plans(const PlanningProblem& problem, double cost_bound,
                                  const EnumerationLimits& limits) {
    Enumerator e{problem, cost_bound, limits.max_nodes, 0, {}, {}, {}};
    e.path_states.push_back(problem.init());
    e.dfs(problem.init(), 0.0);
    return e.found;
}

}  // namespace exdesign
