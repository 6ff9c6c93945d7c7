#include "exdesign/model.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace exdesign {

FluentTable::FluentTable(std::vector<std::string> names) : names_(std::move(names)) {
    std::sort(names_.begin(), names_.end());
    for (int i = 0; i < static_cast<int>(names_.size()); ++i) {
        if (!index_.emplace(names_[i], i).second) {
            throw std::invalid_argument("duplicate fluent name: " + names_[i]);
        }
    }
}

int FluentTable::index_of(const std::string& name) const {
    auto it = index_.find(name);
    return it == index_.end() ? -1 : it->second;
}

int FluentTable::require(const std::string& name) const {
    int i = index_of(name);
    if (i < 0) throw std::invalid_argument("unknown fluent: " + name);
    return i;
}

FluentSet::FluentSet(int universe_size)
    : nbits_(universe_size), words_((universe_size + 63) / 64, 0) {}

void FluentSet::set(int i) { words_[i >> 6] |= std::uint64_t{1} << (i & 63); }
void FluentSet::reset(int i) { words_[i >> 6] &= ~(std::uint64_t{1} << (i & 63)); }
bool FluentSet::test(int i) const { return (words_[i >> 6] >> (i & 63)) & 1; }

bool FluentSet::subset_of(const FluentSet& other) const {
    for (std::size_t w = 0; w < words_.size(); ++w) {
        if (words_[w] & ~other.words_[w]) return false;
    }
    return true;
}

bool FluentSet::intersects(const FluentSet& other) const {
    for (std::size_t w = 0; w < words_.size(); ++w) {
        if (words_[w] & other.words_[w]) return true;
    }
    return false;
}

FluentSet& FluentSet::unite(const FluentSet& other) {
    for (std::size_t w = 0; w < words_.size(); ++w) words_[w] |= other.words_[w];
    return *this;
}

FluentSet& FluentSet::subtract(const FluentSet& other) {
    for (std::size_t w = 0; w < words_.size(); ++w) words_[w] &= ~other.words_[w];
    return *this;
}

int FluentSet::count() const {
    int n = 0;
    for (std::uint64_t w : words_) n += __builtin_popcountll(w);
    return n;
}

bool FluentSet::empty() const {
    for (std::uint64_t w : words_) {
        if (w) return false;
    }
    return true;
}

std::vector<int> FluentSet::indices() const {
    std::vector<int> out;
    for (int i = 0; i < nbits_; ++i) {
        if (test(i)) out.push_back(i);
    }
    return out;
}

std::size_t FluentSet::hash() const {
    // FNV-1a over the words
    std::uint64_t h = 1469598103934665603ull;
    for (std::uint64_t w : words_) {
        h ^= w;
        h *= 1099511628211ull;
    }
    return static_cast<std::size_t>(h ^ static_cast<std::uint64_t>(nbits_));
}

std::shared_ptr<const std::vector<ActionDef>> make_action_set(const FluentTable& fluents,
                                                              std::vector<ActionDef> actions) {
    std::sort(actions.begin(), actions.end(),
              [](const ActionDef& a, const ActionDef& b) { return a.name < b.name; });
    for (std::size_t i = 0; i < actions.size(); ++i) {
        const ActionDef& a = actions[i];
        if (i > 0 && actions[i - 1].name == a.name) {
            throw std::invalid_argument("duplicate action name: " + a.name);
        }
        if (a.cost < 0) throw std::invalid_argument("negative cost for action " + a.name);
        if (a.pre.universe_size() != fluents.size() || a.add.universe_size() != fluents.size() ||
            a.del.universe_size() != fluents.size()) {
            throw std::invalid_argument("action " + a.name + " built over a different universe");
        }
        if (a.add.intersects(a.del)) {
            throw std::invalid_argument("action " + a.name + " adds and deletes the same fluent");
        }
    }
    return std::make_shared<const std::vector<ActionDef>>(std::move(actions));
}

PlanningProblem::PlanningProblem(std::shared_ptr<const FluentTable> fluents,
                                 std::shared_ptr<const std::vector<ActionDef>> actions,
                                 State init, FluentSet goal)
    : fluents_(std::move(fluents)),
      actions_(std::move(actions)),
      init_(std::move(init)),
      goal_(std::move(goal)) {
    if (init_.universe_size() != fluents_->size() || goal_.universe_size() != fluents_->size()) {
        throw std::invalid_argument("init/goal built over a different universe");
    }
    action_index_.reserve(actions_->size());
    for (int i = 0; i < static_cast<int>(actions_->size()); ++i) {
        action_index_.emplace((*actions_)[i].name, i);
    }
}

const ActionDef* PlanningProblem::find_action(const std::string& name) const {
    auto it = action_index_.find(name);
    return it == action_index_.end() ? nullptr : &(*actions_)[it->second];
}

PlanningProblem PlanningProblem::with_task(State init, FluentSet goal) const {
    return PlanningProblem(fluents_, actions_, std::move(init), std::move(goal));
}

PlanningProblem PlanningProblem::with_actions(
    std::shared_ptr<const std::vector<ActionDef>> actions) const {
    return PlanningProblem(fluents_, std::move(actions), init_, goal_);
}

bool PlanningProblem::unit_costs() const {
    for (const ActionDef& a : *actions_) {
        if (a.cost != 1.0) return false;
    }
    return true;
}

std::string PlanningProblem::fingerprint() const {
    std::ostringstream out;
    out << "F:";
    for (const std::string& n : fluents_->names()) out << n << ';';
    out << "|A:";
    for (const ActionDef& a : *actions_) {
        out << a.name << '<' << a.cost << '<';
        for (int i : a.pre.indices()) out << i << ',';
        out << '<';
        for (int i : a.add.indices()) out << i << ',';
        out << '<';
        for (int i : a.del.indices()) out << i << ',';
        out << ';';
    }
    out << "|I:";
    for (int i : init_.indices()) out << i << ',';
    out << "|G:";
    for (int i : goal_.indices()) out << i << ',';
    return out.str();
}

std::optional<State> apply_action(const State& s, const ActionDef& a) {
    if (!a.pre.subset_of(s)) return std::nullopt;
    State next = s;
    next.unite(a.add);
    next.subtract(a.del);
    return next;
}

ExecutionResult execute_plan(const PlanningProblem& problem, const Plan& plan) {
    State current = problem.init();
    for (const std::string& step : plan.steps) {
        const ActionDef* a = problem.find_action(step);
        if (a == nullptr) return {std::move(current), false};
        std::optional<State> next = apply_action(current, *a);
        if (!next) return {std::move(current), false};
        current = std::move(*next);
    }
    bool goal_holds = problem.goal().subset_of(current);
    return {std::move(current), goal_holds};
}

double plan_cost(const PlanningProblem& problem, const Plan& plan) {
    double total = 0.0;
    for (const std::string& step : plan.steps) {
        const ActionDef* a = problem.find_action(step);
        if (a == nullptr) throw std::invalid_argument("plan references unknown action: " + step);
        total += a->cost;
    }
    return total;
}

std::string format_plan(const Plan& plan) {
    std::ostringstream out;
    for (const std::string& step : plan.steps) out << '(' << step << ")\n";
    return out.str();
}

std::vector<std::string> name_tokens(const std::string& name) {
    std::vector<std::string> out;
    std::istringstream in(name);
    std::string tok;
    while (in >> tok) out.push_back(tok);
    return out;
}

}  // namespace exdesign
