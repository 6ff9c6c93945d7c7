#include "exdesign/pddl.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <map>
#include <set>
#include <sstream>
#include <unordered_set>

#include "exdesign/design_search.hpp"

namespace exdesign {

namespace {

struct Token {
    std::string text;
    int line = 0;
    int col = 0;
    bool is_punct = false;  // one of ( ) { }
};

std::vector<Token> tokenize(const std::string& text) {
    std::vector<Token> out;
    int line = 1, col = 1;
    std::size_t i = 0;
    auto advance = [&](char c) {
        if (c == '\n') {
            ++line;
            col = 1;
        } else {
            ++col;
        }
    };
    while (i < text.size()) {
        char c = text[i];
        if (c == ';') {  // comment to end of line
            while (i < text.size() && text[i] != '\n') advance(text[i++]);
            continue;
        }
        if (std::isspace(static_cast<unsigned char>(c))) {
            advance(c);
            ++i;
            continue;
        }
        if (c == '(' || c == ')' || c == '{' || c == '}') {
            out.push_back({std::string(1, c), line, col, true});
            advance(c);
            ++i;
            continue;
        }
        int start_line = line, start_col = col;
        std::string word;
        while (i < text.size()) {
            char d = text[i];
            if (std::isspace(static_cast<unsigned char>(d)) || d == '(' || d == ')' || d == '{' ||
                d == '}' || d == ';') {
                break;
            }
            word.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(d))));
            advance(d);
            ++i;
        }
        out.push_back({std::move(word), start_line, start_col, false});
    }
    return out;
}

struct Sexp {
    bool is_atom = false;
    std::string atom;
    std::vector<Sexp> items;
    int line = 0;
    int col = 0;

    const Sexp& at(std::size_t i) const {
        if (i >= items.size()) throw ParseError("form is too short", line, col);
        return items[i];
    }
    const std::string& head() const {
        if (items.empty() || !items[0].is_atom) throw ParseError("expected a keyword", line, col);
        return items[0].atom;
    }
};

class SexpReader {
public:
    explicit SexpReader(std::vector<Token> tokens) : tokens_(std::move(tokens)) {}

    bool done() const { return pos_ >= tokens_.size(); }

    Sexp read() {
        if (done()) throw ParseError("unexpected end of input", last_line_, last_col_);
        const Token& t = tokens_[pos_];
        last_line_ = t.line;
        last_col_ = t.col;
        if (t.is_punct && t.text == "(") {
            ++pos_;
            Sexp list;
            list.line = t.line;
            list.col = t.col;
            while (true) {
                if (done()) throw ParseError("missing ')'", t.line, t.col);
                if (tokens_[pos_].is_punct && tokens_[pos_].text == ")") {
                    ++pos_;
                    return list;
                }
                list.items.push_back(read());
            }
        }
        if (t.is_punct) throw ParseError("unexpected '" + t.text + "'", t.line, t.col);
        ++pos_;
        Sexp atom;
        atom.is_atom = true;
        atom.atom = t.text;
        atom.line = t.line;
        atom.col = t.col;
        return atom;
    }

private:
    std::vector<Token> tokens_;
    std::size_t pos_ = 0;
    int last_line_ = 1;
    int last_col_ = 1;
};

struct TypedName {
    std::string name;
    std::string type;
};

// Parses "a b - t c d - u e" style typed lists; untyped names get "object".
std::vector<TypedName> parse_typed_list(const std::vector<Sexp>& items, std::size_t begin,
                                        int line, int col) {
    std::vector<TypedName> out;
    std::vector<std::string> pending;
    for (std::size_t i = begin; i < items.size(); ++i) {
        const Sexp& s = items[i];
        if (!s.is_atom) throw ParseError("expected a name in typed list", s.line, s.col);
        if (s.atom == "-") {
            if (i + 1 >= items.size() || !items[i + 1].is_atom) {
                throw ParseError("missing type after '-'", s.line, s.col);
            }
            const std::string& type = items[i + 1].atom;
            for (std::string& n : pending) out.push_back({std::move(n), type});
            pending.clear();
            ++i;
        } else {
            pending.push_back(s.atom);
        }
    }
    for (std::string& n : pending) out.push_back({std::move(n), "object"});
    if (out.empty() && begin < items.size()) {
        throw ParseError("empty typed list", line, col);
    }
    return out;
}

struct Atom {
    std::string head;
    std::vector<std::string> args;  // "?x" variables or object constants
    int line = 0;
    int col = 0;
};

Atom parse_atom(const Sexp& s) {
    if (s.is_atom || s.items.empty() || !s.items[0].is_atom) {
        throw ParseError("expected an atom (predicate args...)", s.line, s.col);
    }
    Atom a;
    a.head = s.items[0].atom;
    a.line = s.line;
    a.col = s.col;
    for (std::size_t i = 1; i < s.items.size(); ++i) {
        if (!s.items[i].is_atom) throw ParseError("nested list in atom", s.items[i].line, s.items[i].col);
        a.args.push_back(s.items[i].atom);
    }
    return a;
}

// (and ...) | single atom | ()
std::vector<Sexp> condition_items(const Sexp& s) {
    if (s.is_atom) throw ParseError("expected a condition", s.line, s.col);
    if (s.items.empty()) return {};
    if (s.items[0].is_atom && s.items[0].atom == "and") {
        return std::vector<Sexp>(s.items.begin() + 1, s.items.end());
    }
    return {s};
}

struct ActionSchema {
    std::string name;
    std::vector<TypedName> params;
    std::vector<Atom> pre;
    std::vector<Atom> add;
    std::vector<Atom> del;
};

struct DomainDef {
    std::string name;
    std::set<std::string> types;
    std::map<std::string, std::vector<std::string>> predicates;  // head -> param types
    std::vector<ActionSchema> actions;
};

DomainDef parse_domain(const std::string& text) {
    SexpReader reader(tokenize(text));
    Sexp root = reader.read();
    if (root.is_atom || root.items.empty() || root.head() != "define") {
        throw ParseError("expected (define (domain ...) ...)", root.line, root.col);
    }
    DomainDef domain;
    domain.types.insert("object");
    const Sexp& header = root.at(1);
    if (header.is_atom || header.head() != "domain") {
        throw ParseError("expected (domain NAME)", header.line, header.col);
    }
    domain.name = header.at(1).atom;

    for (std::size_t i = 2; i < root.items.size(); ++i) {
        const Sexp& section = root.items[i];
        const std::string& key = section.head();
        if (key == ":requirements") {
            continue;  // accepted and ignored
        } else if (key == ":types") {
            auto typed = parse_typed_list(section.items, 1, section.line, section.col);
            for (const TypedName& t : typed) domain.types.insert(t.name);
        } else if (key == ":predicates") {
            for (std::size_t p = 1; p < section.items.size(); ++p) {
                const Sexp& decl = section.items[p];
                if (decl.is_atom || decl.items.empty()) {
                    throw ParseError("bad predicate declaration", decl.line, decl.col);
                }
                std::string head = decl.items[0].atom;
                auto params = parse_typed_list(decl.items, 1, decl.line, decl.col);
                std::vector<std::string> types;
                for (const TypedName& t : params) types.push_back(t.type);
                if (!domain.predicates.emplace(head, types).second) {
                    throw ParseError("duplicate predicate: " + head, decl.line, decl.col);
                }
            }
        } else if (key == ":action") {
            ActionSchema schema;
            schema.name = section.at(1).atom;
            std::size_t j = 2;
            while (j < section.items.size()) {
                const std::string& field = section.items[j].atom;
                if (field == ":parameters") {
                    const Sexp& plist = section.at(j + 1);
                    schema.params = parse_typed_list(plist.items, 0, plist.line, plist.col);
                    j += 2;
                } else if (field == ":precondition") {
                    for (const Sexp& c : condition_items(section.at(j + 1))) {
                        schema.pre.push_back(parse_atom(c));
                    }
                    j += 2;
                } else if (field == ":effect") {
                    for (const Sexp& c : condition_items(section.at(j + 1))) {
                        if (!c.is_atom && !c.items.empty() && c.items[0].is_atom &&
                            c.items[0].atom == "not") {
                            schema.del.push_back(parse_atom(c.at(1)));
                        } else {
                            schema.add.push_back(parse_atom(c));
                        }
                    }
                    j += 2;
                } else {
                    throw ParseError("unknown action field: " + field, section.items[j].line,
                                     section.items[j].col);
                }
            }
            domain.actions.push_back(std::move(schema));
        } else {
            throw ParseError("unknown domain section: " + key, section.line, section.col);
        }
    }
    return domain;
}

struct TaskDef {
    std::optional<std::vector<Atom>> init;
    std::vector<Atom> goal;
    std::optional<double> prob;
};

struct ProblemDef {
    std::string name;
    std::string domain_name;
    std::vector<TypedName> objects;
    std::vector<Atom> init;
    std::optional<std::vector<Atom>> goal;
    std::vector<TaskDef> tasks;
};

double parse_number(const Sexp& s) {
    if (!s.is_atom) throw ParseError("expected a number", s.line, s.col);
    try {
        std::size_t used = 0;
        double v = std::stod(s.atom, &used);
        if (used != s.atom.size()) throw std::invalid_argument("");
        return v;
    } catch (const std::exception&) {
        throw ParseError("expected a number, got '" + s.atom + "'", s.line, s.col);
    }
}

ProblemDef parse_problem(const std::string& text) {
    SexpReader reader(tokenize(text));
    Sexp root = reader.read();
    if (root.is_atom || root.items.empty() || root.head() != "define") {
        throw ParseError("expected (define (problem ...) ...)", root.line, root.col);
    }
    ProblemDef problem;
    const Sexp& header = root.at(1);
    if (header.is_atom || header.head() != "problem") {
        throw ParseError("expected (problem NAME)", header.line, header.col);
    }
    problem.name = header.at(1).atom;

    for (std::size_t i = 2; i < root.items.size(); ++i) {
        const Sexp& section = root.items[i];
        const std::string& key = section.head();
        if (key == ":domain") {
            problem.domain_name = section.at(1).atom;
        } else if (key == ":objects") {
            problem.objects = parse_typed_list(section.items, 1, section.line, section.col);
        } else if (key == ":init") {
            for (std::size_t p = 1; p < section.items.size(); ++p) {
                problem.init.push_back(parse_atom(section.items[p]));
            }
        } else if (key == ":goal") {
            std::vector<Atom> goal;
            for (const Sexp& c : condition_items(section.at(1))) goal.push_back(parse_atom(c));
            problem.goal = std::move(goal);
        } else if (key == ":task") {
            TaskDef task;
            for (std::size_t p = 1; p < section.items.size(); ++p) {
                const Sexp& field = section.items[p];
                const std::string& fkey = field.head();
                if (fkey == ":init") {
                    std::vector<Atom> init;
                    for (std::size_t q = 1; q < field.items.size(); ++q) {
                        init.push_back(parse_atom(field.items[q]));
                    }
                    task.init = std::move(init);
                } else if (fkey == ":goal") {
                    for (const Sexp& c : condition_items(field.at(1))) {
                        task.goal.push_back(parse_atom(c));
                    }
                } else if (fkey == ":prob") {
                    task.prob = parse_number(field.at(1));
                } else {
                    throw ParseError("unknown task field: " + fkey, field.line, field.col);
                }
            }
            if (task.goal.empty()) throw ParseError("task without a goal", section.line, section.col);
            problem.tasks.push_back(std::move(task));
        } else {
            throw ParseError("unknown problem section: " + key, section.line, section.col);
        }
    }
    return problem;
}

std::string join_tokens(const std::vector<std::string>& tokens) {
    std::string out;
    for (std::size_t i = 0; i < tokens.size(); ++i) {
        if (i > 0) out.push_back(' ');
        out += tokens[i];
    }
    return out;
}

class Grounder {
public:
    Grounder(const DomainDef& robot, const DomainDef& human, const ProblemDef& problem)
        : robot_(robot), human_(human), problem_(problem) {
        for (const TypedName& obj : problem.objects) {
            objects_by_type_[obj.type].push_back(obj.name);
            object_types_[obj.name] = obj.type;
        }
        for (auto& [type, names] : objects_by_type_) std::sort(names.begin(), names.end());

        // One declared universe: union of both domains' predicates, which
        // must agree on arity when shared.
        predicates_ = robot.predicates;
        for (const auto& [head, types] : human.predicates) {
            auto it = predicates_.find(head);
            if (it == predicates_.end()) {
                predicates_.emplace(head, types);
            } else if (it->second.size() != types.size()) {
                throw std::invalid_argument("predicate " + head +
                                            " declared with different arity in the two domains");
            }
        }
        build_universe();
    }

    ParsedModel ground() {
        auto robot_actions = ground_domain(robot_);
        auto human_actions = ground_domain(human_);

        std::unordered_set<std::string> human_names;
        for (const ActionDef& a : *human_actions) human_names.insert(a.name);
        std::vector<std::string> human_only;
        for (const ActionDef& a : *robot_actions) {
            if (!human_names.count(a.name)) {
                throw std::invalid_argument("robot action '" + a.name +
                                            "' has no human counterpart");
            }
        }
        std::unordered_set<std::string> robot_names;
        for (const ActionDef& a : *robot_actions) robot_names.insert(a.name);
        for (const ActionDef& a : *human_actions) {
            if (!robot_names.count(a.name)) human_only.push_back(a.name);
        }
        std::sort(human_only.begin(), human_only.end());

        TaskSpec spec = ground_tasks();
        const Task& first = spec.tasks.front();
        PlanningProblem robot(universe_, robot_actions, first.init, first.goal);
        PlanningProblem human(universe_, human_actions, first.init, first.goal);
        return {ModelPair{universe_, std::move(robot), std::move(human), std::move(human_only)},
                std::move(spec)};
    }

private:
    void build_universe() {
        std::vector<std::string> names;
        for (const auto& [head, types] : predicates_) {
            std::vector<std::string> tuple;
            enumerate_tuples(types, 0, tuple, [&](const std::vector<std::string>& args) {
                std::string name = head;
                for (const std::string& a : args) name += " " + a;
                names.push_back(std::move(name));
            });
        }
        universe_ = std::make_shared<FluentTable>(std::move(names));
    }

    template <typename F>
    void enumerate_tuples(const std::vector<std::string>& types, std::size_t i,
                          std::vector<std::string>& tuple, F&& emit) {
        if (i == types.size()) {
            emit(tuple);
            return;
        }
        auto it = objects_by_type_.find(types[i]);
        if (it == objects_by_type_.end()) return;  // no objects of this type
        for (const std::string& obj : it->second) {
            tuple.push_back(obj);
            enumerate_tuples(types, i + 1, tuple, emit);
            tuple.pop_back();
        }
    }

    int ground_atom(const Atom& atom, const std::map<std::string, std::string>& binding) const {
        auto decl = predicates_.find(atom.head);
        if (decl == predicates_.end()) {
            throw ParseError("unknown predicate: " + atom.head, atom.line, atom.col);
        }
        if (decl->second.size() != atom.args.size()) {
            throw ParseError("wrong arity for predicate " + atom.head, atom.line, atom.col);
        }
        std::string name = atom.head;
        for (const std::string& arg : atom.args) {
            std::string value;
            if (!arg.empty() && arg[0] == '?') {
                auto it = binding.find(arg);
                if (it == binding.end()) {
                    throw ParseError("unbound parameter " + arg, atom.line, atom.col);
                }
                value = it->second;
            } else {
                if (!object_types_.count(arg)) {
                    throw ParseError("unknown object '" + arg + "' in atom " + atom.head,
                                     atom.line, atom.col);
                }
                value = arg;
            }
            name += " " + value;
        }
        int index = universe_->index_of(name);
        if (index < 0) {
            throw ParseError("unknown fluent: (" + name + ")", atom.line, atom.col);
        }
        return index;
    }

    std::shared_ptr<const std::vector<ActionDef>> ground_domain(const DomainDef& domain) {
        std::vector<ActionDef> grounded;
        const int n = universe_->size();
        for (const ActionSchema& schema : domain.actions) {
            std::vector<std::string> param_types;
            for (const TypedName& p : schema.params) {
                if (!domain.types.count(p.type)) {
                    throw std::invalid_argument("action " + schema.name + " uses unknown type " +
                                                p.type);
                }
                param_types.push_back(p.type);
            }
            std::vector<std::string> tuple;
            enumerate_tuples(param_types, 0, tuple, [&](const std::vector<std::string>& args) {
                std::map<std::string, std::string> binding;
                for (std::size_t i = 0; i < args.size(); ++i) {
                    binding[schema.params[i].name] = args[i];
                }
                ActionDef a;
                a.name = schema.name;
                for (const std::string& arg : args) a.name += " " + arg;
                a.pre = FluentSet(n);
                a.add = FluentSet(n);
                a.del = FluentSet(n);
                for (const Atom& atom : schema.pre) a.pre.set(ground_atom(atom, binding));
                for (const Atom& atom : schema.add) a.add.set(ground_atom(atom, binding));
                for (const Atom& atom : schema.del) a.del.set(ground_atom(atom, binding));
                // Self-contradictory instantiations (add ∩ del nonempty, e.g.
                // a move grounded with from == to) are dropped.
                if (a.add.intersects(a.del)) return;
                grounded.push_back(std::move(a));
            });
        }
        return make_action_set(*universe_, std::move(grounded));
    }

    FluentSet ground_atom_set(const std::vector<Atom>& atoms) const {
        FluentSet set(universe_->size());
        static const std::map<std::string, std::string> empty_binding;
        for (const Atom& atom : atoms) set.set(ground_atom(atom, empty_binding));
        return set;
    }

    TaskSpec ground_tasks() {
        TaskSpec spec;
        FluentSet default_init = ground_atom_set(problem_.init);
        if (problem_.tasks.empty()) {
            if (!problem_.goal) {
                throw std::invalid_argument("problem needs a (:goal ...) or (:task ...) blocks");
            }
            spec.tasks.push_back({default_init, ground_atom_set(*problem_.goal)});
            spec.probabilities.push_back(1.0);
            return spec;
        }
        bool any_prob = false, all_prob = true;
        for (const TaskDef& t : problem_.tasks) {
            if (t.prob) any_prob = true;
            else all_prob = false;
        }
        if (any_prob && !all_prob) {
            throw std::invalid_argument("either all tasks or none carry (:prob ...)");
        }
        double sum = 0.0;
        for (const TaskDef& t : problem_.tasks) {
            Task task;
            task.init = t.init ? ground_atom_set(*t.init) : default_init;
            task.goal = ground_atom_set(t.goal);
            spec.tasks.push_back(std::move(task));
            double p = t.prob ? *t.prob : 1.0 / problem_.tasks.size();
            if (p < 0.0) throw std::invalid_argument("task probabilities must be nonnegative");
            spec.probabilities.push_back(p);
            sum += p;
        }
        if (std::abs(sum - 1.0) > 1e-9) {
            throw std::invalid_argument("task probabilities sum to " + std::to_string(sum) +
                                        ", expected 1");
        }
        return spec;
    }

    const DomainDef& robot_;
    const DomainDef& human_;
    const ProblemDef& problem_;
    std::map<std::string, std::vector<std::string>> objects_by_type_;
    std::map<std::string, std::string> object_types_;
    std::map<std::string, std::vector<std::string>> predicates_;
    std::shared_ptr<const FluentTable> universe_;
};

std::vector<std::string> split_tokens(const std::string& name) {
    std::vector<std::string> out;
    std::istringstream in(name);
    std::string tok;
    while (in >> tok) out.push_back(tok);
    return out;
}

std::string mangle_action_name(const std::string& grounded_name) {
    std::string out = grounded_name;
    std::replace(out.begin(), out.end(), ' ', '+');
    return out;
}

void write_atom(std::ostream& out, const std::string& fluent_name) {
    out << '(' << fluent_name << ')';
}

std::string serialize_domain(const std::string& domain_name, const FluentTable& fluents,
                             const std::vector<ActionDef>& actions) {
    // Grounded form: predicates over untyped objects, parameterless actions.
    std::map<std::string, std::size_t> heads;  // head -> arity
    for (const std::string& name : fluents.names()) {
        auto tokens = split_tokens(name);
        heads[tokens[0]] = std::max(heads[tokens[0]], tokens.size() - 1);
    }
    std::ostringstream out;
    out << "(define (domain " << domain_name << ")\n";
    out << "  (:predicates";
    for (const auto& [head, arity] : heads) {
        out << " (" << head;
        for (std::size_t i = 0; i < arity; ++i) out << " ?a" << i << " - object";
        out << ")";
    }
    out << ")\n";
    for (const ActionDef& a : actions) {
        out << "  (:action " << mangle_action_name(a.name) << "\n";
        out << "    :parameters ()\n";
        out << "    :precondition (and";
        for (int i : a.pre.indices()) {
            out << ' ';
            write_atom(out, fluents.name(i));
        }
        out << ")\n    :effect (and";
        for (int i : a.add.indices()) {
            out << ' ';
            write_atom(out, fluents.name(i));
        }
        for (int i : a.del.indices()) {
            out << " (not ";
            write_atom(out, fluents.name(i));
            out << ')';
        }
        out << "))\n";
    }
    out << ")\n";
    return out.str();
}

}  // namespace

std::string ModelPair::fingerprint() const {
    return robot.fingerprint() + "#" + human.fingerprint();
}

ParsedModel parse_model_pair(const std::string& robot_domain_text,
                             const std::string& human_domain_text,
                             const std::string& problem_text) {
    DomainDef robot = parse_domain(robot_domain_text);
    DomainDef human = parse_domain(human_domain_text);
    ProblemDef problem = parse_problem(problem_text);
    Grounder grounder(robot, human, problem);
    return grounder.ground();
}

SerializedPair serialize_model_pair(const ModelPair& pair, const TaskSpec& tasks) {
    SerializedPair out;
    out.robot_domain = serialize_domain("robot", pair.robot.fluents(), pair.robot.actions());
    out.human_domain = serialize_domain("human", pair.human.fluents(), pair.human.actions());

    std::set<std::string> objects;
    for (const std::string& name : pair.universe->names()) {
        auto tokens = split_tokens(name);
        for (std::size_t i = 1; i < tokens.size(); ++i) objects.insert(tokens[i]);
    }
    std::ostringstream p;
    p.precision(17);  // probabilities must survive the round trip
    p << "(define (problem tasks)\n  (:domain robot)\n  (:objects";
    for (const std::string& obj : objects) p << ' ' << obj;
    p << " - object)\n  (:init";
    for (int i : tasks.tasks.front().init.indices()) {
        p << ' ';
        write_atom(p, pair.universe->name(i));
    }
    p << ")\n";
    for (std::size_t t = 0; t < tasks.tasks.size(); ++t) {
        p << "  (:task (:init";
        for (int i : tasks.tasks[t].init.indices()) {
            p << ' ';
            write_atom(p, pair.universe->name(i));
        }
        p << ") (:goal (and";
        for (int i : tasks.tasks[t].goal.indices()) {
            p << ' ';
            write_atom(p, pair.universe->name(i));
        }
        p << ")) (:prob " << tasks.probabilities[t] << "))\n";
    }
    p << ")\n";
    out.problem = p.str();
    return out;
}

DesignSpec parse_design_spec(const std::string& text, const ModelPair& pair) {
    std::vector<Token> tokens = tokenize(text);
    std::size_t pos = 0;
    DesignSpec spec;

    auto peek = [&]() -> const Token& {
        if (pos >= tokens.size()) throw ParseError("unexpected end of design spec", 0, 0);
        return tokens[pos];
    };
    auto next = [&]() -> const Token& {
        const Token& t = peek();
        ++pos;
        return t;
    };
    auto expect = [&](const std::string& text_) {
        const Token& t = next();
        if (t.text != text_) throw ParseError("expected '" + text_ + "', got '" + t.text + "'", t.line, t.col);
    };
    auto number = [&]() {
        const Token& t = next();
        try {
            std::size_t used = 0;
            double v = std::stod(t.text, &used);
            if (used != t.text.size()) throw std::invalid_argument("");
            return v;
        } catch (const std::exception&) {
            throw ParseError("expected a number, got '" + t.text + "'", t.line, t.col);
        }
    };
    auto symbol_list = [&]() {
        expect("(");
        std::vector<std::string> out;
        while (!(peek().is_punct && peek().text == ")")) {
            const Token& t = next();
            if (t.is_punct) throw ParseError("unexpected '" + t.text + "' in list", t.line, t.col);
            out.push_back(t.text);
        }
        next();  // ')'
        return out;
    };
    // ((p a) (q b c)) -> {"p a", "q b c"}
    auto fluent_list = [&]() {
        expect("(");
        std::vector<std::string> out;
        while (!(peek().is_punct && peek().text == ")")) {
            out.push_back(join_tokens(symbol_list()));
        }
        next();
        return out;
    };

    while (pos < tokens.size()) {
        const Token& t = next();
        if (t.text == "weights") {
            expect("{");
            while (!(peek().is_punct && peek().text == "}")) {
                const Token& key = next();
                if (key.text == "alpha") spec.weights.alpha = number();
                else if (key.text == "beta") spec.weights.beta = number();
                else if (key.text == "kappa") spec.weights.kappa = number();
                else throw ParseError("unknown weight: " + key.text, key.line, key.col);
            }
            next();
        } else if (t.text == "gamma") {
            spec.gamma = number();
        } else if (t.text == "horizon") {
            spec.horizon = static_cast<int>(number());
        } else if (t.text == "time-limit-secs") {
            spec.time_limit_secs = number();
        } else if (t.text == "max-design-size") {
            spec.max_design_size = static_cast<int>(number());
        } else if (t.text == "modification") {
            expect("{");
            DesignModification mod;
            bool saw_kind = false;
            while (!(peek().is_punct && peek().text == "}")) {
                const Token& key = next();
                if (key.text == "id") {
                    mod.id = next().text;
                } else if (key.text == "kind") {
                    const Token& kind = next();
                    auto parsed = design_kind_from_string(kind.text);
                    if (!parsed) throw ParseError("unknown modification kind: " + kind.text, kind.line, kind.col);
                    mod.kind = *parsed;
                    saw_kind = true;
                } else if (key.text == "target-action") {
                    mod.target = symbol_list();
                } else if (key.text == "removed-for") {
                    mod.endpoints = symbol_list();
                } else if (key.text == "added-precondition") {
                    mod.payload = fluent_list();
                } else if (key.text == "cost") {
                    mod.cost = number();
                } else {
                    throw ParseError("unknown modification field: " + key.text, key.line, key.col);
                }
            }
            next();
            if (mod.id.empty()) throw std::invalid_argument("modification without an id");
            if (!saw_kind) throw std::invalid_argument("modification " + mod.id + " without a kind");
            validate_design(mod, pair);
            spec.modifications.push_back(std::move(mod));
        } else {
            throw ParseError("unknown design-spec entry: " + t.text, t.line, t.col);
        }
    }
    if (spec.gamma < 0.0 || spec.gamma > 1.0) {
        throw std::invalid_argument("gamma must be in [0, 1]");
    }
    if (spec.horizon < 1) throw std::invalid_argument("horizon must be >= 1");
    std::set<std::string> ids;
    for (const DesignModification& m : spec.modifications) {
        if (!ids.insert(m.id).second) {
            throw std::invalid_argument("duplicate modification id: " + m.id);
        }
    }
    return spec;
}

}  // namespace exdesign
