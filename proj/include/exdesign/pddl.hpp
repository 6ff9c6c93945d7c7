#ifndef EXDESIGN_PDDL_HPP
#define EXDESIGN_PDDL_HPP

#include <memory>
#include <stdexcept>
#include <string>
#include <vector>

#include "exdesign/design.hpp"
#include "exdesign/model.hpp"

namespace exdesign {

struct ParseError : std::runtime_error {
    ParseError(const std::string& message, int line, int col)
        : std::runtime_error(message + " (line " + std::to_string(line) + ", col " +
                             std::to_string(col) + ")"),
          line(line),
          col(col) {}
    int line;
    int col;
};

struct Task {
    State init;
    FluentSet goal;
};

// The k tasks and the categorical distribution over them.
struct TaskSpec {
    std::vector<Task> tasks;
    std::vector<double> probabilities;
};

// Robot model and human mental model grounded over one fluent universe.
// Every robot action name has a human action of the same name; actions
// present only in the human model are listed in human_only.
struct ModelPair {
    std::shared_ptr<const FluentTable> universe;
    PlanningProblem robot;
    PlanningProblem human;
    std::vector<std::string> human_only;

    std::string fingerprint() const;
};

struct ParsedModel {
    ModelPair pair;
    TaskSpec tasks;
};

// Parses and grounds a robot domain, a human domain and a shared problem
// file. Throws ParseError on syntax errors and std::invalid_argument on
// semantic errors (unknown fluents, broken action mapping, bad probabilities).
ParsedModel parse_model_pair(const std::string& robot_domain_text,
                             const std::string& human_domain_text,
                             const std::string& problem_text);

struct SerializedPair {
    std::string robot_domain;
    std::string human_domain;
    std::string problem;
};

// Grounded serialization. serialize ∘ parse is idempotent: feeding the
// output back through parse_model_pair and serializing again reproduces
// the same three texts byte for byte.
SerializedPair serialize_model_pair(const ModelPair& pair, const TaskSpec& tasks);

// Parses the design-space file and validates every modification against the
// model pair (unknown kinds, unresolvable targets and unknown payload
// fluents are hard errors).
DesignSpec parse_design_spec(const std::string& text, const ModelPair& pair);

}  // namespace exdesign

#endif
