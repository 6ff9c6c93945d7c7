#ifndef EXDESIGN_DESIGN_HPP
#define EXDESIGN_DESIGN_HPP

#include <optional>
#include <string>
#include <vector>

namespace exdesign {

enum class DesignKind {
    PruneHumanAction,      // remove matching actions from the human model
    PruneBothAction,       // remove matching actions from both models
    AddPreconditionHuman,  // extend pre() of matching actions in the human model
    AddPreconditionBoth,   // extend pre() in both models
    BlockTransition,       // remove the human move actions between two endpoints
};

const char* to_string(DesignKind kind);
std::optional<DesignKind> design_kind_from_string(const std::string& text);

// One atomic environment edit. Applying it twice equals applying it once,
// so design subsets (not sequences) are searched.
struct DesignModification {
    std::string id;
    DesignKind kind = DesignKind::PruneHumanAction;
    std::vector<std::string> target;     // action-name token prefix to match
    std::vector<std::string> endpoints;  // BlockTransition: the two endpoints
    std::vector<std::string> payload;    // AddPrecondition*: ground fluent names
    double cost = 1.0;
};

struct ObjectiveWeights {
    double alpha = 1.0;
    double beta = 0.25;
    double kappa = 0.25;
};

struct LongitudinalParams {
    double gamma = 0.9;
    int horizon = 1;
};

// Scalar multiplier (1 - gamma^T) / (1 - gamma) applied to the expected
// inexplicability; T in the gamma -> 1 limit.
double longitudinal_factor(const LongitudinalParams& p);

struct DesignSpec {
    std::vector<DesignModification> modifications;
    ObjectiveWeights weights;
    double gamma = 0.9;
    int horizon = 1;
    double time_limit_secs = 0.0;  // 0 = no limit
    std::optional<int> max_design_size;

    LongitudinalParams longitudinal() const { return {gamma, horizon}; }
};

}  // namespace exdesign

#endif
