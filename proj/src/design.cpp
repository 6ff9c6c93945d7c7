#include "exdesign/design.hpp"

#include <cmath>
#include <stdexcept>

namespace exdesign {

const char* to_string(DesignKind kind) {
    switch (kind) {
        case DesignKind::PruneHumanAction: return "prune-human-action";
        case DesignKind::PruneBothAction: return "prune-both-action";
        case DesignKind::AddPreconditionHuman: return "add-precondition-human";
        case DesignKind::AddPreconditionBoth: return "add-precondition-both";
        case DesignKind::BlockTransition: return "block-transition";
    }
    return "?";
}

std::optional<DesignKind> design_kind_from_string(const std::string& text) {
    if (text == "prune-human-action") return DesignKind::PruneHumanAction;
    if (text == "prune-both-action") return DesignKind::PruneBothAction;
    if (text == "add-precondition-human") return DesignKind::AddPreconditionHuman;
    if (text == "add-precondition-both") return DesignKind::AddPreconditionBoth;
    if (text == "block-transition") return DesignKind::BlockTransition;
    return std::nullopt;
}

double longitudinal_factor(const LongitudinalParams& p) {
    if (p.gamma < 0.0 || p.gamma > 1.0) throw std::invalid_argument("gamma must be in [0, 1]");
    if (p.horizon < 1) throw std::invalid_argument("horizon must be >= 1");
    if (p.gamma == 1.0) return static_cast<double>(p.horizon);
    return (1.0 - std::pow(p.gamma, p.horizon)) / (1.0 - p.gamma);
}

}  // namespace exdesign
