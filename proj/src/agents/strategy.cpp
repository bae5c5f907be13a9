#include "kerap/agents/strategy.hpp"

#include "kerap/util/errors.hpp"
#include "kerap/util/strings.hpp"

namespace kerap::agents {

const char* to_string(Strategy s) {
    switch (s) {
        case Strategy::Direct: return "direct";
        case Strategy::StepByStep: return "step-by-step";
        case Strategy::KgAugmented: return "kg-augmented";
        case Strategy::Iterative: return "iterative";
        default: return "kerap";
    }
}

Strategy strategy_from_string(const std::string& name) {
    const auto lowered = util::to_lower(name);
    if (lowered == "direct") return Strategy::Direct;
    if (lowered == "step-by-step" || lowered == "stepbystep") return Strategy::StepByStep;
    if (lowered == "kg-augmented" || lowered == "kgaugmented") return Strategy::KgAugmented;
    if (lowered == "iterative") return Strategy::Iterative;
    if (lowered == "kerap") return Strategy::Kerap;
    throw InvalidInputError("unknown strategy: " + name);
}

bool is_two_stage(Strategy s) { return s == Strategy::Iterative || s == Strategy::Kerap; }

bool uses_kg(Strategy s) { return s == Strategy::KgAugmented || s == Strategy::Kerap; }

}  // namespace kerap::agents
