#pragma once

#include <string>

namespace kerap::agents {

/// The five prompting strategies selectable at run time. Kerap and Iterative
/// are two-stage conversations; the rest are single-stage.
enum class Strategy { Direct, StepByStep, KgAugmented, Iterative, Kerap };

const char* to_string(Strategy s);
Strategy strategy_from_string(const std::string& name);
bool is_two_stage(Strategy s);
bool uses_kg(Strategy s);

inline constexpr Strategy kAllStrategies[] = {
    Strategy::Direct, Strategy::StepByStep, Strategy::KgAugmented, Strategy::Iterative,
    Strategy::Kerap};

}  // namespace kerap::agents
