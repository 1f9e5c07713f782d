#include "agentx/constraints.hpp"

#include <array>

namespace agentx {

namespace {
constexpr std::array<const char*, 5> kStageNames = {"PatternRecognition", "OnlineLearning",
                                                    "HumanEscalation", "GameSearch", "FailSafe"};
}

const char* to_string(StageId stage) { return kStageNames[static_cast<std::size_t>(stage)]; }

std::optional<StageId> stage_from_string(const std::string& name) {
    for (std::size_t i = 0; i < kStageNames.size(); ++i) {
        if (name == kStageNames[i]) return static_cast<StageId>(i);
    }
    return std::nullopt;
}

}  // namespace agentx
