#pragma once

#include "agentx/actions.hpp"

#include <optional>
#include <string>

namespace agentx {

// Per-decision allowances; nothing here accumulates across decisions.
struct EnvConstraints {
    bool connectivity = true;
    long time_budget = 0;
    long power_budget = 0;
    double safety_margin = 1.0;
    EmconLevel emcon_level = EmconLevel::Open;

    friend bool operator==(const EnvConstraints&, const EnvConstraints&) = default;
};

}  // namespace agentx

namespace agentx {

// Decision stages in evaluation order, cheapest first.
enum class StageId { PatternRecognition, OnlineLearning, HumanEscalation, GameSearch, FailSafe };

const char* to_string(StageId stage);
std::optional<StageId> stage_from_string(const std::string& name);

}  // namespace agentx
