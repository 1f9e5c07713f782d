#pragma once

#include "agentx/comms.hpp"
#include "agentx/constraints.hpp"
#include "agentx/decision.hpp"
#include "agentx/guardrails.hpp"
#include "agentx/learning.hpp"
#include "agentx/reward.hpp"
#include "agentx/world.hpp"

#include <json.hpp>

#include <optional>
#include <string>
#include <vector>

namespace agentx {

struct AgentParams {
    RewardParams reward;
    double alpha = 0.1;
    double gamma = 0.9;
    // Linear annealing across training episodes.
    double epsilon_start = 0.3;
    double epsilon_end = 0.05;
    double eval_epsilon = 0.0;
    BinThresholds bins;
    // Sensing window and reward accounting period, in ticks.
    long window = 20;
    // Ticks between decisions.
    long decision_interval = 20;
    // Online-learner confidence in a state is visits / (visits + halfsat).
    double confidence_halfsat = 2.0;

    friend bool operator==(const AgentParams&, const AgentParams&) = default;
};

struct CascadeParams {
    StageCosts costs = kDefaultStageCosts;
    FailSafeProfile failsafe = FailSafeProfile::NoAction;
    OperatorPolicy op;
    int game_horizon = 2;
    std::size_t escalation_options = 3;

    friend bool operator==(const CascadeParams&, const CascadeParams&) = default;
};

struct EmconStep {
    Tick from_tick = 0;
    EmconLevel level = EmconLevel::Open;

    friend bool operator==(const EmconStep&, const EmconStep&) = default;
};

struct ScheduledViolation {
    Tick tick = 0;
    std::string peer;
    Violation kind = Violation::MissedHeartbeat;

    friend bool operator==(const ScheduledViolation&, const ScheduledViolation&) = default;
};

struct CommsParams {
    std::vector<std::string> peers{"peer-1", "peer-2"};
    long violation_threshold = 3;
    Tick heartbeat_interval = 100;
    std::vector<ScheduledViolation> violations;

    friend bool operator==(const CommsParams&, const CommsParams&) = default;
};

struct OfflineParams {
    long min_support = 5;
    // A labelled sample counts as a success when its reward exceeds this.
    double success_threshold = 0.0;

    friend bool operator==(const OfflineParams&, const OfflineParams&) = default;
};

struct ScenarioConfig {
    std::uint64_t seed = 1;
    Tick episode_ticks = 2000;
    WorldConfig world;
    AgentParams agent;
    CascadeParams cascade;
    // Guardrail table, stage thresholds and the annotated action catalog.
    Ruleset rules;
    EnvConstraints constraints;
    std::vector<EmconStep> emcon_schedule{{0, EmconLevel::Open}};
    CommsParams comms;
    OfflineParams offline;
    // Mutate the live ruleset at this tick (tamper drill).
    std::optional<Tick> tamper_tick;

    EmconLevel emcon_at(Tick tick) const;
    EnvConstraints constraints_at(Tick tick) const;

    friend bool operator==(const ScenarioConfig&, const ScenarioConfig&) = default;
};

// Defaults plus one campaign: the reference scenario.
ScenarioConfig default_config();

// Throws ConfigInvalid on unknown keys, type errors, or broken invariants.
ScenarioConfig config_from_json(const nlohmann::json& j);
ScenarioConfig parse_config(const std::string& text);  // comments allowed
ScenarioConfig load_config(const std::string& path);
nlohmann::json to_json(const ScenarioConfig& config);

void validate(const ScenarioConfig& config);

}  // namespace agentx
