#pragma once

// Honeypot-management reward:
//   R = a * honey / max(security, floor)
//     + b * delta_resources / total_resources
//     + c * justified_cfh / max(cry_wolf, floor)

#include "agentx/world.hpp"

#include <span>

namespace agentx {

struct RewardParams {
    double a = 1.0;
    double b = 1.0;
    double c = 1.0;
    long denominator_floor = 1;

    friend bool operator==(const RewardParams&, const RewardParams&) = default;
};

struct RewardInputs {
    long honey_events = 0;
    long security_events = 0;
    long delta_resources = 0;
    long total_resources = 1;
    long justified_cfh = 0;
    long cw = 0;

    friend bool operator==(const RewardInputs&, const RewardInputs&) = default;
};

struct RewardTerms {
    double honey = 0.0;
    double resource = 0.0;
    double cfh = 0.0;

    double total() const { return honey + resource + cfh; }
};

RewardTerms reward_terms(const RewardParams& p, const RewardInputs& x);
double reward(const RewardParams& p, const RewardInputs& x);

enum class CfhVerdict { Justified, CryWolf };

// Builds the inputs for one accounting period from ground truth. Only the
// harness calls this; the agent never sees truth_malicious.
RewardInputs accumulate_reward_inputs(std::span<const WorldEvent> period_events,
                                      std::span<const Node> nodes,
                                      std::span<const CfhVerdict> cries_for_help,
                                      long available_at_action, long last_action_delta,
                                      Tick period_ticks);

}  // namespace agentx
