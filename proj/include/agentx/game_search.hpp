#pragma once

// Short-horizon expectimax: the defender maximizes, the attacker's response
// is a chance node.

#include "agentx/core.hpp"

#include <map>
#include <optional>
#include <utility>
#include <vector>

namespace agentx {

using GameState = std::size_t;
using GameAction = int;

struct AttackerResponse {
    // Unset on every response of a node means "uniform".
    std::optional<double> probability;
    GameState next_state = 0;
    double payoff = 0.0;
};

class OutcomeModel {
public:
    virtual ~OutcomeModel() = default;
    // Defender actions available in `state`; empty means terminal.
    virtual std::vector<GameAction> actions(GameState state) const = 0;
    // nullopt when the model does not define (state, action).
    virtual std::optional<std::vector<AttackerResponse>> responses(GameState state, GameAction action) const = 0;
};

class TabularOutcomeModel : public OutcomeModel {
public:
    void define(GameState state, GameAction action, std::vector<AttackerResponse> responses);
    void declare_action(GameState state, GameAction action);

    std::vector<GameAction> actions(GameState state) const override;
    std::optional<std::vector<AttackerResponse>> responses(GameState state, GameAction action) const override;

private:
    std::map<GameState, std::vector<GameAction>> actions_;
    std::map<std::pair<GameState, GameAction>, std::vector<AttackerResponse>> table_;
};

struct PlanResult {
    GameAction action = 0;
    double value = 0.0;
    // margin / (1 + margin) between the best and runner-up root values.
    double confidence = 0.0;
};

// Throws ModelIncomplete when a reachable (state, action) is undefined or the
// root has no actions. Ties go to the lowest action id.
PlanResult game_search(const OutcomeModel& model, GameState state, int horizon);

}  // namespace agentx
