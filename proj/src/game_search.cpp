#include "agentx/game_search.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace agentx {

void TabularOutcomeModel::define(GameState state, GameAction action, std::vector<AttackerResponse> responses) {
    declare_action(state, action);
    table_[{state, action}] = std::move(responses);
}

void TabularOutcomeModel::declare_action(GameState state, GameAction action) {
    auto& list = actions_[state];
    if (std::find(list.begin(), list.end(), action) == list.end()) {
        list.insert(std::upper_bound(list.begin(), list.end(), action), action);
    }
}

std::vector<GameAction> TabularOutcomeModel::actions(GameState state) const {
    const auto it = actions_.find(state);
    return it == actions_.end() ? std::vector<GameAction>{} : it->second;
}

std::optional<std::vector<AttackerResponse>> TabularOutcomeModel::responses(GameState state,
                                                                            GameAction action) const {
    const auto it = table_.find({state, action});
    if (it == table_.end()) return std::nullopt;
    return it->second;
}

namespace {

constexpr double kTieTolerance = 1e-12;

std::vector<double> probabilities(const std::vector<AttackerResponse>& rs, GameState state, GameAction action) {
    const auto explicit_count = std::count_if(rs.begin(), rs.end(), [](const auto& r) { return r.probability.has_value(); });
    auto incomplete = [&](const char* why) {
        return Error(ErrorCode::ModelIncomplete, std::string(why) + " at state " + std::to_string(state) +
                                                     ", action " + std::to_string(action));
    };
    if (rs.empty()) throw incomplete("no attacker responses");
    std::vector<double> p(rs.size(), 1.0 / static_cast<double>(rs.size()));
    if (explicit_count == 0) return p;
    if (explicit_count != static_cast<long>(rs.size())) throw incomplete("partially specified distribution");
    double total = 0.0;
    for (std::size_t i = 0; i < rs.size(); ++i) {
        p[i] = *rs[i].probability;
        if (!(p[i] >= 0.0) || !std::isfinite(p[i])) throw incomplete("invalid probability");
        total += p[i];
    }
    if (std::abs(total - 1.0) > 1e-9) throw incomplete("probabilities do not sum to 1");
    return p;
}

double action_value(const OutcomeModel& model, GameState state, GameAction action, int depth);

double state_value(const OutcomeModel& model, GameState state, int depth) {
    if (depth <= 0) return 0.0;
    const auto actions = model.actions(state);
    if (actions.empty()) return 0.0;
    double best = -std::numeric_limits<double>::infinity();
    for (GameAction a : actions) best = std::max(best, action_value(model, state, a, depth));
    return best;
}

double action_value(const OutcomeModel& model, GameState state, GameAction action, int depth) {
    const auto rs = model.responses(state, action);
    if (!rs) {
        throw Error(ErrorCode::ModelIncomplete,
                    "undefined state " + std::to_string(state) + ", action " + std::to_string(action));
    }
    const auto p = probabilities(*rs, state, action);
    double v = 0.0;
    for (std::size_t i = 0; i < rs->size(); ++i) {
        v += p[i] * ((*rs)[i].payoff + state_value(model, (*rs)[i].next_state, depth - 1));
    }
    return v;
}

}  // namespace

PlanResult game_search(const OutcomeModel& model, GameState state, int horizon) {
    if (horizon < 1) throw Error(ErrorCode::InvalidInput, "horizon must be >= 1");
    auto actions = model.actions(state);
    if (actions.empty()) throw Error(ErrorCode::ModelIncomplete, "no actions at root state " + std::to_string(state));
    std::sort(actions.begin(), actions.end());

    PlanResult result;
    double best = -std::numeric_limits<double>::infinity();
    double runner_up = -std::numeric_limits<double>::infinity();
    for (GameAction a : actions) {
        const double v = action_value(model, state, a, horizon);
        if (v > best + kTieTolerance) {
            runner_up = best;
            best = v;
            result.action = a;
        } else {
            runner_up = std::max(runner_up, v);
        }
    }
    result.value = best;
    if (actions.size() == 1) {
        result.confidence = 1.0;
    } else {
        const double margin = std::max(0.0, best - runner_up);
        result.confidence = margin / (1.0 + margin);
    }
    return result;
}

}  // namespace agentx
