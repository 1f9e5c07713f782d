#include "agentx/reward.hpp"

#include <algorithm>
#include <cmath>

namespace agentx {

RewardTerms reward_terms(const RewardParams& p, const RewardInputs& x) {
    if (!std::isfinite(p.a) || !std::isfinite(p.b) || !std::isfinite(p.c)) {
        throw Error(ErrorCode::NonFinite, "reward coefficients must be finite");
    }
    if (p.denominator_floor < 1) throw Error(ErrorCode::InvalidInput, "denominator_floor must be >= 1");
    if (x.total_resources <= 0) throw Error(ErrorCode::InvalidInput, "total_resources must be positive");
    if (x.honey_events < 0 || x.security_events < 0 || x.justified_cfh < 0 || x.cw < 0) {
        throw Error(ErrorCode::InvalidInput, "event counts must be non-negative");
    }
    const auto floor = p.denominator_floor;
    RewardTerms t;
    t.honey = p.a * static_cast<double>(x.honey_events) /
              static_cast<double>(std::max(x.security_events, floor));
    t.resource = p.b * static_cast<double>(x.delta_resources) / static_cast<double>(x.total_resources);
    t.cfh = p.c * static_cast<double>(x.justified_cfh) / static_cast<double>(std::max(x.cw, floor));
    return t;
}

double reward(const RewardParams& p, const RewardInputs& x) { return reward_terms(p, x).total(); }

RewardInputs accumulate_reward_inputs(std::span<const WorldEvent> period_events,
                                      std::span<const Node> nodes,
                                      std::span<const CfhVerdict> cries_for_help,
                                      long available_at_action, long last_action_delta,
                                      Tick period_ticks) {
    if (period_ticks == 0) throw Error(ErrorCode::EmptyWindow, "reward period has zero ticks");
    auto on_honeypot = [&](const WorldEvent& e) {
        return e.node.value < nodes.size() && nodes[e.node.value].is_honeypot();
    };
    RewardInputs x;
    for (const auto& e : period_events) {
        switch (e.kind) {
            case EventKind::HoneyTouch:
            case EventKind::DummyFileAccess:
            case EventKind::DummyProcessAlert:
                ++x.honey_events;
                break;
            case EventKind::IdsAlert:
                if (e.truth_malicious && !on_honeypot(e)) ++x.security_events;
                break;
            default:
                break;
        }
    }
    for (auto v : cries_for_help) {
        if (v == CfhVerdict::Justified) {
            ++x.justified_cfh;
        } else {
            ++x.cw;
        }
    }
    x.total_resources = std::max(available_at_action, 1L);
    x.delta_resources = last_action_delta;
    return x;
}

}  // namespace agentx
