#include "agentx/decision.hpp"

#include <algorithm>
#include <fstream>

namespace agentx {

namespace {

constexpr std::array<const char*, 7> kRejectNames = {
    "Unavailable", "NoProposal", "BelowThreshold", "GuardrailVeto",
    "OperatorDeclined", "OperatorTimeout", "ModelIncomplete"};

constexpr std::array<const char*, 3> kOperatorNames = {"ApproveFirst", "Decline", "ApproveListed"};
constexpr std::array<const char*, 3> kFailSafeNames = {"NoAction", "LowThresholdAct", "Terminate"};

template <typename Enum, std::size_t N>
std::optional<Enum> lookup(const std::array<const char*, N>& names, const std::string& name) {
    for (std::size_t i = 0; i < N; ++i) {
        if (name == names[i]) return static_cast<Enum>(i);
    }
    return std::nullopt;
}

}  // namespace

const char* to_string(RejectReason reason) { return kRejectNames[static_cast<std::size_t>(reason)]; }
std::optional<RejectReason> reject_reason_from_string(const std::string& name) {
    return lookup<RejectReason>(kRejectNames, name);
}
const char* to_string(OperatorPolicy::Kind kind) { return kOperatorNames[static_cast<std::size_t>(kind)]; }
std::optional<OperatorPolicy::Kind> operator_kind_from_string(const std::string& name) {
    return lookup<OperatorPolicy::Kind>(kOperatorNames, name);
}
const char* to_string(FailSafeProfile profile) { return kFailSafeNames[static_cast<std::size_t>(profile)]; }
std::optional<FailSafeProfile> failsafe_from_string(const std::string& name) {
    return lookup<FailSafeProfile>(kFailSafeNames, name);
}

bool stage_available(StageId stage, const EnvConstraints& c, const StageCosts& costs) {
    const auto& cost = costs[static_cast<std::size_t>(stage)];
    const bool fits = c.time_budget >= cost.time && c.power_budget >= cost.power;
    switch (stage) {
        case StageId::PatternRecognition:
        case StageId::FailSafe:
            return true;
        case StageId::OnlineLearning:
        case StageId::GameSearch:
            return fits;
        case StageId::HumanEscalation:
            return c.connectivity && c.emcon_level != EmconLevel::Silent && fits;
    }
    return false;
}

void PatternTable::insert(const StateKey& key, PatternEntry entry) {
    if (!(entry.confidence >= 0.0 && entry.confidence <= 1.0)) {
        throw Error(ErrorCode::InvalidInput, "pattern confidence must lie in [0, 1]");
    }
    entries_[key.index()] = entry;
}

std::optional<ProposedAction> pattern_match(const PatternTable& table, const StateKey& signature) {
    const auto it = table.entries().find(signature.index());
    if (it == table.entries().end()) return std::nullopt;
    return ProposedAction{it->second.action, it->second.confidence, StageId::PatternRecognition};
}

nlohmann::json to_json(const PatternTable& table) {
    nlohmann::json j = nlohmann::json::object();
    for (const auto& [key, entry] : table.entries()) {
        j[StateKey::from_index(key).to_string()] = {{"action", to_string(entry.action)},
                                                    {"confidence", entry.confidence}};
    }
    return j;
}

PatternTable pattern_table_from_json(const nlohmann::json& j) {
    PatternTable table;
    try {
        for (const auto& [key, entry] : j.items()) {
            const auto action = action_from_string(entry.at("action").get<std::string>());
            if (!action) throw Error(ErrorCode::InvalidInput, "unknown action in pattern table");
            table.insert(StateKey::parse(key), PatternEntry{*action, entry.at("confidence").get<double>()});
        }
    } catch (const nlohmann::json::exception& e) {
        throw Error(ErrorCode::InvalidInput, std::string("malformed pattern table: ") + e.what());
    }
    return table;
}

void save_pattern_table(const PatternTable& table, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw Error(ErrorCode::InvalidInput, "cannot write " + path);
    out << to_json(table).dump(2) << '\n';
}

PatternTable load_pattern_table(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error(ErrorCode::InvalidInput, "cannot read " + path);
    try {
        return pattern_table_from_json(nlohmann::json::parse(in));
    } catch (const nlohmann::json::parse_error& e) {
        throw Error(ErrorCode::InvalidInput, std::string("malformed pattern table: ") + e.what());
    }
}

std::optional<ProposedAction> escalate(const OperatorPolicy& op, const std::vector<ActionId>& options,
                                       long time_budget) {
    if (op.latency > time_budget) {
        throw Error(ErrorCode::OperatorTimeout, "operator latency " + std::to_string(op.latency) +
                                                    " exceeds time budget " + std::to_string(time_budget));
    }
    switch (op.kind) {
        case OperatorPolicy::Kind::ApproveFirst:
            if (options.empty()) return std::nullopt;
            return ProposedAction{options.front(), 1.0, StageId::HumanEscalation};
        case OperatorPolicy::Kind::Decline:
            return std::nullopt;
        case OperatorPolicy::Kind::ApproveListed:
            for (ActionId a : options) {
                if (std::find(op.approved.begin(), op.approved.end(), a) != op.approved.end()) {
                    return ProposedAction{a, 1.0, StageId::HumanEscalation};
                }
            }
            return std::nullopt;
    }
    return std::nullopt;
}

ProposedAction failsafe(FailSafeProfile profile, const PatternTable& table) {
    switch (profile) {
        case FailSafeProfile::NoAction:
            break;
        case FailSafeProfile::Terminate:
            return ProposedAction{ActionId::TerminateSelf, 1.0, StageId::FailSafe};
        case FailSafeProfile::LowThresholdAct: {
            const PatternEntry* best = nullptr;
            for (const auto& [key, entry] : table.entries()) {
                if (!best || entry.confidence > best->confidence) best = &entry;
            }
            if (best) return ProposedAction{best->action, best->confidence, StageId::FailSafe};
            break;
        }
    }
    return ProposedAction{ActionId::NoOp, 1.0, StageId::FailSafe};
}

ArbiterVerdict arbiter_review(const ProposedAction& p, const EnvConstraints& c, const GuardrailSet& g) {
    if (p.confidence < g.rules.stage_thresholds[static_cast<std::size_t>(p.stage)]) {
        return ArbiterVerdict{false, RejectReason::BelowThreshold, std::nullopt};
    }
    if (const auto veto = check(g.rules.catalog.spec(p.action), c, g)) {
        return ArbiterVerdict{false, RejectReason::GuardrailVeto, veto};
    }
    return ArbiterVerdict{true, RejectReason::BelowThreshold, std::nullopt};
}

Decision decide(const EnvConstraints& c, const StageHandles& h, FailSafeProfile profile,
                const AvailabilityFn& available, const ArbiterFn& arbiter) {
    Decision d;
    auto finish = [&](const ProposedAction& p) {
        d.action = p.action;
        d.provenance = p.stage;
        d.confidence = p.confidence;
        if (h.feedback) h.feedback(d);
        return d;
    };
    auto try_stage = [&](StageId stage, auto&& propose) -> std::optional<ProposedAction> {
        if (!available(stage, c)) {
            d.rejected.push_back({stage, RejectReason::Unavailable, std::nullopt, std::nullopt});
            return std::nullopt;
        }
        std::optional<ProposedAction> p;
        try {
            p = propose();
        } catch (const Error& e) {
            const auto reason = e.code() == ErrorCode::OperatorTimeout   ? RejectReason::OperatorTimeout
                                : e.code() == ErrorCode::ModelIncomplete ? RejectReason::ModelIncomplete
                                                                         : RejectReason::NoProposal;
            d.rejected.push_back({stage, reason, std::nullopt, std::nullopt});
            return std::nullopt;
        }
        if (!p) {
            const auto reason = stage == StageId::HumanEscalation ? RejectReason::OperatorDeclined
                                                                  : RejectReason::NoProposal;
            d.rejected.push_back({stage, reason, std::nullopt, std::nullopt});
            return std::nullopt;
        }
        p->stage = stage;
        const auto verdict = arbiter(*p, c);
        if (!verdict.accepted) {
            d.rejected.push_back({stage, verdict.reason, p->action, verdict.veto});
            return std::nullopt;
        }
        return p;
    };

    auto none = []() -> std::optional<ProposedAction> { return std::nullopt; };

    if (auto p = try_stage(StageId::PatternRecognition, h.pattern ? h.pattern : none)) return finish(*p);
    if (auto p = try_stage(StageId::OnlineLearning, h.online ? h.online : none)) return finish(*p);
    if (auto p = try_stage(StageId::HumanEscalation, h.escalation ? h.escalation : none)) return finish(*p);
    if (auto p = try_stage(StageId::GameSearch, h.game ? h.game : none)) return finish(*p);

    // Fail-safe: total. A rejected fail-safe proposal degrades to NoOp.
    static const PatternTable kEmpty;
    ProposedAction last = failsafe(profile, h.patterns ? *h.patterns : kEmpty);
    const auto verdict = arbiter(last, c);
    if (!verdict.accepted) {
        d.rejected.push_back({StageId::FailSafe, verdict.reason, last.action, verdict.veto});
        last = ProposedAction{ActionId::NoOp, 1.0, StageId::FailSafe};
    }
    return finish(last);
}

Decision decide(const EnvConstraints& c, const StageHandles& handles, FailSafeProfile profile,
                const StageCosts& costs, const GuardrailSet& g) {
    return decide(
        c, handles, profile,
        [&](StageId s, const EnvConstraints& cc) { return stage_available(s, cc, costs); },
        [&](const ProposedAction& p, const EnvConstraints& cc) { return arbiter_review(p, cc, g); });
}

}  // namespace agentx
