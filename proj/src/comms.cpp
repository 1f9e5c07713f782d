#include "agentx/comms.hpp"

#include <algorithm>
#include <array>

namespace agentx {

namespace {
constexpr std::array<const char*, 4> kMessageNames = {"CryForHelp", "Alert", "ShareBlocklist", "Heartbeat"};
}

const char* to_string(MessageKind kind) { return kMessageNames[static_cast<std::size_t>(kind)]; }

std::optional<MessageKind> message_kind_from_string(const std::string& name) {
    for (std::size_t i = 0; i < kMessageNames.size(); ++i) {
        if (name == kMessageNames[i]) return static_cast<MessageKind>(i);
    }
    return std::nullopt;
}

const char* to_string(TrustState state) { return state == TrustState::Trusted ? "Trusted" : "Broken"; }

const char* to_string(Violation violation) {
    switch (violation) {
        case Violation::BadSignature: return "BadSignature";
        case Violation::FalseBlocklist: return "FalseBlocklist";
        case Violation::MissedHeartbeat: return "MissedHeartbeat";
    }
    return "?";
}

AutonomyLevel sending_level(const Message& msg, const ActionCatalog& catalog) {
    switch (msg.kind) {
        case MessageKind::CryForHelp: return catalog.spec(ActionId::CryForHelp).autonomy_level;
        case MessageKind::ShareBlocklist: return catalog.spec(ActionId::ShareBlocklist).autonomy_level;
        case MessageKind::Alert:
        case MessageKind::Heartbeat: return AutonomyLevel::Reflex;
    }
    return AutonomyLevel::Delegated;
}

SendResult send_check(const Message& msg, EmconLevel emcon, const GuardrailSet& g) {
    if (kMessageEmissionCost > 0 && emcon == EmconLevel::Silent) return {false, VetoReason::EmissionBlocked};
    if (sending_level(msg, g.rules.catalog) > g.gate(emcon)) return {false, VetoReason::AutonomyGate};
    return {true, std::nullopt};
}

SendResult MessageLog::send(const Message& msg, EmconLevel emcon, const GuardrailSet& g) {
    const auto result = send_check(msg, emcon, g);
    if (result.sent) sent_.push_back(msg);
    return result;
}

CfhVerdict classify_cfh(const Message& cfh, std::span<const WorldEvent> world_log, Tick clock) {
    const auto& w = cfh.evidence;
    if (w.from > w.to || w.to > clock) {
        throw Error(ErrorCode::WindowOutOfRange, "evidence window [" + std::to_string(w.from) + ", " +
                                                     std::to_string(w.to) + "] outside log ending at " +
                                                     std::to_string(clock));
    }
    // The log is tick-ordered; find the first event at or after w.from.
    auto it = std::lower_bound(world_log.begin(), world_log.end(), w.from,
                               [](const WorldEvent& e, Tick t) { return e.tick < t; });
    for (; it != world_log.end() && it->tick <= w.to; ++it) {
        if (it->truth_malicious) return CfhVerdict::Justified;
    }
    return CfhVerdict::CryWolf;
}

void TrustLedger::create(const std::string& peer) { records_[peer] = TrustRecord{peer, TrustState::Trusted, 0}; }

const TrustRecord& TrustLedger::record_violation(const std::string& peer, Violation) {
    const auto it = records_.find(peer);
    if (it == records_.end()) throw Error(ErrorCode::UnknownPeer, peer);
    auto& r = it->second;
    ++r.violations;
    if (r.violations >= threshold_) r.state = TrustState::Broken;
    return r;
}

const TrustRecord& TrustLedger::at(const std::string& peer) const {
    const auto it = records_.find(peer);
    if (it == records_.end()) throw Error(ErrorCode::UnknownPeer, peer);
    return it->second;
}

std::vector<std::string> TrustLedger::trusted_peers() const {
    std::vector<std::string> out;
    for (const auto& [peer, r] : records_) {
        if (r.state == TrustState::Trusted) out.push_back(peer);
    }
    return out;
}

}  // namespace agentx
