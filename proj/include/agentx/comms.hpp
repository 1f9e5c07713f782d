#pragma once

// Outbound signalling under EMCON, cry-for-help classification against
// ground truth, and a minimal peer trust ledger.

#include "agentx/guardrails.hpp"
#include "agentx/reward.hpp"
#include "agentx/world.hpp"

#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace agentx {

enum class MessageKind { CryForHelp, Alert, ShareBlocklist, Heartbeat };

const char* to_string(MessageKind kind);
std::optional<MessageKind> message_kind_from_string(const std::string& name);

struct TickRange {
    Tick from = 0;
    Tick to = 0;

    friend bool operator==(const TickRange&, const TickRange&) = default;
};

struct Message {
    MessageKind kind = MessageKind::Heartbeat;
    Tick tick = 0;
    TickRange evidence;                  // CryForHelp
    std::optional<ActionId> action_taken;  // Alert
    std::vector<Address> entries;        // ShareBlocklist

    friend bool operator==(const Message&, const Message&) = default;
};

// Every message leaves the host, so every kind has a non-zero emission cost.
inline constexpr int kMessageEmissionCost = 1;

// Autonomy level of the act of sending `msg`. Cries for help and blocklist
// shares take the catalog level of their action; alerts and heartbeats are
// reflex reporting.
AutonomyLevel sending_level(const Message& msg, const ActionCatalog& catalog);

struct SendResult {
    bool sent = false;
    std::optional<VetoReason> suppressed;
};

class MessageLog {
public:
    SendResult send(const Message& msg, EmconLevel emcon, const GuardrailSet& g);
    const std::vector<Message>& sent() const { return sent_; }

private:
    std::vector<Message> sent_;
};

// Stateless check used by MessageLog::send.
SendResult send_check(const Message& msg, EmconLevel emcon, const GuardrailSet& g);

// Justified iff a malicious event falls inside the evidence window. Throws
// WindowOutOfRange when the window is inverted or reaches past `clock`.
CfhVerdict classify_cfh(const Message& cfh, std::span<const WorldEvent> world_log, Tick clock);

enum class TrustState { Trusted, Broken };
enum class Violation { BadSignature, FalseBlocklist, MissedHeartbeat };

const char* to_string(TrustState state);
const char* to_string(Violation violation);

struct TrustRecord {
    std::string peer;
    TrustState state = TrustState::Trusted;
    long violations = 0;

    friend bool operator==(const TrustRecord&, const TrustRecord&) = default;
};

class TrustLedger {
public:
    explicit TrustLedger(long threshold = 3) : threshold_(threshold) {}

    // Adds a peer, or re-creates a broken one with a clean record.
    void create(const std::string& peer);
    const TrustRecord& record_violation(const std::string& peer, Violation observed);
    const TrustRecord& at(const std::string& peer) const;
    std::vector<std::string> trusted_peers() const;
    long threshold() const { return threshold_; }

private:
    long threshold_;
    std::map<std::string, TrustRecord> records_;
};

}  // namespace agentx
