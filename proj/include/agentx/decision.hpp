#pragma once

// Staged decision cascade. Stages are tried cheapest first; each must be
// available under the current constraints and its proposal must pass the
// arbiter. The fail-safe stage always produces a decision.

#include "agentx/actions.hpp"
#include "agentx/constraints.hpp"
#include "agentx/guardrails.hpp"
#include "agentx/learning.hpp"

#include <json.hpp>

#include <array>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace agentx {

struct ProposedAction {
    ActionId action = ActionId::NoOp;
    double confidence = 0.0;
    StageId stage = StageId::FailSafe;

    friend bool operator==(const ProposedAction&, const ProposedAction&) = default;
};

enum class RejectReason {
    Unavailable,
    NoProposal,
    BelowThreshold,
    GuardrailVeto,
    OperatorDeclined,
    OperatorTimeout,
    ModelIncomplete,
};

const char* to_string(RejectReason reason);
std::optional<RejectReason> reject_reason_from_string(const std::string& name);

struct Rejection {
    StageId stage = StageId::PatternRecognition;
    RejectReason reason = RejectReason::Unavailable;
    std::optional<ActionId> action;
    std::optional<VetoReason> veto;

    friend bool operator==(const Rejection&, const Rejection&) = default;
};

struct Decision {
    ActionId action = ActionId::NoOp;
    StageId provenance = StageId::FailSafe;
    double confidence = 0.0;
    std::vector<Rejection> rejected;

    friend bool operator==(const Decision&, const Decision&) = default;
};

struct StageCost {
    long time = 0;
    long power = 0;

    friend bool operator==(const StageCost&, const StageCost&) = default;
};

using StageCosts = std::array<StageCost, kStageCount>;

inline constexpr StageCosts kDefaultStageCosts = {
    StageCost{0, 0}, StageCost{1, 5}, StageCost{5, 1}, StageCost{10, 10}, StageCost{0, 0}};

bool stage_available(StageId stage, const EnvConstraints& c, const StageCosts& costs = kDefaultStageCosts);

// Offline-learned signatures. Keys are StateKey indices.
struct PatternEntry {
    ActionId action = ActionId::NoOp;
    double confidence = 0.0;

    friend bool operator==(const PatternEntry&, const PatternEntry&) = default;
};

class PatternTable {
public:
    void insert(const StateKey& key, PatternEntry entry);
    const std::map<std::size_t, PatternEntry>& entries() const { return entries_; }
    bool empty() const { return entries_.empty(); }

    friend bool operator==(const PatternTable&, const PatternTable&) = default;

private:
    std::map<std::size_t, PatternEntry> entries_;
};

std::optional<ProposedAction> pattern_match(const PatternTable& table, const StateKey& signature);

nlohmann::json to_json(const PatternTable& table);
PatternTable pattern_table_from_json(const nlohmann::json& j);
void save_pattern_table(const PatternTable& table, const std::string& path);
PatternTable load_pattern_table(const std::string& path);

// Scripted stand-in for a human supervisor.
struct OperatorPolicy {
    enum class Kind { ApproveFirst, Decline, ApproveListed };

    Kind kind = Kind::ApproveFirst;
    long latency = 0;
    // ApproveListed picks the first offered option that appears here.
    std::vector<ActionId> approved;

    friend bool operator==(const OperatorPolicy&, const OperatorPolicy&) = default;
};

const char* to_string(OperatorPolicy::Kind kind);
std::optional<OperatorPolicy::Kind> operator_kind_from_string(const std::string& name);

// Throws OperatorTimeout when the operator's latency exceeds `time_budget`.
std::optional<ProposedAction> escalate(const OperatorPolicy& op, const std::vector<ActionId>& options, long time_budget);

enum class FailSafeProfile { NoAction, LowThresholdAct, Terminate };

const char* to_string(FailSafeProfile profile);
std::optional<FailSafeProfile> failsafe_from_string(const std::string& name);

ProposedAction failsafe(FailSafeProfile profile, const PatternTable& table);

struct ArbiterVerdict {
    bool accepted = false;
    RejectReason reason = RejectReason::BelowThreshold;
    std::optional<VetoReason> veto;
};

ArbiterVerdict arbiter_review(const ProposedAction& p, const EnvConstraints& c, const GuardrailSet& g);

// Stage proposers. An empty function behaves as a stage that never proposes.
struct StageHandles {
    std::function<std::optional<ProposedAction>()> pattern;
    std::function<std::optional<ProposedAction>()> online;
    std::function<std::optional<ProposedAction>()> escalation;
    std::function<std::optional<ProposedAction>()> game;
    // Experience stream of the online learner; called once per decision.
    std::function<void(const Decision&)> feedback;
    const PatternTable* patterns = nullptr;
};

using AvailabilityFn = std::function<bool(StageId, const EnvConstraints&)>;
using ArbiterFn = std::function<ArbiterVerdict(const ProposedAction&, const EnvConstraints&)>;

// Total: always returns. Provenance is the first stage that was available and
// whose proposal the arbiter accepted, or FailSafe.
Decision decide(const EnvConstraints& c, const StageHandles& handles, FailSafeProfile profile,
                const AvailabilityFn& available, const ArbiterFn& arbiter);

Decision decide(const EnvConstraints& c, const StageHandles& handles, FailSafeProfile profile,
                const StageCosts& costs, const GuardrailSet& g);

}  // namespace agentx
