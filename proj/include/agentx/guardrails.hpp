#pragma once

// Bounded-autonomy checks: per-action impact budget, EMCON-correlated
// autonomy gates, and a digest over the ruleset that must not change while
// the agent is deployed.

#include "agentx/actions.hpp"
#include "agentx/constraints.hpp"

#include <array>
#include <optional>
#include <string>
#include <string_view>

namespace agentx {

struct ImpactBudget {
    double max_impact_per_action = 5.0;
    double mission_need = 10.0;

    friend bool operator==(const ImpactBudget&, const ImpactBudget&) = default;
};

// Highest autonomy level allowed at each EMCON level, indexed by EmconLevel.
using AutonomyGates = std::array<AutonomyLevel, 3>;

inline constexpr AutonomyGates kDefaultGates = {AutonomyLevel::Delegated, AutonomyLevel::Previsioned,
                                                AutonomyLevel::Reflex};

inline constexpr std::size_t kStageCount = 5;

// Everything the digest covers.
struct Ruleset {
    ImpactBudget budget;
    AutonomyGates gates = kDefaultGates;
    // Arbiter acceptance thresholds, indexed by StageId.
    std::array<double, kStageCount> stage_thresholds{0.8, 0.6, 0.5, 0.3, 0.0};
    ActionCatalog catalog = ActionCatalog::make_default(10, 10);

    void validate() const;

    friend bool operator==(const Ruleset&, const Ruleset&) = default;
};

// Canonical form: sorted keys, no insignificant whitespace.
std::string serialize(const Ruleset& rules);
Ruleset parse_ruleset(std::string_view text);

// Lowercase hex SHA-256.
std::string digest_hex(std::string_view bytes);

struct GuardrailSet {
    Ruleset rules;
    std::string expected_digest;

    // Seals the ruleset: the expected digest is taken from its current bytes.
    static GuardrailSet seal(Ruleset rules);

    AutonomyLevel gate(EmconLevel level) const { return rules.gates[static_cast<std::size_t>(level)]; }
};

enum class VetoReason { ImpactExceeded, AutonomyGate, EmissionBlocked };
const char* to_string(VetoReason reason);
std::optional<VetoReason> veto_from_string(const std::string& name);

// nullopt means Allow. Checks run in order impact, autonomy, emission.
std::optional<VetoReason> check(const ActionSpec& action, const EnvConstraints& c, const GuardrailSet& g);

enum class RulesetStatus { Ok, Tampered };

RulesetStatus verify_ruleset(const GuardrailSet& g, std::string_view current_rules);

// Writes the canonical ruleset to `path` and its digest to `path + ".sha256"`.
void write_ruleset(const Ruleset& rules, const std::string& path);
// Reads both files back; Tampered content is reported by verify_ruleset.
GuardrailSet read_ruleset(const std::string& path);

}  // namespace agentx
