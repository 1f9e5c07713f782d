#pragma once

#include "agentx/core.hpp"

#include <array>
#include <optional>
#include <string>
#include <vector>

namespace agentx {

enum class ActionId : std::uint8_t {
    NoOp,
    StartHoneypot,
    StopHoneypot,
    StartRealVm,
    StopRealVm,
    DeployDummyFiles,
    QuarantineFile,
    QuarantineNode,
    RestoreKnownGood,
    RotateAddress,
    RestrictInbound,
    RestrictOutbound,
    CryForHelp,
    ShareBlocklist,
    TerminateSelf,
};

inline constexpr std::size_t kActionCount = 15;

const char* to_string(ActionId id);
std::optional<ActionId> action_from_string(const std::string& name);
inline std::size_t index(ActionId id) { return static_cast<std::size_t>(id); }

// Ordered: a higher level needs more supervision and more emissions.
enum class AutonomyLevel { Reflex, Previsioned, Collaborative, Delegated };
enum class EmconLevel { Open, Restricted, Silent };

const char* to_string(AutonomyLevel level);
const char* to_string(EmconLevel level);
std::optional<AutonomyLevel> autonomy_from_string(const std::string& name);
std::optional<EmconLevel> emcon_from_string(const std::string& name);

enum class CommsDirection { Inbound, Outbound };

struct ActionSpec {
    ActionId id = ActionId::NoOp;
    // Catalog value; positive frees resources, negative consumes them.
    int resource_delta = 0;
    double impact = 0.0;
    int emission_cost = 0;
    AutonomyLevel autonomy_level = AutonomyLevel::Reflex;
    bool enabled = true;

    std::optional<CommsDirection> direction() const;

    friend bool operator==(const ActionSpec&, const ActionSpec&) = default;
};

class ActionCatalog {
public:
    // Default annotations: impact scores, emission costs and autonomy levels
    // for every action. Real-VM start/stop are present but disabled.
    static ActionCatalog make_default(int honeypot_cost, int real_vm_cost);

    const ActionSpec& spec(ActionId id) const { return specs_[index(id)]; }
    ActionSpec& spec(ActionId id) { return specs_[index(id)]; }
    const std::array<ActionSpec, kActionCount>& specs() const { return specs_; }

    // Enabled actions an agent policy may choose; TerminateSelf is reserved
    // for the fail-safe and tamper response.
    std::vector<ActionId> learnable() const;

    // Throws ConfigInvalid when a catalog invariant is broken.
    void validate() const;

    friend bool operator==(const ActionCatalog&, const ActionCatalog&) = default;

private:
    std::array<ActionSpec, kActionCount> specs_{};
};

}  // namespace agentx
