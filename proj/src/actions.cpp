#include "agentx/actions.hpp"

#include <cmath>

namespace agentx {

namespace {

constexpr std::array<const char*, kActionCount> kActionNames = {
    "NoOp",           "StartHoneypot",    "StopHoneypot",   "StartRealVm",     "StopRealVm",
    "DeployDummyFiles", "QuarantineFile", "QuarantineNode", "RestoreKnownGood", "RotateAddress",
    "RestrictInbound", "RestrictOutbound", "CryForHelp",    "ShareBlocklist",  "TerminateSelf",
};

constexpr std::array<const char*, 4> kAutonomyNames = {"Reflex", "Previsioned", "Collaborative",
                                                       "Delegated"};
constexpr std::array<const char*, 3> kEmconNames = {"Open", "Restricted", "Silent"};

template <typename Enum, std::size_t N>
std::optional<Enum> lookup(const std::array<const char*, N>& names, const std::string& name) {
    for (std::size_t i = 0; i < N; ++i) {
        if (name == names[i]) return static_cast<Enum>(i);
    }
    return std::nullopt;
}

}  // namespace

const char* to_string(ActionId id) { return kActionNames[index(id)]; }
const char* to_string(AutonomyLevel level) { return kAutonomyNames[static_cast<std::size_t>(level)]; }
const char* to_string(EmconLevel level) { return kEmconNames[static_cast<std::size_t>(level)]; }

std::optional<ActionId> action_from_string(const std::string& name) {
    return lookup<ActionId>(kActionNames, name);
}
std::optional<AutonomyLevel> autonomy_from_string(const std::string& name) {
    return lookup<AutonomyLevel>(kAutonomyNames, name);
}
std::optional<EmconLevel> emcon_from_string(const std::string& name) {
    return lookup<EmconLevel>(kEmconNames, name);
}

std::optional<CommsDirection> ActionSpec::direction() const {
    if (id == ActionId::RestrictInbound) return CommsDirection::Inbound;
    if (id == ActionId::RestrictOutbound) return CommsDirection::Outbound;
    return std::nullopt;
}

ActionCatalog ActionCatalog::make_default(int honeypot_cost, int real_vm_cost) {
    using L = AutonomyLevel;
    struct Row {
        ActionId id;
        int delta;
        double impact;
        int emission;
        L level;
        bool enabled;
    };
    const Row rows[] = {
        {ActionId::NoOp, 0, 0.0, 0, L::Reflex, true},
        {ActionId::StartHoneypot, -honeypot_cost, 1.0, 0, L::Previsioned, true},
        {ActionId::StopHoneypot, honeypot_cost, 1.0, 0, L::Reflex, true},
        {ActionId::StartRealVm, -real_vm_cost, 2.0, 0, L::Collaborative, false},
        {ActionId::StopRealVm, real_vm_cost, 6.0, 0, L::Delegated, false},
        {ActionId::DeployDummyFiles, 0, 1.0, 0, L::Reflex, true},
        {ActionId::QuarantineFile, 0, 2.0, 0, L::Reflex, true},
        {ActionId::QuarantineNode, 0, 4.0, 0, L::Previsioned, true},
        {ActionId::RestoreKnownGood, 0, 3.0, 0, L::Previsioned, true},
        {ActionId::RotateAddress, 0, 2.0, 0, L::Previsioned, true},
        {ActionId::RestrictInbound, 0, 3.0, 0, L::Previsioned, true},
        {ActionId::RestrictOutbound, 0, 3.0, 0, L::Previsioned, true},
        {ActionId::CryForHelp, 0, 0.5, 1, L::Reflex, true},
        {ActionId::ShareBlocklist, 0, 1.0, 1, L::Collaborative, true},
        {ActionId::TerminateSelf, 0, 0.0, 0, L::Reflex, true},
    };
    ActionCatalog catalog;
    for (const auto& r : rows) {
        catalog.specs_[index(r.id)] = ActionSpec{r.id, r.delta, r.impact, r.emission, r.level, r.enabled};
    }
    return catalog;
}

std::vector<ActionId> ActionCatalog::learnable() const {
    std::vector<ActionId> out;
    for (const auto& s : specs_) {
        if (s.enabled && s.id != ActionId::TerminateSelf) out.push_back(s.id);
    }
    return out;
}

void ActionCatalog::validate() const {
    auto fail = [](const std::string& what) { throw Error(ErrorCode::ConfigInvalid, what); };
    for (std::size_t i = 0; i < kActionCount; ++i) {
        const auto& s = specs_[i];
        if (index(s.id) != i) fail("catalog entry out of order");
        if (!std::isfinite(s.impact) || s.impact < 0.0) fail(std::string(to_string(s.id)) + ": impact must be >= 0");
        if (s.emission_cost < 0) fail(std::string(to_string(s.id)) + ": emission_cost must be >= 0");
    }
    const auto& term = spec(ActionId::TerminateSelf);
    if (term.impact != 0.0 || term.autonomy_level != AutonomyLevel::Reflex) {
        fail("TerminateSelf must have impact 0 and Reflex autonomy");
    }
    if (spec(ActionId::CryForHelp).emission_cost <= 0 || spec(ActionId::ShareBlocklist).emission_cost <= 0) {
        fail("CryForHelp and ShareBlocklist must have positive emission cost");
    }
    if (spec(ActionId::StartHoneypot).resource_delta >= 0) fail("StartHoneypot must consume resources");
    if (learnable().empty()) fail("no enabled actions");
}

}  // namespace agentx
