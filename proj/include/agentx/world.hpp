#pragma once

// Discrete-event model of a small virtualized cloud: real servers, honeypots,
// benign background traffic, and scripted attacker campaigns.

#include "agentx/core.hpp"
#include "agentx/rng.hpp"

#include <optional>
#include <set>
#include <string>
#include <vector>

namespace agentx {

enum class NodeKind { Database, Application, Web, Honeypot };
enum class NodeStatus { Running, Stopped, Compromised, Quarantined };

const char* to_string(NodeKind kind);
const char* to_string(NodeStatus status);

struct Node {
    NodeId id;
    NodeKind kind = NodeKind::Web;
    NodeStatus status = NodeStatus::Running;
    Address address;
    int cost = 0;
    bool integrity_ok = true;
    int decoy_files = 0;
    // Undetected exploit attempts accumulated toward compromise.
    int exploit_progress = 0;
    // Campaign holding a foothold on this node, if any.
    std::optional<std::size_t> foothold_of;

    bool is_honeypot() const { return kind == NodeKind::Honeypot; }
    // Powered nodes occupy resources; only Stopped nodes are free.
    bool is_powered() const { return status != NodeStatus::Stopped; }
    // Reachable over the network by an attacker holding the address.
    bool is_online() const {
        return status == NodeStatus::Running || status == NodeStatus::Compromised;
    }

    friend bool operator==(const Node&, const Node&) = default;
};

struct ResourcePool {
    int capacity = 0;
    int used = 0;

    int available() const { return capacity - used; }
    friend bool operator==(const ResourcePool&, const ResourcePool&) = default;
};

enum class CampaignPhase { Recon, Exploit, Lateral, Dormant };
const char* to_string(CampaignPhase phase);

struct AttackerCampaign {
    std::size_t id = 0;
    CampaignPhase phase = CampaignPhase::Recon;
    std::set<Address> known_addresses;
    double intensity = 0.0;
    // Share of active ticks spent discovering instead of attacking.
    double recon_share = 0.0;
    int dormant_ticks = 0;
    int dormant_remaining = 0;

    friend bool operator==(const AttackerCampaign&, const AttackerCampaign&) = default;
};

enum class EventKind {
    IdsAlert,
    AntiMalwareAlert,
    UnauthorizedAccess,
    HoneyTouch,
    DummyFileAccess,
    DummyProcessAlert,
    FileIntegrityViolation,
    LoadSample,
    LogLine,
    OperatorReply,
};

inline constexpr std::size_t kEventKindCount = 10;

const char* to_string(EventKind kind);
std::optional<EventKind> event_kind_from_string(const std::string& name);

struct WorldEvent {
    Tick tick = 0;
    EventKind kind = EventKind::LogLine;
    NodeId node;
    int severity = 0;    // IdsAlert only, 1..5
    double load = 0.0;   // LoadSample only, [0, 1]
    bool truth_malicious = false;

    friend bool operator==(const WorldEvent&, const WorldEvent&) = default;
};

// Ground-truth state changes that produce no percept (silent compromise).
struct TruthNote {
    Tick tick = 0;
    NodeId node;
    std::size_t campaign = 0;

    friend bool operator==(const TruthNote&, const TruthNote&) = default;
};

struct CampaignConfig {
    CampaignPhase phase = CampaignPhase::Recon;
    double intensity = 0.3;
    double recon_share = 0.2;
    std::size_t initial_known = 2;
    int dormant_ticks = 40;

    friend bool operator==(const CampaignConfig&, const CampaignConfig&) = default;
};

struct WorldConfig {
    int database_nodes = 3;
    int application_nodes = 3;
    int web_nodes = 3;
    int database_cost = 10;
    int application_cost = 10;
    int web_cost = 10;
    int honeypot_cost = 10;
    int initial_honeypots = 0;
    int capacity = 150;

    double p_detect = 0.7;
    int severity_min = 1;
    int severity_max = 5;
    int compromise_threshold = 3;
    double compromised_signal_rate = 0.15;
    double decoy_hit_rate = 0.1;

    double benign_ids_rate = 0.03;
    double benign_antimalware_rate = 0.01;
    double benign_access_rate = 0.01;
    double log_rate = 0.5;
    double load_base = 0.3;
    double load_jitter = 0.05;
    double load_per_attack = 0.05;

    int restrict_ticks = 20;
    double restrict_inbound_factor = 0.5;

    std::vector<CampaignConfig> campaigns;

    friend bool operator==(const WorldConfig&, const WorldConfig&) = default;
};

// Validates node counts, rates and the capacity constraint.
void validate(const WorldConfig& config);

struct WorldState {
    WorldConfig config;
    Tick clock = 0;
    std::vector<Node> nodes;
    ResourcePool pool;
    std::vector<AttackerCampaign> campaigns;
    std::vector<WorldEvent> log;
    std::vector<TruthNote> compromises;
    std::uint64_t next_address = 1;
    Tick inbound_restricted_until = 0;
    Tick outbound_restricted_until = 0;

    Rng benign_rng;
    Rng attacker_rng;
    Rng detection_rng;
    Rng load_rng;

    const Node& node(NodeId id) const;
    Node& node(NodeId id);
    std::optional<NodeId> find_by_address(Address address) const;
    int running_honeypots() const;

    friend bool operator==(const WorldState&, const WorldState&) = default;
};

WorldState init_world(const WorldConfig& config, std::uint64_t seed);

// Advances one tick. Returns the events produced during that tick; they are
// also appended to world.log.
std::vector<WorldEvent> step_world(WorldState& world);

enum class WorldAction {
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
};

struct ExecutedAction {
    WorldAction action = WorldAction::StartHoneypot;
    std::optional<NodeId> target;
};

struct ActionOutcome {
    // Positive when resources are freed, negative when consumed.
    int delta_resources = 0;
    std::optional<NodeId> node;
    std::optional<Address> old_address;
    std::optional<Address> new_address;
};

ActionOutcome apply_action(WorldState& world, const ExecutedAction& action);

// Appends an externally caused event (e.g. an operator reply) at the current tick.
void record_event(WorldState& world, EventKind kind, NodeId node);

}  // namespace agentx
