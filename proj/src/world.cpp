#include "agentx/world.hpp"

#include <algorithm>
#include <array>
#include <cmath>

namespace agentx {

const char* to_string(NodeKind kind) {
    switch (kind) {
        case NodeKind::Database: return "Database";
        case NodeKind::Application: return "Application";
        case NodeKind::Web: return "Web";
        case NodeKind::Honeypot: return "Honeypot";
    }
    return "?";
}

const char* to_string(NodeStatus status) {
    switch (status) {
        case NodeStatus::Running: return "Running";
        case NodeStatus::Stopped: return "Stopped";
        case NodeStatus::Compromised: return "Compromised";
        case NodeStatus::Quarantined: return "Quarantined";
    }
    return "?";
}

const char* to_string(CampaignPhase phase) {
    switch (phase) {
        case CampaignPhase::Recon: return "Recon";
        case CampaignPhase::Exploit: return "Exploit";
        case CampaignPhase::Lateral: return "Lateral";
        case CampaignPhase::Dormant: return "Dormant";
    }
    return "?";
}

namespace {

constexpr std::array<const char*, kEventKindCount> kEventNames = {
    "IdsAlert",  "AntiMalwareAlert",  "UnauthorizedAccess",     "HoneyTouch", "DummyFileAccess",
    "DummyProcessAlert", "FileIntegrityViolation", "LoadSample", "LogLine",    "OperatorReply",
};

bool is_probability(double p) { return std::isfinite(p) && p >= 0.0 && p <= 1.0; }

void require(bool ok, const std::string& what) {
    if (!ok) throw Error(ErrorCode::ConfigInvalid, what);
}

}  // namespace

const char* to_string(EventKind kind) { return kEventNames[static_cast<std::size_t>(kind)]; }

std::optional<EventKind> event_kind_from_string(const std::string& name) {
    for (std::size_t i = 0; i < kEventNames.size(); ++i) {
        if (name == kEventNames[i]) return static_cast<EventKind>(i);
    }
    return std::nullopt;
}

void validate(const WorldConfig& c) {
    require(c.database_nodes >= 0 && c.application_nodes >= 0 && c.web_nodes >= 0 &&
                c.initial_honeypots >= 0,
            "node counts must be non-negative");
    require(c.database_cost >= 0 && c.application_cost >= 0 && c.web_cost >= 0 &&
                c.honeypot_cost >= 0,
            "node costs must be non-negative");
    require(c.capacity >= 0, "capacity must be non-negative");
    const long long demand = 1LL * c.database_nodes * c.database_cost +
                             1LL * c.application_nodes * c.application_cost +
                             1LL * c.web_nodes * c.web_cost +
                             1LL * c.initial_honeypots * c.honeypot_cost;
    require(demand <= c.capacity, "initial demand " + std::to_string(demand) +
                                      " exceeds capacity " + std::to_string(c.capacity));
    for (double p : {c.p_detect, c.compromised_signal_rate, c.decoy_hit_rate, c.benign_ids_rate,
                     c.benign_antimalware_rate, c.benign_access_rate, c.log_rate, c.load_base,
                     c.load_jitter, c.load_per_attack, c.restrict_inbound_factor}) {
        require(is_probability(p), "rates must lie in [0, 1]");
    }
    require(c.severity_min >= 1 && c.severity_max <= 5 && c.severity_min <= c.severity_max,
            "severity range must lie within 1..5");
    require(c.compromise_threshold >= 1, "compromise_threshold must be >= 1");
    require(c.restrict_ticks >= 0, "restrict_ticks must be non-negative");
    for (const auto& campaign : c.campaigns) {
        require(is_probability(campaign.intensity), "campaign intensity must lie in [0, 1]");
        require(is_probability(campaign.recon_share), "campaign recon_share must lie in [0, 1]");
        require(campaign.dormant_ticks >= 0, "campaign dormant_ticks must be non-negative");
    }
}

const Node& WorldState::node(NodeId id) const {
    if (id.value >= nodes.size()) throw Error(ErrorCode::NoSuchNode, std::to_string(id.value));
    return nodes[id.value];
}

Node& WorldState::node(NodeId id) {
    if (id.value >= nodes.size()) throw Error(ErrorCode::NoSuchNode, std::to_string(id.value));
    return nodes[id.value];
}

std::optional<NodeId> WorldState::find_by_address(Address address) const {
    for (const auto& n : nodes) {
        if (n.address == address) return n.id;
    }
    return std::nullopt;
}

int WorldState::running_honeypots() const {
    return static_cast<int>(std::count_if(nodes.begin(), nodes.end(), [](const Node& n) {
        return n.is_honeypot() && n.is_online();
    }));
}

namespace {

Node& add_node(WorldState& world, NodeKind kind, int cost) {
    Node n;
    n.id = NodeId{static_cast<std::uint32_t>(world.nodes.size())};
    n.kind = kind;
    n.status = NodeStatus::Running;
    n.address = Address{world.next_address++};
    n.cost = cost;
    world.nodes.push_back(n);
    world.pool.used += cost;
    return world.nodes.back();
}

std::vector<NodeId> online_nodes(const WorldState& world, bool real_only) {
    std::vector<NodeId> out;
    for (const auto& n : world.nodes) {
        if (n.is_online() && !(real_only && n.is_honeypot())) out.push_back(n.id);
    }
    return out;
}

void emit(WorldState& world, std::vector<WorldEvent>& out, EventKind kind, NodeId node,
          bool malicious, int severity = 0, double load = 0.0) {
    WorldEvent e;
    e.tick = world.clock;
    e.kind = kind;
    e.node = node;
    e.severity = severity;
    e.load = load;
    e.truth_malicious = malicious;
    out.push_back(e);
}

double decoy_probability(double per_file, int files) {
    if (files <= 0) return 0.0;
    return 1.0 - std::pow(1.0 - per_file, files);
}

// Adds one not-yet-known online address to the campaign's knowledge.
void discover(WorldState& world, AttackerCampaign& campaign) {
    std::vector<Address> unknown;
    for (const auto& n : world.nodes) {
        if (n.is_online() && !campaign.known_addresses.contains(n.address)) {
            unknown.push_back(n.address);
        }
    }
    if (unknown.empty()) return;
    campaign.known_addresses.insert(unknown[world.attacker_rng.below(unknown.size())]);
}

void go_dormant(AttackerCampaign& campaign) {
    if (campaign.dormant_ticks > 0) {
        campaign.phase = CampaignPhase::Dormant;
        campaign.dormant_remaining = campaign.dormant_ticks;
    } else {
        campaign.phase = CampaignPhase::Recon;
    }
}

void attack(WorldState& world, AttackerCampaign& campaign, std::vector<WorldEvent>& out) {
    std::vector<NodeId> targets;
    for (const auto& n : world.nodes) {
        if (n.is_online() && campaign.known_addresses.contains(n.address)) targets.push_back(n.id);
    }
    if (targets.empty()) {
        go_dormant(campaign);
        return;
    }
    Node& target = world.node(targets[world.attacker_rng.below(targets.size())]);
    const auto& cfg = world.config;
    if (target.is_honeypot()) {
        emit(world, out, EventKind::HoneyTouch, target.id, true);
        return;
    }
    if (world.detection_rng.bernoulli(decoy_probability(cfg.decoy_hit_rate, target.decoy_files))) {
        emit(world, out, EventKind::DummyFileAccess, target.id, true);
        return;
    }
    if (world.detection_rng.bernoulli(cfg.p_detect)) {
        const int severity = world.detection_rng.between(cfg.severity_min, cfg.severity_max);
        emit(world, out, EventKind::IdsAlert, target.id, true, severity);
        return;
    }
    if (target.status != NodeStatus::Running) return;
    if (++target.exploit_progress >= cfg.compromise_threshold) {
        target.status = NodeStatus::Compromised;
        target.foothold_of = campaign.id;
        world.compromises.push_back(TruthNote{world.clock, target.id, campaign.id});
        campaign.phase = CampaignPhase::Lateral;
    }
}

std::optional<NodeId> foothold(const WorldState& world, std::size_t campaign) {
    for (const auto& n : world.nodes) {
        if (n.status == NodeStatus::Compromised && n.foothold_of == campaign) return n.id;
    }
    return std::nullopt;
}

void step_campaign(WorldState& world, AttackerCampaign& campaign, std::vector<WorldEvent>& out) {
    if (campaign.phase == CampaignPhase::Dormant) {
        if (--campaign.dormant_remaining <= 0) campaign.phase = CampaignPhase::Recon;
        return;
    }
    const auto base = foothold(world, campaign.id);
    if (campaign.phase == CampaignPhase::Lateral && !base) campaign.phase = CampaignPhase::Exploit;

    double p = campaign.intensity;
    const bool from_inside = campaign.phase == CampaignPhase::Lateral;
    if (!from_inside && world.clock <= world.inbound_restricted_until) {
        p *= world.config.restrict_inbound_factor;
    }
    if (!world.attacker_rng.bernoulli(p)) return;

    switch (campaign.phase) {
        case CampaignPhase::Recon:
            discover(world, campaign);
            if (!campaign.known_addresses.empty()) campaign.phase = CampaignPhase::Exploit;
            break;
        case CampaignPhase::Exploit:
            if (world.attacker_rng.bernoulli(campaign.recon_share)) {
                discover(world, campaign);
            } else {
                attack(world, campaign, out);
            }
            break;
        case CampaignPhase::Lateral: {
            if (world.clock <= world.outbound_restricted_until) break;
            const Node& origin = world.node(*base);
            if (world.detection_rng.bernoulli(
                    decoy_probability(world.config.decoy_hit_rate, origin.decoy_files))) {
                emit(world, out, EventKind::DummyProcessAlert, origin.id, true);
            }
            discover(world, campaign);
            attack(world, campaign, out);
            break;
        }
        case CampaignPhase::Dormant:
            break;
    }
}

void compromised_signals(WorldState& world, std::vector<WorldEvent>& out) {
    static constexpr std::array<EventKind, 3> kSignals = {
        EventKind::UnauthorizedAccess, EventKind::FileIntegrityViolation,
        EventKind::AntiMalwareAlert};
    for (auto& n : world.nodes) {
        if (n.status != NodeStatus::Compromised) continue;
        if (!world.detection_rng.bernoulli(world.config.compromised_signal_rate)) continue;
        const EventKind kind = kSignals[world.detection_rng.below(kSignals.size())];
        if (kind == EventKind::FileIntegrityViolation) n.integrity_ok = false;
        emit(world, out, kind, n.id, true);
    }
}

void benign_traffic(WorldState& world, std::vector<WorldEvent>& out) {
    const auto real = online_nodes(world, true);
    if (real.empty()) return;
    auto& rng = world.benign_rng;
    const auto& cfg = world.config;
    if (rng.bernoulli(cfg.benign_ids_rate)) {
        const NodeId n = real[rng.below(real.size())];
        const int severity = rng.between(cfg.severity_min, cfg.severity_max);
        emit(world, out, EventKind::IdsAlert, n, false, severity);
    }
    if (rng.bernoulli(cfg.benign_antimalware_rate)) {
        emit(world, out, EventKind::AntiMalwareAlert, real[rng.below(real.size())], false);
    }
    if (rng.bernoulli(cfg.benign_access_rate)) {
        emit(world, out, EventKind::UnauthorizedAccess, real[rng.below(real.size())], false);
    }
    if (rng.bernoulli(cfg.log_rate)) {
        emit(world, out, EventKind::LogLine, real[rng.below(real.size())], false);
    }
}

void load_sample(WorldState& world, std::vector<WorldEvent>& out, std::size_t malicious) {
    const auto& cfg = world.config;
    auto& rng = world.load_rng;
    const double utilisation =
        world.pool.capacity > 0 ? static_cast<double>(world.pool.used) / world.pool.capacity : 0.0;
    double load = cfg.load_base + 0.5 * utilisation +
                  cfg.load_per_attack * static_cast<double>(malicious) +
                  cfg.load_jitter * (2.0 * rng.uniform() - 1.0);
    load = std::clamp(load, 0.0, 1.0);
    const auto online = online_nodes(world, false);
    const NodeId where = online.empty() ? NodeId{0} : online[rng.below(online.size())];
    emit(world, out, EventKind::LoadSample, where, false, 0, load);
}

}  // namespace

WorldState init_world(const WorldConfig& config, std::uint64_t seed) {
    validate(config);
    WorldState world;
    world.config = config;
    world.pool.capacity = config.capacity;
    world.benign_rng = make_stream(seed, Stream::BenignTraffic);
    world.attacker_rng = make_stream(seed, Stream::Attacker);
    world.detection_rng = make_stream(seed, Stream::Detection);
    world.load_rng = make_stream(seed, Stream::Load);

    for (int i = 0; i < config.database_nodes; ++i) add_node(world, NodeKind::Database, config.database_cost);
    for (int i = 0; i < config.application_nodes; ++i) add_node(world, NodeKind::Application, config.application_cost);
    for (int i = 0; i < config.web_nodes; ++i) add_node(world, NodeKind::Web, config.web_cost);
    for (int i = 0; i < config.initial_honeypots; ++i) add_node(world, NodeKind::Honeypot, config.honeypot_cost);

    for (std::size_t i = 0; i < config.campaigns.size(); ++i) {
        const auto& cc = config.campaigns[i];
        AttackerCampaign campaign;
        campaign.id = i;
        campaign.phase = cc.phase;
        campaign.intensity = cc.intensity;
        campaign.recon_share = cc.recon_share;
        campaign.dormant_ticks = cc.dormant_ticks;
        campaign.dormant_remaining = cc.phase == CampaignPhase::Dormant ? cc.dormant_ticks : 0;
        for (std::size_t k = 0; k < cc.initial_known; ++k) discover(world, campaign);
        world.campaigns.push_back(std::move(campaign));
    }
    return world;
}

std::vector<WorldEvent> step_world(WorldState& world) {
    ++world.clock;
    std::vector<WorldEvent> out;
    for (auto& campaign : world.campaigns) step_campaign(world, campaign, out);
    compromised_signals(world, out);
    const auto malicious = static_cast<std::size_t>(
        std::count_if(out.begin(), out.end(), [](const WorldEvent& e) { return e.truth_malicious; }));
    benign_traffic(world, out);
    load_sample(world, out, malicious);
    world.log.insert(world.log.end(), out.begin(), out.end());
    return out;
}

namespace {

Node& require_target(WorldState& world, const ExecutedAction& action) {
    if (!action.target) throw Error(ErrorCode::NoSuchNode, "action requires a target node");
    return world.node(*action.target);
}

void illegal(const Node& n, const char* what) {
    throw Error(ErrorCode::IllegalTransition, std::string(what) + " on node " +
                                                  std::to_string(n.id.value) + " (" +
                                                  to_string(n.status) + ")");
}

void power_on(WorldState& world, Node& n) {
    if (n.cost > world.pool.available()) {
        throw Error(ErrorCode::InsufficientResources,
                    "need " + std::to_string(n.cost) + ", available " +
                        std::to_string(world.pool.available()));
    }
    n.status = NodeStatus::Running;
    world.pool.used += n.cost;
}

void power_off(WorldState& world, Node& n) {
    n.status = NodeStatus::Stopped;
    n.foothold_of.reset();
    n.exploit_progress = 0;
    world.pool.used -= n.cost;
}

}  // namespace

ActionOutcome apply_action(WorldState& world, const ExecutedAction& action) {
    ActionOutcome outcome;
    switch (action.action) {
        case WorldAction::StartHoneypot: {
            const int cost = world.config.honeypot_cost;
            if (action.target) {
                Node& n = world.node(*action.target);
                if (!n.is_honeypot() || n.status != NodeStatus::Stopped) illegal(n, "StartHoneypot");
                power_on(world, n);
                outcome.node = n.id;
                outcome.delta_resources = -n.cost;
                break;
            }
            if (cost > world.pool.available()) {
                throw Error(ErrorCode::InsufficientResources,
                            "need " + std::to_string(cost) + ", available " +
                                std::to_string(world.pool.available()));
            }
            const Node& n = add_node(world, NodeKind::Honeypot, cost);
            outcome.node = n.id;
            outcome.delta_resources = -cost;
            break;
        }
        case WorldAction::StopHoneypot: {
            Node& n = require_target(world, action);
            if (!n.is_honeypot() || !n.is_powered()) illegal(n, "StopHoneypot");
            power_off(world, n);
            outcome.node = n.id;
            outcome.delta_resources = n.cost;
            break;
        }
        case WorldAction::StartRealVm: {
            Node& n = require_target(world, action);
            if (n.is_honeypot() || n.status != NodeStatus::Stopped) illegal(n, "StartRealVm");
            power_on(world, n);
            outcome.node = n.id;
            outcome.delta_resources = -n.cost;
            break;
        }
        case WorldAction::StopRealVm: {
            Node& n = require_target(world, action);
            if (n.is_honeypot() || !n.is_powered()) illegal(n, "StopRealVm");
            power_off(world, n);
            outcome.node = n.id;
            outcome.delta_resources = n.cost;
            break;
        }
        case WorldAction::DeployDummyFiles: {
            Node& n = require_target(world, action);
            if (!n.is_powered()) illegal(n, "DeployDummyFiles");
            ++n.decoy_files;
            outcome.node = n.id;
            break;
        }
        case WorldAction::QuarantineFile: {
            Node& n = require_target(world, action);
            if (!n.is_powered()) illegal(n, "QuarantineFile");
            n.integrity_ok = true;
            n.exploit_progress = 0;
            outcome.node = n.id;
            break;
        }
        case WorldAction::QuarantineNode: {
            Node& n = require_target(world, action);
            if (!n.is_online()) illegal(n, "QuarantineNode");
            n.status = NodeStatus::Quarantined;
            outcome.node = n.id;
            break;
        }
        case WorldAction::RestoreKnownGood: {
            Node& n = require_target(world, action);
            if (!n.is_powered()) illegal(n, "RestoreKnownGood");
            n.status = NodeStatus::Running;
            n.integrity_ok = true;
            n.exploit_progress = 0;
            n.foothold_of.reset();
            outcome.node = n.id;
            break;
        }
        case WorldAction::RotateAddress: {
            Node& n = require_target(world, action);
            const Address stale = n.address;
            n.address = Address{world.next_address++};
            for (auto& campaign : world.campaigns) campaign.known_addresses.erase(stale);
            outcome.node = n.id;
            outcome.old_address = stale;
            outcome.new_address = n.address;
            break;
        }
        case WorldAction::RestrictInbound:
            world.inbound_restricted_until =
                world.clock + static_cast<Tick>(world.config.restrict_ticks);
            break;
        case WorldAction::RestrictOutbound:
            world.outbound_restricted_until =
                world.clock + static_cast<Tick>(world.config.restrict_ticks);
            break;
    }
    return outcome;
}

void record_event(WorldState& world, EventKind kind, NodeId node) {
    WorldEvent e;
    e.tick = world.clock;
    e.kind = kind;
    e.node = node;
    world.log.push_back(e);
}

}  // namespace agentx
