#include "agentx/config.hpp"

#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

namespace agentx {

using nlohmann::json;

namespace {

[[noreturn]] void fail(const std::string& what) { throw Error(ErrorCode::ConfigInvalid, what); }

// Typed view over one JSON object that remembers which keys were read, so
// anything left over can be rejected as unknown.
class Section {
public:
    Section(const json& j, std::string path) : j_(j), path_(std::move(path)) {
        if (!j_.is_object()) fail(path_ + " must be an object");
    }

    bool has(const std::string& key) const { return j_.contains(key); }

    const json& raw(const std::string& key) {
        seen_.insert(key);
        return j_.at(key);
    }

    template <typename T>
    void get(const std::string& key, T& out) {
        if (!has(key)) return;
        try {
            out = raw(key).get<T>();
        } catch (const json::exception&) {
            fail(path_ + "." + key + " has the wrong type");
        }
    }

    template <typename Enum, typename Parse>
    void get_enum(const std::string& key, Enum& out, Parse parse) {
        if (!has(key)) return;
        std::string name;
        get(key, name);
        const auto v = parse(name);
        if (!v) fail(path_ + "." + key + ": unknown value '" + name + "'");
        out = *v;
    }

    Section child(const std::string& key) { return Section(raw(key), path_ + "." + key); }

    std::string path(const std::string& key) const { return path_ + "." + key; }

    void finish() const {
        for (const auto& item : j_.items()) {
            if (!seen_.contains(item.key())) fail("unknown key " + path_ + "." + item.key());
        }
    }

private:
    const json& j_;
    std::string path_;
    std::set<std::string> seen_;
};

void read_campaign(Section s, CampaignConfig& c) {
    s.get_enum("phase", c.phase, [](const std::string& n) -> std::optional<CampaignPhase> {
        for (auto p : {CampaignPhase::Recon, CampaignPhase::Exploit, CampaignPhase::Lateral, CampaignPhase::Dormant}) {
            if (n == to_string(p)) return p;
        }
        return std::nullopt;
    });
    s.get("intensity", c.intensity);
    s.get("recon_share", c.recon_share);
    s.get("initial_known", c.initial_known);
    s.get("dormant_ticks", c.dormant_ticks);
    s.finish();
}

void read_world(Section s, WorldConfig& w) {
    s.get("database_nodes", w.database_nodes);
    s.get("application_nodes", w.application_nodes);
    s.get("web_nodes", w.web_nodes);
    s.get("database_cost", w.database_cost);
    s.get("application_cost", w.application_cost);
    s.get("web_cost", w.web_cost);
    s.get("honeypot_cost", w.honeypot_cost);
    s.get("initial_honeypots", w.initial_honeypots);
    s.get("capacity", w.capacity);
    s.get("p_detect", w.p_detect);
    s.get("severity_min", w.severity_min);
    s.get("severity_max", w.severity_max);
    s.get("compromise_threshold", w.compromise_threshold);
    s.get("compromised_signal_rate", w.compromised_signal_rate);
    s.get("decoy_hit_rate", w.decoy_hit_rate);
    s.get("benign_ids_rate", w.benign_ids_rate);
    s.get("benign_antimalware_rate", w.benign_antimalware_rate);
    s.get("benign_access_rate", w.benign_access_rate);
    s.get("log_rate", w.log_rate);
    s.get("load_base", w.load_base);
    s.get("load_jitter", w.load_jitter);
    s.get("load_per_attack", w.load_per_attack);
    s.get("restrict_ticks", w.restrict_ticks);
    s.get("restrict_inbound_factor", w.restrict_inbound_factor);
    if (s.has("campaigns")) {
        const auto& list = s.raw("campaigns");
        if (!list.is_array()) fail(s.path("campaigns") + " must be an array");
        w.campaigns.clear();
        for (std::size_t i = 0; i < list.size(); ++i) {
            CampaignConfig c;
            read_campaign(Section(list[i], s.path("campaigns") + "[" + std::to_string(i) + "]"), c);
            w.campaigns.push_back(c);
        }
    }
    s.finish();
}

void read_cuts(Section& s, const std::string& key, std::array<double, 3>& cuts) {
    if (!s.has(key)) return;
    std::vector<double> v;
    s.get(key, v);
    if (v.size() != 3) fail(s.path(key) + " must have exactly 3 cut points");
    std::copy(v.begin(), v.end(), cuts.begin());
}

void read_agent(Section s, AgentParams& a) {
    if (s.has("reward")) {
        auto r = s.child("reward");
        r.get("a", a.reward.a);
        r.get("b", a.reward.b);
        r.get("c", a.reward.c);
        r.get("denominator_floor", a.reward.denominator_floor);
        r.finish();
    }
    s.get("alpha", a.alpha);
    s.get("gamma", a.gamma);
    s.get("epsilon_start", a.epsilon_start);
    s.get("epsilon_end", a.epsilon_end);
    s.get("eval_epsilon", a.eval_epsilon);
    s.get("window", a.window);
    s.get("decision_interval", a.decision_interval);
    s.get("confidence_halfsat", a.confidence_halfsat);
    if (s.has("bins")) {
        auto b = s.child("bins");
        read_cuts(b, "threat", a.bins.threat);
        read_cuts(b, "load", a.bins.load);
        read_cuts(b, "honeypots", a.bins.honeypots);
        b.finish();
    }
    s.finish();
}

void read_cascade(Section s, CascadeParams& c, Ruleset& rules) {
    if (s.has("thresholds")) {
        auto t = s.child("thresholds");
        for (std::size_t i = 0; i < kStageCount; ++i) t.get(to_string(static_cast<StageId>(i)), rules.stage_thresholds[i]);
        t.finish();
    }
    if (s.has("costs")) {
        auto costs = s.child("costs");
        for (std::size_t i = 0; i < kStageCount; ++i) {
            const std::string name = to_string(static_cast<StageId>(i));
            if (!costs.has(name)) continue;
            auto one = costs.child(name);
            one.get("time", c.costs[i].time);
            one.get("power", c.costs[i].power);
            one.finish();
        }
        costs.finish();
    }
    s.get_enum("failsafe", c.failsafe, failsafe_from_string);
    if (s.has("operator")) {
        auto op = s.child("operator");
        op.get_enum("kind", c.op.kind, operator_kind_from_string);
        op.get("latency", c.op.latency);
        if (op.has("approved")) {
            std::vector<std::string> names;
            op.get("approved", names);
            c.op.approved.clear();
            for (const auto& n : names) {
                const auto a = action_from_string(n);
                if (!a) fail(op.path("approved") + ": unknown action '" + n + "'");
                c.op.approved.push_back(*a);
            }
        }
        op.finish();
    }
    s.get("game_horizon", c.game_horizon);
    s.get("escalation_options", c.escalation_options);
    s.finish();
}

void read_guardrails(Section s, Ruleset& rules) {
    s.get("max_impact_per_action", rules.budget.max_impact_per_action);
    s.get("mission_need", rules.budget.mission_need);
    if (s.has("gates")) {
        auto g = s.child("gates");
        for (auto level : {EmconLevel::Open, EmconLevel::Restricted, EmconLevel::Silent}) {
            g.get_enum(to_string(level), rules.gates[static_cast<std::size_t>(level)], autonomy_from_string);
        }
        g.finish();
    }
    if (s.has("actions")) {
        auto actions = s.child("actions");
        for (std::size_t i = 0; i < kActionCount; ++i) {
            const auto id = static_cast<ActionId>(i);
            if (!actions.has(to_string(id))) continue;
            auto a = actions.child(to_string(id));
            auto& spec = rules.catalog.spec(id);
            a.get("impact", spec.impact);
            a.get("emission_cost", spec.emission_cost);
            a.get("enabled", spec.enabled);
            a.get_enum("autonomy", spec.autonomy_level, autonomy_from_string);
            a.finish();
        }
        actions.finish();
    }
    s.finish();
}

void read_comms(Section s, CommsParams& c) {
    s.get("peers", c.peers);
    s.get("violation_threshold", c.violation_threshold);
    s.get("heartbeat_interval", c.heartbeat_interval);
    if (s.has("violations")) {
        const auto& list = s.raw("violations");
        if (!list.is_array()) fail(s.path("violations") + " must be an array");
        c.violations.clear();
        for (std::size_t i = 0; i < list.size(); ++i) {
            Section v(list[i], s.path("violations") + "[" + std::to_string(i) + "]");
            ScheduledViolation sv;
            v.get("tick", sv.tick);
            v.get("peer", sv.peer);
            v.get_enum("kind", sv.kind, [](const std::string& n) -> std::optional<Violation> {
                for (auto k : {Violation::BadSignature, Violation::FalseBlocklist, Violation::MissedHeartbeat}) {
                    if (n == to_string(k)) return k;
                }
                return std::nullopt;
            });
            v.finish();
            c.violations.push_back(sv);
        }
    }
    s.finish();
}

// Catalog resource deltas follow the world's VM costs.
void sync_catalog(ScenarioConfig& c) {
    auto& cat = c.rules.catalog;
    cat.spec(ActionId::StartHoneypot).resource_delta = -c.world.honeypot_cost;
    cat.spec(ActionId::StopHoneypot).resource_delta = c.world.honeypot_cost;
    cat.spec(ActionId::StartRealVm).resource_delta = -c.world.web_cost;
    cat.spec(ActionId::StopRealVm).resource_delta = c.world.web_cost;
}

bool ascending(const std::array<double, 3>& cuts) { return cuts[0] <= cuts[1] && cuts[1] <= cuts[2]; }

}  // namespace

EmconLevel ScenarioConfig::emcon_at(Tick tick) const {
    EmconLevel level = EmconLevel::Open;
    for (const auto& step : emcon_schedule) {
        if (step.from_tick <= tick) level = step.level;
    }
    return level;
}

EnvConstraints ScenarioConfig::constraints_at(Tick tick) const {
    EnvConstraints c = constraints;
    c.emcon_level = emcon_at(tick);
    return c;
}

ScenarioConfig default_config() {
    ScenarioConfig c;
    c.world.campaigns.push_back(CampaignConfig{});
    c.constraints = EnvConstraints{true, 3, 5, 0.5, EmconLevel::Open};
    sync_catalog(c);
    return c;
}

void validate(const ScenarioConfig& c) {
    validate(c.world);
    const auto& a = c.agent;
    if (!std::isfinite(a.reward.a) || !std::isfinite(a.reward.b) || !std::isfinite(a.reward.c)) {
        fail("reward coefficients must be finite");
    }
    if (a.reward.denominator_floor < 1) fail("agent.reward.denominator_floor must be >= 1");
    if (!(a.alpha >= 0.0 && a.alpha <= 1.0)) fail("agent.alpha must lie in [0, 1]");
    if (!(a.gamma >= 0.0 && a.gamma < 1.0)) fail("agent.gamma must lie in [0, 1)");
    for (double e : {a.epsilon_start, a.epsilon_end, a.eval_epsilon}) {
        if (!(e >= 0.0 && e <= 1.0)) fail("epsilon values must lie in [0, 1]");
    }
    if (a.window < 1) fail("agent.window must be >= 1");
    if (a.decision_interval < 1) fail("agent.decision_interval must be >= 1");
    if (!(a.confidence_halfsat > 0.0)) fail("agent.confidence_halfsat must be positive");
    if (!ascending(a.bins.threat) || !ascending(a.bins.load) || !ascending(a.bins.honeypots)) {
        fail("bin cut points must be ascending");
    }
    for (const auto& cost : c.cascade.costs) {
        if (cost.time < 0 || cost.power < 0) fail("stage costs must be non-negative");
    }
    if (c.cascade.game_horizon < 1) fail("cascade.game_horizon must be >= 1");
    if (c.cascade.escalation_options < 1) fail("cascade.escalation_options must be >= 1");
    if (c.cascade.op.latency < 0) fail("cascade.operator.latency must be non-negative");
    c.rules.validate();
    if (c.constraints.time_budget < 0 || c.constraints.power_budget < 0) fail("budgets must be non-negative");
    if (!(c.constraints.safety_margin >= 0.0 && c.constraints.safety_margin <= 1.0)) {
        fail("safety_margin must lie in [0, 1]");
    }
    if (c.emcon_schedule.empty() || c.emcon_schedule.front().from_tick != 0) {
        fail("emcon_schedule must start at tick 0");
    }
    for (std::size_t i = 1; i < c.emcon_schedule.size(); ++i) {
        if (c.emcon_schedule[i].from_tick <= c.emcon_schedule[i - 1].from_tick) {
            fail("emcon_schedule ticks must be strictly increasing");
        }
    }
    if (c.comms.violation_threshold < 1) fail("comms.violation_threshold must be >= 1");
    const std::set<std::string> peers(c.comms.peers.begin(), c.comms.peers.end());
    if (peers.size() != c.comms.peers.size()) fail("comms.peers must be unique");
    for (const auto& v : c.comms.violations) {
        if (!peers.contains(v.peer)) fail("comms.violations names unknown peer '" + v.peer + "'");
    }
    if (c.offline.min_support < 1) fail("offline.min_support must be >= 1");
    if (c.episode_ticks < 1) fail("episode_ticks must be >= 1");
    if (c.tamper_tick && (*c.tamper_tick < 1 || *c.tamper_tick > c.episode_ticks)) {
        fail("tamper_tick must lie in [1, episode_ticks]");
    }
}

ScenarioConfig config_from_json(const json& j) {
    ScenarioConfig c = default_config();
    Section root(j, "config");
    root.get("seed", c.seed);
    root.get("episode_ticks", c.episode_ticks);
    if (root.has("world")) read_world(root.child("world"), c.world);
    if (root.has("agent")) read_agent(root.child("agent"), c.agent);
    if (root.has("cascade")) read_cascade(root.child("cascade"), c.cascade, c.rules);
    if (root.has("guardrails")) read_guardrails(root.child("guardrails"), c.rules);
    if (root.has("constraints")) {
        auto s = root.child("constraints");
        s.get("connectivity", c.constraints.connectivity);
        s.get("time_budget", c.constraints.time_budget);
        s.get("power_budget", c.constraints.power_budget);
        s.get("safety_margin", c.constraints.safety_margin);
        s.finish();
    }
    if (root.has("emcon_schedule")) {
        const auto& list = root.raw("emcon_schedule");
        if (!list.is_array()) fail("config.emcon_schedule must be an array");
        c.emcon_schedule.clear();
        for (std::size_t i = 0; i < list.size(); ++i) {
            Section s(list[i], "config.emcon_schedule[" + std::to_string(i) + "]");
            EmconStep step;
            s.get("from_tick", step.from_tick);
            s.get_enum("level", step.level, emcon_from_string);
            s.finish();
            c.emcon_schedule.push_back(step);
        }
    }
    if (root.has("comms")) read_comms(root.child("comms"), c.comms);
    if (root.has("offline")) {
        auto s = root.child("offline");
        s.get("min_support", c.offline.min_support);
        s.get("success_threshold", c.offline.success_threshold);
        s.finish();
    }
    if (root.has("tamper_tick") && !j.at("tamper_tick").is_null()) {
        Tick t = 0;
        root.get("tamper_tick", t);
        c.tamper_tick = t;
    } else if (root.has("tamper_tick")) {
        root.raw("tamper_tick");
    }
    root.finish();
    sync_catalog(c);
    validate(c);
    return c;
}

ScenarioConfig parse_config(const std::string& text) {
    json j;
    try {
        j = json::parse(text, nullptr, true, /*ignore_comments=*/true);
    } catch (const json::parse_error& e) {
        fail(std::string("config is not valid JSON: ") + e.what());
    }
    return config_from_json(j);
}

ScenarioConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) fail("cannot read config file " + path);
    std::stringstream buf;
    buf << in.rdbuf();
    return parse_config(buf.str());
}

json to_json(const ScenarioConfig& c) {
    json j;
    j["seed"] = c.seed;
    j["episode_ticks"] = c.episode_ticks;
    const auto& w = c.world;
    json world = {
        {"database_nodes", w.database_nodes}, {"application_nodes", w.application_nodes},
        {"web_nodes", w.web_nodes}, {"database_cost", w.database_cost},
        {"application_cost", w.application_cost}, {"web_cost", w.web_cost},
        {"honeypot_cost", w.honeypot_cost}, {"initial_honeypots", w.initial_honeypots},
        {"capacity", w.capacity}, {"p_detect", w.p_detect}, {"severity_min", w.severity_min},
        {"severity_max", w.severity_max}, {"compromise_threshold", w.compromise_threshold},
        {"compromised_signal_rate", w.compromised_signal_rate}, {"decoy_hit_rate", w.decoy_hit_rate},
        {"benign_ids_rate", w.benign_ids_rate}, {"benign_antimalware_rate", w.benign_antimalware_rate},
        {"benign_access_rate", w.benign_access_rate}, {"log_rate", w.log_rate},
        {"load_base", w.load_base}, {"load_jitter", w.load_jitter}, {"load_per_attack", w.load_per_attack},
        {"restrict_ticks", w.restrict_ticks}, {"restrict_inbound_factor", w.restrict_inbound_factor},
    };
    world["campaigns"] = json::array();
    for (const auto& cc : w.campaigns) {
        world["campaigns"].push_back({{"phase", to_string(cc.phase)},
                                      {"intensity", cc.intensity},
                                      {"recon_share", cc.recon_share},
                                      {"initial_known", cc.initial_known},
                                      {"dormant_ticks", cc.dormant_ticks}});
    }
    j["world"] = std::move(world);

    const auto& a = c.agent;
    j["agent"] = {
        {"reward", {{"a", a.reward.a}, {"b", a.reward.b}, {"c", a.reward.c},
                    {"denominator_floor", a.reward.denominator_floor}}},
        {"alpha", a.alpha}, {"gamma", a.gamma}, {"epsilon_start", a.epsilon_start},
        {"epsilon_end", a.epsilon_end}, {"eval_epsilon", a.eval_epsilon}, {"window", a.window},
        {"decision_interval", a.decision_interval}, {"confidence_halfsat", a.confidence_halfsat},
        {"bins", {{"threat", a.bins.threat}, {"load", a.bins.load}, {"honeypots", a.bins.honeypots}}},
    };

    json cascade;
    for (std::size_t i = 0; i < kStageCount; ++i) {
        const std::string name = to_string(static_cast<StageId>(i));
        cascade["thresholds"][name] = c.rules.stage_thresholds[i];
        cascade["costs"][name] = {{"time", c.cascade.costs[i].time}, {"power", c.cascade.costs[i].power}};
    }
    cascade["failsafe"] = to_string(c.cascade.failsafe);
    json approved = json::array();
    for (auto id : c.cascade.op.approved) approved.push_back(to_string(id));
    cascade["operator"] = {{"kind", to_string(c.cascade.op.kind)}, {"latency", c.cascade.op.latency},
                           {"approved", approved}};
    cascade["game_horizon"] = c.cascade.game_horizon;
    cascade["escalation_options"] = c.cascade.escalation_options;
    j["cascade"] = std::move(cascade);

    json guard = {{"max_impact_per_action", c.rules.budget.max_impact_per_action},
                  {"mission_need", c.rules.budget.mission_need}};
    for (auto level : {EmconLevel::Open, EmconLevel::Restricted, EmconLevel::Silent}) {
        guard["gates"][to_string(level)] = to_string(c.rules.gates[static_cast<std::size_t>(level)]);
    }
    for (const auto& s : c.rules.catalog.specs()) {
        guard["actions"][to_string(s.id)] = {{"impact", s.impact},
                                             {"emission_cost", s.emission_cost},
                                             {"enabled", s.enabled},
                                             {"autonomy", to_string(s.autonomy_level)}};
    }
    j["guardrails"] = std::move(guard);

    j["constraints"] = {{"connectivity", c.constraints.connectivity},
                        {"time_budget", c.constraints.time_budget},
                        {"power_budget", c.constraints.power_budget},
                        {"safety_margin", c.constraints.safety_margin}};
    j["emcon_schedule"] = json::array();
    for (const auto& step : c.emcon_schedule) {
        j["emcon_schedule"].push_back({{"from_tick", step.from_tick}, {"level", to_string(step.level)}});
    }
    json violations = json::array();
    for (const auto& v : c.comms.violations) {
        violations.push_back({{"tick", v.tick}, {"peer", v.peer}, {"kind", to_string(v.kind)}});
    }
    j["comms"] = {{"peers", c.comms.peers},
                  {"violation_threshold", c.comms.violation_threshold},
                  {"heartbeat_interval", c.comms.heartbeat_interval},
                  {"violations", violations}};
    j["offline"] = {{"min_support", c.offline.min_support}, {"success_threshold", c.offline.success_threshold}};
    j["tamper_tick"] = c.tamper_tick ? json(*c.tamper_tick) : json(nullptr);
    return j;
}

}  // namespace agentx
