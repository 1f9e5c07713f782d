#include "agentx/harness.hpp"

#include "agentx/comms.hpp"
#include "agentx/sensing.hpp"

#include <boost/math/distributions/students_t.hpp>

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>

namespace agentx {

using nlohmann::json;

namespace {

// ---- target selection from the agent's point of view ----------------------

// What the agent can know about a node: its inventory entry and the status it
// set itself. A silent compromise looks like a running node.
NodeStatus visible_status(const Node& n) {
    return n.status == NodeStatus::Compromised ? NodeStatus::Running : n.status;
}

double evidence_weight(const ObservedEvent& e) {
    switch (e.kind) {
        case EventKind::IdsAlert: return static_cast<double>(e.severity);
        case EventKind::AntiMalwareAlert:
        case EventKind::UnauthorizedAccess: return 2.0;
        case EventKind::FileIntegrityViolation: return 3.0;
        case EventKind::DummyFileAccess:
        case EventKind::DummyProcessAlert: return 5.0;
        default: return 0.0;
    }
}

struct AgentView {
    std::vector<Node> nodes;
    std::map<std::uint32_t, double> suspicion;

    double suspicion_of(const Node& n) const {
        const auto it = suspicion.find(n.id.value);
        return it == suspicion.end() ? 0.0 : it->second;
    }

    // Most suspicious real node passing `eligible`; ties to the lowest id.
    std::optional<NodeId> most_suspicious(auto&& eligible, bool require_evidence) const {
        std::optional<NodeId> best;
        double best_score = 0.0;
        for (const auto& n : nodes) {
            if (n.is_honeypot() || !eligible(n)) continue;
            const double s = suspicion_of(n);
            if (require_evidence && s <= 0.0) continue;
            if (!best || s > best_score) {
                best = n.id;
                best_score = s;
            }
        }
        return best;
    }
};

AgentView make_view(const WorldState& world, std::span<const ObservedEvent> window) {
    AgentView v;
    v.nodes = world.nodes;
    for (auto& n : v.nodes) {
        n.status = visible_status(n);
        n.exploit_progress = 0;
        n.foothold_of.reset();
        n.integrity_ok = true;
    }
    for (const auto& e : window) {
        if (const double w = evidence_weight(e); w > 0.0) v.suspicion[e.node.value] += w;
    }
    return v;
}

struct Resolved {
    std::optional<ExecutedAction> action;
    std::string error;
};

Resolved resolve_target(ActionId id, const AgentView& v) {
    auto running_real = [](const Node& n) { return n.status == NodeStatus::Running; };
    auto powered = [](const Node& n) { return n.is_powered(); };
    auto none = [](const char* why) { return Resolved{std::nullopt, why}; };
    switch (id) {
        case ActionId::StartHoneypot:
            for (const auto& n : v.nodes) {
                if (n.is_honeypot() && n.status == NodeStatus::Stopped) {
                    return {ExecutedAction{WorldAction::StartHoneypot, n.id}, {}};
                }
            }
            return {ExecutedAction{WorldAction::StartHoneypot, std::nullopt}, {}};
        case ActionId::StopHoneypot:
            for (auto it = v.nodes.rbegin(); it != v.nodes.rend(); ++it) {
                if (it->is_honeypot() && it->status == NodeStatus::Running) {
                    return {ExecutedAction{WorldAction::StopHoneypot, it->id}, {}};
                }
            }
            return none("no running honeypot");
        case ActionId::StartRealVm:
            for (const auto& n : v.nodes) {
                if (!n.is_honeypot() && n.status == NodeStatus::Stopped) {
                    return {ExecutedAction{WorldAction::StartRealVm, n.id}, {}};
                }
            }
            return none("no stopped real node");
        case ActionId::StopRealVm:
            for (auto it = v.nodes.rbegin(); it != v.nodes.rend(); ++it) {
                if (!it->is_honeypot() && it->status == NodeStatus::Running) {
                    return {ExecutedAction{WorldAction::StopRealVm, it->id}, {}};
                }
            }
            return none("no running real node");
        case ActionId::DeployDummyFiles: {
            const Node* best = nullptr;
            for (const auto& n : v.nodes) {
                if (n.is_honeypot() || n.status != NodeStatus::Running) continue;
                if (!best || n.decoy_files < best->decoy_files) best = &n;
            }
            if (!best) return none("no running real node");
            return {ExecutedAction{WorldAction::DeployDummyFiles, best->id}, {}};
        }
        case ActionId::QuarantineFile:
            if (auto t = v.most_suspicious(powered, true)) return {ExecutedAction{WorldAction::QuarantineFile, t}, {}};
            return none("no suspicious node");
        case ActionId::QuarantineNode:
            if (auto t = v.most_suspicious(running_real, true)) {
                return {ExecutedAction{WorldAction::QuarantineNode, t}, {}};
            }
            return none("no suspicious node");
        case ActionId::RestoreKnownGood:
            for (const auto& n : v.nodes) {
                if (!n.is_honeypot() && n.status == NodeStatus::Quarantined) {
                    return {ExecutedAction{WorldAction::RestoreKnownGood, n.id}, {}};
                }
            }
            if (auto t = v.most_suspicious(powered, true)) {
                return {ExecutedAction{WorldAction::RestoreKnownGood, t}, {}};
            }
            return none("nothing to restore");
        case ActionId::RotateAddress:
            if (auto t = v.most_suspicious(running_real, false)) {
                return {ExecutedAction{WorldAction::RotateAddress, t}, {}};
            }
            return none("no running real node");
        case ActionId::RestrictInbound: return {ExecutedAction{WorldAction::RestrictInbound, std::nullopt}, {}};
        case ActionId::RestrictOutbound: return {ExecutedAction{WorldAction::RestrictOutbound, std::nullopt}, {}};
        default: return none("not a world action");
    }
}

bool is_world_action(ActionId id) {
    switch (id) {
        case ActionId::NoOp:
        case ActionId::CryForHelp:
        case ActionId::ShareBlocklist:
        case ActionId::TerminateSelf: return false;
        default: return true;
    }
}

// ---- trace payloads ---------------------------------------------------------

json event_payload(const WorldEvent& e, const WorldState& world) {
    json j = {{"event", to_string(e.kind)},
              {"node", e.node.value},
              {"malicious", e.truth_malicious},
              {"honeypot", e.node.value < world.nodes.size() && world.nodes[e.node.value].is_honeypot()}};
    if (e.kind == EventKind::IdsAlert) j["severity"] = e.severity;
    if (e.kind == EventKind::LoadSample) j["load"] = e.load;
    return j;
}

json features_payload(const FeatureVector& fv) {
    return {{"ids_alert_count", fv.ids_alert_count},
            {"ids_severity_sum", fv.ids_severity_sum},
            {"antimalware_alerts", fv.antimalware_alerts},
            {"unauthorized_accesses", fv.unauthorized_accesses},
            {"honey_touches", fv.honey_touches},
            {"dummy_process_alerts", fv.dummy_process_alerts},
            {"integrity_violations", fv.integrity_violations},
            {"system_load", fv.system_load},
            {"load_samples", fv.load_samples},
            {"window_ticks", fv.window_ticks}};
}

json rejection_payload(const Rejection& r) {
    json j = {{"stage", to_string(r.stage)}, {"reason", to_string(r.reason)}};
    if (r.action) j["action"] = to_string(*r.action);
    if (r.veto) j["veto"] = to_string(*r.veto);
    return j;
}

// Events with tick in (from, to], using the tick order of the log.
std::span<const WorldEvent> events_between(const std::vector<WorldEvent>& log, Tick from, Tick to) {
    auto lo = std::upper_bound(log.begin(), log.end(), from, [](Tick t, const WorldEvent& e) { return t < e.tick; });
    auto hi = std::upper_bound(lo, log.end(), to, [](Tick t, const WorldEvent& e) { return t < e.tick; });
    return {lo, hi};
}

// ---- the online learner -----------------------------------------------------

std::vector<ActionId> ranked_actions(const QTable* q, const StateKey& s, const std::vector<ActionId>& learnable) {
    std::vector<ActionId> out = learnable;
    if (q) {
        std::stable_sort(out.begin(), out.end(),
                         [&](ActionId x, ActionId y) { return q->value(s, x) > q->value(s, y); });
    }
    return out;
}

struct Pending {
    StateKey state;
    ActionId action = ActionId::NoOp;
    Tick at = 0;
    long available_at_action = 0;
    long delta = 0;
    std::vector<CfhVerdict> cries;
};

class Episode {
public:
    Episode(const ScenarioConfig& cfg, std::uint64_t seed, const Policy& policy, const RunOptions& opt)
        : cfg_(cfg),
          seed_(seed),
          opt_(opt),
          world_(init_world(cfg.world, seed)),
          guard_(GuardrailSet::seal(cfg.rules)),
          live_rules_(cfg.rules),
          live_bytes_(serialize(cfg.rules)),
          policy_rng_(make_stream(seed, Stream::Policy)),
          ledger_(cfg.comms.violation_threshold),
          learnable_(cfg.rules.catalog.learnable()) {
        if (const auto* q = std::get_if<QTable>(&policy)) {
            q_ = *q;
            use_q_ = true;
        }
        epsilon_ = opt.epsilon.value_or(cfg.agent.eval_epsilon);
        for (const auto& p : cfg.comms.peers) ledger_.create(p);
    }

    RunResult run() {
        trace_status(0, {{"status", "Active"},
                         {"seed", seed_},
                         {"episode_ticks", cfg_.episode_ticks},
                         {"policy", use_q_ ? "QTable" : "Random"},
                         {"learning", opt_.learning},
                         {"ruleset_digest", guard_.expected_digest},
                         {"reward_params", to_json(cfg_.agent.reward)}});
        for (Tick t = 1; t <= cfg_.episode_ticks; ++t) tick(t);
        trace_.append(cfg_.episode_ticks, RecordKind::AgentStatus,
                      {{"status", "EpisodeEnd"}, {"records", trace_.records().size() + 1}});
        RunResult result;
        result.report = metrics_.report();
        result.trace = std::move(trace_);
        result.qtable = std::move(q_);
        return result;
    }

private:
    void emit(Tick t, RecordKind kind, json payload) { metrics_.consume(trace_.append(t, kind, std::move(payload))); }
    void trace_status(Tick t, json payload) { emit(t, RecordKind::AgentStatus, std::move(payload)); }

    void tick(Tick t) {
        if (active_ && cfg_.tamper_tick == t) {
            live_rules_.budget.max_impact_per_action += 1.0;
            live_bytes_ = serialize(live_rules_);
        }
        if (active_ && verify_ruleset(guard_, live_bytes_) == RulesetStatus::Tampered) {
            trace_status(t, {{"status", "Terminated"}, {"reason", "RulesetTampered"}});
            active_ = false;
        }

        const std::size_t known_truth = world_.compromises.size();
        for (const auto& e : step_world(world_)) emit(t, RecordKind::Event, event_payload(e, world_));
        for (std::size_t i = known_truth; i < world_.compromises.size(); ++i) {
            const auto& note = world_.compromises[i];
            emit(t, RecordKind::Event, {{"truth", "Compromised"}, {"node", note.node.value}, {"campaign", note.campaign}});
        }

        for (const auto& v : cfg_.comms.violations) {
            if (v.tick == t) apply_violation(t, v);
        }
        if (!active_) return;

        if (cfg_.comms.heartbeat_interval > 0 && t % cfg_.comms.heartbeat_interval == 0) {
            send(t, Message{MessageKind::Heartbeat, t, {}, std::nullopt, {}});
        }
        if (t % static_cast<Tick>(cfg_.agent.decision_interval) == 0) decision_point(t);
    }

    void apply_violation(Tick t, const ScheduledViolation& v) {
        const TrustState before = ledger_.at(v.peer).state;
        const auto& rec = ledger_.record_violation(v.peer, v.kind);
        emit(t, RecordKind::Message, {{"kind", "TrustViolation"},
                                      {"status", "Logged"},
                                      {"peer", v.peer},
                                      {"violation", to_string(v.kind)},
                                      {"violations", rec.violations},
                                      {"state", to_string(rec.state)}});
        if (before == TrustState::Trusted && rec.state == TrustState::Broken) {
            emit(t, RecordKind::Message, {{"kind", "CloneRequest"}, {"status", "Logged"}, {"peer", v.peer}});
        }
    }

    SendResult send(Tick t, const Message& msg, json extra = json::object()) {
        const auto result = messages_.send(msg, cfg_.emcon_at(t), guard_);
        json j = std::move(extra);
        j["kind"] = to_string(msg.kind);
        j["status"] = result.sent ? "Sent" : "Suppressed";
        j["emcon"] = to_string(cfg_.emcon_at(t));
        if (result.suppressed) j["reason"] = to_string(*result.suppressed);
        if (result.sent) j["recipients"] = ledger_.trusted_peers();
        if (msg.action_taken) j["action_taken"] = to_string(*msg.action_taken);
        if (msg.kind == MessageKind::ShareBlocklist) {
            json entries = json::array();
            for (auto a : msg.entries) entries.push_back(a.value);
            j["entries"] = entries;
        }
        if (msg.kind == MessageKind::CryForHelp) {
            j["evidence"] = {{"from", msg.evidence.from}, {"to", msg.evidence.to}};
            if (result.sent) {
                const auto verdict = classify_cfh(msg, world_.log, world_.clock);
                j["classification"] = verdict == CfhVerdict::Justified ? "Justified" : "CryWolf";
                cries_.push_back(verdict);
            }
        }
        emit(t, RecordKind::Message, std::move(j));
        return result;
    }

    void decision_point(Tick t) {
        const auto& a = cfg_.agent;
        const Tick window = static_cast<Tick>(a.window);
        const auto observed = observe(events_between(world_.log, t > window ? t - window : 0, t));
        const auto fv = collect(observed, a.window);
        const double score = baseline_.sample_count >= 2 ? anomaly_score(baseline_, fv) : 0.0;
        baseline_ = update_baseline(baseline_, fv);
        const StateKey state =
            discretize(fv, score, WorldSummary{world_.running_honeypots(), world_.pool.available()}, a.bins);
        emit(t, RecordKind::Percept, {{"state", state.to_string()}, {"anomaly", score}, {"features", features_payload(fv)}});

        if (pending_) close_period(t, state);

        const auto c = cfg_.constraints_at(t);
        const GuardrailSet live{live_rules_, guard_.expected_digest};
        const auto& costs = cfg_.cascade.costs;
        const PatternTable* patterns = opt_.patterns;

        StageHandles h;
        h.patterns = patterns;
        if (patterns) h.pattern = [&] { return pattern_match(*patterns, state); };
        h.online = [&]() -> std::optional<ProposedAction> {
            if (!use_q_) return ProposedAction{learnable_[policy_rng_.below(learnable_.size())], 1.0, StageId::OnlineLearning};
            const auto act = select_action(q_, state, epsilon_, policy_rng_);
            const double v = static_cast<double>(q_.visits(state));
            return ProposedAction{act, v / (v + a.confidence_halfsat), StageId::OnlineLearning};
        };
        h.escalation = [&]() -> std::optional<ProposedAction> {
            auto options = ranked_actions(use_q_ ? &q_ : nullptr, state, learnable_);
            if (options.size() > cfg_.cascade.escalation_options) options.resize(cfg_.cascade.escalation_options);
            const long remaining = c.time_budget - costs[static_cast<std::size_t>(StageId::HumanEscalation)].time;
            auto reply = escalate(cfg_.cascade.op, options, remaining);
            record_event(world_, EventKind::OperatorReply, NodeId{0});
            emit(t, RecordKind::Event, event_payload(world_.log.back(), world_));
            return reply;
        };
        h.game = [&]() -> std::optional<ProposedAction> {
            const SurrogateOutcomeModel model(live_rules_.catalog, a.reward, world_.pool.available());
            const auto plan = game_search(model, state.index(), cfg_.cascade.game_horizon);
            return ProposedAction{static_cast<ActionId>(plan.action), plan.confidence, StageId::GameSearch};
        };
        h.feedback = [&](const Decision&) {
            if (opt_.learning && use_q_) q_.add_visit(state);
        };

        const Decision d = decide(c, h, cfg_.cascade.failsafe, costs, live);
        const long k = decisions_++;
        json rejected = json::array();
        for (const auto& r : d.rejected) rejected.push_back(rejection_payload(r));
        emit(t, RecordKind::Decision, {{"decision", k},
                                       {"state", state.to_string()},
                                       {"action", to_string(d.action)},
                                       {"provenance", to_string(d.provenance)},
                                       {"confidence", d.confidence},
                                       {"rejected", rejected}});
        for (const auto& r : d.rejected) {
            if (r.reason != RejectReason::GuardrailVeto) continue;
            emit(t, RecordKind::Veto,
                 {{"decision", k}, {"stage", to_string(r.stage)}, {"action", to_string(*r.action)}, {"reason", to_string(*r.veto)}});
        }
        execute(t, k, d.action, state, observed);
    }

    void execute(Tick t, long k, ActionId id, const StateKey& state, std::span<const ObservedEvent> observed) {
        const auto& spec = live_rules_.catalog.spec(id);
        Pending p{state, id, t, world_.pool.available(), 0, {}};
        json j = {{"decision", k},
                  {"action", to_string(id)},
                  {"impact", spec.impact},
                  {"autonomy", to_string(spec.autonomy_level)},
                  {"emcon", to_string(cfg_.emcon_at(t))}};
        bool performed = true;
        if (is_world_action(id)) {
            const auto resolved = resolve_target(id, make_view(world_, observed));
            if (!resolved.action) {
                j["error"] = resolved.error;
                performed = false;
            } else {
                if (resolved.action->target) j["target"] = resolved.action->target->value;
                try {
                    const auto outcome = apply_action(world_, *resolved.action);
                    p.delta = outcome.delta_resources;
                    if (outcome.node) j["target"] = outcome.node->value;
                } catch (const Error& e) {
                    j["error"] = to_string(e.code());
                    performed = false;
                }
            }
        }
        j["delta_resources"] = p.delta;
        emit(t, RecordKind::ExecutedAction, std::move(j));

        const Tick window = static_cast<Tick>(cfg_.agent.window);
        cries_.clear();
        if (id == ActionId::CryForHelp) {
            Message m{MessageKind::CryForHelp, t, TickRange{t >= window ? t - window + 1 : 1, t}, std::nullopt, {}};
            send(t, m);
        } else if (id == ActionId::ShareBlocklist) {
            Message m{MessageKind::ShareBlocklist, t, {}, std::nullopt, {}};
            for (const auto& n : world_.nodes) {
                if (n.status == NodeStatus::Quarantined) m.entries.push_back(n.address);
            }
            send(t, m);
        } else if (performed && is_world_action(id) && spec.autonomy_level >= AutonomyLevel::Previsioned) {
            send(t, Message{MessageKind::Alert, t, {}, id, {}});
        }
        p.cries = cries_;

        if (id == ActionId::TerminateSelf) {
            trace_status(t, {{"status", "Terminated"}, {"reason", "FailSafe"}});
            active_ = false;
            pending_.reset();
            return;
        }
        pending_ = std::move(p);
    }

    void close_period(Tick t, const StateKey& next) {
        const Pending& p = *pending_;
        const auto period = events_between(world_.log, p.at, t);
        const auto inputs =
            accumulate_reward_inputs(period, world_.nodes, p.cries, p.available_at_action, p.delta, t - p.at);
        const auto terms = reward_terms(cfg_.agent.reward, inputs);
        const double r = terms.total();
        emit(t, RecordKind::RewardSample, {{"state", p.state.to_string()},
                                           {"action", to_string(p.action)},
                                           {"next_state", next.to_string()},
                                           {"period", {{"from", p.at}, {"to", t}}},
                                           {"inputs", to_json(inputs)},
                                           {"reward", r},
                                           {"terms", {{"honey", terms.honey}, {"resource", terms.resource}, {"cfh", terms.cfh}}}});
        if (opt_.learning && use_q_) q_update(q_, p.state, p.action, r, next);
        pending_.reset();
    }

    const ScenarioConfig& cfg_;
    std::uint64_t seed_;
    RunOptions opt_;
    WorldState world_;
    GuardrailSet guard_;
    Ruleset live_rules_;
    std::string live_bytes_;
    Rng policy_rng_;
    TrustLedger ledger_;
    MessageLog messages_;
    std::vector<ActionId> learnable_;
    QTable q_;
    bool use_q_ = false;
    double epsilon_ = 0.0;
    bool active_ = true;
    long decisions_ = 0;
    Baseline baseline_;
    std::optional<Pending> pending_;
    std::vector<CfhVerdict> cries_;
    Trace trace_;
    MetricsAccumulator metrics_;
};

}  // namespace

RunResult run_scenario(const ScenarioConfig& config, std::uint64_t seed, const Policy& policy, const RunOptions& options) {
    validate(config);
    if (const auto* q = std::get_if<QTable>(&policy); q && q->actions() != config.rules.catalog.learnable()) {
        throw Error(ErrorCode::ConfigInvalid, "Q-table action set does not match the enabled catalog actions");
    }
    return Episode(config, seed, policy, options).run();
}

double epsilon_at(const AgentParams& agent, std::size_t i, std::size_t episodes) {
    if (episodes <= 1) return agent.epsilon_end;
    const double f = static_cast<double>(i) / static_cast<double>(episodes - 1);
    return agent.epsilon_start + (agent.epsilon_end - agent.epsilon_start) * f;
}

TrainResult train_agent(const ScenarioConfig& config, std::size_t episodes, std::span<const std::uint64_t> seeds,
                        std::optional<QTable> initial) {
    validate(config);
    if (episodes == 0) throw Error(ErrorCode::ConfigInvalid, "episodes must be >= 1");
    if (seeds.empty()) throw Error(ErrorCode::ConfigInvalid, "at least one training seed is required");
    TrainResult out;
    out.qtable = initial ? std::move(*initial)
                         : QTable(config.agent.alpha, config.agent.gamma, config.rules.catalog.learnable());
    for (std::size_t i = 0; i < episodes; ++i) {
        RunOptions opt;
        opt.learning = true;
        opt.epsilon = epsilon_at(config.agent, i, episodes);
        auto r = run_scenario(config, seeds[i % seeds.size()], Policy{std::move(out.qtable)}, opt);
        out.qtable = std::move(r.qtable);
        out.reward_curve.push_back(r.report.cumulative_reward);
        out.epsilons.push_back(*opt.epsilon);
    }
    return out;
}

std::vector<LabeledSample> labeled_samples(const std::vector<TraceRecord>& trace, double success_threshold) {
    std::vector<LabeledSample> out;
    for (const auto& r : trace) {
        if (r.kind != RecordKind::RewardSample) continue;
        const auto action = action_from_string(r.payload.at("action").get<std::string>());
        if (!action) throw Error(ErrorCode::TraceCorrupt, "unknown action in reward sample");
        out.push_back({StateKey::parse(r.payload.at("state").get<std::string>()), *action,
                       r.payload.at("reward").get<double>() > success_threshold});
    }
    return out;
}

PatternTable offline_train(std::span<const LabeledSample> samples, long min_support) {
    if (samples.empty()) throw Error(ErrorCode::EmptyCorpus, "no labeled samples");
    struct Tally {
        long seen = 0;
        std::array<long, kActionCount> tried{};
        std::array<long, kActionCount> succeeded{};
    };
    std::map<std::size_t, Tally> by_state;
    for (const auto& s : samples) {
        auto& t = by_state[s.state.index()];
        ++t.seen;
        ++t.tried[index(s.action)];
        if (s.success) ++t.succeeded[index(s.action)];
    }
    PatternTable table;
    for (const auto& [key, t] : by_state) {
        if (t.seen < min_support) continue;
        std::optional<std::size_t> best;
        auto rate = [&](std::size_t a) { return static_cast<double>(t.succeeded[a]) / static_cast<double>(t.tried[a]); };
        for (std::size_t a = 0; a < kActionCount; ++a) {
            if (t.tried[a] == 0) continue;
            if (!best || t.succeeded[a] > t.succeeded[*best] ||
                (t.succeeded[a] == t.succeeded[*best] && rate(a) > rate(*best))) {
                best = a;
            }
        }
        table.insert(StateKey::from_index(key), PatternEntry{static_cast<ActionId>(*best), rate(*best)});
    }
    return table;
}

PatternTable offline_train(const std::vector<std::vector<TraceRecord>>& corpus, const OfflineParams& params) {
    std::vector<LabeledSample> samples;
    for (const auto& trace : corpus) {
        auto s = labeled_samples(trace, params.success_threshold);
        samples.insert(samples.end(), s.begin(), s.end());
    }
    return offline_train(samples, params.min_support);
}

PairedTest paired_t_test(std::span<const double> a, std::span<const double> b) {
    if (a.size() != b.size() || a.size() < 2) throw Error(ErrorCode::InvalidInput, "paired test needs >= 2 pairs");
    const auto n = static_cast<double>(a.size());
    std::vector<double> d(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) d[i] = a[i] - b[i];
    const double mean = std::accumulate(d.begin(), d.end(), 0.0) / n;
    double ss = 0.0;
    for (double x : d) ss += (x - mean) * (x - mean);
    const double sd = std::sqrt(ss / (n - 1.0));
    PairedTest out;
    out.mean_difference = mean;
    if (sd == 0.0) {
        out.t_statistic = mean > 0 ? INFINITY : (mean < 0 ? -INFINITY : 0.0);
        out.p_value = mean > 0 ? 0.0 : 1.0;
        return out;
    }
    out.t_statistic = mean / (sd / std::sqrt(n));
    const boost::math::students_t dist(n - 1.0);
    out.p_value = boost::math::cdf(boost::math::complement(dist, out.t_statistic));
    return out;
}

Evaluation evaluate(const ScenarioConfig& config, const QTable& q, std::span<const std::uint64_t> seeds) {
    Evaluation e;
    e.seeds.assign(seeds.begin(), seeds.end());
    std::sort(e.seeds.begin(), e.seeds.end());
    std::vector<double> qr, rr;
    for (auto seed : e.seeds) {
        e.q_reports.push_back(run_scenario(config, seed, Policy{q}).report);
        e.random_reports.push_back(run_scenario(config, seed, Policy{RandomPolicy{}}).report);
        qr.push_back(e.q_reports.back().cumulative_reward);
        rr.push_back(e.random_reports.back().cumulative_reward);
        e.mean_q_engagements += static_cast<double>(e.q_reports.back().honeypot_engagements);
        e.mean_random_engagements += static_cast<double>(e.random_reports.back().honeypot_engagements);
    }
    const auto n = static_cast<double>(e.seeds.size());
    if (n > 0) {
        e.mean_q_reward = std::accumulate(qr.begin(), qr.end(), 0.0) / n;
        e.mean_random_reward = std::accumulate(rr.begin(), rr.end(), 0.0) / n;
        e.mean_q_engagements /= n;
        e.mean_random_engagements /= n;
    }
    if (e.seeds.size() >= 2) e.reward_test = paired_t_test(qr, rr);
    return e;
}

json to_json(const Evaluation& e) {
    return {{"seeds", e.seeds.size()},
            {"mean_q_reward", e.mean_q_reward},
            {"mean_random_reward", e.mean_random_reward},
            {"mean_q_engagements", e.mean_q_engagements},
            {"mean_random_engagements", e.mean_random_engagements},
            {"mean_difference", e.reward_test.mean_difference},
            {"t_statistic", e.reward_test.t_statistic},
            {"p_value", e.reward_test.p_value}};
}

// ---- surrogate attacker model ------------------------------------------------

SurrogateOutcomeModel::SurrogateOutcomeModel(const ActionCatalog& catalog, RewardParams params, long available)
    : catalog_(&catalog), params_(params), available_(std::max(available, 1L)) {
    for (auto a : catalog.learnable()) actions_.push_back(static_cast<GameAction>(a));
}

std::vector<GameAction> SurrogateOutcomeModel::actions(GameState) const { return actions_; }

std::optional<std::vector<AttackerResponse>> SurrogateOutcomeModel::responses(GameState state, GameAction action) const {
    if (state >= StateKey::kCount || std::find(actions_.begin(), actions_.end(), action) == actions_.end()) {
        return std::nullopt;
    }
    const auto id = static_cast<ActionId>(action);
    StateKey after = StateKey::from_index(state);
    switch (id) {
        case ActionId::StartHoneypot: after.honeypots_bin = std::min(3, after.honeypots_bin + 1); break;
        case ActionId::StopHoneypot: after.honeypots_bin = std::max(0, after.honeypots_bin - 1); break;
        case ActionId::QuarantineFile:
        case ActionId::QuarantineNode:
        case ActionId::RestoreKnownGood:
        case ActionId::RotateAddress:
        case ActionId::RestrictInbound: after.threat_bin = std::max(0, after.threat_bin - 1); break;
        default: break;
    }
    const bool recent = StateKey::from_index(state).recent_honey_touch;
    const double active = std::clamp(0.15 + 0.25 * after.threat_bin + (recent ? 0.1 : 0.0), 0.0, 0.95);
    const double decoy_share = after.honeypots_bin / (after.honeypots_bin + 2.0);
    const double cost = params_.b * catalog_->spec(id).resource_delta / static_cast<double>(available_);
    const double cfh = id == ActionId::CryForHelp ? params_.c : 0.0;

    StateKey quiet = after, decoy = after, real = after;
    quiet.threat_bin = std::max(0, after.threat_bin - 1);
    quiet.recent_honey_touch = false;
    decoy.recent_honey_touch = true;
    real.threat_bin = std::min(3, after.threat_bin + 1);
    real.recent_honey_touch = false;
    return std::vector<AttackerResponse>{
        {1.0 - active, quiet.index(), cost},
        {active * decoy_share, decoy.index(), cost + params_.a + cfh},
        {active * (1.0 - decoy_share), real.index(), cost + cfh},
    };
}

}  // namespace agentx
