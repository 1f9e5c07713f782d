// Acceptance suite: one PASS/FAIL line per criterion, non-zero exit if any
// criterion fails. Runs inside ctest; the CLI path is baked in at build time.

#include "agentx/comms.hpp"
#include "agentx/config.hpp"
#include "agentx/decision.hpp"
#include "agentx/game_search.hpp"
#include "agentx/harness.hpp"
#include "agentx/reward.hpp"
#include "agentx/sensing.hpp"

#include "oracles.hpp"
#include "trace_checks.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <numeric>
#include <sstream>
#include <string>
#include <vector>

using namespace agentx;

namespace {

struct Outcome {
    bool pass = true;
    std::string detail;
    std::vector<std::string> problems;

    void require(bool ok, const std::string& what) {
        if (!ok) {
            pass = false;
            if (problems.size() < 5) problems.push_back(what);
        }
    }
};

std::string fmt(const char* f, double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, f, v);
    return buf;
}

// Scenario variety for the run-level criteria: EMCON shifts, budgets that
// open and close stages, every fail-safe profile, one or two campaigns.
ScenarioConfig random_config(Rng& rng) {
    auto c = default_config();
    c.episode_ticks = 300 + static_cast<Tick>(rng.below(501));
    c.constraints.connectivity = rng.bernoulli(0.7);
    c.constraints.time_budget = static_cast<long>(rng.below(21));
    c.constraints.power_budget = static_cast<long>(rng.below(21));
    c.cascade.failsafe = static_cast<FailSafeProfile>(rng.below(3));
    c.cascade.op.kind = static_cast<OperatorPolicy::Kind>(rng.below(2));
    c.cascade.op.latency = static_cast<long>(rng.below(8));
    c.emcon_schedule = {{0, static_cast<EmconLevel>(rng.below(3))}};
    for (int i = 0, n = static_cast<int>(rng.below(3)); i < n; ++i) {
        const Tick from = c.emcon_schedule.back().from_tick + 1 + static_cast<Tick>(rng.below(200));
        c.emcon_schedule.push_back({from, static_cast<EmconLevel>(rng.below(3))});
    }
    c.rules.budget.max_impact_per_action = std::vector<double>{1.0, 2.0, 3.0, 5.0}[rng.below(4)];
    if (rng.bernoulli(0.5)) c.rules.gates = {AutonomyLevel::Previsioned, AutonomyLevel::Reflex, AutonomyLevel::Reflex};
    c.world.campaigns.front().intensity = 0.1 + 0.5 * rng.uniform();
    if (rng.bernoulli(0.5)) c.world.campaigns.push_back(c.world.campaigns.front());
    validate(c);
    return c;
}

// ---- 1 -------------------------------------------------------------------------

Outcome reward_oracle() {
    Outcome o;
    Rng rng(1001);
    const int n = 10000;
    std::vector<std::pair<RewardParams, RewardInputs>> cases;
    double worst = 0.0;
    for (int i = 0; i < n; ++i) {
        RewardParams p{rng.uniform() * 20 - 10, rng.uniform() * 20 - 10, rng.uniform() * 20 - 10,
                       1 + static_cast<long>(rng.below(5))};
        RewardInputs x{static_cast<long>(rng.below(1000)),   static_cast<long>(rng.below(1000)),
                       static_cast<long>(rng.below(2001)) - 1000, 1 + static_cast<long>(rng.below(10000)),
                       static_cast<long>(rng.below(100)),    static_cast<long>(rng.below(100))};
        const double want = oracle::reward(p.a, p.b, p.c, p.denominator_floor, x.honey_events, x.security_events,
                                           x.delta_resources, x.total_resources, x.justified_cfh, x.cw);
        const double err = std::abs(reward(p, x) - want);
        worst = std::max(worst, err);
        o.require(err <= 1e-9, "library disagrees on case " + std::to_string(i));
        cases.push_back({p, x});
    }

    const auto dir = std::filesystem::temp_directory_path() / "agentx_acceptance";
    std::filesystem::create_directories(dir);
    const auto in_path = (dir / "reward_in.jsonl").string();
    const auto out_path = (dir / "reward_out.txt").string();
    {
        std::ofstream in(in_path);
        for (const auto& [p, x] : cases) {
            nlohmann::json j = {{"params", {{"a", p.a}, {"b", p.b}, {"c", p.c}, {"denominator_floor", p.denominator_floor}}},
                                {"inputs", to_json(x)}};
            in << j.dump() << '\n';
        }
    }
    const std::string cmd = std::string("\"") + AGENTX_CLI + "\" oracle-reward < \"" + in_path + "\" > \"" + out_path + "\"";
    const int rc = std::system(cmd.c_str());
    o.require(rc == 0, "oracle-reward exited with " + std::to_string(rc));
    std::ifstream out(out_path);
    double worst_cli = 0.0;
    std::size_t lines = 0;
    for (double v; out >> v && lines < cases.size(); ++lines) {
        const auto& [p, x] = cases[lines];
        const double want = oracle::reward(p.a, p.b, p.c, p.denominator_floor, x.honey_events, x.security_events,
                                           x.delta_resources, x.total_resources, x.justified_cfh, x.cw);
        worst_cli = std::max(worst_cli, std::abs(v - want));
        o.require(std::abs(v - want) <= 1e-9, "CLI disagrees on case " + std::to_string(lines));
    }
    o.require(lines == cases.size(), "CLI returned " + std::to_string(lines) + " values");
    std::filesystem::remove_all(dir);
    o.detail = std::to_string(n) + " cases, max error library " + fmt("%.3g", worst) + ", CLI " + fmt("%.3g", worst_cli);
    return o;
}

// ---- 2 -------------------------------------------------------------------------

Outcome reward_monotonicity() {
    Outcome o;
    Rng rng(2002);
    const int n = 1000;
    for (int i = 0; i < n; ++i) {
        const RewardParams p{0.01 + 5 * rng.uniform(), 0.01 + 5 * rng.uniform(), 0.01 + 5 * rng.uniform(),
                             1 + static_cast<long>(rng.below(3))};
        RewardInputs x{static_cast<long>(rng.below(200)),  static_cast<long>(rng.below(200)),
                       -1 - static_cast<long>(rng.below(100)), 1 + static_cast<long>(rng.below(1000)),
                       static_cast<long>(rng.below(50)),   static_cast<long>(rng.below(50))};
        const double r0 = reward(p, x);
        auto h = x;
        ++h.honey_events;
        o.require(reward(p, h) > r0, "honey_events not increasing at fixture " + std::to_string(i));
        auto j = x;
        ++j.justified_cfh;
        o.require(reward(p, j) > r0, "justified_cfh not increasing at fixture " + std::to_string(i));
        // cw: never increasing; strictly decreasing once it is at or above the
        // floor and there are justified cries to dilute.
        auto more_cw = x;
        ++more_cw.cw;
        o.require(reward(p, more_cw) <= r0, "cw increases reward at fixture " + std::to_string(i));
        auto w0 = x;
        w0.cw = std::max(x.cw, p.denominator_floor);
        if (w0.justified_cfh == 0) w0.justified_cfh = 1;
        auto w1 = w0;
        ++w1.cw;
        o.require(reward(p, w1) < reward(p, w0), "cw not decreasing at fixture " + std::to_string(i));
        auto t = x;
        t.total_resources += 1 + static_cast<long>(rng.below(1000));
        o.require(std::abs(reward_terms(p, t).resource) < std::abs(reward_terms(p, x).resource),
                  "resource term not shrinking with capacity at fixture " + std::to_string(i));
    }
    o.detail = std::to_string(n) + " fixtures, 5 checks each";
    return o;
}

// ---- 3 -------------------------------------------------------------------------

Outcome determinism(std::vector<std::pair<ScenarioConfig, std::vector<TraceRecord>>>& runs) {
    Outcome o;
    Rng rng(3003);
    for (int i = 0; i < 20; ++i) {
        const auto c = random_config(rng);
        const std::uint64_t seed = 1 + rng.below(1u << 30);
        const bool q = i % 2 == 1;
        const Policy policy = q ? Policy{QTable(c.agent.alpha, c.agent.gamma, c.rules.catalog.learnable())}
                                : Policy{RandomPolicy{}};
        const RunOptions opt{q, q ? std::optional<double>(0.3) : std::nullopt, nullptr};
        const auto a = run_scenario(c, seed, policy, opt);
        const auto b = run_scenario(c, seed, policy, opt);
        o.require(a.trace.text() == b.trace.text(), "trace differs for pair " + std::to_string(i));
        o.require(a.report == b.report, "report differs for pair " + std::to_string(i));
        o.require(replay(a.trace.records()) == a.report, "replay differs for pair " + std::to_string(i));
        runs.push_back({c, a.trace.records()});
    }
    o.detail = "20 (config, seed) pairs, byte-identical traces";
    return o;
}

// ---- 4 -------------------------------------------------------------------------

Outcome cascade() {
    Outcome o;
    long combos = 0, failsafe_hits = 0;
    for (unsigned avail = 0; avail < 32; ++avail) {
        for (unsigned accept = 0; accept < 32; ++accept) {
            StageHandles h;
            int fed = 0;
            auto prop = [](ActionId a) {
                return [a]() -> std::optional<ProposedAction> { return ProposedAction{a, 1.0, StageId::FailSafe}; };
            };
            h.pattern = prop(ActionId::DeployDummyFiles);
            h.online = prop(ActionId::StartHoneypot);
            h.escalation = prop(ActionId::QuarantineFile);
            h.game = prop(ActionId::RotateAddress);
            h.feedback = [&](const Decision&) { ++fed; };
            const auto d = decide(
                EnvConstraints{}, h, FailSafeProfile::NoAction,
                [&](StageId s, const EnvConstraints&) { return ((avail >> static_cast<unsigned>(s)) & 1U) != 0; },
                [&](const ProposedAction& p, const EnvConstraints&) {
                    return ArbiterVerdict{((accept >> static_cast<unsigned>(p.stage)) & 1U) != 0,
                                          RejectReason::BelowThreshold, std::nullopt};
                });
            std::size_t want = 4;
            for (std::size_t s = 0; s < 4 && want == 4; ++s) {
                if (((avail >> s) & 1U) && ((accept >> s) & 1U)) want = s;
            }
            const std::string tag = "avail " + std::to_string(avail) + " accept " + std::to_string(accept);
            o.require(static_cast<std::size_t>(d.provenance) == want, "wrong provenance for " + tag);
            o.require(fed == 1, "feedback count for " + tag);
            o.require(d.rejected.size() >= std::min<std::size_t>(want, 4), "missing rejections for " + tag);
            for (std::size_t s = 0; s < std::min<std::size_t>(want, 4); ++s) {
                o.require(d.rejected[s].stage == static_cast<StageId>(s), "rejection order for " + tag);
            }
            if (want == 4) {
                ++failsafe_hits;
                // A vetoed fail-safe proposal still yields a decision.
                o.require(d.action == ActionId::NoOp, "fail-safe action for " + tag);
            }
            ++combos;
        }
    }
    o.detail = std::to_string(combos) + " availability x arbiter patterns, " + std::to_string(failsafe_hits) +
               " reached the fail-safe";
    return o;
}

// ---- 5 -------------------------------------------------------------------------

Outcome game_oracle() {
    Outcome o;
    Rng rng(5005);
    int models = 0;
    for (int horizon = 1; horizon <= 3; ++horizon) {
        for (int a = 1; a <= 3; ++a) {
            for (int r = 1; r <= 3; ++r) {
                for (int rep = 0; rep < 8; ++rep) {
                    const auto m = oracle::random_toy_model(rng, 1 + rng.below(4), a, r, rep % 2 == 1, rep % 4 >= 2);
                    const auto got = game_search(m, 0, horizon);
                    const auto want = oracle::brute_force_game(m, 0, horizon);
                    const std::string tag = "h" + std::to_string(horizon) + " a" + std::to_string(a) + " r" +
                                            std::to_string(r) + " #" + std::to_string(rep);
                    o.require(got.action == want.action, "action differs for " + tag);
                    o.require(std::abs(got.value - want.value) <= 1e-9, "value differs for " + tag);
                    ++models;
                }
            }
        }
    }
    o.require(models >= 200, "only " + std::to_string(models) + " models");
    o.detail = std::to_string(models) + " models over horizon 1..3, 1..3 actions, 1..3 responses";
    return o;
}

// ---- 6 -------------------------------------------------------------------------

Outcome guardrail_soundness(std::vector<std::pair<ScenarioConfig, std::vector<TraceRecord>>>& runs) {
    Outcome o;
    Rng rng(6006);
    long executed = 0, vetoes = 0;
    for (int i = 0; i < 50; ++i) {
        const auto c = random_config(rng);
        const auto r = run_scenario(c, 100 + i, RandomPolicy{});
        const auto& t = r.trace.records();
        for (const auto& v : checks::guardrail_violations(t, c)) o.require(false, "seed " + std::to_string(100 + i) + ": " + v);
        for (const auto& rec : t) {
            executed += rec.kind == RecordKind::ExecutedAction;
            vetoes += rec.kind == RecordKind::Veto;
        }
        runs.push_back({c, t});
    }
    // The kill switch under the harshest rules.
    Ruleset harsh;
    harsh.budget.max_impact_per_action = 0.0;
    harsh.gates = {AutonomyLevel::Reflex, AutonomyLevel::Reflex, AutonomyLevel::Reflex};
    const auto g = GuardrailSet::seal(harsh);
    for (auto level : {EmconLevel::Open, EmconLevel::Restricted, EmconLevel::Silent}) {
        EnvConstraints c;
        c.emcon_level = level;
        o.require(!check(g.rules.catalog.spec(ActionId::TerminateSelf), c, g), "TerminateSelf vetoed");
    }
    o.require(vetoes > 0, "no vetoes exercised");
    o.detail = "50 seeds, " + std::to_string(executed) + " executed actions, " + std::to_string(vetoes) +
               " vetoes, 0 violations expected";
    return o;
}

// ---- 7 -------------------------------------------------------------------------

Outcome tamper_kill() {
    Outcome o;
    Rng rng(7007);
    for (int i = 0; i < 20; ++i) {
        auto c = random_config(rng);
        const Tick t = 1 + static_cast<Tick>(rng.below(c.episode_ticks));
        c.tamper_tick = t;
        const auto r = run_scenario(c, 700 + i, RandomPolicy{});
        const auto& recs = r.trace.records();
        const std::string tag = "seed " + std::to_string(700 + i) + " tick " + std::to_string(t);
        // A fail-safe termination may come first; the drill only applies to a live agent.
        std::optional<Tick> earlier;
        std::optional<std::size_t> kill;
        for (std::size_t k = 0; k < recs.size(); ++k) {
            const auto& p = recs[k].payload;
            if (recs[k].kind == RecordKind::AgentStatus && p.at("status") == "Terminated") {
                if (p.at("reason") == "RulesetTampered") {
                    kill = k;
                } else if (!earlier) {
                    earlier = recs[k].tick;
                }
            }
        }
        if (earlier && *earlier < t) {
            o.require(!kill, "terminated twice: " + tag);
            continue;
        }
        o.require(kill.has_value(), "no tamper termination: " + tag);
        if (!kill) continue;
        o.require(recs[*kill].tick == t, "terminated at tick " + std::to_string(recs[*kill].tick) + ": " + tag);
        for (std::size_t k = *kill; k < recs.size(); ++k) {
            o.require(recs[k].kind != RecordKind::ExecutedAction, "action after kill: " + tag);
        }
        o.require(r.report.terminated_at == t, "report disagrees: " + tag);
    }
    o.detail = "20 seeds, random tamper tick";
    return o;
}

// ---- 8 -------------------------------------------------------------------------

Outcome emcon(const std::vector<std::pair<ScenarioConfig, std::vector<TraceRecord>>>& runs) {
    Outcome o;
    Rng rng(8008);
    long suppressed = 0;
    for (int i = 0; i < 10; ++i) {
        auto c = random_config(rng);
        c.emcon_schedule = {{0, EmconLevel::Silent}};
        const auto r = run_scenario(c, 800 + i, RandomPolicy{});
        o.require(checks::count_sent(r.trace.records()) == 0, "message sent under Silent, seed " + std::to_string(800 + i));
        suppressed += r.report.messages_suppressed;
    }
    // Replay each run's attempted message stream at Restricted and at Open.
    long streams = 0, restricted_sent = 0, open_sent = 0;
    for (const auto& [c, trace] : runs) {
        for (int variant = 0; variant < 4; ++variant) {
            Ruleset rules = c.rules;
            for (auto a : {ActionId::CryForHelp, ActionId::ShareBlocklist}) {
                rules.catalog.spec(a).autonomy_level = static_cast<AutonomyLevel>((variant + static_cast<int>(a)) % 4);
            }
            const auto g = GuardrailSet::seal(rules);
            std::vector<Message> stream;
            for (const auto& rec : trace) {
                if (rec.kind != RecordKind::Message) continue;
                const auto kind = message_kind_from_string(rec.payload.at("kind").get<std::string>());
                if (kind) stream.push_back(Message{*kind, rec.tick, {rec.tick, rec.tick}, std::nullopt, {}});
            }
            for (std::size_t k = 0; k < stream.size(); ++k) {
                const bool at_restricted = send_check(stream[k], EmconLevel::Restricted, g).sent;
                const bool at_open = send_check(stream[k], EmconLevel::Open, g).sent;
                restricted_sent += at_restricted;
                open_sent += at_open;
                o.require(!at_restricted || at_open, "Open drops a message Restricted sends");
            }
            ++streams;
        }
    }
    o.detail = "10 all-Silent runs (" + std::to_string(suppressed) + " suppressed, 0 sent); " + std::to_string(streams) +
               " replayed streams, Restricted " + std::to_string(restricted_sent) + " <= Open " + std::to_string(open_sent);
    return o;
}

// ---- 9 -------------------------------------------------------------------------

Outcome cfh_accounting(std::vector<std::pair<ScenarioConfig, std::vector<TraceRecord>>> runs) {
    Outcome o;
    // Quiet networks, so that cries can also be unjustified.
    Rng rng(9009);
    for (int i = 0; i < 20; ++i) {
        auto c = random_config(rng);
        c.emcon_schedule = {{0, EmconLevel::Open}};
        if (i % 2 == 0) {
            c.world.campaigns.clear();
        } else {
            c.world.campaigns.resize(1);
            c.world.campaigns.front().intensity = 0.01;
        }
        runs.push_back({c, run_scenario(c, 900 + i, RandomPolicy{}).trace.records()});
    }
    long cries = 0, justified = 0;
    for (const auto& [c, trace] : runs) {
        for (const auto& v : checks::cfh_violations(trace)) o.require(false, v);
        for (const auto& v : checks::reward_input_violations(trace)) o.require(false, v);
        const auto report = replay(trace);
        o.require(report.cfh_justified <= report.cfh_sent, "justified exceeds sent");
        cries += report.cfh_sent;
        justified += report.cfh_justified;
    }
    o.require(cries > 0 && justified > 0 && justified < cries, "both verdicts must be exercised");
    o.detail = std::to_string(runs.size()) + " runs, " + std::to_string(cries) + " cries (" + std::to_string(justified) +
               " justified, " + std::to_string(cries - justified) + " cry-wolf)";
    return o;
}

// ---- 10 ------------------------------------------------------------------------

Outcome learning_efficacy() {
    Outcome o;
    const auto c = load_config(std::string(AGENTX_SOURCE_DIR) + "/configs/reference.json");
    std::vector<std::uint64_t> train_seeds(200);
    std::iota(train_seeds.begin(), train_seeds.end(), 1000);
    const auto trained = train_agent(c, 200, train_seeds);
    std::vector<std::uint64_t> eval_seeds(30);
    std::iota(eval_seeds.begin(), eval_seeds.end(), 1);
    const auto e = evaluate(c, trained.qtable, eval_seeds);
    o.require(e.reward_test.p_value < 0.05, "paired test not significant");
    o.require(e.mean_q_engagements > e.mean_random_engagements, "engagements not higher");
    o.detail = "reward " + fmt("%.2f", e.mean_q_reward) + " vs " + fmt("%.2f", e.mean_random_reward) + ", t " +
               fmt("%.2f", e.reward_test.t_statistic) + ", p " + fmt("%.3g", e.reward_test.p_value) + "; engagements " +
               fmt("%.1f", e.mean_q_engagements) + " vs " + fmt("%.1f", e.mean_random_engagements);
    return o;
}

// ---- 11 ------------------------------------------------------------------------

Outcome sensing() {
    Outcome o;
    Rng rng(1111);
    for (int w = 0; w < 1000; ++w) {
        const auto ev = oracle::random_events(rng, rng.below(500), 1, 20);
        const auto fv = collect(ev, 20);
        auto t = oracle::tally(ev);
        const bool ok = fv.ids_alert_count == t["IdsAlert"] && fv.ids_severity_sum == t["severity"] &&
                        fv.antimalware_alerts == t["AntiMalwareAlert"] &&
                        fv.unauthorized_accesses == t["UnauthorizedAccess"] &&
                        fv.honey_touches == t["HoneyTouch"] + t["DummyFileAccess"] &&
                        fv.dummy_process_alerts == t["DummyProcessAlert"] &&
                        fv.integrity_violations == t["FileIntegrityViolation"] &&
                        std::abs(fv.system_load - t["load"]) <= 1e-12;
        o.require(ok, "window " + std::to_string(w) + " disagrees with the tally");
    }
    double worst = 0.0;
    for (int round = 0; round < 20; ++round) {
        Baseline b;
        std::vector<std::array<double, kFeatureCount>> xs;
        for (int i = 0; i < 200; ++i) {
            const auto fv = collect(oracle::random_events(rng, rng.below(300), 1, 20), 20);
            xs.push_back(fv.values());
            b = update_baseline(b, fv);
        }
        for (std::size_t f = 0; f < kFeatureCount; ++f) {
            const auto [mean, var] = oracle::two_pass_moments(xs, f);
            const double em = mean == 0.0 ? std::abs(b.mean[f]) : std::abs(b.mean[f] - mean) / std::abs(mean);
            const double ev = var == 0.0 ? std::abs(b.variance(f)) : std::abs(b.variance(f) - var) / std::abs(var);
            worst = std::max({worst, em, ev});
            o.require(em <= 1e-9 && ev <= 1e-9, "moments drift for feature " + std::to_string(f));
        }
        o.require(anomaly_score(b, b.mean) == 0.0, "anomaly at the mean is not zero");
    }
    o.detail = "1000 windows; 20 baselines, max relative moment error " + fmt("%.3g", worst) + "; anomaly(mean) = 0";
    return o;
}

}  // namespace

int main() {
    std::vector<std::pair<ScenarioConfig, std::vector<TraceRecord>>> runs;
    const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria = {
        {"reward oracle equivalence", reward_oracle},
        {"reward sign and monotonicity", reward_monotonicity},
        {"determinism", [&] { return determinism(runs); }},
        {"cascade totality and minimality", cascade},
        {"game-search oracle", game_oracle},
        {"guardrail soundness", [&] { return guardrail_soundness(runs); }},
        {"tamper kill", tamper_kill},
        {"EMCON silence and monotonicity", [&] { return emcon(runs); }},
        {"cry-for-help accounting", [&] { return cfh_accounting(runs); }},
        {"learning efficacy", learning_efficacy},
        {"sensing oracles", sensing},
    };
    int failed = 0;
    for (std::size_t i = 0; i < criteria.size(); ++i) {
        const auto start = std::chrono::steady_clock::now();
        Outcome o;
        try {
            o = criteria[i].second();
        } catch (const std::exception& e) {
            o.pass = false;
            o.problems.push_back(std::string("exception: ") + e.what());
        }
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        std::printf("%s %2zu %s: %s (%.1fs)\n", o.pass ? "PASS" : "FAIL", i + 1, criteria[i].first.c_str(),
                    o.detail.c_str(), secs);
        for (const auto& p : o.problems) std::printf("       %s\n", p.c_str());
        failed += !o.pass;
    }
    std::printf("%d of %zu criteria passed\n", static_cast<int>(criteria.size()) - failed, criteria.size());
    std::fflush(stdout);
    return failed == 0 ? 0 : 1;
}
