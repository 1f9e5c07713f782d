#include "agentx/harness.hpp"

#include <CLI11.hpp>

#include <cstdio>
#include <fstream>
#include <iostream>
#include <numeric>
#include <sstream>

using namespace agentx;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitFailure = 1;
constexpr int kExitConfig = 2;
constexpr int kExitTrace = 3;

struct Options {
    std::string config;
    std::optional<std::uint64_t> seed;
    std::size_t episodes = 0;
    std::string policy;
    std::string trace_out;
    std::string patterns;
    std::string pattern_out;
    std::string trace_in;
    std::string ruleset;
    std::string ruleset_out;
};

ScenarioConfig load(const Options& o) {
    auto cfg = o.config.empty() ? default_config() : load_config(o.config);
    if (o.seed) cfg.seed = *o.seed;
    if (!o.ruleset.empty()) {
        // A ruleset whose bytes no longer match its digest is never deployed.
        const auto g = read_ruleset(o.ruleset);
        std::ifstream in(o.ruleset, std::ios::binary);
        std::stringstream bytes;
        bytes << in.rdbuf();
        if (verify_ruleset(g, bytes.str()) != RulesetStatus::Ok) {
            throw Error(ErrorCode::ConfigInvalid, "ruleset " + o.ruleset + " does not match its digest");
        }
        cfg.rules = g.rules;
        validate(cfg);
    }
    if (!o.ruleset_out.empty()) write_ruleset(cfg.rules, o.ruleset_out);
    return cfg;
}

void print(const nlohmann::json& j) { std::cout << j.dump(2) << '\n'; }

int cmd_run(const Options& o) {
    const auto cfg = load(o);
    Policy policy = RandomPolicy{};
    if (!o.policy.empty()) policy = load_qtable(o.policy);
    std::optional<PatternTable> patterns;
    if (!o.patterns.empty()) patterns = load_pattern_table(o.patterns);
    RunOptions opt;
    opt.patterns = patterns ? &*patterns : nullptr;
    const auto r = run_scenario(cfg, cfg.seed, policy, opt);
    if (!o.trace_out.empty()) r.trace.write(o.trace_out);
    print(to_json(r.report));
    return kExitOk;
}

int cmd_train(const Options& o) {
    const auto cfg = load(o);
    const std::size_t episodes = o.episodes ? o.episodes : 200;
    std::vector<std::uint64_t> seeds(episodes);
    std::iota(seeds.begin(), seeds.end(), cfg.seed);
    const auto result = train_agent(cfg, episodes, seeds);
    if (!o.policy.empty()) save_qtable(result.qtable, o.policy);
    if (!o.pattern_out.empty() || !o.trace_out.empty()) {
        // One greedy run of the trained table provides the labelled corpus.
        const auto r = run_scenario(cfg, cfg.seed, Policy{result.qtable});
        if (!o.trace_out.empty()) r.trace.write(o.trace_out);
        if (!o.pattern_out.empty()) {
            save_pattern_table(offline_train({r.trace.records()}, cfg.offline), o.pattern_out);
        }
    }
    const auto& curve = result.reward_curve;
    print({{"episodes", episodes},
           {"first_reward", curve.front()},
           {"last_reward", curve.back()},
           {"final_epsilon", result.epsilons.back()},
           {"reward_curve", curve}});
    return kExitOk;
}

int cmd_eval(const Options& o) {
    const auto cfg = load(o);
    if (o.policy.empty()) throw Error(ErrorCode::ConfigInvalid, "eval needs --policy");
    const auto q = load_qtable(o.policy);
    const std::size_t n = o.episodes ? o.episodes : 30;
    std::vector<std::uint64_t> seeds(n);
    std::iota(seeds.begin(), seeds.end(), cfg.seed);
    print(to_json(evaluate(cfg, q, seeds)));
    return kExitOk;
}

int cmd_replay(const Options& o) {
    print(to_json(replay_file(o.trace_in)));
    return kExitOk;
}

// Reads {"params": {...}, "inputs": {...}} per line and prints the reward.
int cmd_oracle_reward() {
    std::string line;
    while (std::getline(std::cin, line)) {
        if (line.empty()) continue;
        const auto j = nlohmann::json::parse(line);
        const auto p = j.contains("params") ? reward_params_from_json(j.at("params")) : RewardParams{};
        std::printf("%.17g\n", reward(p, reward_inputs_from_json(j.at("inputs"))));
    }
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Autonomous honeypot-management agent: simulation, training and evaluation"};
    app.require_subcommand(1);
    Options o;

    auto add_common = [&](CLI::App* sub) {
        sub->add_option("--config", o.config, "Scenario config (JSON, comments allowed)");
        sub->add_option("--seed", o.seed, "Master seed (overrides the config)");
        sub->add_option("--ruleset", o.ruleset, "Guardrail ruleset file; its .sha256 digest must match");
        sub->add_option("--ruleset-out", o.ruleset_out, "Write the effective ruleset and its .sha256 digest");
    };

    auto* run = app.add_subcommand("run", "Run one episode and print its metrics");
    add_common(run);
    run->add_option("--policy", o.policy, "Q-table to follow (default: random policy)");
    run->add_option("--patterns", o.patterns, "Pattern table for the pattern-recognition stage");
    run->add_option("--trace-out", o.trace_out, "Write the run trace here");

    auto* train = app.add_subcommand("train", "Train a Q-table");
    add_common(train);
    train->add_option("--episodes", o.episodes, "Training episodes (default 200)");
    train->add_option("--policy", o.policy, "Write the trained Q-table here");
    train->add_option("--pattern-out", o.pattern_out, "Also distil a pattern table from a greedy run");
    train->add_option("--trace-out", o.trace_out, "Write the trace of the greedy run here");

    auto* eval = app.add_subcommand("eval", "Compare a Q-table against the random policy, paired by seed");
    add_common(eval);
    eval->add_option("--policy", o.policy, "Q-table to evaluate")->required();
    eval->add_option("--episodes", o.episodes, "Evaluation seeds (default 30)");

    auto* rep = app.add_subcommand("replay", "Recompute metrics from a trace");
    rep->add_option("trace", o.trace_in, "Trace file")->required();

    auto* oracle = app.add_subcommand("oracle-reward", "Evaluate the reward for JSON lines on stdin");

    CLI11_PARSE(app, argc, argv);

    try {
        if (run->parsed()) return cmd_run(o);
        if (train->parsed()) return cmd_train(o);
        if (eval->parsed()) return cmd_eval(o);
        if (rep->parsed()) return cmd_replay(o);
        if (oracle->parsed()) return cmd_oracle_reward();
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << '\n';
        if (e.code() == ErrorCode::ConfigInvalid) return kExitConfig;
        if (e.code() == ErrorCode::TraceCorrupt) return kExitTrace;
        return kExitFailure;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitFailure;
    }
    return kExitFailure;
}
