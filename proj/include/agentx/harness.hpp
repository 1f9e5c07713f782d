#pragma once

// Scenario runner, trainers and evaluator. The harness owns ground truth: it
// computes rewards and classifies cries for help, while the agent only sees
// observed events.

#include "agentx/config.hpp"
#include "agentx/game_search.hpp"
#include "agentx/trace.hpp"

#include <cstdint>
#include <optional>
#include <span>
#include <variant>
#include <vector>

namespace agentx {

// Uniform over the learnable actions, drawn from the same policy stream a
// Q-policy uses, so runs with equal seeds face identical worlds.
struct RandomPolicy {};

using Policy = std::variant<QTable, RandomPolicy>;

struct RunOptions {
    bool learning = false;
    // Overrides the config's evaluation epsilon for a Q-policy.
    std::optional<double> epsilon;
    const PatternTable* patterns = nullptr;
};

struct RunResult {
    MetricsReport report;
    Trace trace;
    // The policy's table after the run; updated in place when learning.
    QTable qtable;
};

RunResult run_scenario(const ScenarioConfig& config, std::uint64_t seed, const Policy& policy,
                       const RunOptions& options = {});

struct TrainResult {
    QTable qtable;
    std::vector<double> reward_curve;
    std::vector<double> epsilons;
};

// Epsilon for episode `i` of `episodes`, linear from start to end.
double epsilon_at(const AgentParams& agent, std::size_t i, std::size_t episodes);

// Seeds are used cyclically, one per episode.
TrainResult train_agent(const ScenarioConfig& config, std::size_t episodes, std::span<const std::uint64_t> seeds,
                        std::optional<QTable> initial = std::nullopt);

struct LabeledSample {
    StateKey state;
    ActionId action = ActionId::NoOp;
    bool success = false;
};

// RewardSample records of a trace as labeled samples.
std::vector<LabeledSample> labeled_samples(const std::vector<TraceRecord>& trace, double success_threshold);

// Throws EmptyCorpus when there is nothing to learn from.
PatternTable offline_train(std::span<const LabeledSample> samples, long min_support);
PatternTable offline_train(const std::vector<std::vector<TraceRecord>>& corpus, const OfflineParams& params);

struct PairedTest {
    double mean_difference = 0.0;
    double t_statistic = 0.0;
    // One-sided: H1 is mean(a - b) > 0.
    double p_value = 1.0;
};

PairedTest paired_t_test(std::span<const double> a, std::span<const double> b);

struct Evaluation {
    std::vector<std::uint64_t> seeds;
    std::vector<MetricsReport> q_reports;
    std::vector<MetricsReport> random_reports;
    PairedTest reward_test;
    double mean_q_reward = 0.0;
    double mean_random_reward = 0.0;
    double mean_q_engagements = 0.0;
    double mean_random_engagements = 0.0;
};

Evaluation evaluate(const ScenarioConfig& config, const QTable& q, std::span<const std::uint64_t> seeds);

nlohmann::json to_json(const Evaluation& e);

// Attacker-response model over discretized states used by the game-search
// stage. States are StateKey indices and actions are ActionId values.
class SurrogateOutcomeModel : public OutcomeModel {
public:
    SurrogateOutcomeModel(const ActionCatalog& catalog, RewardParams params, long available);

    std::vector<GameAction> actions(GameState state) const override;
    std::optional<std::vector<AttackerResponse>> responses(GameState state, GameAction action) const override;

private:
    std::vector<GameAction> actions_;
    const ActionCatalog* catalog_;
    RewardParams params_;
    long available_;
};

}  // namespace agentx
