#pragma once

// Tabular Q-learning over a 128-state discretization of the percept.

#include "agentx/actions.hpp"
#include "agentx/rng.hpp"
#include "agentx/sensing.hpp"

#include <json.hpp>

#include <array>
#include <span>
#include <string>
#include <vector>

namespace agentx {

struct StateKey {
    int threat_bin = 0;
    int load_bin = 0;
    int honeypots_bin = 0;
    bool recent_honey_touch = false;

    static constexpr std::size_t kCount = 4 * 4 * 4 * 2;

    std::size_t index() const;
    static StateKey from_index(std::size_t index);
    // Compact form such as "t1-l2-h0-r1", used as a file key.
    std::string to_string() const;
    static StateKey parse(const std::string& text);

    friend auto operator<=>(const StateKey&, const StateKey&) = default;
};

// Three ascending cut points per dimension. A value v falls into the bin
// equal to the number of cut points <= v, so bins are inclusive-lower and
// anything beyond the top cut point clamps to bin 3.
struct BinThresholds {
    std::array<double, 3> threat{1.5, 3.0, 6.0};
    std::array<double, 3> load{0.35, 0.55, 0.75};
    std::array<double, 3> honeypots{1.0, 2.0, 4.0};

    friend bool operator==(const BinThresholds&, const BinThresholds&) = default;
};

int bin_of(double value, const std::array<double, 3>& cuts);

struct WorldSummary {
    int honeypots_active = 0;
    int available = 0;
};

StateKey discretize(const FeatureVector& fv, double anomaly, const WorldSummary& summary,
                    const BinThresholds& bins);

class QTable {
public:
    QTable() : QTable(0.1, 0.9, {}) {}
    QTable(double alpha, double gamma, std::vector<ActionId> actions);

    double alpha() const { return alpha_; }
    double gamma() const { return gamma_; }
    const std::vector<ActionId>& actions() const { return actions_; }

    double value(const StateKey& s, ActionId a) const { return values_[s.index()][index(a)]; }
    void set(const StateKey& s, ActionId a, double v) { values_[s.index()][index(a)] = v; }
    long visits(const StateKey& s) const { return visits_[s.index()]; }
    void add_visit(const StateKey& s) { ++visits_[s.index()]; }
    void set_visits(const StateKey& s, long n) { visits_[s.index()] = n; }

    double max_value(const StateKey& s) const;
    bool all_zero() const;

    friend bool operator==(const QTable&, const QTable&) = default;

private:
    double alpha_;
    double gamma_;
    std::vector<ActionId> actions_;
    std::array<std::array<double, kActionCount>, StateKey::kCount> values_{};
    std::array<long, StateKey::kCount> visits_{};
};

// Epsilon-greedy over the table's action set; greedy ties go to the lowest id.
ActionId select_action(const QTable& q, const StateKey& s, double epsilon, Rng& rng);
ActionId greedy_action(const QTable& q, const StateKey& s);

// One-step TD update of Q(s, a) toward r + gamma * max Q(s', .).
void q_update(QTable& q, const StateKey& s, ActionId a, double r, const StateKey& next);

// Sorted-key serialization; only non-zero cells and visited states are written.
nlohmann::json to_json(const QTable& q);
QTable qtable_from_json(const nlohmann::json& j);
void save_qtable(const QTable& q, const std::string& path);
QTable load_qtable(const std::string& path);

}  // namespace agentx
