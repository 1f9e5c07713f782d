#include "agentx/learning.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace agentx {

std::size_t StateKey::index() const {
    return ((static_cast<std::size_t>(threat_bin) * 4 + static_cast<std::size_t>(load_bin)) * 4 +
            static_cast<std::size_t>(honeypots_bin)) * 2 +
           (recent_honey_touch ? 1 : 0);
}

StateKey StateKey::from_index(std::size_t i) {
    StateKey k;
    k.recent_honey_touch = (i % 2) == 1;
    i /= 2;
    k.honeypots_bin = static_cast<int>(i % 4);
    i /= 4;
    k.load_bin = static_cast<int>(i % 4);
    k.threat_bin = static_cast<int>(i / 4);
    return k;
}

std::string StateKey::to_string() const {
    char buf[32];
    std::snprintf(buf, sizeof buf, "t%d-l%d-h%d-r%d", threat_bin, load_bin, honeypots_bin,
                  recent_honey_touch ? 1 : 0);
    return buf;
}

StateKey StateKey::parse(const std::string& text) {
    int t = -1, l = -1, h = -1, r = -1;
    char tail = 0;
    if (std::sscanf(text.c_str(), "t%d-l%d-h%d-r%d%c", &t, &l, &h, &r, &tail) != 4 || t < 0 ||
        t > 3 || l < 0 || l > 3 || h < 0 || h > 3 || r < 0 || r > 1) {
        throw Error(ErrorCode::InvalidInput, "bad state key '" + text + "'");
    }
    return StateKey{t, l, h, r == 1};
}

int bin_of(double value, const std::array<double, 3>& cuts) {
    int bin = 0;
    for (double c : cuts) {
        if (value >= c) ++bin;
    }
    return bin;
}

StateKey discretize(const FeatureVector& fv, double anomaly, const WorldSummary& summary,
                    const BinThresholds& bins) {
    StateKey k;
    k.threat_bin = bin_of(anomaly, bins.threat);
    k.load_bin = bin_of(fv.system_load, bins.load);
    k.honeypots_bin = bin_of(static_cast<double>(summary.honeypots_active), bins.honeypots);
    k.recent_honey_touch = fv.honey_touches >= 1;
    return k;
}

QTable::QTable(double alpha, double gamma, std::vector<ActionId> actions)
    : alpha_(alpha), gamma_(gamma), actions_(std::move(actions)) {
    if (!(alpha >= 0.0 && alpha <= 1.0)) throw Error(ErrorCode::InvalidInput, "alpha must lie in [0, 1]");
    if (!(gamma >= 0.0 && gamma < 1.0)) throw Error(ErrorCode::InvalidInput, "gamma must lie in [0, 1)");
}

double QTable::max_value(const StateKey& s) const {
    if (actions_.empty()) return 0.0;
    double best = value(s, actions_.front());
    for (ActionId a : actions_) best = std::max(best, value(s, a));
    return best;
}

bool QTable::all_zero() const {
    for (const auto& row : values_) {
        for (double v : row) {
            if (v != 0.0) return false;
        }
    }
    return true;
}

ActionId greedy_action(const QTable& q, const StateKey& s) {
    if (q.actions().empty()) throw Error(ErrorCode::InvalidInput, "empty action set");
    ActionId best = q.actions().front();
    for (ActionId a : q.actions()) {
        const double v = q.value(s, a);
        const double b = q.value(s, best);
        if (v > b || (v == b && index(a) < index(best))) best = a;
    }
    return best;
}

ActionId select_action(const QTable& q, const StateKey& s, double epsilon, Rng& rng) {
    if (q.actions().empty()) throw Error(ErrorCode::InvalidInput, "empty action set");
    if (rng.bernoulli(epsilon)) return q.actions()[rng.below(q.actions().size())];
    return greedy_action(q, s);
}

void q_update(QTable& q, const StateKey& s, ActionId a, double r, const StateKey& next) {
    if (!std::isfinite(r)) throw Error(ErrorCode::NonFinite, "reward is not finite");
    const double target = r + q.gamma() * q.max_value(next);
    const double old = q.value(s, a);
    q.set(s, a, old + q.alpha() * (target - old));
}

nlohmann::json to_json(const QTable& q) {
    nlohmann::json j;
    j["alpha"] = q.alpha();
    j["gamma"] = q.gamma();
    auto& actions = j["actions"] = nlohmann::json::array();
    for (ActionId a : q.actions()) actions.push_back(to_string(a));
    auto& values = j["values"] = nlohmann::json::object();
    auto& visits = j["visits"] = nlohmann::json::object();
    for (std::size_t i = 0; i < StateKey::kCount; ++i) {
        const auto s = StateKey::from_index(i);
        if (q.visits(s) != 0) visits[s.to_string()] = q.visits(s);
        nlohmann::json row = nlohmann::json::object();
        for (std::size_t a = 0; a < kActionCount; ++a) {
            const double v = q.value(s, static_cast<ActionId>(a));
            if (v != 0.0) row[to_string(static_cast<ActionId>(a))] = v;
        }
        if (!row.empty()) values[s.to_string()] = std::move(row);
    }
    return j;
}

QTable qtable_from_json(const nlohmann::json& j) {
    try {
        std::vector<ActionId> actions;
        for (const auto& name : j.at("actions")) {
            const auto a = action_from_string(name.get<std::string>());
            if (!a) throw Error(ErrorCode::InvalidInput, "unknown action " + name.dump());
            actions.push_back(*a);
        }
        QTable q(j.at("alpha").get<double>(), j.at("gamma").get<double>(), std::move(actions));
        for (const auto& [state, row] : j.at("values").items()) {
            const auto s = StateKey::parse(state);
            for (const auto& [name, v] : row.items()) {
                const auto a = action_from_string(name);
                if (!a) throw Error(ErrorCode::InvalidInput, "unknown action " + name);
                q.set(s, *a, v.get<double>());
            }
        }
        for (const auto& [state, n] : j.at("visits").items()) {
            q.set_visits(StateKey::parse(state), n.get<long>());
        }
        return q;
    } catch (const nlohmann::json::exception& e) {
        throw Error(ErrorCode::InvalidInput, std::string("malformed Q-table: ") + e.what());
    }
}

void save_qtable(const QTable& q, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw Error(ErrorCode::InvalidInput, "cannot write " + path);
    out << to_json(q).dump(2) << '\n';
}

QTable load_qtable(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error(ErrorCode::InvalidInput, "cannot read " + path);
    try {
        return qtable_from_json(nlohmann::json::parse(in));
    } catch (const nlohmann::json::parse_error& e) {
        throw Error(ErrorCode::InvalidInput, std::string("malformed Q-table: ") + e.what());
    }
}

}  // namespace agentx
