#pragma once

// Reference implementations shared by the unit tests and the acceptance
// binary. Written independently of the library code they check: plain loops,
// no shared helpers.

#include "agentx/game_search.hpp"
#include "agentx/rng.hpp"
#include "agentx/sensing.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <string>
#include <vector>

namespace oracle {

inline double reward(double a, double b, double c, long floor, long honey, long sec, long delta, long total, long j,
                     long cw) {
    const double d1 = static_cast<double>(std::max(sec, floor));
    const double d3 = static_cast<double>(std::max(cw, floor));
    return a * static_cast<double>(honey) / d1 + b * static_cast<double>(delta) / static_cast<double>(total) +
           c * static_cast<double>(j) / d3;
}

// Values of every history-dependent defender strategy of the given depth.
// A strategy picks one action here and, for each attacker response, a whole
// sub-strategy for the rest of the horizon.
inline std::vector<double> strategy_values(const agentx::OutcomeModel& m, agentx::GameState s, int depth) {
    if (depth == 0) return {0.0};
    const auto acts = m.actions(s);
    if (acts.empty()) return {0.0};
    std::vector<double> out;
    for (auto a : acts) {
        const auto rs = *m.responses(s, a);
        std::vector<double> p(rs.size());
        for (std::size_t i = 0; i < rs.size(); ++i) {
            p[i] = rs[i].probability ? *rs[i].probability : 1.0 / static_cast<double>(rs.size());
        }
        std::vector<std::vector<double>> subs;
        for (const auto& r : rs) subs.push_back(strategy_values(m, r.next_state, depth - 1));
        // Odometer over the cartesian product of sub-strategies.
        std::vector<std::size_t> idx(rs.size(), 0);
        while (true) {
            double v = 0.0;
            for (std::size_t i = 0; i < rs.size(); ++i) v += p[i] * (rs[i].payoff + subs[i][idx[i]]);
            out.push_back(v);
            std::size_t k = 0;
            while (k < idx.size() && ++idx[k] == subs[k].size()) idx[k++] = 0;
            if (k == idx.size()) break;
        }
    }
    return out;
}

struct BruteResult {
    agentx::GameAction action = 0;
    double value = 0.0;
};

// Best root action by exhaustive strategy enumeration; lowest id among ties.
inline BruteResult brute_force_game(const agentx::OutcomeModel& m, agentx::GameState s, int horizon) {
    auto acts = m.actions(s);
    std::sort(acts.begin(), acts.end());
    std::vector<double> best_per_action;
    for (auto a : acts) {
        // Root restricted to `a`.
        const auto rs = *m.responses(s, a);
        std::vector<std::vector<double>> subs;
        for (const auto& r : rs) subs.push_back(strategy_values(m, r.next_state, horizon - 1));
        double best = -std::numeric_limits<double>::infinity();
        std::vector<std::size_t> idx(rs.size(), 0);
        while (true) {
            double v = 0.0;
            for (std::size_t i = 0; i < rs.size(); ++i) {
                const double p = rs[i].probability ? *rs[i].probability : 1.0 / static_cast<double>(rs.size());
                v += p * (rs[i].payoff + subs[i][idx[i]]);
            }
            best = std::max(best, v);
            std::size_t k = 0;
            while (k < idx.size() && ++idx[k] == subs[k].size()) idx[k++] = 0;
            if (k == idx.size()) break;
        }
        best_per_action.push_back(best);
    }
    const double top = *std::max_element(best_per_action.begin(), best_per_action.end());
    for (std::size_t i = 0; i < acts.size(); ++i) {
        if (best_per_action[i] >= top - 1e-9) return {acts[i], best_per_action[i]};
    }
    return {};
}

// Random toy model over `states` states: every state offers `n_actions`
// distinct action ids drawn from 0..9, each with `n_responses` responses.
inline agentx::TabularOutcomeModel random_toy_model(agentx::Rng& rng, std::size_t states, int n_actions,
                                                    int n_responses, bool explicit_probs, bool integer_payoffs) {
    agentx::TabularOutcomeModel m;
    for (std::size_t s = 0; s < states; ++s) {
        std::vector<int> ids(10);
        for (int i = 0; i < 10; ++i) ids[i] = i;
        for (int i = 0; i < n_actions; ++i) std::swap(ids[i], ids[i + rng.below(10 - i)]);
        for (int i = 0; i < n_actions; ++i) {
            std::vector<agentx::AttackerResponse> rs(n_responses);
            double total = 0.0;
            std::vector<double> w(n_responses);
            for (auto& x : w) total += (x = 0.1 + rng.uniform());
            for (int r = 0; r < n_responses; ++r) {
                if (explicit_probs) rs[r].probability = w[r] / total;
                rs[r].next_state = rng.below(states);
                rs[r].payoff = integer_payoffs ? static_cast<double>(rng.between(-3, 3)) : rng.uniform() * 20 - 10;
            }
            m.define(s, ids[i], std::move(rs));
        }
    }
    return m;
}

// Random observed events with ticks in [from, to].
inline std::vector<agentx::ObservedEvent> random_events(agentx::Rng& rng, std::size_t n, agentx::Tick from,
                                                        agentx::Tick to) {
    std::vector<agentx::ObservedEvent> out;
    for (std::size_t i = 0; i < n; ++i) {
        agentx::ObservedEvent e;
        e.tick = from + rng.below(to - from + 1);
        e.kind = static_cast<agentx::EventKind>(rng.below(agentx::kEventKindCount));
        e.node = agentx::NodeId{static_cast<std::uint32_t>(rng.below(12))};
        if (e.kind == agentx::EventKind::IdsAlert) e.severity = rng.between(1, 5);
        if (e.kind == agentx::EventKind::LoadSample) e.load = rng.uniform();
        out.push_back(e);
    }
    return out;
}

// Independent tally keyed by event kind name, plus "severity" and "load".
inline std::map<std::string, double> tally(const std::vector<agentx::ObservedEvent>& events) {
    std::map<std::string, double> t;
    double load = 0.0;
    for (const auto& e : events) {
        t[agentx::to_string(e.kind)] += 1.0;
        if (e.kind == agentx::EventKind::IdsAlert) t["severity"] += e.severity;
        if (e.kind == agentx::EventKind::LoadSample) load += e.load;
    }
    t["load"] = t["LoadSample"] > 0 ? load / t["LoadSample"] : 0.0;
    return t;
}

// Population mean and variance of one feature, two passes.
inline std::pair<double, double> two_pass_moments(const std::vector<std::array<double, agentx::kFeatureCount>>& xs,
                                                  std::size_t f) {
    double mean = 0.0;
    for (const auto& x : xs) mean += x[f];
    mean /= static_cast<double>(xs.size());
    double var = 0.0;
    for (const auto& x : xs) var += (x[f] - mean) * (x[f] - mean);
    return {mean, var / static_cast<double>(xs.size())};
}

}  // namespace oracle
