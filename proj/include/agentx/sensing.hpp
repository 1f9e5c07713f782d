#pragma once

// Agent-side percepts. Nothing in this header carries ground truth: the agent
// sees ObservedEvent, a projection of WorldEvent without truth_malicious.

#include "agentx/world.hpp"

#include <array>
#include <span>
#include <vector>

namespace agentx {

enum class DataSourceCategory { NetworkTraffic, EventLogs, HardwareSensor, OsSensor, HighLevelInput };

const char* to_string(DataSourceCategory category);

struct ObservedEvent {
    Tick tick = 0;
    EventKind kind = EventKind::LogLine;
    NodeId node;
    int severity = 0;
    double load = 0.0;

    friend bool operator==(const ObservedEvent&, const ObservedEvent&) = default;
};

ObservedEvent observe(const WorldEvent& event);
std::vector<ObservedEvent> observe(std::span<const WorldEvent> events);

DataSourceCategory categorize_event(EventKind kind);
inline DataSourceCategory categorize_event(const ObservedEvent& e) { return categorize_event(e.kind); }

inline constexpr std::size_t kFeatureCount = 8;

struct FeatureVector {
    long ids_alert_count = 0;
    long ids_severity_sum = 0;
    long antimalware_alerts = 0;
    long unauthorized_accesses = 0;
    long honey_touches = 0;  // honeypot touches plus dummy-file accesses
    long dummy_process_alerts = 0;
    long integrity_violations = 0;
    double system_load = 0.0;
    long load_samples = 0;
    long window_ticks = 1;

    std::array<double, kFeatureCount> values() const;

    friend bool operator==(const FeatureVector&, const FeatureVector&) = default;
};

// Sum over disjoint windows; load is re-averaged by sample count.
FeatureVector operator+(const FeatureVector& lhs, const FeatureVector& rhs);

FeatureVector collect(std::span<const ObservedEvent> events, long window);

struct Baseline {
    std::array<double, kFeatureCount> mean{};
    std::array<double, kFeatureCount> m2{};
    long sample_count = 0;

    // Population variance of the samples seen so far.
    double variance(std::size_t feature) const;

    friend bool operator==(const Baseline&, const Baseline&) = default;
};

inline constexpr double kVarianceFloor = 1e-6;

Baseline update_baseline(Baseline baseline, const FeatureVector& fv);

// Max over features of |x - mean| / sqrt(variance + floor).
double anomaly_score(const Baseline& baseline, const FeatureVector& fv);
double anomaly_score(const Baseline& baseline, const std::array<double, kFeatureCount>& x);

}  // namespace agentx
