#include "agentx/sensing.hpp"

#include <algorithm>
#include <cmath>

namespace agentx {

const char* to_string(DataSourceCategory category) {
    switch (category) {
        case DataSourceCategory::NetworkTraffic: return "NetworkTraffic";
        case DataSourceCategory::EventLogs: return "EventLogs";
        case DataSourceCategory::HardwareSensor: return "HardwareSensor";
        case DataSourceCategory::OsSensor: return "OsSensor";
        case DataSourceCategory::HighLevelInput: return "HighLevelInput";
    }
    return "?";
}

ObservedEvent observe(const WorldEvent& event) {
    return ObservedEvent{event.tick, event.kind, event.node, event.severity, event.load};
}

std::vector<ObservedEvent> observe(std::span<const WorldEvent> events) {
    std::vector<ObservedEvent> out;
    out.reserve(events.size());
    for (const auto& e : events) out.push_back(observe(e));
    return out;
}

DataSourceCategory categorize_event(EventKind kind) {
    switch (kind) {
        case EventKind::HoneyTouch:
            return DataSourceCategory::NetworkTraffic;
        // IDS output, audit trails, tripwires on decoy files and integrity checks.
        case EventKind::IdsAlert:
        case EventKind::UnauthorizedAccess:
        case EventKind::DummyFileAccess:
        case EventKind::FileIntegrityViolation:
        case EventKind::LogLine:
            return DataSourceCategory::EventLogs;
        case EventKind::LoadSample:
            return DataSourceCategory::HardwareSensor;
        case EventKind::AntiMalwareAlert:
        case EventKind::DummyProcessAlert:
            return DataSourceCategory::OsSensor;
        case EventKind::OperatorReply:
            return DataSourceCategory::HighLevelInput;
    }
    return DataSourceCategory::EventLogs;
}

std::array<double, kFeatureCount> FeatureVector::values() const {
    return {static_cast<double>(ids_alert_count),      static_cast<double>(ids_severity_sum),
            static_cast<double>(antimalware_alerts),   static_cast<double>(unauthorized_accesses),
            static_cast<double>(honey_touches),        static_cast<double>(dummy_process_alerts),
            static_cast<double>(integrity_violations), system_load};
}

FeatureVector operator+(const FeatureVector& a, const FeatureVector& b) {
    FeatureVector r;
    r.ids_alert_count = a.ids_alert_count + b.ids_alert_count;
    r.ids_severity_sum = a.ids_severity_sum + b.ids_severity_sum;
    r.antimalware_alerts = a.antimalware_alerts + b.antimalware_alerts;
    r.unauthorized_accesses = a.unauthorized_accesses + b.unauthorized_accesses;
    r.honey_touches = a.honey_touches + b.honey_touches;
    r.dummy_process_alerts = a.dummy_process_alerts + b.dummy_process_alerts;
    r.integrity_violations = a.integrity_violations + b.integrity_violations;
    r.load_samples = a.load_samples + b.load_samples;
    r.system_load = r.load_samples == 0
                        ? 0.0
                        : (a.system_load * a.load_samples + b.system_load * b.load_samples) /
                              static_cast<double>(r.load_samples);
    r.window_ticks = a.window_ticks + b.window_ticks;
    return r;
}

FeatureVector collect(std::span<const ObservedEvent> events, long window) {
    FeatureVector fv;
    fv.window_ticks = window;
    double load_sum = 0.0;
    for (const auto& e : events) {
        switch (e.kind) {
            case EventKind::IdsAlert:
                ++fv.ids_alert_count;
                fv.ids_severity_sum += e.severity;
                break;
            case EventKind::AntiMalwareAlert: ++fv.antimalware_alerts; break;
            case EventKind::UnauthorizedAccess: ++fv.unauthorized_accesses; break;
            case EventKind::HoneyTouch:
            case EventKind::DummyFileAccess: ++fv.honey_touches; break;
            case EventKind::DummyProcessAlert: ++fv.dummy_process_alerts; break;
            case EventKind::FileIntegrityViolation: ++fv.integrity_violations; break;
            case EventKind::LoadSample:
                load_sum += e.load;
                ++fv.load_samples;
                break;
            case EventKind::LogLine:
            case EventKind::OperatorReply: break;
        }
    }
    if (fv.load_samples > 0) fv.system_load = load_sum / static_cast<double>(fv.load_samples);
    return fv;
}

double Baseline::variance(std::size_t feature) const {
    if (sample_count == 0) return 0.0;
    return std::max(0.0, m2[feature] / static_cast<double>(sample_count));
}

Baseline update_baseline(Baseline baseline, const FeatureVector& fv) {
    const auto x = fv.values();
    ++baseline.sample_count;
    const double n = static_cast<double>(baseline.sample_count);
    for (std::size_t i = 0; i < kFeatureCount; ++i) {
        const double delta = x[i] - baseline.mean[i];
        baseline.mean[i] += delta / n;
        baseline.m2[i] += delta * (x[i] - baseline.mean[i]);
    }
    return baseline;
}

double anomaly_score(const Baseline& baseline, const FeatureVector& fv) {
    return anomaly_score(baseline, fv.values());
}

double anomaly_score(const Baseline& baseline, const std::array<double, kFeatureCount>& x) {
    if (baseline.sample_count < 2) {
        throw Error(ErrorCode::InsufficientBaseline,
                    "need 2 samples, have " + std::to_string(baseline.sample_count));
    }
    double score = 0.0;
    for (std::size_t i = 0; i < kFeatureCount; ++i) {
        const double z = std::abs(x[i] - baseline.mean[i]) / std::sqrt(baseline.variance(i) + kVarianceFloor);
        score = std::max(score, z);
    }
    return score;
}

}  // namespace agentx
