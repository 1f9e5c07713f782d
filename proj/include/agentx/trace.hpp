#pragma once

// Run traces: one JSON object per line, keys sorted, records strictly ordered
// by sequence number. A trace opens with an AgentStatus "Active" header and
// closes with an AgentStatus "EpisodeEnd" footer carrying the record count.

#include "agentx/reward.hpp"

#include <json.hpp>

#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace agentx {

enum class RecordKind { Event, Percept, Decision, ExecutedAction, Veto, Message, RewardSample, AgentStatus };

const char* to_string(RecordKind kind);
std::optional<RecordKind> record_kind_from_string(const std::string& name);

struct TraceRecord {
    Tick tick = 0;
    std::uint64_t seq = 0;
    RecordKind kind = RecordKind::Event;
    nlohmann::json payload;

    friend bool operator==(const TraceRecord&, const TraceRecord&) = default;
};

std::string to_line(const TraceRecord& record);
// Throws TraceCorrupt on malformed JSON or a payload missing required fields.
TraceRecord parse_line(const std::string& line);

class Trace {
public:
    const TraceRecord& append(Tick tick, RecordKind kind, nlohmann::json payload);
    const std::vector<TraceRecord>& records() const { return records_; }
    std::string text() const;
    void write(const std::string& path) const;

private:
    std::vector<TraceRecord> records_;
};

// Parses and checks ordering, header and footer.
std::vector<TraceRecord> read_trace(std::istream& in);
std::vector<TraceRecord> read_trace_text(const std::string& text);
std::vector<TraceRecord> read_trace_file(const std::string& path);

struct MetricsReport {
    double cumulative_reward = 0.0;
    double honey_term = 0.0;
    double resource_term = 0.0;
    double cfh_term = 0.0;
    long reward_samples = 0;
    long real_server_compromises = 0;
    long honeypot_engagements = 0;
    long cfh_sent = 0;
    long cfh_justified = 0;
    // Absent when no cry for help was sent.
    std::optional<double> cfh_precision;
    long decisions = 0;
    long executed_actions = 0;
    long messages_sent = 0;
    long messages_suppressed = 0;
    std::map<std::string, long> provenance;
    std::map<std::string, long> vetoes;
    std::optional<Tick> terminated_at;

    friend bool operator==(const MetricsReport&, const MetricsReport&) = default;
};

nlohmann::json to_json(const MetricsReport& report);

// Folds records into a report. RewardSample records are recomputed from their
// inputs and the header's coefficients; a mismatch is TraceCorrupt.
class MetricsAccumulator {
public:
    void consume(const TraceRecord& record);
    MetricsReport report() const;

private:
    MetricsReport report_;
    std::optional<RewardParams> params_;
};

MetricsReport replay(const std::vector<TraceRecord>& records);
MetricsReport replay_file(const std::string& path);

nlohmann::json to_json(const RewardParams& p);
nlohmann::json to_json(const RewardInputs& x);
RewardParams reward_params_from_json(const nlohmann::json& j);
RewardInputs reward_inputs_from_json(const nlohmann::json& j);

}  // namespace agentx
