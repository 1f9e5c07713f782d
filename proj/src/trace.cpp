#include "agentx/trace.hpp"

#include <array>
#include <cmath>
#include <fstream>
#include <istream>
#include <sstream>

namespace agentx {

using nlohmann::json;

namespace {

constexpr std::array<const char*, 8> kRecordNames = {"Event", "Percept", "Decision", "ExecutedAction",
                                                     "Veto", "Message", "RewardSample", "AgentStatus"};

[[noreturn]] void corrupt(const std::string& what) { throw Error(ErrorCode::TraceCorrupt, what); }

void require_fields(const json& payload, RecordKind kind, std::initializer_list<const char*> fields) {
    for (const char* f : fields) {
        if (!payload.contains(f)) corrupt(std::string(to_string(kind)) + " record missing '" + f + "'");
    }
}

void check_schema(const TraceRecord& r) {
    if (!r.payload.is_object()) corrupt("payload must be an object");
    switch (r.kind) {
        case RecordKind::Event:
            if (r.payload.contains("truth")) {
                require_fields(r.payload, r.kind, {"truth", "node"});
            } else {
                require_fields(r.payload, r.kind, {"event", "node", "malicious"});
            }
            break;
        case RecordKind::Percept: require_fields(r.payload, r.kind, {"state", "anomaly", "features"}); break;
        case RecordKind::Decision:
            require_fields(r.payload, r.kind, {"decision", "action", "provenance", "confidence", "rejected"});
            break;
        case RecordKind::ExecutedAction: require_fields(r.payload, r.kind, {"decision", "action", "delta_resources"}); break;
        case RecordKind::Veto: require_fields(r.payload, r.kind, {"decision", "stage", "action", "reason"}); break;
        case RecordKind::Message: require_fields(r.payload, r.kind, {"kind", "status"}); break;
        case RecordKind::RewardSample:
            require_fields(r.payload, r.kind, {"state", "action", "inputs", "reward", "terms"});
            break;
        case RecordKind::AgentStatus: require_fields(r.payload, r.kind, {"status"}); break;
    }
}

}  // namespace

const char* to_string(RecordKind kind) { return kRecordNames[static_cast<std::size_t>(kind)]; }

std::optional<RecordKind> record_kind_from_string(const std::string& name) {
    for (std::size_t i = 0; i < kRecordNames.size(); ++i) {
        if (name == kRecordNames[i]) return static_cast<RecordKind>(i);
    }
    return std::nullopt;
}

std::string to_line(const TraceRecord& r) {
    json j;
    j["tick"] = r.tick;
    j["seq"] = r.seq;
    j["kind"] = to_string(r.kind);
    j["payload"] = r.payload;
    return j.dump();
}

TraceRecord parse_line(const std::string& line) {
    json j;
    try {
        j = json::parse(line);
    } catch (const json::parse_error& e) {
        corrupt(std::string("unparseable record: ") + e.what());
    }
    if (!j.is_object() || j.size() != 4 || !j.contains("tick") || !j.contains("seq") || !j.contains("kind") ||
        !j.contains("payload")) {
        corrupt("record must have exactly tick, seq, kind, payload");
    }
    TraceRecord r;
    try {
        r.tick = j.at("tick").get<Tick>();
        r.seq = j.at("seq").get<std::uint64_t>();
        const auto kind = record_kind_from_string(j.at("kind").get<std::string>());
        if (!kind) corrupt("unknown record kind " + j.at("kind").dump());
        r.kind = *kind;
    } catch (const json::exception& e) {
        corrupt(std::string("bad record header: ") + e.what());
    }
    r.payload = std::move(j.at("payload"));
    check_schema(r);
    return r;
}

const TraceRecord& Trace::append(Tick tick, RecordKind kind, json payload) {
    records_.push_back(TraceRecord{tick, records_.size(), kind, std::move(payload)});
    return records_.back();
}

std::string Trace::text() const {
    std::string out;
    for (const auto& r : records_) {
        out += to_line(r);
        out += '\n';
    }
    return out;
}

void Trace::write(const std::string& path) const {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error(ErrorCode::InvalidInput, "cannot write trace " + path);
    out << text();
}

std::vector<TraceRecord> read_trace(std::istream& in) {
    std::vector<TraceRecord> records;
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty()) corrupt("empty line at record " + std::to_string(records.size()));
        auto r = parse_line(line);
        if (r.seq != records.size()) {
            corrupt("sequence " + std::to_string(r.seq) + " at position " + std::to_string(records.size()));
        }
        if (!records.empty() && r.tick < records.back().tick) {
            corrupt("tick goes backwards at sequence " + std::to_string(r.seq));
        }
        records.push_back(std::move(r));
    }
    if (records.empty()) corrupt("empty trace");
    const auto& head = records.front();
    if (head.kind != RecordKind::AgentStatus || head.payload.at("status") != "Active" ||
        !head.payload.contains("reward_params")) {
        corrupt("trace does not start with an AgentStatus header");
    }
    const auto& tail = records.back();
    if (tail.kind != RecordKind::AgentStatus || tail.payload.at("status") != "EpisodeEnd" ||
        !tail.payload.contains("records") || tail.payload.at("records") != records.size()) {
        corrupt("trace is truncated (missing or inconsistent EpisodeEnd footer)");
    }
    return records;
}

std::vector<TraceRecord> read_trace_text(const std::string& text) {
    std::istringstream in(text);
    return read_trace(in);
}

std::vector<TraceRecord> read_trace_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) corrupt("cannot read trace " + path);
    return read_trace(in);
}

json to_json(const RewardParams& p) {
    return {{"a", p.a}, {"b", p.b}, {"c", p.c}, {"denominator_floor", p.denominator_floor}};
}

json to_json(const RewardInputs& x) {
    return {{"honey_events", x.honey_events},       {"security_events", x.security_events},
            {"delta_resources", x.delta_resources}, {"total_resources", x.total_resources},
            {"justified_cfh", x.justified_cfh},     {"cw", x.cw}};
}

RewardParams reward_params_from_json(const json& j) {
    RewardParams p;
    p.a = j.at("a").get<double>();
    p.b = j.at("b").get<double>();
    p.c = j.at("c").get<double>();
    p.denominator_floor = j.at("denominator_floor").get<long>();
    return p;
}

RewardInputs reward_inputs_from_json(const json& j) {
    RewardInputs x;
    x.honey_events = j.at("honey_events").get<long>();
    x.security_events = j.at("security_events").get<long>();
    x.delta_resources = j.at("delta_resources").get<long>();
    x.total_resources = j.at("total_resources").get<long>();
    x.justified_cfh = j.at("justified_cfh").get<long>();
    x.cw = j.at("cw").get<long>();
    return x;
}

json to_json(const MetricsReport& m) {
    json j;
    j["cumulative_reward"] = m.cumulative_reward;
    j["reward_terms"] = {{"honey", m.honey_term}, {"resource", m.resource_term}, {"cfh", m.cfh_term}};
    j["reward_samples"] = m.reward_samples;
    j["real_server_compromises"] = m.real_server_compromises;
    j["honeypot_engagements"] = m.honeypot_engagements;
    j["cfh_sent"] = m.cfh_sent;
    j["cfh_justified"] = m.cfh_justified;
    j["cfh_precision"] = m.cfh_precision ? json(*m.cfh_precision) : json(nullptr);
    j["decisions"] = m.decisions;
    j["executed_actions"] = m.executed_actions;
    j["messages_sent"] = m.messages_sent;
    j["messages_suppressed"] = m.messages_suppressed;
    j["provenance"] = m.provenance;
    j["vetoes"] = m.vetoes;
    j["terminated_at"] = m.terminated_at ? json(*m.terminated_at) : json(nullptr);
    return j;
}

void MetricsAccumulator::consume(const TraceRecord& r) {
    auto& m = report_;
    try {
        const auto& p = r.payload;
        switch (r.kind) {
            case RecordKind::Event:
                if (p.contains("truth")) {
                    if (p.at("truth") == "Compromised") ++m.real_server_compromises;
                } else {
                    const auto kind = p.at("event").get<std::string>();
                    if (kind == "HoneyTouch" || kind == "DummyFileAccess" || kind == "DummyProcessAlert") {
                        ++m.honeypot_engagements;
                    }
                }
                break;
            case RecordKind::Percept:
                break;
            case RecordKind::Decision:
                ++m.decisions;
                ++m.provenance[p.at("provenance").get<std::string>()];
                break;
            case RecordKind::ExecutedAction:
                ++m.executed_actions;
                break;
            case RecordKind::Veto:
                ++m.vetoes[p.at("reason").get<std::string>()];
                break;
            case RecordKind::Message: {
                const auto status = p.at("status").get<std::string>();
                if (status == "Sent") {
                    ++m.messages_sent;
                    if (p.at("kind") == "CryForHelp") {
                        ++m.cfh_sent;
                        if (p.at("classification") == "Justified") ++m.cfh_justified;
                    }
                } else if (status == "Suppressed") {
                    ++m.messages_suppressed;
                }
                break;
            }
            case RecordKind::RewardSample: {
                if (!params_) corrupt("reward sample before header");
                const auto inputs = reward_inputs_from_json(p.at("inputs"));
                const auto terms = reward_terms(*params_, inputs);
                if (terms.total() != p.at("reward").get<double>()) {
                    corrupt("reward sample at seq " + std::to_string(r.seq) + " disagrees with its inputs");
                }
                m.cumulative_reward += terms.total();
                m.honey_term += terms.honey;
                m.resource_term += terms.resource;
                m.cfh_term += terms.cfh;
                ++m.reward_samples;
                break;
            }
            case RecordKind::AgentStatus: {
                const auto status = p.at("status").get<std::string>();
                if (status == "Active") params_ = reward_params_from_json(p.at("reward_params"));
                if (status == "Terminated") m.terminated_at = r.tick;
                break;
            }
        }
    } catch (const json::exception& e) {
        corrupt(std::string("bad payload at seq ") + std::to_string(r.seq) + ": " + e.what());
    } catch (const Error& e) {
        if (e.code() == ErrorCode::TraceCorrupt) throw;
        corrupt(std::string("bad payload at seq ") + std::to_string(r.seq) + ": " + e.what());
    }
}

MetricsReport MetricsAccumulator::report() const {
    MetricsReport m = report_;
    if (m.cfh_sent > 0) m.cfh_precision = static_cast<double>(m.cfh_justified) / static_cast<double>(m.cfh_sent);
    return m;
}

MetricsReport replay(const std::vector<TraceRecord>& records) {
    MetricsAccumulator acc;
    for (const auto& r : records) acc.consume(r);
    return acc.report();
}

MetricsReport replay_file(const std::string& path) { return replay(read_trace_file(path)); }

}  // namespace agentx
