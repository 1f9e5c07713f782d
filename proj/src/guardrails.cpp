#include "agentx/guardrails.hpp"

#include <json.hpp>
#include <openssl/evp.h>

#include <cmath>
#include <fstream>
#include <sstream>

namespace agentx {

const char* to_string(VetoReason reason) {
    switch (reason) {
        case VetoReason::ImpactExceeded: return "ImpactExceeded";
        case VetoReason::AutonomyGate: return "AutonomyGate";
        case VetoReason::EmissionBlocked: return "EmissionBlocked";
    }
    return "?";
}

std::optional<VetoReason> veto_from_string(const std::string& name) {
    for (auto r : {VetoReason::ImpactExceeded, VetoReason::AutonomyGate, VetoReason::EmissionBlocked}) {
        if (name == to_string(r)) return r;
    }
    return std::nullopt;
}

void Ruleset::validate() const {
    auto fail = [](const std::string& what) { throw Error(ErrorCode::ConfigInvalid, what); };
    if (!(budget.max_impact_per_action >= 0.0) || !(budget.mission_need >= 0.0) ||
        !std::isfinite(budget.mission_need)) {
        fail("impact budget must be finite and non-negative");
    }
    if (budget.max_impact_per_action > budget.mission_need) {
        fail("max_impact_per_action must not exceed mission_need");
    }
    // Stricter EMCON never allows a higher autonomy level.
    if (gates[1] > gates[0] || gates[2] > gates[1]) fail("autonomy gates must be monotone in EMCON level");
    for (double t : stage_thresholds) {
        if (!(t >= 0.0 && t <= 1.0)) fail("stage thresholds must lie in [0, 1]");
    }
    catalog.validate();
}

std::string serialize(const Ruleset& rules) {
    nlohmann::json j;
    j["budget"] = {{"max_impact_per_action", rules.budget.max_impact_per_action},
                   {"mission_need", rules.budget.mission_need}};
    for (auto level : {EmconLevel::Open, EmconLevel::Restricted, EmconLevel::Silent}) {
        j["gates"][to_string(level)] = to_string(rules.gates[static_cast<std::size_t>(level)]);
    }
    for (std::size_t i = 0; i < kStageCount; ++i) {
        j["stage_thresholds"][to_string(static_cast<StageId>(i))] = rules.stage_thresholds[i];
    }
    for (const auto& s : rules.catalog.specs()) {
        j["actions"][to_string(s.id)] = {{"autonomy", to_string(s.autonomy_level)},
                                         {"emission_cost", s.emission_cost},
                                         {"enabled", s.enabled},
                                         {"impact", s.impact},
                                         {"resource_delta", s.resource_delta}};
    }
    return j.dump();
}

Ruleset parse_ruleset(std::string_view text) {
    try {
        const auto j = nlohmann::json::parse(text);
        Ruleset r;
        r.budget.max_impact_per_action = j.at("budget").at("max_impact_per_action").get<double>();
        r.budget.mission_need = j.at("budget").at("mission_need").get<double>();
        for (auto level : {EmconLevel::Open, EmconLevel::Restricted, EmconLevel::Silent}) {
            const auto name = j.at("gates").at(to_string(level)).get<std::string>();
            const auto gate = autonomy_from_string(name);
            if (!gate) throw Error(ErrorCode::InvalidInput, "unknown autonomy level " + name);
            r.gates[static_cast<std::size_t>(level)] = *gate;
        }
        for (std::size_t i = 0; i < kStageCount; ++i) {
            r.stage_thresholds[i] = j.at("stage_thresholds").at(to_string(static_cast<StageId>(i))).get<double>();
        }
        for (std::size_t i = 0; i < kActionCount; ++i) {
            const auto id = static_cast<ActionId>(i);
            const auto& a = j.at("actions").at(to_string(id));
            auto& spec = r.catalog.spec(id);
            const auto level = autonomy_from_string(a.at("autonomy").get<std::string>());
            if (!level) throw Error(ErrorCode::InvalidInput, "unknown autonomy level");
            spec.autonomy_level = *level;
            spec.emission_cost = a.at("emission_cost").get<int>();
            spec.enabled = a.at("enabled").get<bool>();
            spec.impact = a.at("impact").get<double>();
            spec.resource_delta = a.at("resource_delta").get<int>();
        }
        return r;
    } catch (const nlohmann::json::exception& e) {
        throw Error(ErrorCode::InvalidInput, std::string("malformed ruleset: ") + e.what());
    }
}

std::string digest_hex(std::string_view bytes) {
    unsigned char md[EVP_MAX_MD_SIZE];
    unsigned int len = 0;
    if (EVP_Digest(bytes.data(), bytes.size(), md, &len, EVP_sha256(), nullptr) != 1) {
        throw std::runtime_error("SHA-256 failed");
    }
    static constexpr char kHex[] = "0123456789abcdef";
    std::string out;
    out.reserve(2 * len);
    for (unsigned int i = 0; i < len; ++i) {
        out.push_back(kHex[md[i] >> 4]);
        out.push_back(kHex[md[i] & 0xf]);
    }
    return out;
}

GuardrailSet GuardrailSet::seal(Ruleset rules) {
    rules.validate();
    GuardrailSet g;
    g.expected_digest = digest_hex(serialize(rules));
    g.rules = std::move(rules);
    return g;
}

std::optional<VetoReason> check(const ActionSpec& action, const EnvConstraints& c, const GuardrailSet& g) {
    // The kill switch stays reachable under every policy.
    if (action.id == ActionId::TerminateSelf) return std::nullopt;
    if (action.impact > g.rules.budget.max_impact_per_action) return VetoReason::ImpactExceeded;
    if (action.autonomy_level > g.gate(c.emcon_level)) return VetoReason::AutonomyGate;
    if (action.emission_cost > 0 && c.emcon_level == EmconLevel::Silent) return VetoReason::EmissionBlocked;
    return std::nullopt;
}

RulesetStatus verify_ruleset(const GuardrailSet& g, std::string_view current_rules) {
    return digest_hex(current_rules) == g.expected_digest ? RulesetStatus::Ok : RulesetStatus::Tampered;
}

void write_ruleset(const Ruleset& rules, const std::string& path) {
    const auto text = serialize(rules);
    std::ofstream out(path, std::ios::binary);
    std::ofstream sum(path + ".sha256");
    if (!out || !sum) throw Error(ErrorCode::InvalidInput, "cannot write " + path);
    out << text;
    sum << digest_hex(text) << '\n';
}

GuardrailSet read_ruleset(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    std::ifstream sum(path + ".sha256");
    if (!in || !sum) throw Error(ErrorCode::InvalidInput, "cannot read " + path);
    std::stringstream buf;
    buf << in.rdbuf();
    GuardrailSet g;
    g.rules = parse_ruleset(buf.str());
    sum >> g.expected_digest;
    return g;
}

}  // namespace agentx
