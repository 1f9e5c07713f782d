#include "agentx/comms.hpp"

#include <doctest.h>

using namespace agentx;

namespace {

Message msg(MessageKind kind, Tick tick = 10) {
    Message m;
    m.kind = kind;
    m.tick = tick;
    if (kind == MessageKind::CryForHelp) m.evidence = {tick > 5 ? tick - 5 : 1, tick};
    return m;
}

constexpr std::array<MessageKind, 4> kKinds = {MessageKind::CryForHelp, MessageKind::Alert,
                                               MessageKind::ShareBlocklist, MessageKind::Heartbeat};

}  // namespace

TEST_CASE("send examples") {
    const auto g = GuardrailSet::seal(Ruleset{});
    MessageLog log;
    const auto cfh = log.send(msg(MessageKind::CryForHelp), EmconLevel::Silent, g);
    CHECK_FALSE(cfh.sent);
    CHECK(cfh.suppressed == VetoReason::EmissionBlocked);
    CHECK(log.send(msg(MessageKind::Heartbeat), EmconLevel::Open, g).sent);

    Ruleset r;
    r.catalog.spec(ActionId::ShareBlocklist).autonomy_level = AutonomyLevel::Collaborative;
    const auto gated = GuardrailSet::seal(r);
    REQUIRE(gated.gate(EmconLevel::Restricted) == AutonomyLevel::Previsioned);
    const auto share = log.send(msg(MessageKind::ShareBlocklist), EmconLevel::Restricted, gated);
    CHECK_FALSE(share.sent);
    CHECK(share.suppressed == VetoReason::AutonomyGate);
    CHECK(log.sent().size() == 1);
}

TEST_CASE("Silent suppresses every message kind") {
    const auto g = GuardrailSet::seal(Ruleset{});
    for (auto k : kKinds) {
        CHECK_FALSE(send_check(msg(k), EmconLevel::Silent, g).sent);
        CHECK(send_check(msg(k), EmconLevel::Open, g).sent);
    }
}

TEST_CASE("property: Restricted sends a subset of what Open sends") {
    Rng rng(3);
    for (int round = 0; round < 50; ++round) {
        Ruleset r;
        for (auto a : {ActionId::CryForHelp, ActionId::ShareBlocklist}) {
            r.catalog.spec(a).autonomy_level = static_cast<AutonomyLevel>(rng.below(4));
        }
        const auto g = GuardrailSet::seal(r);
        MessageLog open, restricted;
        for (int i = 0; i < 100; ++i) {
            const auto m = msg(kKinds[rng.below(4)], 10 + i);
            open.send(m, EmconLevel::Open, g);
            restricted.send(m, EmconLevel::Restricted, g);
        }
        for (const auto& m : restricted.sent()) {
            CHECK(std::find(open.sent().begin(), open.sent().end(), m) != open.sent().end());
        }
    }
}

TEST_CASE("classify_cfh examples") {
    const std::vector<WorldEvent> log = {
        {1, EventKind::LoadSample, NodeId{0}, 0, 0.3, false},
        {2, EventKind::LoadSample, NodeId{0}, 0, 0.3, false},
        {3, EventKind::HoneyTouch, NodeId{5}, 0, 0.0, true},
        {4, EventKind::LoadSample, NodeId{0}, 0, 0.3, false},
    };
    Message m = msg(MessageKind::CryForHelp, 4);
    m.evidence = {2, 4};
    CHECK(classify_cfh(m, log, 4) == CfhVerdict::Justified);
    m.evidence = {1, 2};
    CHECK(classify_cfh(m, log, 4) == CfhVerdict::CryWolf);
    m.evidence = {3, 3};
    CHECK(classify_cfh(m, log, 4) == CfhVerdict::Justified);

    m.evidence = {3, 9};
    CHECK_THROWS_AS(classify_cfh(m, log, 4), Error);
    m.evidence = {4, 2};
    try {
        classify_cfh(m, log, 4);
        FAIL("expected WindowOutOfRange");
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::WindowOutOfRange);
    }
}

TEST_CASE("classify_cfh partitions and matches a linear scan") {
    Rng rng(55);
    std::vector<WorldEvent> log;
    for (Tick t = 1; t <= 400; ++t) {
        const auto n = rng.below(3);
        for (std::size_t i = 0; i < n; ++i) {
            log.push_back({t, EventKind::IdsAlert, NodeId{0}, 1, 0.0, rng.bernoulli(0.05)});
        }
    }
    long justified = 0, wolf = 0;
    for (int i = 0; i < 500; ++i) {
        Message m = msg(MessageKind::CryForHelp, 0);
        m.evidence.from = 1 + rng.below(400);
        m.evidence.to = m.evidence.from + rng.below(10);
        if (m.evidence.to > 400) m.evidence.to = 400;
        bool any = false;
        for (const auto& e : log) any = any || (e.truth_malicious && e.tick >= m.evidence.from && e.tick <= m.evidence.to);
        const auto v = classify_cfh(m, log, 400);
        CHECK((v == CfhVerdict::Justified) == any);
        (v == CfhVerdict::Justified ? justified : wolf) += 1;
    }
    CHECK(justified + wolf == 500);
    CHECK(justified > 0);
    CHECK(wolf > 0);
}

TEST_CASE("trust ledger thresholds") {
    TrustLedger ledger(3);
    ledger.create("peer-1");
    ledger.create("peer-2");
    ledger.record_violation("peer-1", Violation::BadSignature);
    CHECK(ledger.record_violation("peer-1", Violation::MissedHeartbeat).state == TrustState::Trusted);
    const auto& r = ledger.record_violation("peer-1", Violation::FalseBlocklist);
    CHECK(r.state == TrustState::Broken);
    CHECK(r.violations == 3);
    CHECK(ledger.record_violation("peer-1", Violation::BadSignature).state == TrustState::Broken);
    CHECK(ledger.trusted_peers() == std::vector<std::string>{"peer-2"});
    try {
        ledger.record_violation("stranger", Violation::BadSignature);
        FAIL("expected UnknownPeer");
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::UnknownPeer);
    }
    ledger.create("peer-1");
    CHECK(ledger.at("peer-1").state == TrustState::Trusted);
    CHECK(ledger.at("peer-1").violations == 0);
}

TEST_CASE("message kind names round-trip") {
    for (auto k : kKinds) CHECK(message_kind_from_string(to_string(k)) == k);
    CHECK_FALSE(message_kind_from_string("Smoke"));
}
