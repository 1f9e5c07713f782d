#include "agentx/game_search.hpp"

#include "oracles.hpp"

#include <doctest.h>

using namespace agentx;

namespace {

AttackerResponse resp(GameState next, double payoff, std::optional<double> p = std::nullopt) {
    return AttackerResponse{p, next, payoff};
}

}  // namespace

TEST_CASE("horizon 1 picks the larger payoff") {
    TabularOutcomeModel m;
    m.define(0, 0, {resp(1, 3.0)});  // A
    m.define(0, 1, {resp(1, 5.0)});  // B
    const auto r = game_search(m, 0, 1);
    CHECK(r.action == 1);
    CHECK(r.value == 5.0);
    CHECK(r.confidence == doctest::Approx(2.0 / 3.0));
}

TEST_CASE("ties go to the lowest action id") {
    TabularOutcomeModel m;
    m.define(0, 7, {resp(1, 4.0)});
    m.define(0, 2, {resp(1, 4.0)});
    const auto r = game_search(m, 0, 1);
    CHECK(r.action == 2);
    CHECK(r.confidence == 0.0);
}

TEST_CASE("chance nodes average uniformly unless weighted") {
    TabularOutcomeModel m;
    m.define(0, 0, {resp(1, 10.0), resp(1, -4.0)});                  // mean 3
    m.define(0, 1, {resp(1, 10.0, 0.25), resp(1, 0.0, 0.75)});       // mean 2.5
    const auto r = game_search(m, 0, 1);
    CHECK(r.action == 0);
    CHECK(r.value == doctest::Approx(3.0));
}

TEST_CASE("horizon 2 on a 2x2 model equals strategy enumeration") {
    TabularOutcomeModel m;
    // Action 0 looks worse now but leads to a rich state.
    m.define(0, 0, {resp(1, 0.0), resp(2, 1.0)});
    m.define(0, 1, {resp(2, 2.0), resp(2, 2.0)});
    m.define(1, 0, {resp(0, 10.0), resp(0, 6.0)});
    m.define(1, 1, {resp(0, 0.0), resp(0, 0.0)});
    m.define(2, 0, {resp(0, 1.0), resp(0, 0.0)});
    m.define(2, 1, {resp(0, 0.0), resp(0, 0.0)});
    // Hand enumeration: action 0 = 0.5*(0+8) + 0.5*(1+0.5) = 4.75;
    // action 1 = 2 + 0.5 = 2.5.
    const auto r = game_search(m, 0, 2);
    CHECK(r.action == 0);
    CHECK(r.value == doctest::Approx(4.75));
    const auto brute = oracle::brute_force_game(m, 0, 2);
    CHECK(brute.action == r.action);
    CHECK(brute.value == doctest::Approx(r.value).epsilon(1e-12));
    // At horizon 1 the myopic choice flips.
    CHECK(game_search(m, 0, 1).action == 1);
}

TEST_CASE("terminal states contribute nothing beyond their payoff") {
    TabularOutcomeModel m;
    m.define(0, 0, {resp(9, 1.0)});
    m.define(0, 1, {resp(1, 0.5)});
    m.define(1, 0, {resp(1, 5.0)});
    CHECK(game_search(m, 0, 3).action == 1);
    CHECK(game_search(m, 0, 3).value == doctest::Approx(10.5));
}

TEST_CASE("ModelIncomplete cases") {
    auto code_of = [](auto&& f) {
        try {
            f();
        } catch (const Error& e) {
            return e.code();
        }
        return ErrorCode::InvalidInput;
    };
    TabularOutcomeModel empty;
    CHECK(code_of([&] { game_search(empty, 0, 1); }) == ErrorCode::ModelIncomplete);

    TabularOutcomeModel m;
    m.declare_action(0, 0);  // offered but never defined
    CHECK(code_of([&] { game_search(m, 0, 1); }) == ErrorCode::ModelIncomplete);

    TabularOutcomeModel partial;
    partial.define(0, 0, {resp(1, 1.0, 0.5), resp(1, 1.0)});
    CHECK(code_of([&] { game_search(partial, 0, 1); }) == ErrorCode::ModelIncomplete);

    TabularOutcomeModel bad_sum;
    bad_sum.define(0, 0, {resp(1, 1.0, 0.5), resp(1, 1.0, 0.2)});
    CHECK(code_of([&] { game_search(bad_sum, 0, 1); }) == ErrorCode::ModelIncomplete);

    // A hole that is only reachable at depth 2.
    TabularOutcomeModel deep;
    deep.define(0, 0, {resp(1, 1.0)});
    deep.declare_action(1, 3);
    CHECK_NOTHROW(game_search(deep, 0, 1));
    CHECK(code_of([&] { game_search(deep, 0, 2); }) == ErrorCode::ModelIncomplete);

    TabularOutcomeModel ok;
    ok.define(0, 0, {resp(0, 1.0)});
    CHECK(code_of([&] { game_search(ok, 0, 0); }) == ErrorCode::InvalidInput);
}

TEST_CASE("property: expectimax equals brute force on random toy models") {
    agentx::Rng rng(404);
    int checked = 0;
    for (int horizon = 1; horizon <= 3; ++horizon) {
        for (int a = 1; a <= 3; ++a) {
            for (int r = 1; r <= 3; ++r) {
                for (int rep = 0; rep < 3; ++rep) {
                    const auto m = oracle::random_toy_model(rng, 1 + rng.below(3), a, r, rep == 1, rep == 2);
                    const auto got = game_search(m, 0, horizon);
                    const auto want = oracle::brute_force_game(m, 0, horizon);
                    CHECK(got.action == want.action);
                    CHECK(std::abs(got.value - want.value) <= 1e-9);
                    ++checked;
                }
            }
        }
    }
    CHECK(checked == 81);
}
