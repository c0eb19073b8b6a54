#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include "bjsplit/game_ev.hpp"

using namespace bj;

namespace {

// One game per rule set is plenty; computing them is the slow part.
const GameEV& base_game() {
    static GameEV g = [] {
        RuleSet rules;
        rules.max_hands = 2;
        ApproxSplitSource splits;
        return game_ev(rules, &splits);
    }();
    return g;
}

const GameEV& nosplit_game() {
    static GameEV g = [] {
        RuleSet rules;
        rules.max_hands = 2;
        return game_ev(rules, nullptr);
    }();
    return g;
}

}  // namespace

TEST_CASE("deal components are well formed", "[game]") {
    const GameEV& g = base_game();
    // 10 up cards x (45 unordered two-card deals + 10 pairs)
    CHECK(g.components.size() == 550);
    double total = 0;
    for (const DealComponent& dc : g.components) {
        INFO("up=" << dc.up << " c1=" << dc.c1 << " c2=" << dc.c2);
        CHECK(dc.weight > 0.0);
        CHECK(dc.c1 <= dc.c2);
        CHECK(dc.p_dealer_natural >= 0.0);
        CHECK(dc.p_dealer_natural < 0.5);
        CHECK(dc.player_natural == (dc.c1 == kAce && dc.c2 == kTen));
        CHECK(dc.can_split == (dc.c1 == dc.c2));
        total += dc.weight;
    }
    CHECK(total == Catch::Approx(1.0).margin(1e-12));
}

TEST_CASE("dealer naturals only occur behind an ace or ten", "[game]") {
    for (const DealComponent& dc : base_game().components) {
        if (dc.up != kAce && dc.up != kTen) CHECK(dc.p_dealer_natural == 0.0);
        if (dc.up == kAce || dc.up == kTen) CHECK(dc.p_dealer_natural > 0.0);
    }
}

TEST_CASE("single-deck game value is a small house edge", "[game]") {
    CHECK(base_game().value_pct > -1.0);
    CHECK(base_game().value_pct < 0.5);
    CHECK(nosplit_game().value_pct > -1.0);
}

TEST_CASE("the splitting option never hurts", "[game]") {
    double gain = base_game().value_pct - nosplit_game().value_pct;
    CHECK(gain > 0.0);
    CHECK(gain < 0.5);  // single deck: roughly 0.36% of the base bet
}

TEST_CASE("pair and favorable-split fractions are consistent", "[game]") {
    const GameEV& g = base_game();
    CHECK(g.pair_fraction > 0.05);
    CHECK(g.pair_fraction < 0.20);
    CHECK(g.favorable_split_fraction > 0.0);
    CHECK(g.favorable_split_fraction < g.pair_fraction);
}

TEST_CASE("rule deltas", "[game]") {
    CHECK(rule_delta(base_game(), base_game()) == 0.0);
    // double-after-split is worth something, but only hundredths of a percent
    RuleSet dd1;
    dd1.max_hands = 2;
    dd1.dd_after_split = DDOption::AnyTwo;
    ApproxSplitSource splits;
    GameEV g1 = game_ev(dd1, &splits);
    double delta = rule_delta(base_game(), g1);
    CHECK(delta > 0.0);
    CHECK(delta < 0.3);
}

TEST_CASE("precision sweep converges to the full-precision value", "[game]") {
    const GameEV& g = base_game();
    auto points = precision_sweep(g, 2, 8);
    REQUIRE(points.size() == 7);
    for (std::size_t i = 0; i < points.size(); ++i)
        CHECK(points[i].digits == 2 + static_cast<int>(i));
    CHECK(std::abs(points.back().value_pct - g.value_pct) < 1e-4);
    CHECK(std::abs(points.front().value_pct - g.value_pct) >=
          std::abs(points.back().value_pct - g.value_pct));
    // rounding to 12 digits is a no-op at double precision
    CHECK(game_ev_at_precision(g, 12) == Catch::Approx(g.value_pct).margin(1e-9));
}
