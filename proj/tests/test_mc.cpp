#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include "bjsplit/mc.hpp"
#include "bjsplit/split_engine.hpp"

using namespace bj;

TEST_CASE("simulation is deterministic for a fixed seed", "[mc]") {
    RuleSet rules;
    rules.max_hands = 2;
    McResult a = simulate_split(6, 8, rules, 20000, 42);
    McResult b = simulate_split(6, 8, rules, 20000, 42);
    CHECK(a.mean == b.mean);
    CHECK(a.stderr_ == b.stderr_);
    McResult c = simulate_split(6, 8, rules, 20000, 43);
    CHECK(a.mean != c.mean);
}

TEST_CASE("standard error shrinks like one over root n", "[mc]") {
    RuleSet rules;
    rules.max_hands = 2;
    McResult small = simulate_split(9, 2, rules, 10000, 7);
    McResult large = simulate_split(9, 2, rules, 160000, 7);
    double ratio = small.stderr_ / large.stderr_;
    CHECK(ratio > 2.0);  // expect ~4
    CHECK(ratio < 8.0);
}

TEST_CASE("simulation agrees with exact values", "[mc]") {
    struct Cell {
        int up, s, h;
        bool dd1, rsa;
    };
    for (Cell c : {Cell{6, 8, 2, false, false}, Cell{6, 2, 2, true, false},
                   Cell{10, 10, 2, false, false}, Cell{9, 1, 2, false, false},
                   Cell{6, 10, 4, false, false}, Cell{6, 1, 4, false, true}}) {
        RuleSet rules;
        rules.max_hands = c.h;
        rules.dd_after_split = c.dd1 ? DDOption::AnyTwo : DDOption::None;
        rules.resplit_aces = c.rsa;
        double exact = exact_split_ev(c.up, c.s, rules, 12).ev;
        McResult mc = simulate_split(c.up, c.s, rules, 400000, 1234);
        INFO("up=" << c.up << " s=" << c.s << " h=" << c.h << " dd1=" << c.dd1);
        CHECK(std::abs(mc.mean - exact) < 4.0 * mc.stderr_);
        CHECK(mc.stderr_ > 0.0);
        CHECK(mc.stderr_ < 0.01);
    }
}

TEST_CASE("simulation respects a depleted starting shoe", "[mc]") {
    RuleSet rules;
    rules.max_hands = 2;
    Shoe shoe = Shoe::fresh(1);
    REQUIRE(shoe.remove(6));   // up card
    REQUIRE(shoe.remove(8));   // the pair
    REQUIRE(shoe.remove(8));
    for (int r : {10, 10, 10, 10, 5, 5}) REQUIRE(shoe.remove(r));
    shoe.set_baseline();

    Shoe engine_shoe = shoe;
    DealerCache cache(10);
    std::uint64_t gen = 0;
    HandCatalog catalog = enumerate_unique_hands(engine_shoe, 6, 8, rules, &gen);
    double exact = exact_split_hands(engine_shoe, 6, 8, rules, &cache, catalog).ev;

    McResult mc = simulate_split(shoe, 6, 8, rules, 300000, 99);
    CHECK(std::abs(mc.mean - exact) < 4.0 * mc.stderr_);
}
