#include <catch2/catch_amalgamated.hpp>

#include <algorithm>
#include "bjsplit/split_engine.hpp"
#include "reference_values.hpp"

using namespace bj;

TEST_CASE("fixture decoding") {
    REQUIRE(ref::decode("223932") == Catch::Approx(0.223932).epsilon(1e-14));
    REQUIRE(ref::decode("-0393101") == Catch::Approx(-0.0393101).epsilon(1e-14));
    REQUIRE(ref::decode("00318339") == Catch::Approx(0.00318339).epsilon(1e-14));
    REQUIRE(ref::tolerance("223932") == Catch::Approx(5e-7));
    REQUIRE(ref::tolerance("-0393101") == Catch::Approx(5e-8));
}

TEST_CASE("fixture table shape") {
    int usable = 0;
    for (const auto& row : ref::kSplitTable)
        for (const auto& cell : row) {
            REQUIRE(cell.h2_nd[0] != '\0');
            REQUIRE(cell.h2_dd1[0] != '\0');
            REQUIRE(cell.h4_nd[0] != '\0');
            usable += 3 + (cell.h4_dd1[0] != '\0');
        }
    REQUIRE(usable == 399);  // one corrupt published value is excluded
}

namespace {

void check_cell(int pair_idx, int up_idx, bool dd1, bool resplit) {
    const ref::Cell& cell = ref::kSplitTable[pair_idx][up_idx];
    const char* digits = resplit ? (dd1 ? cell.h4_dd1 : cell.h4_nd)
                                 : (dd1 ? cell.h2_dd1 : cell.h2_nd);
    REQUIRE(digits[0] != '\0');
    int s = ref::pair_rank(pair_idx);
    int up = ref::up_rank(up_idx);
    RuleSet r;
    r.max_hands = resplit ? 4 : 2;
    r.resplit_aces = resplit && s == kAce;
    r.dd_after_split = dd1 ? DDOption::AnyTwo : DDOption::None;
    CAPTURE(s, up, dd1, resplit);
    double got = exact_split_ev(up, s, r, 14).ev;
    // published values carry up to ~4e-6 of their own noise (see acceptance)
    double margin = std::max(ref::tolerance(digits), 4e-6);
    REQUIRE(got == Catch::Approx(ref::decode(digits)).margin(margin));
}

}  // namespace

TEST_CASE("spot checks against the golden table") {
    // cheap representative cells; the full sweep runs in the acceptance suite
    check_cell(0, 5, false, false);   // (A,A) v 6 ND h2
    check_cell(0, 0, false, false);   // (A,A) v A ND h2
    check_cell(0, 9, false, true);    // (A,A) v T resplit h4
    check_cell(9, 5, false, false);   // (T,T) v 6 ND h2
    check_cell(9, 5, false, true);    // (T,T) v 6 resplit h4
    check_cell(1, 5, true, false);    // (2,2) v 6 DD1 h2
    check_cell(4, 0, true, false);    // (5,5) v A DD1 h2
    check_cell(7, 1, false, false);   // (8,8) v 2 ND h2
    check_cell(8, 8, true, false);    // (9,9) v 9 DD1 h2
}
