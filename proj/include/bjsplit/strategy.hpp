#pragma once

#include "bjsplit/cards.hpp"
#include "bjsplit/rules.hpp"

namespace bj {

// Single-deck, zero-memory basic strategy. Composition-dependent exceptions
// are written out explicitly over exact two-card compositions so they can be
// audited line by line. A few exceptions toggle with the dealer soft-17 rule.

inline bool basic_hit(const Hand& h, int up, const RuleSet& rules) {
    Score sc = h.score();
    if (sc.total >= 21) return false;

    if (sc.soft) {
        if (up >= 2 && up <= 8) return sc.total <= 17;
        // up 9, ten, or ace
        if (sc.total <= 17) return true;
        if (sc.total == 18) {
            if (up == kAce && !rules.dealer_hits_soft17) return false;
            return true;
        }
        return false;
    }

    int t = sc.total;
    switch (up) {
        case 2:
            if (t == 13 && !rules.dealer_hits_soft17 && h.is_two(10, 3)) return true;
            return t <= 12;
        case 3:
            if (t == 12 && (h.is_two(8, 4) || h.is_two(7, 5) || h.is_two(6, 6))) return false;
            return t <= 12;
        case 4:
            if (t == 12 && h.is_two(10, 2)) return true;
            return t <= 11;
        case 5:
            return t <= 11;
        case 6:
            if (t == 12 && h.is_two(10, 2) && !rules.dealer_hits_soft17) return true;
            return t <= 11;
        default:  // 7, 8, 9, ten, ace
            if (up == kTen) {
                if (t == 14 && h.is_two(7, 7)) return false;
                if (t == 16 && h.num_cards() >= 3) return false;
            }
            return t <= 16;
    }
}

// True iff basic strategy doubles this two-card hand under the given
// double-down option. `opt` is the applicable option (initial or after-split).
inline bool basic_double(const Hand& h, int up, const RuleSet& rules, DDOption opt) {
    if (opt == DDOption::None || h.num_cards() != 2) return false;
    Score sc = h.score();

    if (sc.soft) {
        if (opt == DDOption::Hard10or11) return false;
        int other = sc.total - 11;  // the non-ace card ((A,A) gives 1)
        switch (up) {
            case 2: return other == 6;
            case 3: return other == 6 || other == 7;
            case 4:
            case 5: return other >= 2 && other <= 7;
            case 6: return other >= 2 && other <= 8;
            default: return false;
        }
    }

    int t = sc.total;
    if (opt == DDOption::Hard10or11 && t != 10 && t != 11) return false;
    switch (up) {
        case 2:
        case 3:
        case 4:
            return t >= 9 && t <= 11;
        case 5:
            if (h.is_two(6, 2) && !rules.dealer_hits_soft17) return false;
            return t >= 8 && t <= 11;
        case 6:
            if (h.is_two(6, 2)) return false;
            return t >= 8 && t <= 11;
        case 7:
        case 8:
        case 9:
            return t == 10 || t == 11;
        default:  // ten or ace
            return t == 11;
    }
}

inline bool basic_double(const Hand& h, int up, const RuleSet& rules) {
    return basic_double(h, up, rules, rules.dd_option);
}

// Decision for an ordinary (non-split) hand at any stage.
inline Action play_action(const Hand& h, int up, const RuleSet& rules) {
    if (h.num_cards() == 2 && basic_double(h, up, rules, rules.dd_option)) return Action::Double;
    return basic_hit(h, up, rules) ? Action::Hit : Action::Stand;
}

// Decision inside a split group. The one-card-on-split-aces rule is enforced
// by the engine before this is consulted; a two-card 21 here is just a 21.
inline Action split_action(const Hand& h, int up, const RuleSet& rules) {
    if (h.num_cards() == 2 && basic_double(h, up, rules, rules.dd_after_split)) return Action::Double;
    return basic_hit(h, up, rules) ? Action::Hit : Action::Stand;
}

}  // namespace bj
