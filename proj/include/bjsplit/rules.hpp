#pragma once

#include <string>

namespace bj {

// Double-down permission: never, any two cards, or hard 10/11 only.
enum class DDOption { None, AnyTwo, Hard10or11 };

enum class Action { Stand, Hit, Double };

struct RuleSet {
    int decks = 1;
    bool dealer_hits_soft17 = false;
    DDOption dd_option = DDOption::AnyTwo;       // initial (non-split) hands
    DDOption dd_after_split = DDOption::None;
    int max_hands = 2;                           // h; 2 = no resplitting
    bool resplit_aces = false;
};

inline const char* to_string(DDOption o) {
    switch (o) {
        case DDOption::None: return "none";
        case DDOption::AnyTwo: return "any";
        case DDOption::Hard10or11: return "10-11";
    }
    return "?";
}

inline const char* to_string(Action a) {
    switch (a) {
        case Action::Stand: return "stand";
        case Action::Hit: return "hit";
        case Action::Double: return "double";
    }
    return "?";
}

}  // namespace bj
