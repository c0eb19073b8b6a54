#pragma once

#include <algorithm>
#include <cmath>
#include <functional>
#include <map>
#include <tuple>
#include <vector>

#include "bjsplit/approx_split.hpp"
#include "bjsplit/cards.hpp"
#include "bjsplit/exact_ev.hpp"
#include "bjsplit/split_engine.hpp"

namespace bj {

// Supplies split EVs for whole-game aggregation. best_alternative is the
// highest EV among the non-split actions for the same deal; sources may use
// it to decide how much work a cell deserves.
class SplitEvSource {
  public:
    virtual ~SplitEvSource() = default;
    virtual double split_ev(int up, int s, const RuleSet& rules, double best_alternative) = 0;

    // Aces cannot respawn hands unless resplit_aces; their effective rule
    // set degrades to h=2.
    static RuleSet effective_rules(int s, const RuleSet& rules) {
        RuleSet r = rules;
        if (s == kAce && !rules.resplit_aces) r.max_hands = 2;
        return r;
    }
};

class ExactSplitSource : public SplitEvSource {
  public:
    explicit ExactSplitSource(int cache_depth = 16) : cache_depth_(cache_depth) {}

    double split_ev(int up, int s, const RuleSet& rules, double) override {
        RuleSet r = effective_rules(s, rules);
        auto key = std::make_tuple(up, s, r.max_hands, static_cast<int>(r.dd_after_split),
                                   r.resplit_aces, r.dealer_hits_soft17, r.decks);
        auto it = memo_.find(key);
        if (it != memo_.end()) return it->second;
        double ev = exact_split_ev(up, s, r, cache_depth_).ev;
        memo_[key] = ev;
        return ev;
    }

  private:
    using Key = std::tuple<int, int, int, int, bool, bool, int>;
    std::map<Key, double> memo_;
    int cache_depth_;
};

class ApproxSplitSource : public SplitEvSource {
  public:
    double split_ev(int up, int s, const RuleSet& rules, double) override {
        RuleSet r = effective_rules(s, rules);
        auto key = std::make_tuple(up, s, r.max_hands, static_cast<int>(r.dd_after_split),
                                   r.dealer_hits_soft17, r.decks);
        auto it = memo_.find(key);
        if (it != memo_.end()) return it->second;
        double ev;
        if (r.max_hands <= 2)
            ev = approx_nonresplit(up, s, r);
        else
            ev = new_approx_resplit(up, s, r);
        memo_[key] = ev;
        return ev;
    }

  private:
    using Key = std::tuple<int, int, int, int, bool, int>;
    std::map<Key, double> memo_;
};

// Uses the approximation to triage: cells where splitting is clearly worse
// than the best alternative keep the approximate value (it never enters the
// game EV), everything else is computed exactly. The margin must exceed the
// approximation's worst-case error.
class HybridSplitSource : public SplitEvSource {
  public:
    explicit HybridSplitSource(double margin = 0.02, int cache_depth = 18)
        : margin_(margin), exact_(cache_depth) {}

    double split_ev(int up, int s, const RuleSet& rules, double best_alternative) override {
        double approx = approx_.split_ev(up, s, rules, best_alternative);
        if (approx < best_alternative - margin_) return approx;
        return exact_.split_ev(up, s, rules, best_alternative);
    }

  private:
    double margin_;
    ApproxSplitSource approx_;
    ExactSplitSource exact_;
};

// Per-deal contribution to the whole-game EV, kept for the precision sweep.
struct DealComponent {
    int up = 0, c1 = 0, c2 = 0;   // c1 <= c2
    double weight = 0;            // probability of this initial deal
    double p_dealer_natural = 0;
    bool player_natural = false;
    double stand = 0, hit = 0, dbl = 0, split = 0;
    bool can_double = false, can_split = false;
    Action chart = Action::Stand;  // strategy-chart action for the deal
};

struct GameEV {
    double value_pct = 0;  // percent of initial bet
    RuleSet rules;
    std::vector<DealComponent> components;
    double pair_fraction = 0;
    double favorable_split_fraction = 0;
};

namespace detail {

// The hand is played by the strategy chart, not by per-composition argmax
// over the EV tables (the tables would occasionally disagree with the chart
// at borderline compositions and overstate the game value). Splitting has no
// chart: a pair is split exactly when its split EV beats the chart action.
inline double best_action_ev(const DealComponent& dc) {
    double chart_ev = dc.stand;
    if (dc.chart == Action::Double && dc.can_double)
        chart_ev = dc.dbl;
    else if (dc.chart != Action::Stand)
        chart_ev = dc.hit;
    if (dc.can_split && dc.split > chart_ev) return dc.split;
    return chart_ev;
}

inline double aggregate(const std::vector<DealComponent>& comps) {
    double total = 0;
    for (const DealComponent& dc : comps) {
        double ev;
        if (dc.player_natural)
            ev = (1.0 - dc.p_dealer_natural) * 1.5;
        else
            ev = -dc.p_dealer_natural + (1.0 - dc.p_dealer_natural) * best_action_ev(dc);
        total += dc.weight * ev;
    }
    return total * 100.0;
}

}  // namespace detail

// Whole-game basic-strategy EV: enumerate dealer up card and player two-card
// deals with exact probabilities, settle naturals at 3:2, and take the best
// permitted action elsewhere. Split EVs come from `splits`; pass nullptr to
// eliminate the splitting option.
inline GameEV game_ev(const RuleSet& rules, SplitEvSource* splits, int cache_depth = 12) {
    GameEV out;
    out.rules = rules;
    for (int up = 1; up <= 10; ++up) {
        Shoe shoe = Shoe::fresh(rules.decks);
        double p_up = static_cast<double>(shoe.count(up)) / shoe.total();
        shoe.remove(up);
        shoe.set_baseline();
        DealerCache cache(cache_depth);
        int natural_rank = (up == kAce) ? kTen : (up == kTen ? kAce : 0);

        for (int c1 = 1; c1 <= 10; ++c1) {
            for (int c2 = c1; c2 <= 10; ++c2) {
                double n1 = shoe.count(c1);
                double nn = shoe.total();
                double pw;
                if (c1 == c2)
                    pw = n1 * (n1 - 1) / (nn * (nn - 1));
                else
                    pw = 2.0 * n1 * shoe.count(c2) / (nn * (nn - 1));
                if (pw <= 0) continue;

                DealComponent dc;
                dc.up = up;
                dc.c1 = c1;
                dc.c2 = c2;
                dc.weight = p_up * pw;
                shoe.remove(c1);
                shoe.remove(c2);
                dc.p_dealer_natural =
                    natural_rank ? static_cast<double>(shoe.count(natural_rank)) / shoe.total() : 0.0;
                dc.player_natural = (c1 == kAce && c2 == kTen);

                if (!dc.player_natural) {
                    Hand h(c1);
                    h.add(c2);
                    Evaluator eval(shoe, up, rules, &cache);
                    dc.stand = eval.stand_ev(h);
                    dc.hit = h.score().total >= 21 ? dc.stand : eval.hit_ev(h);
                    dc.chart = play_action(h, up, rules);
                    Score sc = h.score();
                    dc.can_double = rules.dd_option == DDOption::AnyTwo ||
                                    (rules.dd_option == DDOption::Hard10or11 && !sc.soft &&
                                     (sc.total == 10 || sc.total == 11));
                    if (dc.can_double) dc.dbl = eval.double_ev(h);
                    if (c1 == c2 && splits) {
                        double chart_ev = dc.chart == Action::Double ? dc.dbl
                                          : dc.chart == Action::Hit  ? dc.hit
                                                                     : dc.stand;
                        dc.can_split = true;
                        dc.split = splits->split_ev(up, c1, rules, chart_ev);
                    }
                }
                shoe.restore(c2);
                shoe.restore(c1);
                out.components.push_back(dc);
            }
        }
    }
    out.value_pct = detail::aggregate(out.components);
    for (const DealComponent& dc : out.components) {
        if (dc.c1 != dc.c2) continue;
        out.pair_fraction += dc.weight;
        if (dc.can_split) {
            double chart_ev = dc.chart == Action::Double ? dc.dbl
                              : dc.chart == Action::Hit  ? dc.hit
                                                         : dc.stand;
            if (dc.split > chart_ev) out.favorable_split_fraction += dc.weight;
        }
    }
    return out;
}

inline double rule_delta(const GameEV& base, const GameEV& variant) {
    return variant.value_pct - base.value_pct;
}

// Game EV recomputed from action-EV tables rounded to k decimal digits.
inline double game_ev_at_precision(const GameEV& game, int digits) {
    double scale = std::pow(10.0, digits);
    auto rnd = [&](double x) { return std::round(x * scale) / scale; };
    std::vector<DealComponent> comps = game.components;
    for (DealComponent& dc : comps) {
        dc.stand = rnd(dc.stand);
        dc.hit = rnd(dc.hit);
        dc.dbl = rnd(dc.dbl);
        dc.split = rnd(dc.split);
    }
    return detail::aggregate(comps);
}

struct PrecisionPoint {
    int digits;
    double value_pct;
};

inline std::vector<PrecisionPoint> precision_sweep(const GameEV& game, int min_digits,
                                                   int max_digits) {
    std::vector<PrecisionPoint> out;
    for (int k = min_digits; k <= max_digits; ++k)
        out.push_back({k, game_ev_at_precision(game, k)});
    return out;
}

}  // namespace bj
