#pragma once

#include <cassert>

#include "bjsplit/cards.hpp"
#include "bjsplit/dealer.hpp"
#include "bjsplit/exact_ev.hpp"
#include "bjsplit/multiset_cache.hpp"
#include "bjsplit/rules.hpp"
#include "bjsplit/strategy.hpp"

namespace bj {

// Probabilities of the card-order classes behind the resplit approximations.
struct ResplitProbabilities {
    double p2 = 0;                    // P(2)
    double p3_1 = 0, p3_2 = 0;        // P(3/1), P(3/2)
    double p4_1 = 0, p4_2 = 0, p4_3 = 0, p4_4 = 0, p4_5 = 0;

    double p3() const { return p3_1 + p3_2; }
    double p4() const { return p4_1 + p4_2 + p4_3 + p4_4 + p4_5; }
    double total() const { return p2 + p3() + p4(); }
};

struct ConditionalHandEV {
    double e2 = 0, e3 = 0, e4 = 0;
};

namespace detail {

// p(s) evaluated with substituted n_s and n_deck. The natural-card count
// n_{11-u} comes from the shoe unless s itself is the natural card.
inline double p_of_s_substituted(const Shoe& shoe, int up, int s, double ns, double ndeck) {
    int c = (up == kAce) ? kTen : (up == kTen ? kAce : 0);
    if (c == 0) return ns / ndeck;
    double nc = (s == c) ? ns : shoe.count(c);
    if (s == c) return ns / (ndeck - 1);
    return ns / (ndeck - 1) * ((ndeck - nc - 1) / (ndeck - nc));
}

}  // namespace detail

// Position probabilities p_j(s), p_j(s|s) and the eight card-order class
// probabilities. The shoe must have the up card and both split cards removed.
inline ResplitProbabilities resplit_position_probs(const Shoe& shoe, int up, int s) {
    double ns = shoe.count(s);
    double nd = shoe.total();
    auto p = [&](double ns_sub, double nd_sub) {
        return detail::p_of_s_substituted(shoe, up, s, ns_sub, nd_sub);
    };
    double p1 = p(ns, nd);
    double p2 = p(ns, nd - 1);
    double p2s = p(ns - 1, nd - 1);
    double p3s = p(ns - 1, nd - 2);
    double p4s = p(ns - 1, nd - 3);
    if (ns == 0) p2s = p3s = p4s = 0;

    ResplitProbabilities out;
    out.p2 = (1 - p1) * (1 - p2);
    out.p3_1 = (1 - p1) * p2 * (1 - p3s) * (1 - p4s);
    out.p3_2 = p1 * (1 - p2s) * (1 - p3s) * (1 - p4s);
    out.p4_1 = (1 - p1) * p2 * (1 - p3s) * p4s;
    out.p4_2 = (1 - p1) * p2 * p3s;
    out.p4_3 = p1 * (1 - p2s) * (1 - p3s) * p4s;
    out.p4_4 = p1 * (1 - p2s) * p3s;
    out.p4_5 = p1 * p2s;
    return out;
}

namespace detail {

// Single-hand EV used by the resplit approximations: a hand seeded with s
// played against a shoe with the up card and i split cards removed. For
// i < h the second card cannot be s (that branch is zeroed and the rest
// renormalized) and dealer outcomes use the hole-conditioned distribution.
class ConditionedHandEval {
  public:
    ConditionedHandEval(Shoe& shoe, int up, int s, int i, bool condition_dealer,
                        const RuleSet& rules, DealerCache* cache)
        : shoe_(shoe), up_(up), s_(s), i_(i), condition_dealer_(condition_dealer),
          rules_(rules), cache_(cache) {}

    double run(bool forbid_s_second) {
        Hand h(s_);
        double ev = 0;
        double renorm = 1.0;
        if (forbid_s_second && shoe_.count(s_) > 0)
            renorm = 1.0 - player_card_prob(shoe_, up_, s_);
        for (int r = kTen; r >= kAce; --r) {
            if (shoe_.count(r) == 0) continue;
            if (forbid_s_second && r == s_) continue;
            double wt = player_card_prob(shoe_, up_, r) / renorm;
            if (wt == 0) continue;  // impossible given no dealer natural
            shoe_.remove(r);
            h.add(r);
            ev += wt * play_two_cards(h);
            h.drop(r);
            shoe_.restore(r);
        }
        return ev;
    }

  private:
    DealerDist dist() {
        auto compute = [&] {
            return condition_dealer_
                       ? dealer_distribution_hole_conditioned(shoe_, up_, s_, i_, rules_)
                       : dealer_distribution(shoe_, up_, rules_);
        };
        return cache_ ? cache_->lookup_or_compute(shoe_, compute) : compute();
    }

    double stand(const Hand& h) {
        if (h.busted()) return -1.0;
        return stand_ev_for_score(h.score(), dist());
    }

    double play_two_cards(Hand& h) {
        if (s_ == kAce) return stand(h);
        switch (split_action(h, up_, rules_)) {
            case Action::Double:
                return one_more_then_stand(h) * 2.0;
            case Action::Hit:
                return hit(h);
            case Action::Stand:
                return stand(h);
        }
        return 0;
    }

    double one_more_then_stand(Hand& h) {
        double ev = 0;
        for (int r = kTen; r >= kAce; --r) {
            if (shoe_.count(r) == 0) continue;
            double wt = player_card_prob(shoe_, up_, r);
            if (wt == 0) continue;  // impossible given no dealer natural
            shoe_.remove(r);
            h.add(r);
            ev += wt * stand(h);
            h.drop(r);
            shoe_.restore(r);
        }
        return ev;
    }

    double hit(Hand& h) {
        double ev = 0;
        for (int r = kTen; r >= kAce; --r) {
            if (shoe_.count(r) == 0) continue;
            double wt = player_card_prob(shoe_, up_, r);
            if (wt == 0) continue;  // impossible given no dealer natural
            shoe_.remove(r);
            h.add(r);
            if (h.busted())
                ev += wt * -1.0;
            else if (basic_hit(h, up_, rules_))
                ev += wt * hit(h);
            else
                ev += wt * stand(h);
            h.drop(r);
            shoe_.restore(r);
        }
        return ev;
    }

    Shoe& shoe_;
    int up_, s_, i_;
    bool condition_dealer_;
    const RuleSet& rules_;
    DealerCache* cache_;
};

}  // namespace detail

// E(i): single-hand EV with i split cards removed. For i < h the hand's
// second card cannot be s and dealer play is hole-conditioned; the last tier
// allows s and uses unconditioned dealer probabilities.
inline double conditional_hand_ev(int up, int s, int i, int h, const RuleSet& rules,
                                  int cache_depth = 10) {
    Shoe shoe = Shoe::fresh(rules.decks);
    shoe.remove(up);
    for (int k = 0; k < i; ++k) shoe.remove(s);
    shoe.set_baseline();
    bool last_tier = (i == h);
    DealerCache cache(cache_depth);
    detail::ConditionedHandEval ev(shoe, up, s, i, !last_tier, rules, &cache);
    return ev.run(!last_tier);
}

inline ConditionalHandEV conditional_hand_evs(int up, int s, const RuleSet& rules) {
    ConditionalHandEV out;
    out.e2 = conditional_hand_ev(up, s, 2, 4, rules);
    out.e3 = conditional_hand_ev(up, s, 3, 4, rules);
    out.e4 = conditional_hand_ev(up, s, 4, 4, rules);
    return out;
}

// Griffin's non-resplit approximation: twice the EV of playing one hand
// seeded with s against a shoe with both split cards removed.
inline double approx_nonresplit(Shoe& shoe, int up, int s, const RuleSet& rules,
                                DealerCache* cache) {
    Evaluator eval(shoe, up, rules, cache);
    Hand h(s);
    double ev = 0;
    for (int r = kTen; r >= kAce; --r) {
        if (shoe.count(r) == 0) continue;
        double wt = player_card_prob(shoe, up, r);
        if (wt == 0) continue;  // impossible given no dealer natural
        shoe.remove(r);
        h.add(r);
        if (s == kAce)
            ev += wt * eval.stand_ev(h);
        else
            ev += wt * eval.play_ev(h, [&](const Hand& hh) { return split_action(hh, up, rules); });
        h.drop(r);
        shoe.restore(r);
    }
    return 2.0 * ev;
}

inline double approx_nonresplit(int up, int s, const RuleSet& rules, int cache_depth = 12) {
    Shoe shoe = Shoe::fresh(rules.decks);
    shoe.remove(up);
    shoe.remove(s);
    shoe.remove(s);
    shoe.set_baseline();
    DealerCache cache(cache_depth);
    return approx_nonresplit(shoe, up, s, rules, &cache);
}

// Griffin's resplit approximation: sum over i of i * P(i) * E(i), with the
// last tier's probability set by complement.
inline double griffin_resplit(int up, int s, const RuleSet& rules) {
    int h = rules.max_hands;
    assert(h >= 2 && h <= 4);
    Shoe shoe = Shoe::fresh(rules.decks);
    shoe.remove(up);
    shoe.remove(s);
    shoe.remove(s);
    ResplitProbabilities p = resplit_position_probs(shoe, up, s);

    if (h == 2) return 2.0 * conditional_hand_ev(up, s, 2, 2, rules);
    if (h == 3) {
        double p2 = p.p2;
        return 2.0 * p2 * conditional_hand_ev(up, s, 2, 3, rules) +
               3.0 * (1.0 - p2) * conditional_hand_ev(up, s, 3, 3, rules);
    }
    double p4 = 1.0 - p.p2 - p.p3();
    ConditionalHandEV e = conditional_hand_evs(up, s, rules);
    return 2.0 * p.p2 * e.e2 + 3.0 * p.p3() * e.e3 + 4.0 * p4 * e.e4;
}

// Coefficients on E(2), E(3), E(4) in the card-order-partitioned formula.
struct ApproxCoefficients {
    double c2 = 0, c3 = 0, c4 = 0;
};

inline ApproxCoefficients new_approx_coefficients(const ResplitProbabilities& p) {
    ApproxCoefficients c;
    c.c2 = 2 * p.p2 + p.p3_1 + p.p4_1 + p.p4_2;
    c.c3 = 3 * p.p3() - p.p3_1 + p.p4_1 + 2 * p.p4_3 + p.p4_4;
    c.c4 = 4 * p.p4() - 2 * p.p4_1 - p.p4_2 - 2 * p.p4_3 - p.p4_4;
    return c;
}

// The card-order-partitioned resplit approximation (h = 4).
inline double new_approx_resplit(int up, int s, const RuleSet& rules) {
    assert(rules.max_hands == 4);
    Shoe shoe = Shoe::fresh(rules.decks);
    shoe.remove(up);
    shoe.remove(s);
    shoe.remove(s);
    ResplitProbabilities p = resplit_position_probs(shoe, up, s);
    ApproxCoefficients c = new_approx_coefficients(p);
    ConditionalHandEV e = conditional_hand_evs(up, s, rules);
    return c.c2 * e.e2 + c.c3 * e.e3 + c.c4 * e.e4;
}

}  // namespace bj
