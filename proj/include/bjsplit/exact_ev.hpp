#pragma once

#include <cassert>

#include "bjsplit/cards.hpp"
#include "bjsplit/dealer.hpp"
#include "bjsplit/multiset_cache.hpp"
#include "bjsplit/rules.hpp"
#include "bjsplit/strategy.hpp"

namespace bj {

// Conditional probability that the next player card is `rank`, given the
// dealer holds no natural. The up card and all prior hand cards must already
// be removed from the shoe.
inline double player_card_prob(const Shoe& shoe, int up, int rank) {
    double n = shoe.total();
    assert(n > 0);
    double nk = shoe.count(rank);
    int c = (up == kAce) ? kTen : (up == kTen ? kAce : 0);
    if (c == 0) return nk / n;
    double nc = shoe.count(c);
    if (rank == c) return nk / (n - 1);
    return nk / (n - 1) * ((n - nc - 1) / (n - nc));
}

inline double stand_ev_for_score(const Score& sc, const DealerDist& dist) {
    if (sc.total > 21) return -1.0;
    double ev = dist.d[5];  // dealer bust
    for (int t = 17; t <= 21; ++t) {
        if (t < sc.total)
            ev += dist.d[t - 17];
        else if (t > sc.total)
            ev -= dist.d[t - 17];
    }
    return ev;
}

// Exact single-hand expected values under basic strategy. Worker-local: owns
// references to a shoe and an optional dealer cache keyed off the shoe's
// baseline. All EVs are conditional on the dealer holding no natural.
class Evaluator {
  public:
    Evaluator(Shoe& shoe, int up, const RuleSet& rules, DealerCache* cache = nullptr)
        : shoe_(shoe), up_(up), rules_(rules), cache_(cache) {}

    DealerDist dealer_dist() {
        auto compute = [&] { return dealer_distribution(shoe_, up_, rules_); };
        return cache_ ? cache_->lookup_or_compute(shoe_, compute) : compute();
    }

    double stand_ev(const Hand& h) {
        if (h.busted()) return -1.0;
        return stand_ev_for_score(h.score(), dealer_dist());
    }

    // Eq-style hit recursion: draw, then hit again or stand per basic
    // strategy. Caller guarantees basic strategy hits the current hand.
    double hit_ev(Hand& h) {
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
                ev += wt * hit_ev(h);
            else
                ev += wt * stand_ev(h);
            h.drop(r);
            shoe_.restore(r);
        }
        return ev;
    }

    // Twice the one-card-then-stand expectation of a two-card hand.
    double double_ev(Hand& h) {
        assert(h.num_cards() == 2);
        double ev = 0;
        for (int r = kTen; r >= kAce; --r) {
            if (shoe_.count(r) == 0) continue;
            double wt = player_card_prob(shoe_, up_, r);
            if (wt == 0) continue;  // impossible given no dealer natural
            shoe_.remove(r);
            h.add(r);
            ev += wt * stand_ev(h);
            h.drop(r);
            shoe_.restore(r);
        }
        return 2.0 * ev;
    }

    // Play a complete hand by basic strategy from its current state and
    // return bet-weighted EV (bet 1, or 2 when doubled). `decide` picks the
    // two-card action; later decisions are plain hit/stand.
    template <typename Decide>
    double play_ev(Hand& h, Decide&& decide) {
        assert(h.num_cards() == 2);
        switch (decide(h)) {
            case Action::Double:
                return double_ev(h);
            case Action::Hit:
                return hit_ev(h);
            case Action::Stand:
                return stand_ev(h);
        }
        return 0;
    }

    Shoe& shoe() { return shoe_; }
    int up() const { return up_; }
    const RuleSet& rules() const { return rules_; }
    DealerCache* cache() { return cache_; }

  private:
    Shoe& shoe_;
    int up_;
    const RuleSet& rules_;
    DealerCache* cache_;
};

}  // namespace bj
