#pragma once

#include <array>
#include <cassert>
#include <cmath>

#include "bjsplit/cards.hpp"
#include "bjsplit/rules.hpp"

namespace bj {

// Final dealer outcome distribution (d17..d21, bust), conditional on the
// dealer not holding a natural.
struct DealerDist {
    std::array<double, 6> d{};  // 17, 18, 19, 20, 21, bust

    double sum() const {
        double s = 0;
        for (double v : d) s += v;
        return s;
    }
};

namespace detail {

inline bool dealer_stands(int total, bool soft, const RuleSet& rules) {
    if (total < 17) return false;
    if (total == 17 && soft && rules.dealer_hits_soft17) return false;
    return true;
}

inline void bucket(DealerDist& out, int total, double weight) {
    if (total > 21)
        out.d[5] += weight;
    else
        out.d[total - 17] += weight;
}

inline void dealer_draw(Shoe& shoe, int hard_sum, int aces, double weight, DealerDist& out,
                        const RuleSet& rules) {
    int n = shoe.total();
    assert(n > 0);
    double inv = 1.0 / n;
    for (int r = 1; r <= 10; ++r) {
        int c = shoe.count(r);
        if (c == 0) continue;
        double w = weight * c * inv;
        int hs = hard_sum + r;
        int ac = aces + (r == kAce);
        bool soft = ac > 0 && hs + 10 <= 21;
        int total = soft ? hs + 10 : hs;
        if (dealer_stands(total, soft, rules) || hs > 21) {
            bucket(out, total, w);
        } else {
            shoe.remove(r);
            dealer_draw(shoe, hs, ac, w, out, rules);
            shoe.restore(r);
        }
    }
}

}  // namespace detail

// Exact dealer outcome distribution for up card `up` (already removed from
// the shoe by the caller). When the up card is an ace or a ten, the hole-card
// branch that would complete a natural is excluded and the remaining first
// draws are renormalized, which realizes conditioning on no natural.
inline DealerDist dealer_distribution(Shoe& shoe, int up, const RuleSet& rules) {
    DealerDist out;
    int natural_rank = (up == kAce) ? kTen : (up == kTen ? kAce : 0);
    int n = shoe.total();
    assert(n > 0);
    double denom = n - (natural_rank ? shoe.count(natural_rank) : 0);
    assert(denom > 0);
    double inv = 1.0 / denom;

    int up_hard = up;
    int up_aces = (up == kAce);
    for (int r = 1; r <= 10; ++r) {
        if (r == natural_rank) continue;
        int c = shoe.count(r);
        if (c == 0) continue;
        double w = c * inv;
        int hs = up_hard + r;
        int ac = up_aces + (r == kAce);
        bool soft = ac > 0 && hs + 10 <= 21;
        int total = soft ? hs + 10 : hs;
        if (detail::dealer_stands(total, soft, rules)) {
            detail::bucket(out, total, w);
        } else {
            shoe.remove(r);
            detail::dealer_draw(shoe, hs, ac, w, out, rules);
            shoe.restore(r);
        }
    }
    return out;
}

namespace detail {

// Per-draw card probability when the i-1 unseen player hole cards are
// conditioned to be non-s. Evaluated on current shoe counts.
inline double split_cond_prob(const Shoe& shoe, int rank, int i, int s) {
    double n = shoe.total();
    double nk = shoe.count(rank);
    double ns = shoe.count(s);
    if (rank == s) return nk / (n - i + 1);
    return nk / (n - i + 1) * ((n - ns - i + 1) / (n - ns));
}

inline void dealer_draw_cond(Shoe& shoe, int hard_sum, int aces, double weight, DealerDist& out,
                             const RuleSet& rules, int i, int s) {
    for (int r = 1; r <= 10; ++r) {
        if (shoe.count(r) == 0) continue;
        double w = weight * split_cond_prob(shoe, r, i, s);
        int hs = hard_sum + r;
        int ac = aces + (r == kAce);
        bool soft = ac > 0 && hs + 10 <= 21;
        int total = soft ? hs + 10 : hs;
        if (dealer_stands(total, soft, rules) || hs > 21) {
            bucket(out, total, w);
        } else {
            shoe.remove(r);
            dealer_draw_cond(shoe, hs, ac, w, out, rules, i, s);
            shoe.restore(r);
        }
    }
}

}  // namespace detail

// Dealer distribution for the Griffin resplit approximation: every dealer
// draw uses the two-branch probability p(k,i,s). The no-natural hole
// conditioning still applies for up ace or ten.
inline DealerDist dealer_distribution_hole_conditioned(Shoe& shoe, int up, int s, int i,
                                                       const RuleSet& rules) {
    assert(i >= 2 && i <= 4);
    DealerDist out;
    int natural_rank = (up == kAce) ? kTen : (up == kTen ? kAce : 0);

    double norm = 1.0;
    if (natural_rank && shoe.count(natural_rank) > 0)
        norm = 1.0 - detail::split_cond_prob(shoe, natural_rank, i, s);
    assert(norm > 0);

    int up_hard = up;
    int up_aces = (up == kAce);
    for (int r = 1; r <= 10; ++r) {
        if (r == natural_rank) continue;
        if (shoe.count(r) == 0) continue;
        double w = detail::split_cond_prob(shoe, r, i, s) / norm;
        int hs = up_hard + r;
        int ac = up_aces + (r == kAce);
        bool soft = ac > 0 && hs + 10 <= 21;
        int total = soft ? hs + 10 : hs;
        if (detail::dealer_stands(total, soft, rules)) {
            detail::bucket(out, total, w);
        } else {
            shoe.remove(r);
            detail::dealer_draw_cond(shoe, hs, ac, w, out, rules, i, s);
            shoe.restore(r);
        }
    }
    return out;
}

}  // namespace bj
