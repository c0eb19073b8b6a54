#pragma once

#include <array>
#include <cassert>
#include <cmath>
#include <cstdint>
#include <vector>

#include "bjsplit/cards.hpp"
#include "bjsplit/rules.hpp"
#include "bjsplit/strategy.hpp"

namespace bj {

struct McResult {
    double mean = 0;
    double stderr_ = 0;
    std::uint64_t trials = 0;
    std::uint64_t seed = 0;
};

namespace detail {

// splitmix64; one independent stream per trial for parallel reproducibility.
struct SplitMix64 {
    std::uint64_t state;
    explicit SplitMix64(std::uint64_t s) : state(s) {}
    std::uint64_t next() {
        std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }
    // unbiased bounded draw (n is tiny; modulo bias is rejected away)
    int below(int n) {
        std::uint64_t limit = ~0ULL - ~0ULL % n;
        std::uint64_t v;
        do v = next();
        while (v >= limit);
        return static_cast<int>(v % n);
    }
};

struct McDeck {
    std::array<int, 11> counts{};
    int total = 0;

    int draw(SplitMix64& rng) {
        int pick = rng.below(total);
        for (int r = 1; r <= 10; ++r) {
            pick -= counts[r];
            if (pick < 0) {
                --counts[r];
                --total;
                return r;
            }
        }
        assert(false);
        return 0;
    }
};

}  // namespace detail

// Monte Carlo estimate of the total split EV for (s,s) vs `up`, playing by
// the same strategy and splitting rules as the exact engines. Dealer
// naturals are rejected and the trial redrawn, which realizes the
// no-natural conditioning. Identical inputs and seed reproduce the result.
inline McResult simulate_split(const Shoe& base_shoe, int up, int s, const RuleSet& rules,
                               std::uint64_t trials, std::uint64_t seed) {
    assert(trials >= 1);
    int natural_rank = (up == kAce) ? kTen : (up == kTen ? kAce : 0);

    double sum = 0, sum_sq = 0;
    for (std::uint64_t t = 0; t < trials; ++t) {
        detail::SplitMix64 rng(seed * 0x9e3779b97f4a7c15ULL + t + 1);
        double win;
        for (;;) {  // rejection loop over dealer naturals
            detail::McDeck deck;
            for (int r = 1; r <= 10; ++r) {
                deck.counts[r] = base_shoe.count(r);
                deck.total += deck.counts[r];
            }
            int hole = deck.draw(rng);
            if (natural_rank && hole == natural_rank) continue;

            // play out the split hands
            std::vector<std::vector<int>> hands;
            hands.push_back({s});
            hands.push_back({s});
            std::vector<int> bets;
            for (std::size_t hi = 0; hi < hands.size(); ++hi) {
                Hand h(hands[hi][0]);
                int bet = 1;
                // second card, possibly spawning a new hand
                for (;;) {
                    int r = deck.draw(rng);
                    if (r == s && static_cast<int>(hands.size()) < rules.max_hands &&
                        (s != kAce || rules.resplit_aces)) {
                        hands.push_back({s});
                        continue;
                    }
                    hands[hi].push_back(r);
                    h.add(r);
                    break;
                }
                if (s != kAce) {
                    Action act = split_action(h, up, rules);
                    if (act == Action::Double) {
                        bet = 2;
                        int r = deck.draw(rng);
                        hands[hi].push_back(r);
                        h.add(r);
                    } else if (act == Action::Hit) {
                        while (!h.busted() && basic_hit(h, up, rules)) {
                            int r = deck.draw(rng);
                            hands[hi].push_back(r);
                            h.add(r);
                        }
                    }
                }
                bets.push_back(bet);
            }

            // dealer plays out up + hole
            int dh = up + hole;
            int da = (up == kAce) + (hole == kAce);
            for (;;) {
                bool soft = da > 0 && dh + 10 <= 21;
                int total = soft ? dh + 10 : dh;
                if (dh > 21) break;
                if (total >= 17 && !(total == 17 && soft && rules.dealer_hits_soft17)) break;
                int r = deck.draw(rng);
                dh += r;
                da += (r == kAce);
            }
            bool dealer_soft = da > 0 && dh + 10 <= 21;
            int dealer_total = dealer_soft ? dh + 10 : dh;

            win = 0;
            for (std::size_t hi = 0; hi < hands.size(); ++hi) {
                int hard = 0, aces = 0;
                for (int c : hands[hi]) {
                    hard += c;
                    aces += (c == kAce);
                }
                int pt = (aces > 0 && hard + 10 <= 21) ? hard + 10 : hard;
                double r;
                if (hard > 21)
                    r = -1;
                else if (dh > 21 || pt > dealer_total)
                    r = 1;
                else if (pt < dealer_total)
                    r = -1;
                else
                    r = 0;
                win += bets[hi] * r;
            }
            break;
        }
        sum += win;
        sum_sq += win * win;
    }

    McResult out;
    out.trials = trials;
    out.seed = seed;
    out.mean = sum / trials;
    double var = (sum_sq - sum * sum / trials) / (trials > 1 ? trials - 1 : 1);
    out.stderr_ = std::sqrt(std::max(0.0, var) / trials);
    return out;
}

inline McResult simulate_split(int up, int s, const RuleSet& rules, std::uint64_t trials,
                               std::uint64_t seed) {
    Shoe shoe = Shoe::fresh(rules.decks);
    shoe.remove(up);
    shoe.remove(s);
    shoe.remove(s);
    return simulate_split(shoe, up, s, rules, trials, seed);
}

}  // namespace bj
