#pragma once

#include <array>
#include <cassert>
#include <chrono>
#include <cstdint>
#include <vector>

#include "bjsplit/cards.hpp"
#include "bjsplit/exact_ev.hpp"
#include "bjsplit/multiset_cache.hpp"
#include "bjsplit/rules.hpp"
#include "bjsplit/strategy.hpp"

namespace bj {

// One unique completed split hand, canonicalized by sorted composition.
// Occurrence counts are order-distinct generation paths; the splittable
// counters cover realizations whose second card is another split card.
struct PlayHand {
    std::array<uint8_t, 11> comp{};        // full composition, split card included
    std::vector<uint8_t> removal_order;    // cards beyond the seed split card, descending
    Score score{};
    int num_cards = 0;
    std::int64_t occurrences = 0;
    std::int64_t splittable_occurrences = 0;
    std::int64_t total_bet = 0;
    std::int64_t total_bet_splittable = 0;
};

using HandCatalog = std::vector<PlayHand>;

struct SplitResult {
    double ev = 0;
    std::uint64_t hands_enumerated = 0;  // leaf configurations / generation paths
    std::uint64_t unique_hands = 0;
    double elapsed = 0;  // seconds
};

namespace detail {

class CatalogBuilder {
  public:
    CatalogBuilder(Shoe& shoe, int up, int s, const RuleSet& rules)
        : shoe_(shoe), up_(up), s_(s), rules_(rules), hand_(s) {}

    HandCatalog build(std::uint64_t* generated) {
        second_card();
        if (generated) *generated = generated_;
        return std::move(catalog_);
    }

  private:
    void second_card() {
        for (int r = kTen; r >= kAce; --r) {
            if (shoe_.count(r) == 0) continue;
            shoe_.remove(r);
            hand_.add(r);
            bool splittable = (r == s_);
            if (s_ == kAce) {
                complete(1, splittable);
            } else {
                switch (split_action(hand_, up_, rules_)) {
                    case Action::Double:
                        third_card_doubled(splittable);
                        break;
                    case Action::Hit:
                        hit(splittable);
                        break;
                    case Action::Stand:
                        complete(1, splittable);
                        break;
                }
            }
            hand_.drop(r);
            shoe_.restore(r);
        }
    }

    void third_card_doubled(bool splittable) {
        for (int r = kTen; r >= kAce; --r) {
            if (shoe_.count(r) == 0) continue;
            shoe_.remove(r);
            hand_.add(r);
            complete(2, splittable);
            hand_.drop(r);
            shoe_.restore(r);
        }
    }

    void hit(bool splittable) {
        for (int r = kTen; r >= kAce; --r) {
            if (shoe_.count(r) == 0) continue;
            shoe_.remove(r);
            hand_.add(r);
            if (!hand_.busted() && basic_hit(hand_, up_, rules_))
                hit(splittable);
            else
                complete(1, splittable);
            hand_.drop(r);
            shoe_.restore(r);
        }
    }

    void complete(int bet, bool splittable) {
        ++generated_;
        std::int32_t& pos = index_.slot(hand_.rank_counts());
        if (pos < 0) {
            pos = static_cast<std::int32_t>(catalog_.size());
            PlayHand ph;
            ph.comp = hand_.rank_counts();
            ph.score = hand_.score();
            ph.num_cards = hand_.num_cards();
            bool seed_skipped = false;
            for (int r = kTen; r >= kAce; --r) {
                int m = ph.comp[r];
                if (r == s_ && !seed_skipped) {
                    --m;
                    seed_skipped = true;
                }
                for (; m > 0; --m) ph.removal_order.push_back(static_cast<uint8_t>(r));
            }
            catalog_.push_back(std::move(ph));
        }
        PlayHand& ph = catalog_[pos];
        ph.occurrences += 1;
        ph.total_bet += bet;
        if (splittable) {
            ph.splittable_occurrences += 1;
            ph.total_bet_splittable += bet;
        }
    }

    Shoe& shoe_;
    int up_, s_;
    const RuleSet& rules_;
    Hand hand_;
    HandIndex index_;
    HandCatalog catalog_;
    std::uint64_t generated_ = 0;
};

}  // namespace detail

// Catalog of all unique playable single split hands for (shoe, up, s, rules).
// The shoe must have up and both split cards removed already.
inline HandCatalog enumerate_unique_hands(Shoe& shoe, int up, int s, const RuleSet& rules,
                                          std::uint64_t* generated = nullptr) {
    detail::CatalogBuilder builder(shoe, up, s, rules);
    return builder.build(generated);
}

namespace detail {

// Direct recursive enumeration over card draws (the slow exact method).
class RecursiveSplit {
  public:
    RecursiveSplit(Shoe& shoe, int up, int s, const RuleSet& rules, DealerCache* cache)
        : eval_(shoe, up, rules, cache), s_(s), rules_(rules) {
        hands_.reserve(rules.max_hands);
    }

    double run() {
        hands_.emplace_back(s_);
        hands_.emplace_back(s_);
        double ev = second_card(0);
        hands_.clear();
        return ev;
    }

    std::uint64_t leaves() const { return leaves_; }

  private:
    bool can_spawn() const {
        return static_cast<int>(hands_.size()) < rules_.max_hands &&
               (s_ != kAce || rules_.resplit_aces);
    }

    double second_card(std::size_t hi) {
        Shoe& shoe = eval_.shoe();
        double ev = 0;
        for (int r = kTen; r >= kAce; --r) {
            if (shoe.count(r) == 0) continue;
            double wt = player_card_prob(shoe, eval_.up(), r);
            if (wt == 0) continue;  // impossible given no dealer natural
            shoe.remove(r);
            if (r == s_ && can_spawn()) {
                hands_.emplace_back(s_);
                ev += wt * second_card(hi);
                hands_.pop_back();
            } else {
                hands_[hi].add(r);
                ev += wt * after_two(hi);
                hands_[hi].drop(r);
            }
            shoe.restore(r);
        }
        return ev;
    }

    double after_two(std::size_t hi) {
        if (s_ == kAce) return finish(hi);  // split aces take exactly one card
        Hand& h = hands_[hi];
        switch (split_action(h, eval_.up(), rules_)) {
            case Action::Double:
                return doubled_card(hi);
            case Action::Hit:
                return keep_hitting(hi);
            case Action::Stand:
                return finish(hi);
        }
        return 0;
    }

    double doubled_card(std::size_t hi) {
        Shoe& shoe = eval_.shoe();
        double ev = 0;
        hands_[hi].set_bet(2);
        for (int r = kTen; r >= kAce; --r) {
            if (shoe.count(r) == 0) continue;
            double wt = player_card_prob(shoe, eval_.up(), r);
            if (wt == 0) continue;  // impossible given no dealer natural
            shoe.remove(r);
            hands_[hi].add(r);
            ev += wt * finish(hi);
            hands_[hi].drop(r);
            shoe.restore(r);
        }
        hands_[hi].set_bet(1);
        return ev;
    }

    double keep_hitting(std::size_t hi) {
        Shoe& shoe = eval_.shoe();
        double ev = 0;
        for (int r = kTen; r >= kAce; --r) {
            if (shoe.count(r) == 0) continue;
            double wt = player_card_prob(shoe, eval_.up(), r);
            if (wt == 0) continue;  // impossible given no dealer natural
            shoe.remove(r);
            Hand& h = hands_[hi];
            h.add(r);
            if (!h.busted() && basic_hit(h, eval_.up(), rules_))
                ev += wt * keep_hitting(hi);
            else
                ev += wt * finish(hi);
            h.drop(r);
            shoe.restore(r);
        }
        return ev;
    }

    double finish(std::size_t hi) {
        if (hi + 1 < hands_.size()) return second_card(hi + 1);
        ++leaves_;
        DealerDist dist = eval_.dealer_dist();
        double total = 0;
        for (const Hand& h : hands_)
            total += h.bet() * stand_ev_for_score(h.busted() ? Score{22, false} : h.score(), dist);
        return total;
    }

    Evaluator eval_;
    int s_;
    const RuleSet& rules_;
    std::vector<Hand> hands_;
    std::uint64_t leaves_ = 0;
};

// Enumeration over pre-collected unique hands (the fast exact method).
class HandsSplit {
  public:
    HandsSplit(Shoe& shoe, int up, int s, const RuleSet& rules, DealerCache* cache,
               const HandCatalog& catalog)
        : eval_(shoe, up, rules, cache), s_(s), rules_(rules), catalog_(catalog),
          slots_(rules.max_hands) {}

    double run() {
        num_hands_ = 2;
        return eval_hand(0);
    }

    std::uint64_t leaves() const { return leaves_; }

  private:
    struct Slot {
        double avg_bet = 0;
        Score score{};
    };

    double eval_hand(int hi) {
        Shoe& shoe = eval_.shoe();
        double ev = 0;
        bool can_resplit = num_hands_ < rules_.max_hands && (s_ != kAce || rules_.resplit_aces);

        if (can_resplit && shoe.count(s_) > 0) {
            double wt = player_card_prob(shoe, eval_.up(), s_);
            if (wt > 0) {
            shoe.remove(s_);
            ++num_hands_;
            ev += wt * eval_hand(hi);
            --num_hands_;
            shoe.restore(s_);
            }
        }

        for (const PlayHand& ph : catalog_) {
            std::int64_t occ, bet_total;
            if (can_resplit && ph.splittable_occurrences > 0) {
                occ = ph.occurrences - ph.splittable_occurrences;
                bet_total = ph.total_bet - ph.total_bet_splittable;
            } else {
                occ = ph.occurrences;
                bet_total = ph.total_bet;
            }
            if (occ == 0) continue;

            double wt = static_cast<double>(occ);
            int taken = 0;
            bool feasible = true;
            for (uint8_t c : ph.removal_order) {
                if (shoe.count(c) == 0) {
                    feasible = false;
                    break;
                }
                wt *= player_card_prob(shoe, eval_.up(), c);
                shoe.remove(c);
                ++taken;
            }
            if (feasible && wt != 0) {
                slots_[hi] = {static_cast<double>(bet_total) / static_cast<double>(occ), ph.score};
                if (hi == num_hands_ - 1) {
                    ++leaves_;
                    DealerDist dist = eval_.dealer_dist();
                    double total = 0;
                    for (int j = 0; j < num_hands_; ++j)
                        total += slots_[j].avg_bet * stand_ev_for_score(slots_[j].score, dist);
                    ev += wt * total;
                } else {
                    ev += wt * eval_hand(hi + 1);
                }
            }
            for (int i = taken - 1; i >= 0; --i) shoe.restore(ph.removal_order[i]);
        }
        return ev;
    }

    Evaluator eval_;
    int s_;
    const RuleSet& rules_;
    const HandCatalog& catalog_;
    std::vector<Slot> slots_;
    int num_hands_ = 2;
    std::uint64_t leaves_ = 0;
};

}  // namespace detail

// Exact split EV by direct recursion over card draws. The
// shoe must have the up card and both split cards removed, with the cache
// baseline set at that point.
inline SplitResult exact_split_recursive(Shoe& shoe, int up, int s, const RuleSet& rules,
                                         DealerCache* cache) {
    auto t0 = std::chrono::steady_clock::now();
    detail::RecursiveSplit rs(shoe, up, s, rules, cache);
    SplitResult out;
    out.ev = rs.run();
    out.hands_enumerated = rs.leaves();
    out.elapsed = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return out;
}

// Exact split EV by looping over the unique-hands catalog. The catalog must
// have been built for the same (shoe, up, s, rules).
inline SplitResult exact_split_hands(Shoe& shoe, int up, int s, const RuleSet& rules,
                                     DealerCache* cache, const HandCatalog& catalog) {
    assert(!catalog.empty());
    auto t0 = std::chrono::steady_clock::now();
    detail::HandsSplit hs(shoe, up, s, rules, cache, catalog);
    SplitResult out;
    out.ev = hs.run();
    out.hands_enumerated = hs.leaves();
    out.unique_hands = catalog.size();
    out.elapsed = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return out;
}

// Variant sharing one dealer cache across every cell with the same up card:
// the baseline covers only the up card, so the split cards address into the
// cache like any other removal and sweeps over pairs reuse each other's work.
inline SplitResult exact_split_ev_shared(int up, int s, const RuleSet& rules, DealerCache& cache) {
    Shoe shoe = Shoe::fresh(rules.decks);
    shoe.remove(up);
    shoe.set_baseline();
    shoe.remove(s);
    shoe.remove(s);
    std::uint64_t generated = 0;
    HandCatalog catalog = enumerate_unique_hands(shoe, up, s, rules, &generated);
    SplitResult res = exact_split_hands(shoe, up, s, rules, &cache, catalog);
    res.hands_enumerated = generated;
    return res;
}

// Convenience: build shoe + catalog + cache and evaluate one (up, s) cell.
inline SplitResult exact_split_ev(int up, int s, const RuleSet& rules, int cache_depth = 16,
                                  bool compact_cache = false) {
    Shoe shoe = Shoe::fresh(rules.decks);
    shoe.remove(up);
    shoe.remove(s);
    shoe.remove(s);
    shoe.set_baseline();
    std::uint64_t generated = 0;
    HandCatalog catalog = enumerate_unique_hands(shoe, up, s, rules, &generated);
    DealerCache cache(cache_depth, compact_cache);
    SplitResult res = exact_split_hands(shoe, up, s, rules, &cache, catalog);
    res.hands_enumerated = generated;
    return res;
}

// Diagnostic h=1 mode: twice the EV of playing one hand seeded with s, the
// other split card also removed (the quantity behind the non-resplit
// approximation). See also pair_unsplit_ev for the played-as-dealt pair.
inline double split_ev_one_hand(Shoe& shoe, int up, int s, const RuleSet& rules,
                                DealerCache* cache) {
    Evaluator eval(shoe, up, rules, cache);
    double ev = 0;
    Hand h(s);
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

// EV of playing the dealt pair (s,s) without splitting, by basic strategy.
// This is the h=1 row of the resplit progression (e.g. standing on (T,T)).
inline double pair_unsplit_ev(int up, int s, const RuleSet& rules, DealerCache* cache = nullptr) {
    Shoe shoe = Shoe::fresh(rules.decks);
    shoe.remove(up);
    shoe.remove(s);
    shoe.remove(s);
    shoe.set_baseline();
    Evaluator eval(shoe, up, rules, cache);
    Hand h(s);
    h.add(s);
    return eval.play_ev(h, [&](const Hand& hh) { return play_action(hh, up, rules); });
}

}  // namespace bj
