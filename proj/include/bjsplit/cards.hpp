#pragma once

#include <array>
#include <cassert>
#include <cstdint>

namespace bj {

// Ranks are 1..10; 1 is the ace, 10 covers tens and all face cards.
constexpr int kAce = 1;
constexpr int kTen = 10;
constexpr int kMaxHandCards = 14;

struct Score {
    int total = 0;
    bool soft = false;
};

// Remaining cards by rank, with removal bookkeeping relative to a baseline.
// The baseline is whatever the shoe held when set_baseline() was last called;
// removed_counts tracks net removals since then and feeds cache addressing.
class Shoe {
  public:
    static Shoe fresh(int decks) {
        assert(decks >= 1 && decks <= 8);
        Shoe s;
        s.decks_ = decks;
        for (int r = 1; r <= 10; ++r) s.counts_[r] = (r == kTen ? 16 : 4) * decks;
        s.total_ = 52 * decks;
        return s;
    }

    int count(int rank) const { return counts_[rank]; }
    int total() const { return total_; }
    int decks() const { return decks_; }
    int max_count(int rank) const { return (rank == kTen ? 16 : 4) * decks_; }

    bool remove(int rank) {
        assert(rank >= 1 && rank <= 10);
        if (counts_[rank] == 0) return false;
        --counts_[rank];
        --total_;
        ++removed_[rank];
        ++num_removed_;
        return true;
    }

    void restore(int rank) {
        assert(rank >= 1 && rank <= 10);
        assert(counts_[rank] < max_count(rank));
        ++counts_[rank];
        ++total_;
        --removed_[rank];
        --num_removed_;
    }

    void set_baseline() {
        removed_.fill(0);
        num_removed_ = 0;
    }

    int removed(int rank) const { return removed_[rank]; }
    int num_removed() const { return num_removed_; }

    bool operator==(const Shoe& o) const {
        return counts_ == o.counts_ && total_ == o.total_ && decks_ == o.decks_;
    }

  private:
    std::array<int, 11> counts_{};
    std::array<int, 11> removed_{};
    int total_ = 0;
    int num_removed_ = 0;
    int decks_ = 1;
};

// One player hand. Aces are stored as rank 1; softness is derived when scoring.
class Hand {
  public:
    Hand() = default;
    explicit Hand(int first_card) { start(first_card); }

    void start(int card) {
        counts_.fill(0);
        num_cards_ = 0;
        hard_sum_ = 0;
        aces_ = 0;
        first_card_ = card;
        bet_ = 1;
        add(card);
    }

    void add(int card) {
        assert(card >= 1 && card <= 10);
        assert(num_cards_ < kMaxHandCards);
        ++counts_[card];
        ++num_cards_;
        hard_sum_ += card;
        if (card == kAce) ++aces_;
    }

    void drop(int card) {
        assert(counts_[card] > 0);
        --counts_[card];
        --num_cards_;
        hard_sum_ -= card;
        if (card == kAce) --aces_;
    }

    Score score() const {
        assert(num_cards_ > 0);
        if (aces_ > 0 && hard_sum_ + 10 <= 21) return {hard_sum_ + 10, true};
        return {hard_sum_, false};
    }

    bool busted() const { return hard_sum_ > 21; }
    int num_cards() const { return num_cards_; }
    int count(int rank) const { return counts_[rank]; }
    int first_card() const { return first_card_; }

    int bet() const { return bet_; }
    void set_bet(int b) { bet_ = b; }

    // Exact two-card composition test, order-insensitive.
    bool is_two(int a, int b) const {
        if (num_cards_ != 2) return false;
        if (a == b) return counts_[a] == 2;
        return counts_[a] == 1 && counts_[b] == 1;
    }

    bool is_pair() const {
        if (num_cards_ != 2) return false;
        return counts_[first_card_] == 2;
    }

    const std::array<uint8_t, 11>& rank_counts() const { return counts_; }

  private:
    std::array<uint8_t, 11> counts_{};
    int num_cards_ = 0;
    int hard_sum_ = 0;
    int aces_ = 0;
    int first_card_ = 0;
    int bet_ = 1;
};

// Stand expectation bookkeeping only needs the score, so expose a direct form.
inline Score score_of_counts(const std::array<uint8_t, 11>& counts) {
    int hard = 0, aces = counts[kAce];
    for (int r = 1; r <= 10; ++r) hard += r * counts[r];
    if (aces > 0 && hard + 10 <= 21) return {hard + 10, true};
    return {hard, false};
}

}  // namespace bj
