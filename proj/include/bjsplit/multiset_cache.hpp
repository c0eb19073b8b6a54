#pragma once

#include <cassert>
#include <cstdint>
#include <limits>
#include <vector>

#include "bjsplit/cards.hpp"
#include "bjsplit/dealer.hpp"

namespace bj {

// Perfect addressing of sorted removal multisets. Values are 0..10 with 0
// meaning "no card"; sequences are non-increasing. The address of
// (x_1 >= ... >= x_j) is K_j = 1 + sum_i T_i(x_{j-i+1}) with T_1(N) = N and
// T_i(N) = T_i(N-1) + T_{i-1}(N) = C(N+i-1, i).
class AddressPlan {
  public:
    explicit AddressPlan(int j) : j_(j), t_((j + 1) * 12, 0) {
        assert(j >= 0);
        if (j >= 1)
            for (int n = 0; n <= 11; ++n) t_[1 * 12 + n] = n;
        for (int i = 2; i <= j; ++i)
            for (int n = 1; n <= 11; ++n) t_[i * 12 + n] = t_[i * 12 + n - 1] + t_[(i - 1) * 12 + n];
    }

    int depth() const { return j_; }

    std::int64_t t_value(int i, int n) const {
        assert(i >= 1 && i <= j_ && n >= 0 && n <= 11);
        return t_[i * 12 + n];
    }

    std::int64_t table_size() const { return j_ == 0 ? 0 : t_value(j_, 11); }

    // Address of a non-increasing sequence (shorter inputs are zero-padded).
    std::int64_t address(const int* x, int len) const {
        assert(len <= j_);
        std::int64_t k = 1;
        for (int p = 0; p < len; ++p) {
            assert(p == 0 || x[p] <= x[p - 1]);
            k += t_value(j_ - p, x[p]);
        }
        return k;
    }

    // Address from per-rank removal counts (the shoe's bookkeeping form).
    std::int64_t address_of_removals(const Shoe& shoe) const {
        std::int64_t k = 1;
        int p = 0;
        for (int r = 10; r >= 1; --r)
            for (int m = shoe.removed(r); m > 0; --m) k += t_value(j_ - p++, r);
        assert(p <= j_);
        return k;
    }

  private:
    int j_;
    std::vector<std::int64_t> t_;
};

// Standalone T_j(N) for table sizing; construction fails loudly on overflow.
inline std::int64_t t_value(int j, int n) {
    assert(j >= 1 && n >= 0 && n <= 11);
    std::vector<std::int64_t> row(n + 1);
    for (int m = 0; m <= n; ++m) row[m] = m;
    for (int i = 2; i <= j; ++i)
        for (int m = 1; m <= n; ++m) {
            assert(row[m - 1] <= std::numeric_limits<std::int64_t>::max() - row[m]);
            row[m] += row[m - 1];
        }
    return row[n];
}

// Memo table of dealer distributions addressed by the removal multiset
// relative to the shoe's baseline. One instance per worker and per up card.
class DealerCache {
  public:
    // depth 0 disables the cache entirely.
    explicit DealerCache(int depth, bool compact = false)
        : plan_(depth), compact_(compact) {
        std::int64_t slots = plan_.table_size();
        if (compact_)
            fslots_.assign(static_cast<std::size_t>(slots) * 6, kEmptyF);
        else
            dslots_.assign(static_cast<std::size_t>(slots) * 6, kEmptyD);
    }

    static std::int64_t bytes_for_depth(int depth, bool compact) {
        if (depth == 0) return 0;
        return t_value(depth, 11) * 6 * static_cast<std::int64_t>(compact ? sizeof(float) : sizeof(double));
    }

    // Largest depth whose slot table fits the byte budget.
    static int depth_for_budget(std::int64_t budget_bytes, bool compact, int max_depth = 25) {
        int best = 0;
        for (int j = 1; j <= max_depth; ++j) {
            if (bytes_for_depth(j, compact) > budget_bytes) break;
            best = j;
        }
        return best;
    }

    int depth() const { return plan_.depth(); }
    bool compact() const { return compact_; }
    std::int64_t slots() const { return plan_.table_size(); }
    std::int64_t bytes() const { return slots() * 6 * (compact_ ? sizeof(float) : sizeof(double)); }
    std::uint64_t hits() const { return hits_; }
    std::uint64_t misses() const { return misses_; }

    std::int64_t filled() const {
        std::int64_t n = 0;
        if (compact_) {
            for (std::size_t i = 0; i < fslots_.size(); i += 6) n += fslots_[i] != kEmptyF;
        } else {
            for (std::size_t i = 0; i < dslots_.size(); i += 6) n += dslots_[i] != kEmptyD;
        }
        return n;
    }

    template <typename Compute>
    DealerDist lookup_or_compute(const Shoe& shoe, Compute&& compute) {
        if (shoe.num_removed() > plan_.depth() || plan_.depth() == 0) return compute();
        std::size_t base = static_cast<std::size_t>(plan_.address_of_removals(shoe) - 1) * 6;
        DealerDist out;
        if (compact_) {
            if (fslots_[base] == kEmptyF) {
                ++misses_;
                out = compute();
                for (int i = 0; i < 6; ++i) fslots_[base + i] = static_cast<float>(out.d[i]);
            } else {
                ++hits_;
                for (int i = 0; i < 6; ++i) out.d[i] = fslots_[base + i];
            }
        } else {
            if (dslots_[base] == kEmptyD) {
                ++misses_;
                out = compute();
                for (int i = 0; i < 6; ++i) dslots_[base + i] = out.d[i];
            } else {
                ++hits_;
                for (int i = 0; i < 6; ++i) out.d[i] = dslots_[base + i];
            }
        }
        return out;
    }

  private:
    static constexpr double kEmptyD = -2.0;
    static constexpr float kEmptyF = -2.0f;

    AddressPlan plan_;
    bool compact_;
    std::vector<double> dslots_;
    std::vector<float> fslots_;
    std::uint64_t hits_ = 0;
    std::uint64_t misses_ = 0;
};

// Lookup index from hand compositions to catalog positions; -1 means unseen.
class HandIndex {
  public:
    explicit HandIndex(int max_len = kMaxHandCards)
        : plan_(max_len), entries_(static_cast<std::size_t>(plan_.table_size()), -1) {}

    std::int32_t& slot(const std::array<uint8_t, 11>& rank_counts) {
        std::int64_t k = 1;
        int p = 0;
        for (int r = 10; r >= 1; --r)
            for (int m = rank_counts[r]; m > 0; --m) k += plan_.t_value(plan_.depth() - p++, r);
        return entries_[static_cast<std::size_t>(k - 1)];
    }

  private:
    AddressPlan plan_;
    std::vector<std::int32_t> entries_;
};

}  // namespace bj
