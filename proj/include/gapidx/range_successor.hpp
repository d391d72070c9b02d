#pragma once

#include <atomic>
#include <bit>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "gapidx/error.hpp"

namespace gapidx {

namespace detail {

/// Plain bit vector with constant-time rank.
class RankBits {
public:
    RankBits() = default;
    explicit RankBits(std::size_t bits) : words_((bits + 63) / 64 + 1, 0), size_(bits) {}

    void set(std::size_t i) { words_[i / 64] |= std::uint64_t{1} << (i % 64); }

    void finalize() {
        cum_.assign(words_.size() + 1, 0);
        for (std::size_t w = 0; w < words_.size(); ++w) {
            cum_[w + 1] = cum_[w] + static_cast<std::uint32_t>(std::popcount(words_[w]));
        }
    }

    /// Number of set bits in [0, i).
    std::uint32_t rank1(std::size_t i) const noexcept {
        const std::uint64_t mask = (std::uint64_t{1} << (i % 64)) - 1;
        return cum_[i / 64] + static_cast<std::uint32_t>(std::popcount(words_[i / 64] & mask));
    }
    std::uint32_t rank0(std::size_t i) const noexcept { return static_cast<std::uint32_t>(i) - rank1(i); }

private:
    std::vector<std::uint64_t> words_;
    std::vector<std::uint32_t> cum_;
    std::size_t size_ = 0;
};

/// Copyable wrapper so indexes holding a counter keep value semantics.
class QueryCounter {
public:
    QueryCounter() = default;
    QueryCounter(const QueryCounter& o) : value_(o.get()) {}
    QueryCounter& operator=(const QueryCounter& o) {
        value_.store(o.get(), std::memory_order_relaxed);
        return *this;
    }
    void bump() const noexcept { value_.fetch_add(1, std::memory_order_relaxed); }
    std::uint64_t get() const noexcept { return value_.load(std::memory_order_relaxed); }
    void reset() const noexcept { value_.store(0, std::memory_order_relaxed); }

private:
    mutable std::atomic<std::uint64_t> value_{0};
};

}  // namespace detail

/// Orthogonal range successor / predecessor over an array of distinct
/// non-negative integers, backed by a wavelet matrix over the value bits.
///
/// Every query costs O(log U) rank operations. `query_count()` counts answered
/// queries since the last reset; the count is what the complexity checks read.
class OrsIndex {
public:
    OrsIndex() = default;

    explicit OrsIndex(std::span<const std::int32_t> values) : size_(values.size()) {
        std::int64_t max_value = -1;
        for (auto v : values) {
            if (v < 0) throw error(errc::bad_range, "values must be non-negative");
            max_value = std::max<std::int64_t>(max_value, v);
        }
        if (max_value >= 0) {
            std::vector<char> seen(static_cast<std::size_t>(max_value) + 1, 0);
            for (auto v : values) {
                if (seen[v]) throw error(errc::duplicate_value, "values must be distinct");
                seen[v] = 1;
            }
        }
        levels_ = max_value <= 0 ? 1 : std::bit_width(static_cast<std::uint64_t>(max_value));
        bits_.reserve(levels_);
        zeros_.reserve(levels_);
        std::vector<std::int32_t> cur(values.begin(), values.end());
        std::vector<std::int32_t> next(cur.size());
        for (int level = 0; level < levels_; ++level) {
            const int shift = levels_ - 1 - level;
            detail::RankBits bv(cur.size());
            std::size_t z = 0;
            for (std::size_t k = 0; k < cur.size(); ++k) {
                if ((cur[k] >> shift) & 1) bv.set(k);
                else next[z++] = cur[k];
            }
            std::size_t o = z;
            for (auto v : cur) {
                if ((v >> shift) & 1) next[o++] = v;
            }
            bv.finalize();
            bits_.push_back(std::move(bv));
            zeros_.push_back(static_cast<std::uint32_t>(z));
            cur.swap(next);
        }
    }

    std::size_t size() const noexcept { return size_; }
    int levels() const noexcept { return levels_; }

    /// Minimum y > x stored at some index in [lo, hi].
    std::optional<std::int64_t> range_successor(std::int64_t lo, std::int64_t hi, std::int64_t x,
                                                int* steps = nullptr) const {
        check(lo, hi);
        counter_.bump();
        return successor_impl(lo, hi + 1, x, steps);
    }

    /// Maximum y < x stored at some index in [lo, hi].
    std::optional<std::int64_t> range_predecessor(std::int64_t lo, std::int64_t hi, std::int64_t x,
                                                  int* steps = nullptr) const {
        check(lo, hi);
        counter_.bump();
        return predecessor_impl(lo, hi + 1, x, steps);
    }

    std::uint64_t query_count() const noexcept { return counter_.get(); }
    void reset_count() const noexcept { counter_.reset(); }

private:
    struct Span {
        std::uint32_t l;
        std::uint32_t r;
        bool empty() const noexcept { return l >= r; }
    };

    void check(std::int64_t lo, std::int64_t hi) const {
        if (size_ == 0) return;
        if (lo < 0 || lo > hi || hi >= static_cast<std::int64_t>(size_)) {
            throw error(errc::bad_range, "index range out of bounds");
        }
    }

    Span down(int level, Span s, int bit) const noexcept {
        const auto& bv = bits_[level];
        if (bit == 0) return {bv.rank0(s.l), bv.rank0(s.r)};
        return {zeros_[level] + bv.rank1(s.l), zeros_[level] + bv.rank1(s.r)};
    }

    std::optional<std::int64_t> successor_impl(std::int64_t lo, std::int64_t end, std::int64_t x,
                                               int* steps) const {
        int visits = 0;
        auto finish = [&](std::optional<std::int64_t> r) {
            if (steps) *steps = visits;
            return r;
        };
        if (size_ == 0) return finish(std::nullopt);
        const std::int64_t universe = std::int64_t{1} << levels_;
        std::int64_t target = x < 0 ? 0 : x + 1;
        if (target >= universe) return finish(std::nullopt);

        Span s{static_cast<std::uint32_t>(lo), static_cast<std::uint32_t>(end)};
        // Deepest point where the path to `target` went left while the right
        // sibling was non-empty.
        int alt_level = -1;
        Span alt_span{};
        std::int64_t alt_prefix = 0;
        std::int64_t prefix = 0;
        int level = 0;
        for (; level < levels_; ++level) {
            ++visits;
            const int bit = static_cast<int>((target >> (levels_ - 1 - level)) & 1);
            if (bit == 0) {
                Span right = down(level, s, 1);
                if (!right.empty()) {
                    alt_level = level + 1;
                    alt_span = right;
                    alt_prefix = (prefix << 1) | 1;
                }
            }
            s = down(level, s, bit);
            prefix = (prefix << 1) | bit;
            if (s.empty()) break;
        }
        if (level == levels_ && !s.empty()) return finish(target);
        if (alt_level < 0) return finish(std::nullopt);
        s = alt_span;
        prefix = alt_prefix;
        for (level = alt_level; level < levels_; ++level) {
            ++visits;
            Span left = down(level, s, 0);
            if (!left.empty()) {
                s = left;
                prefix <<= 1;
            } else {
                s = down(level, s, 1);
                prefix = (prefix << 1) | 1;
            }
        }
        return finish(prefix);
    }

    std::optional<std::int64_t> predecessor_impl(std::int64_t lo, std::int64_t end, std::int64_t x,
                                                 int* steps) const {
        int visits = 0;
        auto finish = [&](std::optional<std::int64_t> r) {
            if (steps) *steps = visits;
            return r;
        };
        if (size_ == 0 || x <= 0) return finish(std::nullopt);
        const std::int64_t universe = std::int64_t{1} << levels_;
        std::int64_t target = x - 1 >= universe ? universe - 1 : x - 1;

        Span s{static_cast<std::uint32_t>(lo), static_cast<std::uint32_t>(end)};
        int alt_level = -1;
        Span alt_span{};
        std::int64_t alt_prefix = 0;
        std::int64_t prefix = 0;
        int level = 0;
        for (; level < levels_; ++level) {
            ++visits;
            const int bit = static_cast<int>((target >> (levels_ - 1 - level)) & 1);
            if (bit == 1) {
                Span left = down(level, s, 0);
                if (!left.empty()) {
                    alt_level = level + 1;
                    alt_span = left;
                    alt_prefix = prefix << 1;
                }
            }
            s = down(level, s, bit);
            prefix = (prefix << 1) | bit;
            if (s.empty()) break;
        }
        if (level == levels_ && !s.empty()) return finish(target);
        if (alt_level < 0) return finish(std::nullopt);
        s = alt_span;
        prefix = alt_prefix;
        for (level = alt_level; level < levels_; ++level) {
            ++visits;
            Span right = down(level, s, 1);
            if (!right.empty()) {
                s = right;
                prefix = (prefix << 1) | 1;
            } else {
                s = down(level, s, 0);
                prefix <<= 1;
            }
        }
        return finish(prefix);
    }

    std::size_t size_ = 0;
    int levels_ = 1;
    std::vector<detail::RankBits> bits_;
    std::vector<std::uint32_t> zeros_;
    detail::QueryCounter counter_;
};

}  // namespace gapidx
