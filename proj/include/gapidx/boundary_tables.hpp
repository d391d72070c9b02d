#pragma once

#include <algorithm>
#include <cstdint>
#include <limits>
#include <vector>

#include "gapidx/cluster_partition.hpp"
#include "gapidx/tree_topology.hpp"
#include "gapidx/types.hpp"

namespace gapidx {

namespace detail {

/// Sorted text positions of the leaves below v that lie in w and are real
/// text positions (< text_len).
inline std::vector<std::int32_t> leaf_positions(const Topology& t, std::int32_t v, Window w,
                                                std::int64_t text_len) {
    std::vector<std::int32_t> out;
    out.reserve(t.hi[v] - t.lo[v] + 1);
    for (std::int32_t k = t.lo[v]; k <= t.hi[v]; ++k) {
        const std::int32_t p = t.leaf_position_at(k);
        if (p < text_len && w.contains(p)) out.push_back(p);
    }
    std::sort(out.begin(), out.end());
    return out;
}

/// Calls f(i, j) for every consecutive pair of the two sorted occurrence
/// lists: adjacent entries of the merged list where the left one is in `a`
/// and the right one in `b`.
template <class F>
void for_each_consecutive(const std::vector<std::int32_t>& a, const std::vector<std::int32_t>& b, F&& f) {
    std::size_t x = 0, y = 0;
    std::int64_t prev = -1;
    bool prev_in_a = false;
    while (x < a.size() || y < b.size()) {
        std::int32_t p;
        if (y == b.size() || (x < a.size() && a[x] < b[y])) p = a[x];
        else p = b[y];
        const bool in_a = x < a.size() && a[x] == p;
        const bool in_b = y < b.size() && b[y] == p;
        if (in_a) ++x;
        if (in_b) ++y;
        if (prev >= 0 && prev_in_a && in_b) f(prev, static_cast<std::int64_t>(p));
        prev = p;
        prev_in_a = in_a;
    }
}

}  // namespace detail

/// Prefix counts M(u,v)[x] over every ordered pair of boundary nodes:
/// the number of consecutive occurrences of str(u), str(v) with distance
/// at most x, for 0 <= x <= cap. M(u,v)[0] = 0.
class BoundaryPairTable {
public:
    BoundaryPairTable() = default;

    BoundaryPairTable(const Topology& t, const ClusterPartition& cp, Window w, std::int64_t text_len,
                      std::int32_t cap)
        : cap_(cap), count_(static_cast<std::int32_t>(cp.boundary_nodes().size())) {
        const auto stride = static_cast<std::size_t>(cap_) + 1;
        entries_.assign(static_cast<std::size_t>(count_) * count_ * stride, 0);
        std::vector<std::vector<std::int32_t>> occ;
        occ.reserve(count_);
        for (auto b : cp.boundary_nodes()) occ.push_back(detail::leaf_positions(t, b, w, text_len));
        for (std::int32_t u = 0; u < count_; ++u) {
            for (std::int32_t v = 0; v < count_; ++v) {
                std::uint32_t* row = entries_.data() + (static_cast<std::size_t>(u) * count_ + v) * stride;
                detail::for_each_consecutive(occ[u], occ[v], [&](std::int64_t i, std::int64_t j) {
                    if (j - i <= cap_) ++row[j - i];
                });
                for (std::size_t x = 1; x < stride; ++x) row[x] += row[x - 1];
            }
        }
    }

    std::int32_t cap() const noexcept { return cap_; }
    std::int32_t boundary_count() const noexcept { return count_; }
    std::size_t entry_count() const noexcept { return entries_.size(); }

    std::uint32_t at(std::int32_t u, std::int32_t v, std::int64_t x) const noexcept {
        if (x <= 0) return 0;
        if (x > cap_) x = cap_;
        return entries_[(static_cast<std::size_t>(u) * count_ + v) * (static_cast<std::size_t>(cap_) + 1) + x];
    }

    /// Number of consecutive occurrences with distance in [lo, hi], hi <= cap.
    std::uint32_t in_range(std::int32_t u, std::int32_t v, std::int64_t lo, std::int64_t hi) const noexcept {
        if (lo < 1) lo = 1;
        if (hi > cap_) hi = cap_;
        if (lo > hi) return 0;
        return at(u, v, hi) - at(u, v, lo - 1);
    }

    const std::vector<std::uint32_t>& raw() const noexcept { return entries_; }
    static BoundaryPairTable from_raw(std::int32_t cap, std::int32_t count, std::vector<std::uint32_t> entries) {
        if (entries.size() != static_cast<std::size_t>(count) * count * (static_cast<std::size_t>(cap) + 1)) {
            throw error(errc::format, "table size does not match its shape");
        }
        BoundaryPairTable t;
        t.cap_ = cap;
        t.count_ = count;
        t.entries_ = std::move(entries);
        return t;
    }

private:
    std::int32_t cap_ = 0;
    std::int32_t count_ = 0;
    std::vector<std::uint32_t> entries_;
};

/// Smallest distance of a consecutive occurrence of str(u), str(v) for
/// every ordered pair of boundary nodes; kNone when there is none.
class MinDistTable {
public:
    static constexpr std::uint32_t kNone = std::numeric_limits<std::uint32_t>::max();

    MinDistTable() = default;

    MinDistTable(const Topology& t, const ClusterPartition& cp, Window w, std::int64_t text_len)
        : count_(static_cast<std::int32_t>(cp.boundary_nodes().size())) {
        entries_.assign(static_cast<std::size_t>(count_) * count_, kNone);
        std::vector<std::vector<std::int32_t>> occ;
        occ.reserve(count_);
        for (auto b : cp.boundary_nodes()) occ.push_back(detail::leaf_positions(t, b, w, text_len));
        for (std::int32_t u = 0; u < count_; ++u) {
            for (std::int32_t v = 0; v < count_; ++v) {
                auto& best = entries_[static_cast<std::size_t>(u) * count_ + v];
                detail::for_each_consecutive(occ[u], occ[v], [&](std::int64_t i, std::int64_t j) {
                    best = std::min(best, static_cast<std::uint32_t>(j - i));
                });
            }
        }
    }

    std::int32_t boundary_count() const noexcept { return count_; }
    std::size_t entry_count() const noexcept { return entries_.size(); }
    std::uint32_t at(std::int32_t u, std::int32_t v) const noexcept {
        return entries_[static_cast<std::size_t>(u) * count_ + v];
    }

    const std::vector<std::uint32_t>& raw() const noexcept { return entries_; }
    static MinDistTable from_raw(std::int32_t count, std::vector<std::uint32_t> entries) {
        if (entries.size() != static_cast<std::size_t>(count) * count) {
            throw error(errc::format, "table size does not match its shape");
        }
        MinDistTable t;
        t.count_ = count;
        t.entries_ = std::move(entries);
        return t;
    }

private:
    std::int32_t count_ = 0;
    std::vector<std::uint32_t> entries_;
};

}  // namespace gapidx
