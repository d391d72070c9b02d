#pragma once

#include <algorithm>
#include <cstdint>
#include <span>
#include <vector>

#include "gapidx/boundary_tables.hpp"
#include "gapidx/cluster_partition.hpp"
#include "gapidx/consecutive_finder.hpp"
#include "gapidx/range_successor.hpp"
#include "gapidx/tree_topology.hpp"

namespace gapidx {

/// A clustered tree over the text positions in `window`, plus the global
/// structures its queries run against. The tree is either the suffix tree
/// itself (global_id empty) or an induced subtree whose nodes map to
/// suffix-tree nodes through global_id.
struct ClusteredTreeRef {
    const Topology* topo = nullptr;
    const ClusterPartition* cp = nullptr;
    std::span<const std::int32_t> global_id;
    const Topology* suffix_tree = nullptr;
    const OrsIndex* ors = nullptr;
    const std::vector<std::int32_t>* isa = nullptr;
    Window window;

    /// Suffix-array interval of the suffix-tree node behind local node v.
    SaRange global_range(std::int32_t v) const noexcept {
        const std::int32_t g = global_id.empty() ? v : global_id[v];
        return {suffix_tree->lo[g], suffix_tree->hi[g]};
    }

    bool off_spine(std::int32_t v) const noexcept { return !cp->on_spine(v); }

    /// Leaves below v and not below `skip` (pass -1 to keep all), in text order.
    std::vector<std::int64_t> local_leaves(std::int32_t v, std::int32_t skip) const {
        std::vector<std::int32_t> nodes;
        for (std::int32_t k = topo->lo[v]; k <= topo->hi[v]; ++k) {
            if (skip >= 0 && topo->lo[skip] <= k && k <= topo->hi[skip]) {
                k = topo->hi[skip];
                continue;
            }
            nodes.push_back(topo->leaf_at[k]);
        }
        if (skip >= 0) {
            // All of these leaves sit in the cluster owning v; local rank is text order.
            std::sort(nodes.begin(), nodes.end(),
                      [&](std::int32_t x, std::int32_t y) { return cp->local_rank(x) < cp->local_rank(y); });
        } else {
            std::sort(nodes.begin(), nodes.end(),
                      [&](std::int32_t x, std::int32_t y) { return topo->leaf_pos[x] < topo->leaf_pos[y]; });
        }
        std::vector<std::int64_t> out;
        out.reserve(nodes.size());
        for (auto u : nodes) {
            const std::int64_t p = topo->leaf_pos[u];
            if (window.contains(p)) out.push_back(p);
        }
        return out;
    }
};

namespace detail {

/// Enumerates every pair inside the window when at least one locus is off
/// its spine: the whole subtree below it lies in one cluster. The sink
/// returns false to stop early. Returns false if neither locus is off-spine.
template <class Sink>
bool enumerate_off_spine(const ClusteredTreeRef& t, std::int32_t v1, std::int32_t v2, DistanceRange dist,
                         Sink&& sink) {
    const SaRange r1 = t.global_range(v1);
    const SaRange r2 = t.global_range(v2);
    if (t.off_spine(v1)) {
        for (auto i : t.local_leaves(v1, -1)) {
            auto pair = find_from_p1(*t.ors, r1, r2, i, t.window);
            if (pair && dist.contains(pair->distance()) && !sink(*pair)) break;
        }
        return true;
    }
    if (t.off_spine(v2)) {
        for (auto j : t.local_leaves(v2, -1)) {
            auto pair = find_from_p2(*t.ors, r1, r2, j, t.window);
            if (pair && dist.contains(pair->distance()) && !sink(*pair)) break;
        }
        return true;
    }
    return false;
}

/// Both loci on spines: every pair (i, j) with i a cluster-local leaf of v1
/// or j a cluster-local leaf of v2. A pair found from the second side is
/// kept only when i lies below b1, so none is reported twice.
template <class Sink>
void enumerate_cluster_local(const ClusteredTreeRef& t, std::int32_t v1, std::int32_t v2, DistanceRange dist,
                             Sink&& sink) {
    const SaRange r1 = t.global_range(v1);
    const SaRange r2 = t.global_range(v2);
    const std::int32_t b1 = t.cp->lower_boundary(v1);
    const std::int32_t b2 = t.cp->lower_boundary(v2);
    const SaRange rb1 = t.global_range(b1);
    for (auto i : t.local_leaves(v1, b1)) {
        auto pair = find_from_p1(*t.ors, r1, r2, i, t.window);
        if (pair && dist.contains(pair->distance()) && !sink(*pair)) return;
    }
    for (auto j : t.local_leaves(v2, b2)) {
        auto pair = find_from_p2(*t.ors, r1, r2, j, t.window);
        if (pair && dist.contains(pair->distance()) && rb1.contains((*t.isa)[pair->i]) && !sink(*pair)) return;
    }
}

/// Number of consecutive (P1, P2) pairs with i below b1 and j below b2 and
/// distance in dist (dist.hi <= table cap): the table count for (b1, b2)
/// minus the (b1, b2) pairs that enclose a cluster-local occurrence.
inline std::int64_t count_below_boundaries(const ClusteredTreeRef& t, const BoundaryPairTable& table,
                                           std::int32_t v1, std::int32_t v2, DistanceRange dist) {
    const std::int32_t b1 = t.cp->lower_boundary(v1);
    const std::int32_t b2 = t.cp->lower_boundary(v2);
    std::int64_t c = table.in_range(t.cp->boundary_index(b1), t.cp->boundary_index(b2), dist.lo, dist.hi);
    if (c == 0) return 0;
    const SaRange rb1 = t.global_range(b1);
    const SaRange rb2 = t.global_range(b2);
    const auto& ors = *t.ors;
    const Window w = t.window;

    const auto l1 = t.local_leaves(v1, b1);
    const auto l2 = t.local_leaves(v2, b2);
    std::int64_t last_i = -1, last_j = -1;
    std::size_t x = 0, y = 0;
    while (x < l1.size() || y < l2.size()) {
        const bool from_first = y == l2.size() || (x < l1.size() && l1[x] <= l2[y]);
        const std::int64_t e = from_first ? l1[x++] : l2[y++];
        if (last_i < e && e < last_j) continue;  // same enclosing pair as before
        std::optional<std::int64_t> ip, jp;
        if (from_first) {
            jp = next_occurrence(ors, rb2, e, w);
            if (!jp) continue;
            ip = prev_occurrence(ors, rb1, *jp, w);
            if (!ip || *ip >= e) continue;
            if (next_occurrence(ors, rb2, *ip, w) != jp) continue;
        } else {
            ip = prev_occurrence(ors, rb1, e, w);
            if (!ip) continue;
            jp = next_occurrence(ors, rb2, *ip, w);
            if (!jp || *jp <= e) continue;
            if (prev_occurrence(ors, rb1, *jp, w) != ip) continue;
        }
        last_i = *ip;
        last_j = *jp;
        if (dist.contains(*jp - *ip)) --c;
    }
    return c;
}

/// Counts (or, with stop_at_first, detects) pairs inside the window with
/// distance in dist, dist.hi <= table cap.
inline std::int64_t count_small(const ClusteredTreeRef& t, const BoundaryPairTable& table, std::int32_t v1,
                                std::int32_t v2, DistanceRange dist, bool stop_at_first) {
    if (dist.empty()) return 0;
    std::int64_t found = 0;
    auto sink = [&](const ConsecutivePair&) {
        ++found;
        return !stop_at_first;
    };
    if (enumerate_off_spine(t, v1, v2, dist, sink)) return found;
    enumerate_cluster_local(t, v1, v2, dist, sink);
    if (stop_at_first && found > 0) return found;
    return found + count_below_boundaries(t, table, v1, v2, dist);
}

}  // namespace detail
}  // namespace gapidx
