#pragma once

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <optional>
#include <vector>

#include "gapidx/error.hpp"
#include "gapidx/tree_topology.hpp"

namespace gapidx {

struct Cluster {
    std::int32_t top = 0;
    std::int32_t bottom = -1;  // -1 for a leaf cluster
    std::vector<std::int32_t> nodes;

    bool is_path() const noexcept { return bottom >= 0; }
};

struct SpineInfo {
    bool on_spine = false;
    std::optional<std::int32_t> lower_boundary;
    std::optional<std::int32_t> local_rank;
};

/// Edge-disjoint partition of a tree into connected clusters with at most
/// `capacity()` nodes and at most two boundary nodes each.
///
/// Construction marks the root, then bottom-up every internal node whose
/// pending unmarked region reaches capacity-1 nodes, then closes the marked
/// set under lowest common ancestors. The marked nodes are exactly the
/// boundary nodes. Each unmarked region hangs below one marked node and, by
/// LCA closure, touches at most one marked node beneath it; regions that do
/// become path clusters, the others are packed first-fit-decreasing into the
/// spare room of clusters sharing the same top node.
///
/// Per-node metadata refers to the cluster owning the edge to the node's
/// parent. The root owns no edge and is reported as off-spine.
///
/// The cluster count is O(N/tau); kCountConstant is the constant the tests
/// assert in count <= K * N / tau.
class ClusterPartition {
public:
    static constexpr int kCountConstant = 8;

    ClusterPartition() = default;

    ClusterPartition(const Topology& t, std::int64_t tau) {
        if (tau < 1) throw error(errc::bad_tau, "tau must be at least 1");
        tau_ = static_cast<std::int32_t>(std::min<std::int64_t>(tau, INT32_MAX));
        capacity_ = std::max<std::int32_t>(tau_, 2);
        build(t);
    }

    std::int32_t tau() const noexcept { return tau_; }
    /// Node limit actually enforced; a cluster needs two nodes to hold an edge.
    std::int32_t capacity() const noexcept { return capacity_; }
    const std::vector<Cluster>& clusters() const noexcept { return clusters_; }
    const std::vector<std::int32_t>& boundary_nodes() const noexcept { return boundary_; }
    bool is_boundary(std::int32_t v) const noexcept { return boundary_index_[v] >= 0; }
    /// Dense index of a boundary node in boundary_nodes(), -1 otherwise.
    std::int32_t boundary_index(std::int32_t v) const noexcept { return boundary_index_[v]; }
    std::int32_t owner(std::int32_t v) const noexcept { return owner_[v]; }
    bool on_spine(std::int32_t v) const noexcept { return lower_[v] >= 0; }
    std::int32_t lower_boundary(std::int32_t v) const noexcept { return lower_[v]; }
    std::int32_t local_rank(std::int32_t v) const noexcept { return local_rank_[v]; }

    SpineInfo spine_metadata(std::int32_t v) const {
        SpineInfo s;
        s.on_spine = lower_[v] >= 0;
        if (s.on_spine) s.lower_boundary = lower_[v];
        if (local_rank_[v] >= 0) s.local_rank = local_rank_[v];
        return s;
    }

    /// Raw per-node arrays, used by serialization.
    struct Raw {
        std::int32_t tau = 1;
        std::vector<std::int32_t> cluster_top, cluster_bottom, cluster_offsets, cluster_nodes;
        std::vector<std::int32_t> owner, lower, local_rank, boundary;
    };

    Raw to_raw() const {
        Raw r;
        r.tau = tau_;
        r.cluster_offsets.push_back(0);
        for (const auto& c : clusters_) {
            r.cluster_top.push_back(c.top);
            r.cluster_bottom.push_back(c.bottom);
            r.cluster_nodes.insert(r.cluster_nodes.end(), c.nodes.begin(), c.nodes.end());
            r.cluster_offsets.push_back(static_cast<std::int32_t>(r.cluster_nodes.size()));
        }
        r.owner = owner_;
        r.lower = lower_;
        r.local_rank = local_rank_;
        r.boundary = boundary_;
        return r;
    }

    static ClusterPartition from_raw(Raw r) {
        ClusterPartition cp;
        cp.tau_ = r.tau;
        cp.capacity_ = std::max<std::int32_t>(r.tau, 2);
        const auto count = r.cluster_top.size();
        if (r.cluster_bottom.size() != count || r.cluster_offsets.size() != count + 1) {
            throw error(errc::format, "cluster arrays disagree in length");
        }
        for (std::size_t k = 0; k < count; ++k) {
            Cluster c;
            c.top = r.cluster_top[k];
            c.bottom = r.cluster_bottom[k];
            c.nodes.assign(r.cluster_nodes.begin() + r.cluster_offsets[k],
                           r.cluster_nodes.begin() + r.cluster_offsets[k + 1]);
            cp.clusters_.push_back(std::move(c));
        }
        const auto nodes = r.owner.size();
        if (r.lower.size() != nodes || r.local_rank.size() != nodes) {
            throw error(errc::format, "cluster metadata arrays disagree in length");
        }
        cp.owner_ = std::move(r.owner);
        cp.lower_ = std::move(r.lower);
        cp.local_rank_ = std::move(r.local_rank);
        cp.boundary_ = std::move(r.boundary);
        cp.boundary_index_.assign(nodes, -1);
        for (std::size_t k = 0; k < cp.boundary_.size(); ++k) {
            const auto b = cp.boundary_[k];
            if (b < 0 || static_cast<std::size_t>(b) >= nodes) throw error(errc::format, "bad boundary node");
            cp.boundary_index_[b] = static_cast<std::int32_t>(k);
        }
        return cp;
    }

private:
    void build(const Topology& t) {
        const std::int32_t n = t.size();
        owner_.assign(n, -1);
        lower_.assign(n, -1);
        local_rank_.assign(n, -1);
        boundary_index_.assign(n, -1);
        if (n == 0) return;
        if (n == 1) {
            clusters_.push_back(Cluster{0, -1, {0}});
            boundary_.push_back(0);
            boundary_index_[0] = 0;
            if (t.is_leaf(0)) local_rank_[0] = 0;
            return;
        }

        std::vector<char> marked(n, 0);
        std::vector<std::int32_t> acc(n, 1);
        for (std::int32_t v = n - 1; v >= 0; --v) {
            for (auto c : t.children(v)) {
                if (!marked[c]) acc[v] += acc[c];
            }
            if (v == 0 || (!t.is_leaf(v) && acc[v] >= capacity_ - 1)) marked[v] = 1;
        }
        std::vector<char> below(n, 0);
        for (std::int32_t v = n - 1; v >= 0; --v) {
            int branches = 0;
            for (auto c : t.children(v)) branches += below[c] ? 1 : 0;
            if (branches >= 2) marked[v] = 1;
            below[v] = marked[v] || branches > 0;
        }

        // Regions of unmarked nodes, identified by their topmost node.
        std::vector<std::int32_t> head(n, -1);
        std::vector<std::int32_t> region_size(n, 0);
        std::vector<std::int32_t> region_bottom(n, -1);
        for (std::int32_t v = 1; v < n; ++v) {
            if (marked[v]) continue;
            const std::int32_t p = t.parent[v];
            head[v] = marked[p] ? v : head[p];
            ++region_size[head[v]];
        }
        for (std::int32_t v = 1; v < n; ++v) {
            if (marked[v] && !marked[t.parent[v]]) region_bottom[head[t.parent[v]]] = v;
        }
        std::vector<std::vector<std::int32_t>> region_nodes(n);
        for (std::int32_t v = 1; v < n; ++v) {
            if (!marked[v]) region_nodes[head[v]].push_back(v);
        }

        auto assign_region = [&](std::int32_t h, std::int32_t cid) {
            for (auto u : region_nodes[h]) {
                owner_[u] = cid;
                clusters_[cid].nodes.push_back(u);
            }
        };

        for (std::int32_t v = 0; v < n; ++v) {
            if (!marked[v]) continue;
            std::vector<std::int32_t> roomy;  // clusters topped at v that can take pieces
            std::vector<std::int32_t> room;
            std::vector<std::int32_t> pieces;
            for (auto c : t.children(v)) {
                if (marked[c]) {
                    const auto cid = static_cast<std::int32_t>(clusters_.size());
                    clusters_.push_back(Cluster{v, c, {v, c}});
                    owner_[c] = cid;
                    roomy.push_back(cid);
                    room.push_back(capacity_ - 2);
                } else if (region_bottom[c] >= 0) {
                    const auto cid = static_cast<std::int32_t>(clusters_.size());
                    clusters_.push_back(Cluster{v, region_bottom[c], {v}});
                    assign_region(c, cid);
                    clusters_[cid].nodes.push_back(region_bottom[c]);
                    owner_[region_bottom[c]] = cid;
                    roomy.push_back(cid);
                    room.push_back(capacity_ - 2 - region_size[c]);
                } else {
                    pieces.push_back(c);
                }
            }
            std::stable_sort(pieces.begin(), pieces.end(), [&](std::int32_t x, std::int32_t y) {
                return region_size[x] > region_size[y];
            });
            for (auto c : pieces) {
                std::size_t slot = 0;
                while (slot < roomy.size() && room[slot] < region_size[c]) ++slot;
                if (slot == roomy.size()) {
                    roomy.push_back(static_cast<std::int32_t>(clusters_.size()));
                    room.push_back(capacity_ - 1);
                    clusters_.push_back(Cluster{v, -1, {v}});
                }
                assign_region(c, roomy[slot]);
                room[slot] -= region_size[c];
            }
        }

        for (std::int32_t v = 0; v < n; ++v) {
            if (marked[v]) {
                boundary_index_[v] = static_cast<std::int32_t>(boundary_.size());
                boundary_.push_back(v);
            }
        }
        for (const auto& c : clusters_) {
            if (!c.is_path()) continue;
            for (std::int32_t u = c.bottom; u != c.top; u = t.parent[u]) lower_[u] = c.bottom;
        }
        std::vector<std::vector<std::int32_t>> leaves(clusters_.size());
        for (std::int32_t v = 1; v < n; ++v) {
            if (t.is_leaf(v)) leaves[owner_[v]].push_back(v);
        }
        for (auto& list : leaves) {
            std::sort(list.begin(), list.end(),
                      [&](std::int32_t x, std::int32_t y) { return t.leaf_pos[x] < t.leaf_pos[y]; });
            for (std::size_t k = 0; k < list.size(); ++k) local_rank_[list[k]] = static_cast<std::int32_t>(k);
        }
    }

    std::int32_t tau_ = 1;
    std::int32_t capacity_ = 2;
    std::vector<Cluster> clusters_;
    std::vector<std::int32_t> boundary_;
    std::vector<std::int32_t> boundary_index_;
    std::vector<std::int32_t> owner_;
    std::vector<std::int32_t> lower_;
    std::vector<std::int32_t> local_rank_;
};

}  // namespace gapidx
