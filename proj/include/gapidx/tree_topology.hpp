#pragma once

#include <algorithm>
#include <cstdint>
#include <span>
#include <utility>
#include <vector>

namespace gapidx {

/// Rooted ordered tree over leaves that carry text positions.
///
/// Nodes are numbered in preorder, so the root is 0 and parent[v] < v for
/// every other node. Leaves are ranked left to right; lo/hi give the inclusive
/// rank interval of the leaves below each node. For a suffix tree the leaf
/// ranks are suffix-array ranks.
struct Topology {
    std::vector<std::int32_t> parent;
    std::vector<std::int32_t> child_begin;
    std::vector<std::int32_t> child_list;
    std::vector<std::int32_t> lo;
    std::vector<std::int32_t> hi;
    std::vector<std::int32_t> leaf_pos;  // -1 for internal nodes
    std::vector<std::int32_t> leaf_at;   // rank -> leaf node

    std::int32_t size() const noexcept { return static_cast<std::int32_t>(parent.size()); }
    std::int32_t leaf_count() const noexcept { return static_cast<std::int32_t>(leaf_at.size()); }
    bool is_leaf(std::int32_t v) const noexcept { return leaf_pos[v] >= 0; }

    std::span<const std::int32_t> children(std::int32_t v) const noexcept {
        return {child_list.data() + child_begin[v],
                static_cast<std::size_t>(child_begin[v + 1] - child_begin[v])};
    }

    std::int32_t leaf_position_at(std::int32_t rank) const noexcept {
        return leaf_pos[leaf_at[rank]];
    }
};

namespace detail {

/// Renumbers an arbitrary parent-pointer forest rooted at `root` into a
/// preorder Topology. Children are ordered by their smallest leaf rank.
/// Returns the topology and the old-to-new id map.
inline std::pair<Topology, std::vector<std::int32_t>> assemble_topology(
    const std::vector<std::int32_t>& parent, const std::vector<std::int32_t>& leaf_pos,
    const std::vector<std::int32_t>& leaf_rank, std::int32_t root) {
    const auto count = static_cast<std::int32_t>(parent.size());
    std::vector<std::int32_t> first_rank(count, INT32_MAX);
    std::vector<std::int32_t> last_rank(count, -1);
    std::vector<std::int32_t> degree(count, 0);
    for (std::int32_t v = 0; v < count; ++v) {
        if (v != root) ++degree[parent[v]];
        if (leaf_rank[v] >= 0) first_rank[v] = last_rank[v] = leaf_rank[v];
    }
    std::vector<std::int32_t> offs(count + 1, 0);
    for (std::int32_t v = 0; v < count; ++v) offs[v + 1] = offs[v] + degree[v];
    std::vector<std::int32_t> kids(offs[count]);
    std::vector<std::int32_t> fill(offs.begin(), offs.end() - 1);
    for (std::int32_t v = 0; v < count; ++v) {
        if (v != root) kids[fill[parent[v]]++] = v;
    }

    // Postorder pass for rank intervals, then sort siblings.
    std::vector<std::int32_t> order;
    order.reserve(count);
    std::vector<std::int32_t> stack{root};
    while (!stack.empty()) {
        std::int32_t v = stack.back();
        stack.pop_back();
        order.push_back(v);
        for (std::int32_t k = offs[v]; k < offs[v + 1]; ++k) stack.push_back(kids[k]);
    }
    for (auto it = order.rbegin(); it != order.rend(); ++it) {
        std::int32_t v = *it;
        if (v == root) continue;
        std::int32_t p = parent[v];
        first_rank[p] = std::min(first_rank[p], first_rank[v]);
        last_rank[p] = std::max(last_rank[p], last_rank[v]);
    }
    for (std::int32_t v = 0; v < count; ++v) {
        std::sort(kids.begin() + offs[v], kids.begin() + offs[v + 1],
                  [&](std::int32_t x, std::int32_t y) { return first_rank[x] < first_rank[y]; });
    }

    Topology t;
    std::vector<std::int32_t> remap(count, -1);
    t.parent.reserve(count);
    stack.assign(1, root);
    std::int32_t leaves = 0;
    while (!stack.empty()) {
        std::int32_t v = stack.back();
        stack.pop_back();
        std::int32_t id = static_cast<std::int32_t>(t.parent.size());
        remap[v] = id;
        t.parent.push_back(v == root ? -1 : remap[parent[v]]);
        t.lo.push_back(first_rank[v]);
        t.hi.push_back(last_rank[v]);
        t.leaf_pos.push_back(leaf_pos[v]);
        if (leaf_rank[v] >= 0) ++leaves;
        for (std::int32_t k = offs[v + 1] - 1; k >= offs[v]; --k) stack.push_back(kids[k]);
    }
    const auto n_nodes = static_cast<std::int32_t>(t.parent.size());
    t.child_begin.assign(n_nodes + 1, 0);
    for (std::int32_t v = 1; v < n_nodes; ++v) ++t.child_begin[t.parent[v] + 1];
    for (std::int32_t v = 0; v < n_nodes; ++v) t.child_begin[v + 1] += t.child_begin[v];
    t.child_list.assign(t.child_begin[n_nodes], 0);
    fill.assign(t.child_begin.begin(), t.child_begin.end() - 1);
    // Preorder ids make siblings appear in left-to-right order here.
    for (std::int32_t v = 1; v < n_nodes; ++v) t.child_list[fill[t.parent[v]]++] = v;
    t.leaf_at.assign(leaves, -1);
    for (std::int32_t v = 0; v < n_nodes; ++v) {
        if (t.leaf_pos[v] >= 0) t.leaf_at[t.lo[v]] = v;
    }
    return {std::move(t), std::move(remap)};
}

}  // namespace detail
}  // namespace gapidx
