#pragma once

#include <algorithm>
#include <array>
#include <cstdint>
#include <numeric>
#include <vector>

#include "gapidx/cluster_partition.hpp"
#include "gapidx/range_successor.hpp"
#include "gapidx/small_distance.hpp"
#include "gapidx/text_index.hpp"
#include "gapidx/tree_topology.hpp"

namespace gapidx {

/// Compact trie over the suffix-tree leaves whose positions fall in
/// `interval`, with a clustered layer of type Layer on top.
///
/// Leaf ranks follow the global suffix array, so the leaf sequence is the
/// cropped suffix array. Every node keeps the id of the suffix-tree node it
/// stands for; queries use that node's global interval against the shared
/// range-successor index, windowed to the interval.
template <class Layer>
struct InducedTree {
    Window interval;
    std::int32_t level = 0;
    Topology topo;
    std::vector<std::int32_t> global_id;
    /// succ[side][v]: closest descendant-or-self of v present in the child
    /// tree on that side (0 = left, 1 = right); -1 when absent or when that
    /// child is not materialized.
    std::array<std::vector<std::int32_t>, 2> succ;
    ClusterPartition cp;
    typename Layer::Table table;

    /// Text positions in the interval; the sentinel position never counts.
    static std::int64_t positions(Window iv, std::int64_t n) {
        return std::max<std::int64_t>(0, std::min(iv.b, n - 1) - iv.a + 1);
    }

    std::vector<std::int32_t> cropped_sa() const {
        std::vector<std::int32_t> out(topo.leaf_count());
        for (std::int32_t k = 0; k < topo.leaf_count(); ++k) out[k] = topo.leaf_position_at(k);
        return out;
    }

    ClusteredTreeRef ref(const TextIndex& ti, const OrsIndex& ors) const {
        ClusteredTreeRef r;
        r.topo = &topo;
        r.cp = &cp;
        r.global_id = global_id;
        r.suffix_tree = &ti.tree();
        r.ors = &ors;
        r.isa = &ti.isa();
        r.window = Window{interval.a, std::min<std::int64_t>(interval.b, ti.n() - 1)};
        return r;
    }
};

struct DecompositionOptions {
    /// Intervals with at most this many positions are not materialized;
    /// queries scan them through the global index instead.
    std::int64_t small_cutoff = 64;
    /// Stop after this many levels (1 = root tree only).
    std::int32_t max_levels = INT32_MAX;
};

/// Balanced binary hierarchy of induced trees. The root covers [0, n], the
/// sentinel leaf included; an interval [a,b] with b - a > 1 splits at
/// c = floor((a+b)/2) into [a,c] and [c+1,b].
template <class Layer>
class InducedDecomposition {
public:
    struct Node {
        Window interval;
        std::int32_t level = 0;
        std::int32_t tree = -1;  // index into trees(), -1 when not materialized
        std::array<std::int32_t, 2> child{-1, -1};
    };

    InducedDecomposition() = default;

    InducedDecomposition(const TextIndex& ti, DecompositionOptions opt) : opt_(opt) {
        const std::int64_t n = ti.n();
        nodes_.push_back(Node{Window{0, n}, 0, -1, {-1, -1}});
        trees_.push_back(root_tree(ti));
        nodes_[0].tree = 0;
        finish_layer(trees_[0], n);
        for (std::size_t id = 0; id < nodes_.size(); ++id) {
            const Window iv = nodes_[id].interval;
            if (iv.b - iv.a <= 1 || nodes_[id].level + 1 >= opt_.max_levels) continue;
            const std::int64_t c = (iv.a + iv.b) / 2;
            const std::array<Window, 2> halves{Window{iv.a, c}, Window{c + 1, iv.b}};
            for (int side = 0; side < 2; ++side) {
                Node child{halves[side], nodes_[id].level + 1, -1, {-1, -1}};
                const auto parent_tree = nodes_[id].tree;
                if (parent_tree >= 0 && halves[side].length() > opt_.small_cutoff) {
                    child.tree = static_cast<std::int32_t>(trees_.size());
                    trees_.push_back(induce(trees_[parent_tree], halves[side], side, child.level));
                    finish_layer(trees_.back(), n);
                }
                nodes_[id].child[side] = static_cast<std::int32_t>(nodes_.size());
                nodes_.push_back(child);
            }
        }
    }

    const std::vector<Node>& nodes() const noexcept { return nodes_; }
    const std::vector<InducedTree<Layer>>& trees() const noexcept { return trees_; }
    const Node& root() const noexcept { return nodes_[0]; }
    const InducedTree<Layer>& tree_of(const Node& d) const noexcept { return trees_[d.tree]; }
    const DecompositionOptions& options() const noexcept { return opt_; }

    /// Number of levels in the hierarchy, counting unmaterialized intervals.
    std::int32_t depth() const noexcept {
        std::int32_t d = 0;
        for (const auto& x : nodes_) d = std::max(d, x.level + 1);
        return d;
    }

    /// Total node count over all materialized trees.
    std::int64_t total_tree_nodes() const noexcept {
        std::int64_t s = 0;
        for (const auto& t : trees_) s += t.topo.size();
        return s;
    }

    std::size_t table_entries() const noexcept {
        std::size_t s = 0;
        for (const auto& t : trees_) s += t.table.entry_count();
        return s;
    }

    /// Successor of local node v of the tree behind node d in its child on
    /// `side`; -1 when absent.
    std::int32_t successor_locus(const Node& d, std::int32_t v, int side) const noexcept {
        if (d.tree < 0) return -1;
        return trees_[d.tree].succ[side][v];
    }

    /// Reassembly from stored parts; trees must be listed in materialization order.
    static InducedDecomposition assemble(DecompositionOptions opt, std::vector<Node> nodes,
                                         std::vector<InducedTree<Layer>> trees) {
        InducedDecomposition d;
        d.opt_ = opt;
        d.nodes_ = std::move(nodes);
        d.trees_ = std::move(trees);
        return d;
    }

private:
    static InducedTree<Layer> root_tree(const TextIndex& ti) {
        InducedTree<Layer> t;
        t.interval = Window{0, ti.n()};
        t.topo = ti.tree();
        t.global_id.resize(t.topo.size());
        std::iota(t.global_id.begin(), t.global_id.end(), 0);
        return t;
    }

    void finish_layer(InducedTree<Layer>& t, std::int64_t n) const {
        const std::int64_t positions = InducedTree<Layer>::positions(t.interval, n);
        const std::int64_t tau = Layer::tau_for(positions);
        t.cp = ClusterPartition(t.topo, tau);
        t.table = Layer::make_table(t.topo, t.cp, Window{t.interval.a, std::min(t.interval.b, n - 1)}, n,
                                    positions, tau);
        t.succ[0].assign(t.topo.size(), -1);
        t.succ[1].assign(t.topo.size(), -1);
    }

    /// Induces the child tree on `iv` from its parent and fills the
    /// parent's successor pointers for that side.
    static InducedTree<Layer> induce(InducedTree<Layer>& parent, Window iv, int side, std::int32_t level) {
        const Topology& p = parent.topo;
        const std::int32_t count = p.size();
        std::vector<char> present(count, 0), kept(count, 0);
        std::vector<std::int32_t> succ(count, -1);
        for (std::int32_t v = count - 1; v >= 0; --v) {
            if (p.is_leaf(v)) {
                present[v] = kept[v] = iv.contains(p.leaf_pos[v]);
                if (kept[v]) succ[v] = v;
                continue;
            }
            std::int32_t live = 0, only = -1;
            for (auto c : p.children(v)) {
                if (present[c]) {
                    ++live;
                    only = c;
                }
            }
            present[v] = live > 0;
            kept[v] = live >= 2;
            succ[v] = kept[v] ? v : (live == 1 ? succ[only] : -1);
        }

        // Kept nodes in parent preorder; parent link is the nearest kept ancestor.
        std::vector<std::int32_t> compact(count, -1), up(count, -1);
        std::vector<std::int32_t> cparent, cleaf_pos, cleaf_rank, origin;
        std::int32_t croot = -1, leaves = 0;
        std::vector<std::int32_t> rank_of(count, -1);
        for (std::int32_t k = 0; k < p.leaf_count(); ++k) {
            const auto leaf = p.leaf_at[k];
            if (kept[leaf]) rank_of[leaf] = leaves++;
        }
        for (std::int32_t v = 0; v < count; ++v) {
            if (v > 0) up[v] = kept[p.parent[v]] ? p.parent[v] : up[p.parent[v]];
            if (!kept[v]) continue;
            compact[v] = static_cast<std::int32_t>(origin.size());
            origin.push_back(v);
            cparent.push_back(up[v] >= 0 ? compact[up[v]] : -1);
            cleaf_pos.push_back(p.leaf_pos[v]);
            cleaf_rank.push_back(rank_of[v]);
            if (up[v] < 0) croot = compact[v];
        }

        InducedTree<Layer> t;
        t.interval = iv;
        t.level = level;
        if (croot < 0) return t;  // unreachable for non-empty intervals of a suffix tree
        auto [topo, remap] = detail::assemble_topology(cparent, cleaf_pos, cleaf_rank, croot);
        t.topo = std::move(topo);
        t.global_id.assign(t.topo.size(), -1);
        for (std::size_t k = 0; k < origin.size(); ++k) t.global_id[remap[k]] = parent.global_id[origin[k]];
        auto& out = parent.succ[side];
        out.assign(count, -1);
        for (std::int32_t v = 0; v < count; ++v) {
            if (succ[v] >= 0) out[v] = remap[compact[succ[v]]];
        }
        return t;
    }

    DecompositionOptions opt_;
    std::vector<Node> nodes_;
    std::vector<InducedTree<Layer>> trees_;
};

}  // namespace gapidx
