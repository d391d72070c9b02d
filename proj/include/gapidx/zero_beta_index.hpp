#pragma once

#include <algorithm>
#include <cstdint>
#include <string_view>

#include "gapidx/boundary_tables.hpp"
#include "gapidx/consecutive_finder.hpp"
#include "gapidx/gap_count_index.hpp"
#include "gapidx/induced_decomposition.hpp"
#include "gapidx/report_index.hpp"
#include "gapidx/small_distance.hpp"

namespace gapidx {

/// One-sided layer of an induced tree: tau = floor(sqrt(positions)) and a
/// minimum-distance table per boundary pair.
struct MinDistLayer {
    using Table = MinDistTable;
    static std::int64_t tau_for(std::int64_t positions) { return std::max<std::int64_t>(1, integer_sqrt(positions)); }
    static Table make_table(const Topology& t, const ClusterPartition& cp, Window w, std::int64_t text_len,
                            std::int64_t, std::int64_t) {
        return Table(t, cp, w, text_len);
    }
};

/// Queries restricted to distances in [1, beta].
///
/// A consecutive pair of the lower boundary strings with distance d implies
/// a consecutive pair of the patterns with distance at most d, so a small
/// enough table minimum settles existence; otherwise only cluster-local
/// pairs can qualify. Reporting recurses through the decomposition while the
/// table minimum stays within beta.
class ZeroBetaIndex {
public:
    using Decomposition = InducedDecomposition<MinDistLayer>;

    ZeroBetaIndex() = default;

    /// opt.max_levels = 1 builds the existence layer alone.
    static ZeroBetaIndex build(Text text, DecompositionOptions opt = {}) {
        auto ti = TextIndex::build(std::move(text));
        auto dec = Decomposition(ti, opt);
        return assemble(std::move(ti), std::move(dec));
    }

    static ZeroBetaIndex assemble(TextIndex ti, Decomposition dec) {
        ZeroBetaIndex z;
        z.text_ = std::move(ti);
        z.ors_ = OrsIndex(z.text_.sa());
        z.dec_ = std::move(dec);
        return z;
    }

    bool exists(std::string_view p1, std::string_view p2, std::int64_t beta) const {
        require_pattern(p1);
        require_pattern(p2);
        const DistanceRange dist = DistanceRange::clamp(1, beta, n());
        auto l1 = text_.locus(p1);
        auto l2 = text_.locus(p2);
        if (dist.empty() || !l1 || !l2) return false;
        const auto& tree = dec_.tree_of(dec_.root());
        const auto ref = tree.ref(text_, ors_);
        bool found = false;
        auto sink = [&](const ConsecutivePair&) {
            found = true;
            return false;
        };
        if (detail::enumerate_off_spine(ref, l1->node, l2->node, dist, sink)) return found;
        if (boundary_min(tree, l1->node, l2->node) <= dist.hi) return true;
        detail::enumerate_cluster_local(ref, l1->node, l2->node, dist, sink);
        return found;
    }

    PairList report(std::string_view p1, std::string_view p2, std::int64_t beta, ReportStats* stats = nullptr) const {
        require_pattern(p1);
        require_pattern(p2);
        PairList out;
        const DistanceRange dist = DistanceRange::clamp(1, beta, n());
        auto l1 = text_.locus(p1);
        auto l2 = text_.locus(p2);
        if (dist.empty() || !l1 || !l2) return out;
        ReportStats local;
        const auto& root = dec_.root();
        const auto ref = dec_.tree_of(root).ref(text_, ors_);
        descend(root, l1->node, l2->node, ref.global_range(l1->node), ref.global_range(l2->node), dist, out, local);
        std::sort(out.begin(), out.end());
        require_unique(out);
        if (stats) *stats = local;
        return out;
    }

    std::int64_t count(std::string_view p1, std::string_view p2, std::int64_t beta) const {
        return static_cast<std::int64_t>(report(p1, p2, beta).size());
    }

    const TextIndex& text_index() const noexcept { return text_; }
    const OrsIndex& ors() const noexcept { return ors_; }
    const Decomposition& decomposition() const noexcept { return dec_; }
    std::int64_t n() const noexcept { return text_.n(); }

private:
    static std::int64_t boundary_min(const InducedTree<MinDistLayer>& tree, std::int32_t v1, std::int32_t v2) {
        const auto b1 = tree.cp.boundary_index(tree.cp.lower_boundary(v1));
        const auto b2 = tree.cp.boundary_index(tree.cp.lower_boundary(v2));
        const auto m = tree.table.at(b1, b2);
        return m == MinDistTable::kNone ? INT64_MAX : static_cast<std::int64_t>(m);
    }

    void descend(const Decomposition::Node& d, std::int32_t v1, std::int32_t v2, SaRange g1, SaRange g2,
                 DistanceRange dist, PairList& out, ReportStats& stats) const {
        const Window w{d.interval.a, std::min<std::int64_t>(d.interval.b, n() - 1)};
        auto emit = [&](const ConsecutivePair& p) {
            if (dist.contains(p.distance())) out.push_back(p);
            return true;
        };
        if (d.tree < 0 || d.child[0] < 0) {
            scan_window(ors_, g1, g2, w, emit);
            return;
        }
        const auto& tree = dec_.tree_of(d);
        const auto ref = tree.ref(text_, ors_);
        if (detail::enumerate_off_spine(ref, v1, v2, dist, emit)) return;
        if (boundary_min(tree, v1, v2) > dist.hi) {
            detail::enumerate_cluster_local(ref, v1, v2, dist, emit);
            return;
        }
        ++stats.visits;

        const std::int64_t c = (d.interval.a + d.interval.b) / 2;
        if (auto p = straddling_pair(ors_, g1, g2, w, c)) emit(*p);
        for (int side = 0; side < 2; ++side) {
            const auto& half = dec_.nodes()[d.child[side]];
            if (half.tree < 0) {
                descend(half, -1, -1, g1, g2, dist, out, stats);
                continue;
            }
            const std::int32_t u1 = tree.succ[side][v1];
            const std::int32_t u2 = tree.succ[side][v2];
            if (u1 < 0 || u2 < 0) continue;
            const auto sub_ref = dec_.tree_of(half).ref(text_, ors_);
            descend(half, u1, u2, sub_ref.global_range(u1), sub_ref.global_range(u2), dist, out, stats);
        }
    }

    TextIndex text_;
    OrsIndex ors_;
    Decomposition dec_;
};

}  // namespace gapidx
