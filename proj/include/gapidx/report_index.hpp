#pragma once

#include <algorithm>
#include <cstdint>
#include <stdexcept>
#include <string_view>

#include "gapidx/boundary_tables.hpp"
#include "gapidx/consecutive_finder.hpp"
#include "gapidx/gap_count_index.hpp"
#include "gapidx/induced_decomposition.hpp"
#include "gapidx/small_distance.hpp"

namespace gapidx {

/// Count layer of an induced tree: cap = floor(cbrt(positions)).
struct CountLayer {
    using Table = BoundaryPairTable;
    static std::int64_t tau_for(std::int64_t positions) { return default_count_tau(positions); }
    static Table make_table(const Topology& t, const ClusterPartition& cp, Window w, std::int64_t text_len,
                            std::int64_t positions, std::int64_t tau) {
        return Table(t, cp, w, text_len, static_cast<std::int32_t>(positions / tau));
    }
};

struct ReportStats {
    /// Decomposition nodes whose existence check came back positive.
    std::int64_t visits = 0;
};

/// Throws if a sorted pair list holds a repeated pair.
inline void require_unique(const PairList& pairs) {
    if (std::adjacent_find(pairs.begin(), pairs.end()) != pairs.end()) {
        throw std::logic_error("report produced a duplicate pair");
    }
}

/// Reporting of consecutive occurrences with distance in [alpha, beta].
///
/// At a decomposition node with distance bound hi <= cap: an off-spine locus
/// is enumerated directly; otherwise the node's count layer decides whether
/// any pair with distance in [alpha, hi] exists. Only then is the pair
/// straddling the midpoint checked, each half swept for distances above its
/// own cap, and both halves recursed into with hi lowered to that cap. The
/// root sweep handles distances above the root cap.
class ReportIndex {
public:
    using Decomposition = InducedDecomposition<CountLayer>;

    ReportIndex() = default;

    static ReportIndex build(Text text, DecompositionOptions opt = {}) {
        auto ti = TextIndex::build(std::move(text));
        auto dec = Decomposition(ti, opt);
        return assemble(std::move(ti), std::move(dec));
    }

    static ReportIndex assemble(TextIndex ti, Decomposition dec) {
        ReportIndex r;
        r.text_ = std::move(ti);
        r.ors_ = OrsIndex(r.text_.sa());
        r.dec_ = std::move(dec);
        return r;
    }

    PairList report(std::string_view p1, std::string_view p2, std::int64_t alpha, std::int64_t beta,
                    ReportStats* stats = nullptr) const {
        require_pattern(p1);
        require_pattern(p2);
        PairList out;
        const DistanceRange dist = DistanceRange::clamp(alpha, beta, n());
        auto l1 = text_.locus(p1);
        auto l2 = text_.locus(p2);
        if (dist.empty() || !l1 || !l2) return out;

        ReportStats local;
        const auto& root = dec_.root();
        const auto& tree = dec_.tree_of(root);
        const auto ref = tree.ref(text_, ors_);
        const std::int64_t cap = tree.table.cap();
        if (dist.hi > cap) {
            sweep_segments(ors_, ref.global_range(l1->node), ref.global_range(l2->node), ref.window,
                           std::max<std::int64_t>(cap, 1), [&](const ConsecutivePair& p) {
                               if (p.distance() > cap && dist.contains(p.distance())) out.push_back(p);
                               return true;
                           });
        }
        descend(root, l1->node, l2->node, ref.global_range(l1->node), ref.global_range(l2->node), dist.lo,
                std::min(dist.hi, cap), out, local);
        std::sort(out.begin(), out.end());
        require_unique(out);
        if (stats) *stats = local;
        return out;
    }

    std::int64_t count(std::string_view p1, std::string_view p2, std::int64_t alpha, std::int64_t beta) const {
        return run_root(p1, p2, alpha, beta, false);
    }
    bool exists(std::string_view p1, std::string_view p2, std::int64_t alpha, std::int64_t beta) const {
        return run_root(p1, p2, alpha, beta, true) > 0;
    }

    const TextIndex& text_index() const noexcept { return text_; }
    const OrsIndex& ors() const noexcept { return ors_; }
    const Decomposition& decomposition() const noexcept { return dec_; }
    std::int64_t n() const noexcept { return text_.n(); }

private:
    std::int64_t run_root(std::string_view p1, std::string_view p2, std::int64_t alpha, std::int64_t beta,
                          bool stop_at_first) const {
        require_pattern(p1);
        require_pattern(p2);
        const DistanceRange dist = DistanceRange::clamp(alpha, beta, n());
        auto l1 = text_.locus(p1);
        auto l2 = text_.locus(p2);
        if (dist.empty() || !l1 || !l2) return 0;
        const auto& tree = dec_.tree_of(dec_.root());
        return detail::count_in_tree(tree.ref(text_, ors_), tree.table, l1->node, l2->node, dist, stop_at_first);
    }

    /// Emits every pair inside d's interval with distance in [lo, hi];
    /// hi never exceeds d's cap when d is materialized. g1, g2 are global
    /// intervals with the same occurrences inside the interval as v1, v2.
    void descend(const Decomposition::Node& d, std::int32_t v1, std::int32_t v2, SaRange g1, SaRange g2,
                 std::int64_t lo, std::int64_t hi, PairList& out, ReportStats& stats) const {
        if (lo > hi) return;
        const DistanceRange dist{lo, hi};
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
        if (detail::count_small(ref, tree.table, v1, v2, dist, true) == 0) return;
        ++stats.visits;

        const std::int64_t c = (d.interval.a + d.interval.b) / 2;
        if (auto p = straddling_pair(ors_, g1, g2, w, c)) emit(*p);
        for (int side = 0; side < 2; ++side) {
            const auto& half = dec_.nodes()[d.child[side]];
            if (half.tree < 0) {
                descend(half, -1, -1, g1, g2, lo, hi, out, stats);
                continue;
            }
            const std::int32_t u1 = tree.succ[side][v1];
            const std::int32_t u2 = tree.succ[side][v2];
            if (u1 < 0 || u2 < 0) continue;
            const auto& sub = dec_.tree_of(half);
            const auto sub_ref = sub.ref(text_, ors_);
            const std::int64_t sub_cap = sub.table.cap();
            const SaRange h1 = sub_ref.global_range(u1), h2 = sub_ref.global_range(u2);
            if (hi > sub_cap) {
                sweep_segments(ors_, h1, h2, sub_ref.window, std::max<std::int64_t>(sub_cap, 1),
                               [&](const ConsecutivePair& p) {
                                   if (p.distance() > sub_cap) emit(p);
                                   return true;
                               });
            }
            descend(half, u1, u2, h1, h2, lo, std::min(hi, sub_cap), out, stats);
        }
    }

    TextIndex text_;
    OrsIndex ors_;
    Decomposition dec_;
};

}  // namespace gapidx
