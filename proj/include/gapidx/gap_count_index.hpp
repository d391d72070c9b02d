#pragma once

#include <cstdint>
#include <optional>
#include <string_view>

#include "gapidx/boundary_tables.hpp"
#include "gapidx/cluster_partition.hpp"
#include "gapidx/consecutive_finder.hpp"
#include "gapidx/range_successor.hpp"
#include "gapidx/small_distance.hpp"
#include "gapidx/text_index.hpp"

namespace gapidx {

/// floor(cbrt(x)) for x >= 0, exact.
inline std::int64_t integer_cbrt(std::int64_t x) {
    std::int64_t r = 0;
    while ((r + 1) * (r + 1) * (r + 1) <= x) ++r;
    return r;
}

/// floor(sqrt(x)) for x >= 0, exact.
inline std::int64_t integer_sqrt(std::int64_t x) {
    std::int64_t r = 0;
    while ((r + 1) * (r + 1) <= x) ++r;
    return r;
}

/// Cluster size giving floor(n / tau) == floor(cbrt(n)) for n >= 8; n itself
/// below that.
inline std::int64_t default_count_tau(std::int64_t n) {
    if (n < 8) return n < 1 ? 1 : n;
    return n / integer_cbrt(n);
}

namespace detail {

/// Pairs inside t.window with distance in dist: distances above the table
/// cap by a cap-sized block sweep, the rest by the clustered case analysis.
inline std::int64_t count_in_tree(const ClusteredTreeRef& t, const BoundaryPairTable& table, std::int32_t v1,
                                  std::int32_t v2, DistanceRange dist, bool stop_at_first) {
    if (dist.empty()) return 0;
    const std::int64_t cap = table.cap();
    std::int64_t total = 0;
    const DistanceRange large{std::max<std::int64_t>(dist.lo, cap + 1), dist.hi};
    if (!large.empty()) {
        sweep_segments(*t.ors, t.global_range(v1), t.global_range(v2), t.window, std::max<std::int64_t>(cap, 1),
                       [&](const ConsecutivePair& p) {
                           if (large.contains(p.distance())) ++total;
                           return !(stop_at_first && total > 0);
                       });
        if (stop_at_first && total > 0) return total;
    }
    const DistanceRange small{dist.lo, std::min<std::int64_t>(dist.hi, cap)};
    return total + count_small(t, table, v1, v2, small, stop_at_first);
}

}  // namespace detail

/// Existence and counting of consecutive occurrences with distance in
/// [alpha, beta].
///
/// Distances above cap = floor(n / tau) are found by sweeping the text in
/// cap-sized blocks; shorter ones come from the cluster partition of the
/// suffix tree and the boundary-pair prefix tables.
class CountIndex {
public:
    CountIndex() = default;

    static CountIndex build(Text text, std::optional<std::int64_t> tau = std::nullopt) {
        return from_text_index(TextIndex::build(std::move(text)), tau);
    }

    static CountIndex from_text_index(TextIndex ti, std::optional<std::int64_t> tau = std::nullopt) {
        const std::int64_t n = ti.n();
        std::int64_t t = tau.value_or(default_count_tau(n));
        if (t < 1 || (n >= 1 && t > n)) throw error(errc::bad_tau, "tau must lie in [1, n]");
        ClusterPartition cp(ti.tree(), t);
        const auto cap = static_cast<std::int32_t>(n >= 1 ? n / t : 0);
        BoundaryPairTable tables(ti.tree(), cp, Window{0, n - 1}, n, cap);
        return assemble(std::move(ti), std::move(cp), std::move(tables));
    }

    /// Reassembles a stored index; the partition and tables must belong to ti.
    static CountIndex assemble(TextIndex ti, ClusterPartition cp, BoundaryPairTable tables) {
        CountIndex ci;
        ci.text_ = std::move(ti);
        ci.ors_ = OrsIndex(ci.text_.sa());
        ci.cp_ = std::move(cp);
        ci.tables_ = std::move(tables);
        return ci;
    }

    std::int64_t count(std::string_view p1, std::string_view p2, std::int64_t alpha, std::int64_t beta) const {
        return run(p1, p2, alpha, beta, false);
    }
    bool exists(std::string_view p1, std::string_view p2, std::int64_t alpha, std::int64_t beta) const {
        return run(p1, p2, alpha, beta, true) > 0;
    }
    std::int64_t count(const GapQuery& q) const { return count(q.p1, q.p2, q.alpha, q.beta); }
    bool exists(const GapQuery& q) const { return exists(q.p1, q.p2, q.alpha, q.beta); }

    const TextIndex& text_index() const noexcept { return text_; }
    const OrsIndex& ors() const noexcept { return ors_; }
    const ClusterPartition& partition() const noexcept { return cp_; }
    const BoundaryPairTable& tables() const noexcept { return tables_; }
    std::int64_t n() const noexcept { return text_.n(); }
    std::int64_t tau() const noexcept { return cp_.tau(); }
    /// Largest distance answered from the tables.
    std::int64_t cap() const noexcept { return tables_.cap(); }

    ClusteredTreeRef tree_ref() const {
        ClusteredTreeRef r;
        r.topo = &text_.tree();
        r.cp = &cp_;
        r.suffix_tree = &text_.tree();
        r.ors = &ors_;
        r.isa = &text_.isa();
        r.window = Window{0, n() - 1};
        return r;
    }

private:
    std::int64_t run(std::string_view p1, std::string_view p2, std::int64_t alpha, std::int64_t beta,
                     bool stop_at_first) const {
        require_pattern(p1);
        require_pattern(p2);
        const DistanceRange dist = DistanceRange::clamp(alpha, beta, n());
        if (dist.empty()) return 0;
        auto l1 = text_.locus(p1);
        auto l2 = text_.locus(p2);
        if (!l1 || !l2) return 0;
        return detail::count_in_tree(tree_ref(), tables_, l1->node, l2->node, dist, stop_at_first);
    }

    TextIndex text_;
    OrsIndex ors_;
    ClusterPartition cp_;
    BoundaryPairTable tables_;
};

}  // namespace gapidx
