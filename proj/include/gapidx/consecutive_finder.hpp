#pragma once

#include <cstdint>
#include <limits>
#include <optional>

#include "gapidx/range_successor.hpp"
#include "gapidx/types.hpp"

namespace gapidx {

inline constexpr Window kUnbounded{0, std::numeric_limits<std::int32_t>::max()};

/// Smallest occurrence in `r` strictly after x that lies inside w.
inline std::optional<std::int64_t> next_occurrence(const OrsIndex& ors, SaRange r, std::int64_t x,
                                                   Window w = kUnbounded) {
    if (r.empty()) return std::nullopt;
    auto y = ors.range_successor(r.lo, r.hi, x);
    if (y && *y <= w.b) return y;
    return std::nullopt;
}

/// Largest occurrence in `r` strictly before x that lies inside w.
inline std::optional<std::int64_t> prev_occurrence(const OrsIndex& ors, SaRange r, std::int64_t x,
                                                   Window w = kUnbounded) {
    if (r.empty()) return std::nullopt;
    auto y = ors.range_predecessor(r.lo, r.hi, x);
    if (y && *y >= w.a) return y;
    return std::nullopt;
}

/// Resolves an occurrence i of the first pattern to its consecutive pair.
///
/// j is the nearest second-pattern occurrence after i, so no second-pattern
/// occurrence lies in (i, j); the pair stands iff the nearest first-pattern
/// occurrence before j is i itself. Two range queries.
inline std::optional<ConsecutivePair> find_from_p1(const OrsIndex& ors, SaRange r1, SaRange r2,
                                                   std::int64_t i, Window w = kUnbounded) {
    auto j = next_occurrence(ors, r2, i, w);
    if (!j) return std::nullopt;
    auto back = prev_occurrence(ors, r1, *j, w);
    if (!back || *back != i) return std::nullopt;
    return ConsecutivePair{i, *j};
}

/// Mirror of find_from_p1 for an occurrence j of the second pattern.
inline std::optional<ConsecutivePair> find_from_p2(const OrsIndex& ors, SaRange r1, SaRange r2,
                                                   std::int64_t j, Window w = kUnbounded) {
    auto i = prev_occurrence(ors, r1, j, w);
    if (!i) return std::nullopt;
    auto fwd = next_occurrence(ors, r2, *i, w);
    if (!fwd || *fwd != j) return std::nullopt;
    return ConsecutivePair{*i, j};
}

/// Visits every consecutive pair whose first-pattern occurrence is the last
/// one in its length-`segment` block of w, newest block first. This covers
/// every pair of distance >= segment inside w.
template <class Visit>
void sweep_segments(const OrsIndex& ors, SaRange r1, SaRange r2, Window w, std::int64_t segment,
                    Visit&& visit) {
    if (segment < 1) segment = 1;
    auto i = prev_occurrence(ors, r1, w.b + 1, w);
    while (i) {
        if (auto pair = find_from_p1(ors, r1, r2, *i, w)) {
            if (!visit(*pair)) return;
        }
        const std::int64_t block_start = w.a + ((*i - w.a) / segment) * segment;
        i = prev_occurrence(ors, r1, block_start, w);
    }
}

/// Visits every pair inside w, left to right, by walking the first
/// pattern's occurrences. Three range queries per occurrence.
template <class Visit>
void scan_window(const OrsIndex& ors, SaRange r1, SaRange r2, Window w, Visit&& visit) {
    auto i = next_occurrence(ors, r1, w.a - 1, w);
    while (i) {
        if (auto pair = find_from_p1(ors, r1, r2, *i, w)) {
            if (!visit(*pair)) return;
        }
        i = next_occurrence(ors, r1, *i, w);
    }
}

/// The unique pair inside w with i <= c < j, if any: its i must be the last
/// first-pattern occurrence at or before c.
inline std::optional<ConsecutivePair> straddling_pair(const OrsIndex& ors, SaRange r1, SaRange r2, Window w,
                                                      std::int64_t c) {
    auto i = prev_occurrence(ors, r1, c + 1, w);
    if (!i) return std::nullopt;
    auto pair = find_from_p1(ors, r1, r2, *i, w);
    if (pair && pair->j > c) return pair;
    return std::nullopt;
}

}  // namespace gapidx
