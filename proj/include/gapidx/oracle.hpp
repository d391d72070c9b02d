#pragma once

#include <cstdint>
#include <string_view>
#include <vector>

#include "gapidx/types.hpp"

namespace gapidx::oracle {

/// Every start position of `pattern` in `text`, by direct comparison.
inline std::vector<std::int64_t> naive_occurrences(std::string_view text, std::string_view pattern) {
    std::vector<std::int64_t> out;
    if (pattern.empty() || pattern.size() > text.size()) return out;
    for (std::size_t p = 0; p + pattern.size() <= text.size(); ++p) {
        bool match = true;
        for (std::size_t k = 0; k < pattern.size() && match; ++k) match = text[p + k] == pattern[k];
        if (match) out.push_back(static_cast<std::int64_t>(p));
    }
    return out;
}

/// Consecutive occurrences straight from the definition: walk positions left
/// to right and pair each first-pattern occurrence with the next position
/// holding any occurrence, if that position holds a second-pattern one.
inline PairList pairs(std::string_view text, std::string_view p1, std::string_view p2) {
    require_pattern(p1);
    require_pattern(p2);
    const auto o1 = naive_occurrences(text, p1);
    const auto o2 = naive_occurrences(text, p2);
    std::vector<char> in1(text.size(), 0), in2(text.size(), 0);
    for (auto p : o1) in1[p] = 1;
    for (auto p : o2) in2[p] = 1;
    PairList out;
    std::int64_t last = -1;
    for (std::int64_t p = 0; p < static_cast<std::int64_t>(text.size()); ++p) {
        if (!in1[p] && !in2[p]) continue;
        if (last >= 0 && in1[last] && in2[p]) out.push_back({last, p});
        last = p;
    }
    return out;
}

struct Result {
    PairList pairs;
    std::int64_t count = 0;
    bool exists = false;
};

inline Result query(std::string_view text, std::string_view p1, std::string_view p2, std::int64_t alpha,
                    std::int64_t beta) {
    Result r;
    for (const auto& pr : pairs(text, p1, p2)) {
        if (alpha <= pr.distance() && pr.distance() <= beta) r.pairs.push_back(pr);
    }
    r.count = static_cast<std::int64_t>(r.pairs.size());
    r.exists = r.count > 0;
    return r;
}

}  // namespace gapidx::oracle
