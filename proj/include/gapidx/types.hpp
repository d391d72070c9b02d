#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "gapidx/error.hpp"

namespace gapidx {

/// Byte reserved for the virtual end-of-text marker; never allowed in input.
inline constexpr unsigned char kSentinel = 0;

/// Input string guaranteed free of the sentinel byte.
class Text {
public:
    Text() = default;
    explicit Text(std::string bytes) : bytes_(std::move(bytes)) {
        if (bytes_.find(static_cast<char>(kSentinel)) != std::string::npos) {
            throw error(errc::sentinel_in_input, "text contains the reserved byte 0");
        }
    }

    std::string_view view() const noexcept { return bytes_; }
    const std::string& str() const noexcept { return bytes_; }
    std::int32_t size() const noexcept { return static_cast<std::int32_t>(bytes_.size()); }
    bool empty() const noexcept { return bytes_.empty(); }

private:
    std::string bytes_;
};

/// Inclusive interval of suffix-array ranks. Empty when lo > hi.
struct SaRange {
    std::int32_t lo = 0;
    std::int32_t hi = -1;

    bool empty() const noexcept { return lo > hi; }
    std::int32_t size() const noexcept { return empty() ? 0 : hi - lo + 1; }
    bool contains(std::int32_t rank) const noexcept { return lo <= rank && rank <= hi; }
    friend bool operator==(const SaRange&, const SaRange&) = default;
};

/// Inclusive interval of text positions.
struct Window {
    std::int64_t a = 0;
    std::int64_t b = -1;

    bool contains(std::int64_t p) const noexcept { return a <= p && p <= b; }
    std::int64_t length() const noexcept { return b < a ? 0 : b - a + 1; }
    friend bool operator==(const Window&, const Window&) = default;
};

/// Occurrence i of the first pattern followed by occurrence j of the second
/// with no occurrence of either strictly in between.
struct ConsecutivePair {
    std::int64_t i = 0;
    std::int64_t j = 0;

    std::int64_t distance() const noexcept { return j - i; }
    friend bool operator==(const ConsecutivePair&, const ConsecutivePair&) = default;
    friend auto operator<=>(const ConsecutivePair&, const ConsecutivePair&) = default;
};

struct GapQuery {
    std::string p1;
    std::string p2;
    std::int64_t alpha = 0;
    std::int64_t beta = 0;
};

using PairList = std::vector<ConsecutivePair>;

inline void require_pattern(std::string_view p) {
    if (p.empty()) throw error(errc::empty_pattern, "patterns must be non-empty");
}

/// Distances are always >= 1 and < n, so [alpha, beta] is clamped to that span.
struct DistanceRange {
    std::int64_t lo = 1;
    std::int64_t hi = 0;

    bool empty() const noexcept { return lo > hi; }
    bool contains(std::int64_t d) const noexcept { return lo <= d && d <= hi; }

    static DistanceRange clamp(std::int64_t alpha, std::int64_t beta, std::int64_t n) {
        DistanceRange r;
        r.lo = alpha < 1 ? 1 : alpha;
        r.hi = beta > n - 1 ? n - 1 : beta;
        return r;
    }
};

}  // namespace gapidx
