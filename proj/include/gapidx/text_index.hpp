#pragma once

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <optional>
#include <string_view>
#include <vector>

#include "gapidx/tree_topology.hpp"
#include "gapidx/types.hpp"

namespace gapidx {

/// Suffix array of text+sentinel by prefix doubling. The sentinel suffix
/// (position n) always comes first.
inline std::vector<std::int32_t> build_suffix_array(std::string_view text) {
    const auto len = static_cast<std::int32_t>(text.size()) + 1;
    std::vector<std::int32_t> sa(len), rank(len), tmp(len);
    for (std::int32_t i = 0; i < len; ++i) {
        sa[i] = i;
        rank[i] = i + 1 < len ? static_cast<unsigned char>(text[i]) : 0;
    }
    for (std::int32_t h = 1;; h *= 2) {
        auto key = [&](std::int32_t i) {
            return std::pair{rank[i], i + h < len ? rank[i + h] : -1};
        };
        std::sort(sa.begin(), sa.end(), [&](std::int32_t x, std::int32_t y) { return key(x) < key(y); });
        tmp[sa[0]] = 0;
        for (std::int32_t k = 1; k < len; ++k) {
            tmp[sa[k]] = tmp[sa[k - 1]] + (key(sa[k - 1]) < key(sa[k]) ? 1 : 0);
        }
        rank.swap(tmp);
        if (rank[sa[len - 1]] == len - 1) break;
    }
    return sa;
}

/// Kasai: lcp[k] = LCP(suffix sa[k-1], suffix sa[k]); lcp[0] = 0.
inline std::vector<std::int32_t> build_lcp(std::string_view text, const std::vector<std::int32_t>& sa,
                                           const std::vector<std::int32_t>& isa) {
    const auto len = static_cast<std::int32_t>(sa.size());
    std::vector<std::int32_t> lcp(len, 0);
    auto at = [&](std::int32_t p) -> int { return p < len - 1 ? static_cast<unsigned char>(text[p]) : -1; };
    std::int32_t h = 0;
    for (std::int32_t p = 0; p < len; ++p) {
        if (isa[p] == 0) {
            h = 0;
            continue;
        }
        std::int32_t q = sa[isa[p] - 1];
        while (p + h < len && q + h < len && at(p + h) == at(q + h) && at(p + h) >= 0) ++h;
        lcp[isa[p]] = h;
        if (h > 0) --h;
    }
    return lcp;
}

struct Locus {
    std::int32_t node = 0;
    std::int32_t pattern_len = 0;
};

/// Suffix array, inverse suffix array and suffix tree of a text.
///
/// The tree is a Topology whose leaf ranks are suffix-array ranks; node
/// string depths and the first symbol of each incoming edge are kept for
/// locus search.
class TextIndex {
public:
    TextIndex() = default;

    static TextIndex build(Text text) {
        auto sa = build_suffix_array(text.view());
        return from_suffix_array(std::move(text), std::move(sa));
    }

    /// Rebuilds everything derived from a stored suffix array. The array is
    /// trusted to be the suffix array of `text`; callers loading untrusted
    /// data should check it with verify_suffix_array first.
    static TextIndex from_suffix_array(Text text, std::vector<std::int32_t> sa) {
        TextIndex idx;
        idx.text_ = std::move(text);
        idx.sa_ = std::move(sa);
        const auto len = static_cast<std::int32_t>(idx.sa_.size());
        idx.isa_.assign(len, 0);
        for (std::int32_t k = 0; k < len; ++k) idx.isa_[idx.sa_[k]] = k;
        idx.build_tree(build_lcp(idx.text_.view(), idx.sa_, idx.isa_));
        return idx;
    }

    std::string_view text() const noexcept { return text_.view(); }
    const Text& text_object() const noexcept { return text_; }
    std::int32_t n() const noexcept { return text_.size(); }
    const std::vector<std::int32_t>& sa() const noexcept { return sa_; }
    const std::vector<std::int32_t>& isa() const noexcept { return isa_; }
    const Topology& tree() const noexcept { return tree_; }
    std::int32_t depth(std::int32_t v) const noexcept { return depth_[v]; }

    SaRange range(std::int32_t v) const noexcept { return {tree_.lo[v], tree_.hi[v]}; }

    /// Symbol of text+sentinel at p; 0 for p == n.
    int symbol(std::int64_t p) const noexcept {
        return p < n() ? static_cast<unsigned char>(text_.view()[p]) : kSentinel;
    }

    std::optional<Locus> locus(std::string_view pattern) const {
        require_pattern(pattern);
        const auto m = static_cast<std::int32_t>(pattern.size());
        std::int32_t v = 0;
        std::int32_t matched = 0;
        while (matched < m) {
            auto kids = tree_.children(v);
            const int want = static_cast<unsigned char>(pattern[matched]);
            auto it = std::lower_bound(kids.begin(), kids.end(), want,
                                       [&](std::int32_t c, int s) { return edge_symbol_[c] < s; });
            if (it == kids.end() || edge_symbol_[*it] != want) return std::nullopt;
            const std::int32_t c = *it;
            const std::int32_t start = sa_[tree_.lo[c]];
            const std::int32_t stop = std::min(depth_[c], m);
            for (std::int32_t t = matched + 1; t < stop; ++t) {
                if (symbol(start + t) != static_cast<unsigned char>(pattern[t])) return std::nullopt;
            }
            matched = stop;
            v = c;
        }
        return Locus{v, m};
    }

    std::optional<SaRange> locus_range(std::string_view pattern) const {
        auto loc = locus(pattern);
        if (!loc) return std::nullopt;
        return range(loc->node);
    }

    std::vector<std::int32_t> occurrences(std::string_view pattern) const {
        auto r = locus_range(pattern);
        if (!r) return {};
        std::vector<std::int32_t> out(sa_.begin() + r->lo, sa_.begin() + r->hi + 1);
        std::sort(out.begin(), out.end());
        return out;
    }

private:
    void build_tree(const std::vector<std::int32_t>& lcp) {
        const auto len = static_cast<std::int32_t>(sa_.size());
        std::vector<std::int32_t> parent{-1};
        std::vector<std::int32_t> depth{0};
        std::vector<std::int32_t> leaf_pos{-1};
        std::vector<std::int32_t> leaf_rank{-1};
        std::vector<std::int32_t> stack{0};
        for (std::int32_t k = 0; k < len; ++k) {
            const std::int32_t d = k == 0 ? 0 : lcp[k];
            std::int32_t last = -1;
            while (depth[stack.back()] > d) {
                last = stack.back();
                stack.pop_back();
            }
            if (depth[stack.back()] < d) {
                // Split the edge into `last` with a new branching node.
                const auto u = static_cast<std::int32_t>(parent.size());
                parent.push_back(stack.back());
                depth.push_back(d);
                leaf_pos.push_back(-1);
                leaf_rank.push_back(-1);
                parent[last] = u;
                stack.push_back(u);
            }
            const auto leaf = static_cast<std::int32_t>(parent.size());
            parent.push_back(stack.back());
            depth.push_back(len - sa_[k]);
            leaf_pos.push_back(sa_[k]);
            leaf_rank.push_back(k);
            stack.push_back(leaf);
        }
        auto [topo, remap] = detail::assemble_topology(parent, leaf_pos, leaf_rank, 0);
        tree_ = std::move(topo);
        depth_.assign(tree_.size(), 0);
        for (std::size_t old = 0; old < remap.size(); ++old) depth_[remap[old]] = depth[old];
        edge_symbol_.assign(tree_.size(), -1);
        for (std::int32_t v = 1; v < tree_.size(); ++v) {
            edge_symbol_[v] = symbol(sa_[tree_.lo[v]] + depth_[tree_.parent[v]]);
        }
    }

    Text text_;
    std::vector<std::int32_t> sa_;
    std::vector<std::int32_t> isa_;
    Topology tree_;
    std::vector<std::int32_t> depth_;
    std::vector<int> edge_symbol_;
};

/// True iff `sa` is the suffix array of text+sentinel. Linear time: adjacent
/// suffixes are compared by first symbol, then by the rank of the remainder.
inline bool verify_suffix_array(std::string_view text, const std::vector<std::int32_t>& sa) {
    const auto len = static_cast<std::int32_t>(text.size()) + 1;
    if (static_cast<std::int32_t>(sa.size()) != len) return false;
    std::vector<std::int32_t> rank(len + 1, -1);
    for (std::int32_t k = 0; k < len; ++k) {
        const std::int32_t p = sa[k];
        if (p < 0 || p >= len || rank[p] >= 0) return false;
        rank[p] = k;
    }
    auto sym = [&](std::int32_t p) { return p < len - 1 ? static_cast<unsigned char>(text[p]) : -1; };
    for (std::int32_t k = 1; k < len; ++k) {
        const std::int32_t x = sa[k - 1];
        const std::int32_t y = sa[k];
        if (sym(x) != sym(y)) {
            if (sym(x) > sym(y)) return false;
        } else if (sym(x) < 0 || rank[x + 1] > rank[y + 1]) {
            return false;
        }
    }
    return true;
}

}  // namespace gapidx
