#pragma once

#include <algorithm>
#include <bit>
#include <cstdint>
#include <istream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "gapidx/error.hpp"
#include "gapidx/gap_count_index.hpp"

namespace gapidx {

/// m sets over integer element ids; elements within a set are distinct.
struct SetSystem {
    std::vector<std::vector<std::int64_t>> sets;

    std::int64_t total_size() const {
        std::int64_t s = 0;
        for (const auto& x : sets) s += static_cast<std::int64_t>(x.size());
        return s;
    }

    /// One set per line, whitespace-separated tokens. Tokens get ids in
    /// lexicographic order.
    static SetSystem parse(std::istream& in) {
        std::vector<std::vector<std::string>> lines;
        std::map<std::string, std::int64_t> ids;
        for (std::string line; std::getline(in, line);) {
            std::istringstream ls(line);
            std::vector<std::string> tokens;
            for (std::string tok; ls >> tok;) {
                tokens.push_back(tok);
                ids.emplace(tok, 0);
            }
            lines.push_back(std::move(tokens));
        }
        std::int64_t next = 0;
        for (auto& [tok, id] : ids) id = next++;
        SetSystem sys;
        for (const auto& tokens : lines) {
            std::vector<std::int64_t> set;
            for (const auto& tok : tokens) set.push_back(ids[tok]);
            std::sort(set.begin(), set.end());
            set.erase(std::unique(set.begin(), set.end()), set.end());
            sys.sets.push_back(std::move(set));
        }
        return sys;
    }
};

/// Set system in which every element lies in exactly f sets. Sets
/// [0, original_count) stand for the original sets with the same index;
/// the rest are dummy sets.
struct FixedFreqInstance {
    std::int32_t level = 0;
    std::int64_t f = 0;
    std::int32_t original_count = 0;
    std::vector<std::vector<std::int64_t>> sets;

    std::int64_t total_size() const {
        std::int64_t s = 0;
        for (const auto& x : sets) s += static_cast<std::int64_t>(x.size());
        return s;
    }
    bool empty() const { return total_size() == 0; }
    bool is_dummy(std::int64_t set) const { return set >= original_count; }
};

/// Smallest power of two >= max(x, 2).
inline std::int64_t padded_set_count(std::int64_t x) {
    return static_cast<std::int64_t>(std::bit_ceil(static_cast<std::uint64_t>(std::max<std::int64_t>(x, 2))));
}

/// Splits a set system by element frequency: instance j keeps the elements
/// with 2^(j-1) <= f_e < 2^j and adds 2^(j-1) dummy sets, each element going
/// into the first 2^j - f_e of them. The level count also covers f_e = m,
/// which the bound j <= log2 m alone would drop.
inline std::vector<FixedFreqInstance> bucketize(const SetSystem& sys) {
    std::vector<FixedFreqInstance> out;
    if (sys.sets.empty()) return out;
    const std::int64_t m = padded_set_count(static_cast<std::int64_t>(sys.sets.size()));
    std::map<std::int64_t, std::int64_t> freq;
    for (const auto& s : sys.sets) {
        for (auto e : s) ++freq[e];
    }
    std::int64_t max_freq = 0;
    for (const auto& [e, f] : freq) max_freq = std::max(max_freq, f);
    const int levels = std::max(std::bit_width(static_cast<std::uint64_t>(m)) - 1,
                                max_freq > 0 ? std::bit_width(static_cast<std::uint64_t>(max_freq)) : 0);
    for (int j = 1; j <= levels; ++j) {
        FixedFreqInstance inst;
        inst.level = j;
        inst.f = std::int64_t{1} << j;
        inst.original_count = static_cast<std::int32_t>(m);
        const std::int64_t lo = std::int64_t{1} << (j - 1);
        inst.sets.resize(static_cast<std::size_t>(m + lo));
        for (std::size_t i = 0; i < sys.sets.size(); ++i) {
            for (auto e : sys.sets[i]) {
                const auto f = freq[e];
                if (lo <= f && f < inst.f) inst.sets[i].push_back(e);
            }
        }
        for (const auto& [e, f] : freq) {
            if (f < lo || f >= inst.f) continue;
            for (std::int64_t d = 0; d < inst.f - f; ++d) inst.sets[static_cast<std::size_t>(m + d)].push_back(e);
        }
        out.push_back(std::move(inst));
    }
    return out;
}

/// Encoding of a fixed-frequency instance as a text over {0, 1, $}.
///
/// Set i gets the codeword w_i: i in binary over codeword_len digits. Per
/// element, ascending id: the tokens "w_i$" of its sets in increasing i,
/// block bytes in total, then block copies of '$'. Two sets intersect iff
/// their codewords occur within distance block of each other.
struct ReductionString {
    std::string text;
    std::int32_t codeword_len = 1;
    std::int64_t block = 0;
    std::int32_t original_count = 0;

    std::string codeword(std::int64_t set) const {
        std::string w(static_cast<std::size_t>(codeword_len), '0');
        for (std::int32_t k = 0; k < codeword_len; ++k) {
            if ((set >> (codeword_len - 1 - k)) & 1) w[k] = '1';
        }
        return w;
    }
};

inline ReductionString build_reduction(const FixedFreqInstance& inst) {
    std::map<std::int64_t, std::vector<std::int64_t>> containing;
    for (std::size_t i = 0; i < inst.sets.size(); ++i) {
        for (auto e : inst.sets[i]) containing[e].push_back(static_cast<std::int64_t>(i));
    }
    ReductionString rs;
    rs.original_count = inst.original_count;
    rs.codeword_len = std::bit_width(static_cast<std::uint64_t>(padded_set_count(
                          static_cast<std::int64_t>(inst.sets.size())))) - 1;
    rs.block = inst.f * rs.codeword_len + inst.f;
    for (const auto& [e, owners] : containing) {
        if (static_cast<std::int64_t>(owners.size()) != inst.f) {
            throw error(errc::non_uniform_frequency, "element " + std::to_string(e) + " occurs in " +
                                                         std::to_string(owners.size()) + " sets, expected " +
                                                         std::to_string(inst.f));
        }
        for (auto i : owners) rs.text += rs.codeword(i) + '$';
        rs.text.append(static_cast<std::size_t>(rs.block), '$');
    }
    return rs;
}

/// Disjointness of sets i and j of the encoded instance through one
/// existence query; `idx` answers exists(p1, p2, alpha, beta) over rs.text.
template <class Index>
bool disjoint(const ReductionString& rs, const Index& idx, std::int64_t i, std::int64_t j) {
    if (i >= rs.original_count || j >= rs.original_count) {
        throw error(errc::dummy_set_queried, "dummy sets cannot be queried");
    }
    if (i == j || i < 0 || j < 0) throw error(errc::bad_range, "a query needs two distinct sets");
    if (i > j) std::swap(i, j);
    if (rs.text.empty()) return true;
    return !idx.exists(rs.codeword(i), rs.codeword(j), 0, rs.block);
}

/// Set disjointness for arbitrary frequencies: one count index per
/// frequency level, queried level by level.
class SetDisjointnessIndex {
public:
    explicit SetDisjointnessIndex(const SetSystem& sys) : set_count_(static_cast<std::int64_t>(sys.sets.size())) {
        for (auto& inst : bucketize(sys)) {
            if (inst.empty()) continue;
            auto rs = build_reduction(inst);
            auto idx = CountIndex::build(Text(rs.text));
            levels_.push_back(Level{std::move(rs), std::move(idx)});
        }
    }

    std::int64_t set_count() const noexcept { return set_count_; }

    /// Sets are 0-based indices into the original system.
    bool disjoint(std::int64_t i, std::int64_t j) const {
        if (i < 0 || j < 0 || i >= set_count_ || j >= set_count_ || i == j) {
            throw error(errc::bad_range, "a query needs two distinct existing sets");
        }
        for (const auto& lv : levels_) {
            if (!gapidx::disjoint(lv.rs, lv.idx, i, j)) return false;
        }
        return true;
    }

    std::size_t level_count() const noexcept { return levels_.size(); }
    const ReductionString& reduction(std::size_t k) const { return levels_[k].rs; }

private:
    struct Level {
        ReductionString rs;
        CountIndex idx;
    };
    std::int64_t set_count_ = 0;
    std::vector<Level> levels_;
};

}  // namespace gapidx
