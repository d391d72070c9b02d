#include <gtest/gtest.h>

#include <random>

#include "gapidx/oracle.hpp"
#include "gapidx/text_index.hpp"
#include "support/checkers.hpp"

namespace gapidx {
namespace {

TEST(TextIndex, AbabSuffixArray) {
    auto idx = TextIndex::build(Text("abab"));
    EXPECT_EQ(idx.sa(), (std::vector<std::int32_t>{4, 2, 0, 3, 1}));
    for (std::size_t k = 0; k < idx.sa().size(); ++k) EXPECT_EQ(idx.isa()[idx.sa()[k]], static_cast<int>(k));
}

TEST(TextIndex, EmptyText) {
    auto idx = TextIndex::build(Text(""));
    EXPECT_EQ(idx.sa(), std::vector<std::int32_t>{0});
    EXPECT_EQ(idx.tree().size(), 2);  // root and the sentinel leaf
    EXPECT_EQ(idx.tree().leaf_count(), 1);
}

TEST(TextIndex, RejectsSentinel) {
    try {
        Text t(std::string("ab\0c", 4));
        FAIL() << "expected SentinelInInput";
    } catch (const error& e) {
        EXPECT_EQ(e.code(), errc::sentinel_in_input);
    }
}

TEST(TextIndex, NanaTreeShape) {
    auto idx = TextIndex::build(Text("NANANANABATMAN"));
    const auto& t = idx.tree();
    EXPECT_EQ(t.leaf_count(), 15);
    // Root children: $, A..., B..., M..., N..., T...
    std::string firsts;
    for (auto c : t.children(0)) firsts += static_cast<char>(idx.symbol(idx.sa()[t.lo[c]]));
    EXPECT_EQ(firsts, std::string("\0ABMNT", 6));
    // Every internal node branches.
    for (std::int32_t v = 0; v < t.size(); ++v) {
        if (!t.is_leaf(v)) EXPECT_GE(t.children(v).size(), 2u);
    }
}

TEST(TextIndex, LocusExamples) {
    auto idx = TextIndex::build(Text("abab"));
    auto ab = idx.locus("ab");
    ASSERT_TRUE(ab);
    auto r = idx.range(ab->node);
    std::vector<std::int32_t> got(idx.sa().begin() + r.lo, idx.sa().begin() + r.hi + 1);
    std::sort(got.begin(), got.end());
    EXPECT_EQ(got, (std::vector<std::int32_t>{0, 2}));
    auto ba = idx.locus("ba");
    ASSERT_TRUE(ba);
    EXPECT_EQ(idx.range(ba->node).size(), 1);
    EXPECT_EQ(idx.sa()[idx.range(ba->node).lo], 1);
    EXPECT_FALSE(idx.locus("abc"));
    EXPECT_THROW(idx.locus(""), error);
}

TEST(TextIndex, OccurrenceExamples) {
    auto idx = TextIndex::build(Text("NANANANABATMAN"));
    EXPECT_EQ(idx.occurrences("NA"), (std::vector<std::int32_t>{0, 2, 4, 6}));
    EXPECT_EQ(idx.occurrences("BA"), (std::vector<std::int32_t>{8}));
    auto abab = TextIndex::build(Text("abab"));
    EXPECT_TRUE(abab.occurrences("z").empty());
}

TEST(TextIndex, LocusIsMinimumDepth) {
    auto idx = TextIndex::build(Text("mississippi"));
    auto loc = idx.locus("iss");
    ASSERT_TRUE(loc);
    EXPECT_GE(idx.depth(loc->node), 3);
    EXPECT_LT(idx.depth(idx.tree().parent[loc->node]), 3);
}

TEST(TextIndexProperty, MatchesNaiveSuffixArray) {
    std::mt19937_64 rng(11);
    for (int sigma : {2, 4, 26}) {
        for (int rep = 0; rep < 12; ++rep) {
            const std::size_t n = rep < 2 ? 2000 : rng() % 300;
            const auto s = rep % 3 == 0 ? testing::periodic_text(rng, n, sigma) : testing::random_text(rng, n, sigma);
            auto idx = TextIndex::build(Text(s));
            ASSERT_EQ(idx.sa(), testing::naive_suffix_array(s)) << s;
            ASSERT_TRUE(verify_suffix_array(s, idx.sa()));
            // Node intervals hold exactly the suffixes prefixed by str(node).
            const auto& t = idx.tree();
            for (std::int32_t v = 1; v < t.size() && n < 400; ++v) {
                if (t.is_leaf(v)) continue;
                const std::int32_t d = idx.depth(v);
                const std::string label = s.substr(idx.sa()[t.lo[v]], d);
                std::int32_t expect = 0;
                for (std::size_t p = 0; p + d <= s.size(); ++p) expect += s.compare(p, d, label) == 0;
                ASSERT_EQ(expect, t.hi[v] - t.lo[v] + 1);
            }
        }
    }
}

TEST(TextIndexProperty, OccurrencesMatchScanAndNest) {
    std::mt19937_64 rng(12);
    for (int rep = 0; rep < 60; ++rep) {
        const int sigma = rep % 3 == 0 ? 2 : 4;
        const auto s = testing::random_text(rng, 1 + rng() % 200, sigma);
        auto idx = TextIndex::build(Text(s));
        for (int q = 0; q < 20; ++q) {
            const auto p = testing::random_substring_or_noise(rng, s, sigma);
            auto naive = oracle::naive_occurrences(s, p);
            auto got = idx.occurrences(p);
            ASSERT_EQ(std::vector<std::int64_t>(got.begin(), got.end()), naive);
            // Extending a pattern can only shrink its interval.
            auto shorter = p.substr(0, p.size() - (p.size() > 1 ? 1 : 0));
            auto rp = idx.locus_range(p);
            auto rs = idx.locus_range(shorter);
            if (rp) {
                ASSERT_TRUE(rs);
                ASSERT_LE(rs->lo, rp->lo);
                ASSERT_GE(rs->hi, rp->hi);
            }
        }
    }
}

}  // namespace
}  // namespace gapidx
