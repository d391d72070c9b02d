#include <gtest/gtest.h>

#include <random>
#include <set>

#include "gapidx/consecutive_finder.hpp"
#include "gapidx/oracle.hpp"
#include "gapidx/text_index.hpp"
#include "support/checkers.hpp"

namespace gapidx {
namespace {

struct Fixture {
    TextIndex idx;
    OrsIndex ors;
    SaRange r1, r2;

    Fixture(const std::string& s, const std::string& p1, const std::string& p2)
        : idx(TextIndex::build(Text(s))), ors(idx.sa()) {
        r1 = idx.locus_range(p1).value_or(SaRange{});
        r2 = idx.locus_range(p2).value_or(SaRange{});
    }
};

TEST(ConsecutiveFinder, FromFirstPattern) {
    Fixture f("abab", "ab", "b");
    EXPECT_EQ(find_from_p1(f.ors, f.r1, f.r2, 0), (ConsecutivePair{0, 1}));
    EXPECT_EQ(find_from_p1(f.ors, f.r1, f.r2, 2), (ConsecutivePair{2, 3}));
    Fixture g("NANANANABATMAN", "NA", "BA");
    EXPECT_EQ(find_from_p1(g.ors, g.r1, g.r2, 0), std::nullopt);
    EXPECT_EQ(find_from_p1(g.ors, g.r1, g.r2, 6), (ConsecutivePair{6, 8}));
}

TEST(ConsecutiveFinder, FromSecondPattern) {
    Fixture g("NANANANABATMAN", "NA", "BA");
    EXPECT_EQ(find_from_p2(g.ors, g.r1, g.r2, 8), (ConsecutivePair{6, 8}));
    Fixture f("abab", "ab", "b");
    EXPECT_EQ(find_from_p2(f.ors, f.r1, f.r2, 3), (ConsecutivePair{2, 3}));
    Fixture h("abab", "b", "ab");
    EXPECT_EQ(find_from_p2(h.ors, h.r1, h.r2, 2), (ConsecutivePair{1, 2}));
}

TEST(ConsecutiveFinder, WindowCutsPairs) {
    Fixture g("NANANANABATMAN", "NA", "BA");
    EXPECT_EQ(find_from_p1(g.ors, g.r1, g.r2, 6, Window{0, 7}), std::nullopt);
    EXPECT_EQ(find_from_p2(g.ors, g.r1, g.r2, 8, Window{7, 14}), std::nullopt);
    EXPECT_EQ(find_from_p2(g.ors, g.r1, g.r2, 8, Window{6, 8}), (ConsecutivePair{6, 8}));
}

TEST(ConsecutiveFinder, SamePattern) {
    Fixture f("aXaaXa", "a", "a");
    EXPECT_EQ(find_from_p1(f.ors, f.r1, f.r2, 0), (ConsecutivePair{0, 2}));
    EXPECT_EQ(find_from_p1(f.ors, f.r1, f.r2, 5), std::nullopt);
}

TEST(ConsecutiveFinderProperty, MatchesOracleBothSides) {
    std::mt19937_64 rng(21);
    for (int rep = 0; rep < 200; ++rep) {
        const int sigma = rep % 4 == 0 ? 2 : (rep % 4 == 1 ? 4 : 3);
        const std::size_t n = 1 + rng() % 500;
        const auto s = rep % 5 == 0 ? testing::periodic_text(rng, n, sigma) : testing::random_text(rng, n, sigma);
        Fixture base(s, "a", "a");
        for (int q = 0; q < 5; ++q) {
            const auto p1 = testing::random_substring_or_noise(rng, s, sigma);
            const auto p2 = q == 0 ? p1 : testing::random_substring_or_noise(rng, s, sigma);
            const auto expect = oracle::pairs(s, p1, p2);
            const std::set<ConsecutivePair> want(expect.begin(), expect.end());
            auto r1 = base.idx.locus_range(p1);
            auto r2 = base.idx.locus_range(p2);
            if (!r1 || !r2) {
                ASSERT_TRUE(want.empty());
                continue;
            }
            std::set<ConsecutivePair> got1, got2;
            for (auto i : base.idx.occurrences(p1)) {
                const auto before = base.ors.query_count();
                if (auto pr = find_from_p1(base.ors, *r1, *r2, i)) got1.insert(*pr);
                ASSERT_LE(base.ors.query_count() - before, 4u);
            }
            for (auto j : base.idx.occurrences(p2)) {
                const auto before = base.ors.query_count();
                if (auto pr = find_from_p2(base.ors, *r1, *r2, j)) got2.insert(*pr);
                ASSERT_LE(base.ors.query_count() - before, 4u);
            }
            ASSERT_EQ(got1, want) << s << " " << p1 << " " << p2;
            ASSERT_EQ(got2, want) << s << " " << p1 << " " << p2;
        }
    }
}

TEST(ConsecutiveFinderProperty, SweepFindsAllLongPairs) {
    std::mt19937_64 rng(22);
    for (int rep = 0; rep < 150; ++rep) {
        const auto s = testing::random_text(rng, 1 + rng() % 400, 3);
        Fixture f(s, "a", "a");
        const auto p1 = testing::random_substring_or_noise(rng, s, 3);
        const auto p2 = testing::random_substring_or_noise(rng, s, 3);
        auto r1 = f.idx.locus_range(p1), r2 = f.idx.locus_range(p2);
        if (!r1 || !r2) continue;
        const std::int64_t seg = 1 + static_cast<std::int64_t>(rng() % 30);
        const Window w{static_cast<std::int64_t>(rng() % (s.size() / 2 + 1)), static_cast<std::int64_t>(s.size()) - 1};
        std::set<ConsecutivePair> got;
        sweep_segments(f.ors, *r1, *r2, w, seg, [&](const ConsecutivePair& p) {
            EXPECT_TRUE(got.insert(p).second);
            return true;
        });
        std::set<ConsecutivePair> want;
        for (const auto& p : oracle::pairs(s, p1, p2)) {
            if (w.contains(p.i) && w.contains(p.j) && p.distance() >= seg) want.insert(p);
        }
        for (const auto& p : want) ASSERT_TRUE(got.count(p)) << s << " seg=" << seg;
        for (const auto& p : got) ASSERT_TRUE(w.contains(p.i) && w.contains(p.j));
    }
}

}  // namespace
}  // namespace gapidx
