#include <gtest/gtest.h>

#include <random>

#include "gapidx/gap_count_index.hpp"
#include "gapidx/oracle.hpp"
#include "gapidx/zero_beta_index.hpp"
#include "support/checkers.hpp"

namespace gapidx {
namespace {

std::uint32_t min_distance_for(const ZeroBetaIndex& z, const std::string& a, const std::string& b) {
    const auto& tree = z.decomposition().tree_of(z.decomposition().root());
    const auto u = z.text_index().locus(a)->node;
    const auto v = z.text_index().locus(b)->node;
    EXPECT_TRUE(tree.cp.is_boundary(u) && tree.cp.is_boundary(v));
    return tree.table.at(tree.cp.boundary_index(u), tree.cp.boundary_index(v));
}

TEST(MinDistTable, Examples) {
    auto abab = ZeroBetaIndex::build(Text("abab"));
    EXPECT_EQ(min_distance_for(abab, "ab", "b"), 1u);
    EXPECT_EQ(min_distance_for(abab, "b", "b"), 2u);
    // The NA and BA loci are not boundary nodes at the default tau, so
    // build the partition with unit clusters to make every branching node one.
    auto ti = TextIndex::build(Text("NANANANABATMAN"));
    ClusterPartition cp(ti.tree(), 1);
    MinDistTable md(ti.tree(), cp, Window{0, 13}, 14);
    const auto na = ti.locus("NA")->node;
    const auto ba = ti.locus("BA")->node;
    ASSERT_TRUE(cp.is_boundary(na));
    const auto leaf_index = [&](std::int32_t v) { return cp.boundary_index(v); };
    if (cp.is_boundary(ba)) EXPECT_EQ(md.at(leaf_index(na), leaf_index(ba)), 2u);
    EXPECT_EQ(md.at(leaf_index(na), leaf_index(na)), 2u);
    // "ANA" -> "T": A at 9 intervenes before the only T, so no pair exists.
    const auto t = ti.locus("T")->node;
    if (cp.is_boundary(t)) EXPECT_EQ(md.at(leaf_index(ti.locus("NANA")->node), leaf_index(t)), MinDistTable::kNone);
}

TEST(ZeroBetaIndex, Examples) {
    auto abab = ZeroBetaIndex::build(Text("abab"));
    EXPECT_TRUE(abab.exists("ab", "b", 1));
    EXPECT_FALSE(abab.exists("ab", "b", 0));
    EXPECT_EQ(abab.report("ab", "b", 4), (PairList{{0, 1}, {2, 3}}));
    EXPECT_EQ(abab.count("ab", "b", 4), 2);
    auto nana = ZeroBetaIndex::build(Text("NANANANABATMAN"));
    EXPECT_FALSE(nana.exists("NA", "BA", 1));
    EXPECT_TRUE(nana.exists("NA", "BA", 2));
    EXPECT_EQ(nana.report("NA", "BA", 14), (PairList{{6, 8}}));
    EXPECT_EQ(nana.count("NA", "BA", 14), 1);
    EXPECT_TRUE(nana.report("NA", "Q", 14).empty());
    EXPECT_EQ(nana.count("NA", "Q", 14), 0);
}

TEST(ZeroBetaIndexProperty, MatchesOracle) {
    std::mt19937_64 rng(61);
    for (int rep = 0; rep < 160; ++rep) {
        const int sigma = std::array{2, 4, 26}[rep % 3];
        const std::size_t n = 1 + rng() % 1500;
        const auto s = rep % 4 == 0 ? testing::periodic_text(rng, n, sigma) : testing::random_text(rng, n, sigma);
        DecompositionOptions opt;
        if (rep % 3 == 0) opt.small_cutoff = static_cast<std::int64_t>(rng() % 12);
        auto z = ZeroBetaIndex::build(Text(s), opt);
        const double sqrt_n = std::sqrt(static_cast<double>(n));
        for (int q = 0; q < 12; ++q) {
            const auto p1 = testing::random_substring_or_noise(rng, s, sigma);
            const auto p2 = q % 4 == 0 ? p1 : testing::random_substring_or_noise(rng, s, sigma);
            const std::int64_t beta = q % 3 == 0 ? static_cast<std::int64_t>(rng() % 8)
                                                 : static_cast<std::int64_t>(rng() % (n + 2));
            const auto want = oracle::query(s, p1, p2, 0, beta);
            const auto before = z.ors().query_count();
            ASSERT_EQ(z.exists(p1, p2, beta), want.exists) << s << " | " << p1 << " " << p2 << " " << beta;
            ASSERT_LE(static_cast<double>(z.ors().query_count() - before), 32.0 * std::max(sqrt_n, 1.0));
            ASSERT_EQ(z.report(p1, p2, beta), want.pairs) << s << " | " << p1 << " " << p2 << " " << beta;
            ASSERT_EQ(z.count(p1, p2, beta), want.count);
        }
    }
}

TEST(ZeroBetaIndexProperty, MinDistAgreesWithPrefixTables) {
    std::mt19937_64 rng(62);
    for (int rep = 0; rep < 30; ++rep) {
        const auto s = testing::random_text(rng, 1 + rng() % 300, 2 + rep % 3);
        auto ti = TextIndex::build(Text(s));
        const std::int64_t n = ti.n();
        const std::int64_t tau = 1 + static_cast<std::int64_t>(rng() % n);
        ClusterPartition cp(ti.tree(), tau);
        BoundaryPairTable m(ti.tree(), cp, Window{0, n - 1}, n, static_cast<std::int32_t>(n));
        MinDistTable md(ti.tree(), cp, Window{0, n - 1}, n);
        for (std::int32_t u = 0; u < m.boundary_count(); ++u) {
            for (std::int32_t v = 0; v < m.boundary_count(); ++v) {
                std::uint32_t first = MinDistTable::kNone;
                for (std::int64_t x = 1; x <= n; ++x) {
                    if (m.at(u, v, x) > 0) {
                        first = static_cast<std::uint32_t>(x);
                        break;
                    }
                }
                ASSERT_EQ(md.at(u, v), first);
            }
        }
    }
}

TEST(ZeroBetaIndex, ExistsLayerAlone) {
    auto z = ZeroBetaIndex::build(Text("NANANANABATMAN"), DecompositionOptions{64, 1});
    EXPECT_EQ(z.decomposition().nodes().size(), 1u);
    EXPECT_TRUE(z.exists("NA", "BA", 2));
    EXPECT_EQ(z.report("NA", "BA", 14), (PairList{{6, 8}}));
}

}  // namespace
}  // namespace gapidx
