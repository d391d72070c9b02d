#include <gtest/gtest.h>

#include <random>

#include "gapidx/gap_count_index.hpp"
#include "gapidx/oracle.hpp"
#include "support/checkers.hpp"

namespace gapidx {
namespace {

TEST(CountIndex, TauDefaults) {
    EXPECT_EQ(default_count_tau(4), 4);
    EXPECT_EQ(default_count_tau(8), 4);
    EXPECT_EQ(default_count_tau(1000), 100);
    EXPECT_EQ(default_count_tau(1001), 100);
    EXPECT_EQ(integer_cbrt(26), 2);
    EXPECT_EQ(integer_cbrt(27), 3);
    EXPECT_EQ(integer_sqrt(99), 9);
    for (std::int64_t n = 8; n < 5000; n += 37) EXPECT_EQ(n / default_count_tau(n), integer_cbrt(n));
}

TEST(CountIndex, AbabTableEntry) {
    auto ci = CountIndex::build(Text("abab"));
    const auto& ti = ci.text_index();
    auto u = ti.locus("ab")->node;
    auto v = ti.locus("b")->node;
    ASSERT_TRUE(ci.partition().is_boundary(u));
    ASSERT_TRUE(ci.partition().is_boundary(v));
    const auto bu = ci.partition().boundary_index(u), bv = ci.partition().boundary_index(v);
    EXPECT_EQ(ci.tables().at(bu, bv, 0), 0u);
    EXPECT_EQ(ci.tables().at(bu, bv, 1), 2u);
}

TEST(CountIndex, Examples) {
    auto abab = CountIndex::build(Text("abab"));
    EXPECT_EQ(abab.count("ab", "b", 0, 1), 2);
    EXPECT_EQ(abab.count("ab", "b", 5, 3), 0);
    EXPECT_TRUE(abab.exists("ab", "b", 0, 4));
    EXPECT_FALSE(abab.exists("ab", "b", 2, 4));
    EXPECT_FALSE(abab.exists("ab", "z", 0, 4));
    auto nana = CountIndex::build(Text("NANANANABATMAN"));
    EXPECT_EQ(nana.count("NA", "BA", 0, 1), 0);
    EXPECT_EQ(nana.count("NA", "BA", 2, 2), 1);
    EXPECT_THROW(nana.count("", "BA", 0, 3), error);
}

TEST(CountIndex, LengthOneText) {
    auto ci = CountIndex::build(Text("x"));
    EXPECT_EQ(ci.count("x", "x", 0, 5), 0);
    for (auto e : ci.tables().raw()) EXPECT_EQ(e, 0u);
}

TEST(CountIndex, RejectsTauAboveN) {
    try {
        CountIndex::build(Text("abab"), 5);
        FAIL();
    } catch (const error& e) {
        EXPECT_EQ(e.code(), errc::bad_tau);
    }
}

TEST(BoundaryPairTableProperty, MatchesScanExhaustively) {
    std::mt19937_64 rng(41);
    for (int rep = 0; rep < 40; ++rep) {
        const int sigma = std::array{2, 4, 26}[rep % 3];
        const std::size_t n = 1 + rng() % 300;
        const auto s = rep % 3 == 1 ? testing::periodic_text(rng, n, sigma) : testing::random_text(rng, n, sigma);
        const std::int64_t tau = 1 + static_cast<std::int64_t>(rng() % n);
        auto ci = CountIndex::build(Text(s), rep % 2 ? std::optional<std::int64_t>{} : tau);
        const auto& ti = ci.text_index();
        const auto& bn = ci.partition().boundary_nodes();
        for (std::size_t u = 0; u < bn.size(); ++u) {
            for (std::size_t v = 0; v < bn.size(); ++v) {
                const auto d = testing::distances_by_scan(s, testing::node_string(ti, bn[u]),
                                                          testing::node_string(ti, bn[v]));
                for (std::int64_t x = 0; x <= ci.cap(); ++x) {
                    const auto want = std::count_if(d.begin(), d.end(), [&](auto y) { return y <= x; });
                    ASSERT_EQ(ci.tables().at(static_cast<std::int32_t>(u), static_cast<std::int32_t>(v), x),
                              static_cast<std::uint32_t>(want));
                }
            }
        }
    }
}

TEST(CountIndexProperty, MatchesOracle) {
    std::mt19937_64 rng(42);
    for (int rep = 0; rep < 300; ++rep) {
        const int sigma = std::array{2, 4, 26}[rep % 3];
        const std::size_t n = 1 + rng() % 700;
        const auto s = rep % 4 == 0 ? testing::periodic_text(rng, n, sigma) : testing::random_text(rng, n, sigma);
        std::optional<std::int64_t> tau;
        if (rep % 5 == 0) tau = 1 + static_cast<std::int64_t>(rng() % n);
        auto ci = CountIndex::build(Text(s), tau);
        for (int q = 0; q < 10; ++q) {
            const auto p1 = testing::random_substring_or_noise(rng, s, sigma);
            const auto p2 = q % 4 == 0 ? p1 : testing::random_substring_or_noise(rng, s, sigma);
            std::int64_t alpha = static_cast<std::int64_t>(rng() % (n + 2));
            std::int64_t beta = static_cast<std::int64_t>(rng() % (n + 2));
            if (q % 2 == 0 && alpha > beta) std::swap(alpha, beta);
            if (q % 3 == 0) alpha = 0;
            const auto want = oracle::query(s, p1, p2, alpha, beta);
            const auto before = ci.ors().query_count();
            ASSERT_EQ(ci.count(p1, p2, alpha, beta), want.count)
                << s << " | " << p1 << " " << p2 << " " << alpha << " " << beta << " tau=" << ci.tau();
            ASSERT_LE(ci.ors().query_count() - before, static_cast<std::uint64_t>(32 * ci.tau()));
            ASSERT_EQ(ci.exists(p1, p2, alpha, beta), want.exists);
        }
    }
}

}  // namespace
}  // namespace gapidx
