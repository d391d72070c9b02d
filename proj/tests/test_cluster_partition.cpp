#include <gtest/gtest.h>

#include <random>

#include "gapidx/cluster_partition.hpp"
#include "gapidx/text_index.hpp"
#include "support/checkers.hpp"

namespace gapidx {
namespace {

Topology path_tree(std::int32_t nodes) {
    std::vector<std::int32_t> parent(nodes), leaf_pos(nodes, -1), leaf_rank(nodes, -1);
    for (std::int32_t v = 0; v < nodes; ++v) parent[v] = v - 1;
    leaf_pos[nodes - 1] = 0;
    leaf_rank[nodes - 1] = 0;
    return detail::assemble_topology(parent, leaf_pos, leaf_rank, 0).first;
}

TEST(ClusterPartition, WholeTreeFitsOneCluster) {
    auto idx = TextIndex::build(Text("mississippi"));
    ClusterPartition cp(idx.tree(), idx.tree().size());
    EXPECT_EQ(testing::check_partition(idx.tree(), cp), "");
    EXPECT_EQ(cp.clusters().size(), 1u);
    EXPECT_EQ(cp.boundary_nodes(), std::vector<std::int32_t>{0});
}

TEST(ClusterPartition, PathOfTenWithTauThree) {
    auto t = path_tree(10);
    ClusterPartition cp(t, 3);
    EXPECT_EQ(testing::check_partition(t, cp), "");
    EXPECT_GE(cp.clusters().size(), 4u);
    for (const auto& c : cp.clusters()) EXPECT_LE(c.nodes.size(), 3u);
}

TEST(ClusterPartition, AbabTauTwo) {
    auto idx = TextIndex::build(Text("abab"));
    ClusterPartition cp(idx.tree(), 2);
    EXPECT_EQ(testing::check_partition(idx.tree(), cp), "");
}

TEST(ClusterPartition, RejectsBadTau) {
    auto idx = TextIndex::build(Text("abab"));
    try {
        ClusterPartition cp(idx.tree(), 0);
        FAIL();
    } catch (const error& e) {
        EXPECT_EQ(e.code(), errc::bad_tau);
    }
}

TEST(ClusterPartition, SpineMetadata) {
    auto idx = TextIndex::build(Text("abracadabraabracadabra"));
    const auto& t = idx.tree();
    ClusterPartition cp(t, 4);
    ASSERT_EQ(testing::check_partition(t, cp), "");
    bool saw_path = false;
    for (const auto& c : cp.clusters()) {
        if (!c.is_path()) continue;
        saw_path = true;
        auto m = cp.spine_metadata(c.bottom);
        EXPECT_TRUE(m.on_spine);
        EXPECT_EQ(m.lower_boundary, c.bottom);
    }
    EXPECT_TRUE(saw_path);
    for (std::int32_t v = 1; v < t.size(); ++v) {
        if (t.is_leaf(v) && !cp.is_boundary(v)) {
            EXPECT_FALSE(cp.spine_metadata(v).on_spine);
            EXPECT_TRUE(cp.spine_metadata(v).local_rank.has_value());
        }
    }
}

TEST(ClusterPartition, RawRoundTrip) {
    auto idx = TextIndex::build(Text("abracadabra"));
    ClusterPartition cp(idx.tree(), 3);
    auto back = ClusterPartition::from_raw(cp.to_raw());
    EXPECT_EQ(testing::check_partition(idx.tree(), back), "");
    for (std::int32_t v = 0; v < idx.tree().size(); ++v) {
        EXPECT_EQ(back.owner(v), cp.owner(v));
        EXPECT_EQ(back.lower_boundary(v), cp.lower_boundary(v));
        EXPECT_EQ(back.local_rank(v), cp.local_rank(v));
        EXPECT_EQ(back.boundary_index(v), cp.boundary_index(v));
    }
}

TEST(ClusterPartitionProperty, InvariantsAcrossTextsAndTau) {
    std::mt19937_64 rng(31);
    for (int rep = 0; rep < 120; ++rep) {
        const int sigma = std::array{2, 4, 26}[rep % 3];
        const std::size_t n = rep < 6 ? 2000 : rng() % 600;
        const auto s = rep % 4 == 0 ? testing::periodic_text(rng, n, sigma) : testing::random_text(rng, n, sigma);
        auto idx = TextIndex::build(Text(s));
        const auto& t = idx.tree();
        for (std::int64_t tau : {std::int64_t{1}, std::int64_t{2}, std::int64_t{3},
                                 std::int64_t{1} + static_cast<std::int64_t>(rng() % t.size()),
                                 static_cast<std::int64_t>(t.size())}) {
            ClusterPartition cp(t, tau);
            ASSERT_EQ(testing::check_partition(t, cp), "") << "n=" << n << " tau=" << tau;
            const double bound = ClusterPartition::kCountConstant * static_cast<double>(t.size()) /
                                 static_cast<double>(cp.capacity());
            ASSERT_LE(static_cast<double>(cp.clusters().size()), std::max(bound, 1.0)) << "tau=" << tau;
        }
    }
}

}  // namespace
}  // namespace gapidx
