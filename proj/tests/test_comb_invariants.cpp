#include <gtest/gtest.h>

#include "eideal/comb_invariants.hpp"
#include "support.hpp"

using namespace eideal;
using namespace eideal::testing;

TEST(InducedMatching, Examples) {
    EXPECT_EQ(induced_matching_number(cycle_graph(5)), 1u);
    EXPECT_EQ(induced_matching_number(cycle_graph(6)), 2u);
    EXPECT_EQ(induced_matching_number(path_graph(4)), 1u);
    EXPECT_EQ(induced_matching_brute(path_graph(4)), 1u);
    EXPECT_EQ(induced_matching_number(Graph(3)), 0u);
}

TEST(TreeInducedMatching, Examples) {
    EXPECT_EQ(tree_induced_matching(star_graph(5)), 1u);
    EXPECT_EQ(induced_matching_brute(star_graph(5)), 1u);
    EXPECT_EQ(tree_induced_matching(path_graph(7)), 2u);
    EXPECT_EQ(induced_matching_brute(path_graph(7)), 2u);
    EXPECT_EQ(tree_induced_matching(Graph(1)), 0u);
    EXPECT_THROW(tree_induced_matching(cycle_graph(4)), std::invalid_argument);
    // GW parent-array form
    EXPECT_EQ(tree_induced_matching(std::vector<std::uint32_t>{0, 0, 1, 2, 3, 4, 5}), 2u);
}

TEST(TreeInducedMatching, RandomForests) {
    Rng rng(51);
    for (int t = 0; t < 500; ++t) {
        const Graph f = random_forest(rng, 1 + rng.below(16), 0.15);
        ASSERT_EQ(tree_induced_matching(f), induced_matching_brute(f)) << to_edge_list(f);
        ASSERT_EQ(tree_induced_matching(f), induced_matching_number(f));
    }
}

TEST(Matching, Examples) {
    EXPECT_EQ(matching_number(cycle_graph(5)), 2u);
    EXPECT_EQ(matching_number(complete_graph(4)), 2u);
    EXPECT_EQ(matching_number(path_graph(4)), 2u);
    EXPECT_EQ(matching_brute(path_graph(4)), 2u);
}

TEST(Independence, Examples) {
    EXPECT_EQ(independence_number(cycle_graph(5)), 2u);
    EXPECT_EQ(independence_number(complete_graph(7)), 1u);
    EXPECT_EQ(independence_number(Graph(6)), 6u);
}

TEST(CoverProfile, Examples) {
    const auto p3 = cover_profile(path_graph(3));
    EXPECT_EQ(p3.min_cover, 1u);
    EXPECT_EQ(p3.max_minimal_cover, 2u);
    EXPECT_FALSE(p3.unmixed);
    const auto two = cover_profile(build_graph(4, {{0, 1}, {2, 3}}));
    EXPECT_EQ(two.min_cover, 2u);
    EXPECT_EQ(two.max_minimal_cover, 2u);
    EXPECT_TRUE(two.unmixed);
    const auto k5 = cover_profile(complete_graph(5));
    EXPECT_EQ(k5.min_cover, 4u);
    EXPECT_EQ(k5.max_minimal_cover, 4u);
    EXPECT_TRUE(k5.unmixed);
    EXPECT_TRUE(cover_profile(Graph(4)).unmixed);
    EXPECT_EQ(cover_profile(Graph(4)).min_cover, 0u);
}

TEST(CoverProfile, BudgetFailsLoudly) {
    EXPECT_THROW(cover_profile(complement(build_graph(8, {})), 0), BudgetExceeded);
    EXPECT_THROW(induced_matching_number(cycle_graph(9), 2), BudgetExceeded);
}

TEST(Properties, RandomCorpus) {
    Rng rng(53);
    for (int t = 0; t < 400; ++t) {
        const std::size_t n = 1 + rng.below(11);
        const Graph g = random_graph(rng, n, rng.uniform());
        const std::size_t nu = induced_matching_number(g), m = matching_number(g), a = independence_number(g);
        ASSERT_EQ(nu, induced_matching_brute(g)) << to_edge_list(g);
        ASSERT_EQ(m, matching_brute(g)) << to_edge_list(g);
        EXPECT_LE(nu, m);
        EXPECT_LE(2 * m, n);
        EXPECT_GE(nu, nontrivial_components(g));
        const auto cp = cover_profile(g);
        EXPECT_EQ(cp.min_cover + a, n);
        const auto [lo, hi] = cover_extremes_brute(g);
        ASSERT_EQ(cp.min_cover, lo) << to_edge_list(g);
        ASSERT_EQ(cp.max_minimal_cover, hi) << to_edge_list(g);
        EXPECT_LE(cp.min_cover, cp.max_minimal_cover);
        // additivity over a disjoint union
        const Graph h = random_graph(rng, 1 + rng.below(6), rng.uniform());
        const Graph u = disjoint_union(g, h);
        EXPECT_EQ(induced_matching_number(u), nu + induced_matching_number(h));
        EXPECT_EQ(matching_number(u), m + matching_number(h));
        EXPECT_EQ(independence_number(u), a + independence_number(h));
        EXPECT_EQ(cover_profile(u).max_minimal_cover, cp.max_minimal_cover + cover_profile(h).max_minimal_cover);
    }
}

TEST(Matching, LargerGraphsAgainstAugmentingBound) {
    // blossom result is a matching size no brute force can reach at this size;
    // check against the König bound on bipartite graphs (matching = min cover)
    Rng rng(57);
    for (int t = 0; t < 40; ++t) {
        const std::size_t a = 3 + rng.below(8), b = 3 + rng.below(8);
        Graph g(a + b);
        for (Vertex u = 0; u < a; ++u)
            for (Vertex v = 0; v < b; ++v)
                if (rng.bernoulli(0.3)) g.set_edge_unchecked(u, static_cast<Vertex>(a + v));
        EXPECT_EQ(matching_number(g), cover_profile(g).min_cover);
    }
}

TEST(ForestBigHeight, AgainstCoverEnumeration) {
    EXPECT_EQ(forest_big_height(star_graph(6)), 6u);
    EXPECT_EQ(forest_big_height(path_graph(4)), 2u);
    EXPECT_EQ(forest_big_height(path_graph(5)), 3u);
    EXPECT_EQ(forest_big_height(Graph(3)), 0u);
    EXPECT_THROW(forest_big_height(cycle_graph(5)), std::invalid_argument);
    Rng rng(59);
    for (int t = 0; t < 500; ++t) {
        const Graph f = random_forest(rng, 1 + rng.below(18), 0.2);
        ASSERT_EQ(forest_big_height(f), cover_extremes_brute(f).second) << to_edge_list(f);
        ASSERT_EQ(forest_big_height(f), cover_profile(f).max_minimal_cover);
    }
}

TEST(Unmixed, EarlyExitAgreesWithProfile) {
    EXPECT_TRUE(is_unmixed(Graph(5)));
    EXPECT_TRUE(is_unmixed(complete_graph(6)));
    EXPECT_FALSE(is_unmixed(path_graph(3)));
    EXPECT_TRUE(is_unmixed(cycle_graph(5)));
    Rng rng(67);
    for (int t = 0; t < 400; ++t) {
        const Graph g = random_graph(rng, 1 + rng.below(12), rng.uniform());
        ASSERT_EQ(is_unmixed(g), cover_profile(g).unmixed) << to_edge_list(g);
    }
}
