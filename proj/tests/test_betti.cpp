#include <gtest/gtest.h>

#include "eideal/betti.hpp"
#include "eideal/chordality.hpp"
#include "support.hpp"

using namespace eideal;
using namespace eideal::testing;

namespace {
const Field Q = Field::rationals();
const Field F2 = Field::gf(2);

Graph two_k2() { return build_graph(4, {{0, 1}, {2, 3}}); }

std::map<std::pair<int, int>, std::uint64_t> T(std::initializer_list<std::tuple<int, int, std::uint64_t>> xs) {
    std::map<std::pair<int, int>, std::uint64_t> m;
    for (auto [i, j, b] : xs) m[{i, j}] = b;
    return m;
}

/// A tree with a few extra edges, so components carry pendant structure.
Graph tree_plus(Rng& rng, std::size_t n, std::size_t extra) {
    Graph g = random_tree(rng, n);
    for (std::size_t k = 0; k < extra; ++k) {
        const auto u = static_cast<Vertex>(rng.below(n)), v = static_cast<Vertex>(rng.below(n));
        if (u != v) g.set_edge_unchecked(u, v);
    }
    return g;
}
}  // namespace

TEST(Homology, SmallComplexes) {
    const SimplicialComplex circle(3, {0b011, 0b110, 0b101});
    EXPECT_EQ(reduced_homology_dims(circle, Q).dims, (std::vector<std::uint64_t>{0, 0, 1}));
    EXPECT_TRUE(reduced_homology_dims(SimplicialComplex::simplex(5), Q).is_zero());
    EXPECT_EQ(reduced_homology_dims(SimplicialComplex(2, {0b01, 0b10}), Q).dims, (std::vector<std::uint64_t>{0, 1}));
    EXPECT_EQ(reduced_homology_dims(SimplicialComplex::empty_complex(), Q).at(-1), 1u);
    EXPECT_TRUE(reduced_homology_dims(SimplicialComplex::void_complex(), Q).is_zero());
    EXPECT_EQ(reduced_homology_dims(SimplicialComplex::void_complex(), Q).at(-1), 0u);
    EXPECT_THROW(reduced_homology_dims(SimplicialComplex(25, {1}), Q), std::invalid_argument);
}

TEST(Homology, ProjectivePlaneTorsion) {
    // 6-vertex RP^2: H~_1 vanishes over Q but not over GF(2)
    const std::vector<std::array<int, 3>> tri = {{0, 1, 2}, {0, 2, 3}, {0, 3, 4}, {0, 4, 5}, {0, 5, 1},
                                                 {1, 2, 4}, {2, 3, 5}, {3, 4, 1}, {4, 5, 2}, {5, 1, 3}};
    std::vector<FaceMask> facets;
    for (auto t : tri) facets.push_back((1u << t[0]) | (1u << t[1]) | (1u << t[2]));
    const SimplicialComplex rp2(6, facets);
    EXPECT_TRUE(reduced_homology_dims(rp2, Q).is_zero());
    const auto h2 = reduced_homology_dims(rp2, F2);
    EXPECT_EQ(h2.at(1), 1u);
    EXPECT_EQ(h2.at(2), 1u);
    EXPECT_TRUE(reduced_homology_dims(rp2, Field::gf(3)).is_zero());
}

TEST(Homology, IndependenceComplex) {
    const auto k3 = independence_complex(complete_graph(3));
    EXPECT_EQ(k3.facets(), (std::vector<FaceMask>{1, 2, 4}));
    EXPECT_EQ(independence_complex(Graph(3)).facets(), (std::vector<FaceMask>{7}));
    const auto c5 = independence_complex(cycle_graph(5));
    EXPECT_EQ(c5.facets().size(), 5u);
    for (FaceMask f : c5.facets()) EXPECT_EQ(std::popcount(f), 2);
}

TEST(Homology, ReductionsMatchBoundaryMatrices) {
    for (std::size_t n = 0; n <= 6; ++n)
        for (const Graph& g : enumerate_graphs(n)) {
            const auto direct = reduced_homology_dims(independence_complex(g), Q);
            auto fast = independence_homology(g, Q);
            auto d = direct.dims;
            while (!d.empty() && d.back() == 0) d.pop_back();
            ASSERT_EQ(fast.dims, d) << to_edge_list(g);
        }
    Rng rng(3);
    for (int t = 0; t < 1500; ++t) {
        const std::size_t n = 7 + rng.below(6);
        const Graph g = random_graph(rng, n, 0.15 + 0.7 * rng.uniform());
        for (Field f : {Q, F2}) {
            auto d = reduced_homology_dims(independence_complex(g), f).dims;
            while (!d.empty() && d.back() == 0) d.pop_back();
            ASSERT_EQ(independence_homology(g, f).dims, d) << to_edge_list(g);
        }
    }
}

TEST(BettiTable, Examples) {
    EXPECT_EQ(betti_table(cycle_graph(5)).entries, T({{1, 2, 5}, {2, 3, 5}, {3, 5, 1}}));
    EXPECT_EQ(betti_table(complete_graph(2)).entries, T({{1, 2, 1}}));
    EXPECT_EQ(betti_table(two_k2()).entries, T({{1, 2, 2}, {2, 4, 1}}));
    EXPECT_TRUE(betti_table(Graph(4)).entries.empty());
    EXPECT_THROW(betti_table(Graph(19)), GuardExceeded);
    EXPECT_EQ(betti_table(cycle_graph(5)).at(0, 0), 1u);
}

TEST(BettiTable, MatchesPlainRoute) {
    Rng rng(17);
    for (int t = 0; t < 60; ++t) {
        const std::size_t n = 2 + rng.below(7);
        const Graph g = random_graph(rng, n, 0.2 + 0.6 * rng.uniform());
        for (Field f : {Q, F2}) {
            ASSERT_EQ(betti_table(g, f).entries, betti_table_plain(g, f).entries) << to_edge_list(g);
        }
    }
}

TEST(BettiTable, SupportAndFieldIndependenceExhaustiveSix) {
    BettiEngine q(Q, 18, 6), f2(F2, 18, 6);
    for (std::size_t n = 0; n <= 6; ++n)
        for (const Graph& g : enumerate_graphs(n)) {
            const auto a = q.table(g);
            for (auto& [ij, b] : a.entries) {
                EXPECT_GE(ij.first, 1);
                EXPECT_LE(ij.first + 1, ij.second);
                EXPECT_LE(ij.second, 2 * ij.first);
                EXPECT_GE(b, 1u);
            }
            ASSERT_EQ(a.entries, f2.table(g).entries) << to_edge_list(g);
        }
}

TEST(BettiTable, JsonRoundTrip) {
    const auto t = betti_table(cycle_graph(5));
    const auto j = to_json(t);
    EXPECT_EQ(j.dump(), R"({"entries":[[1,2,5],[2,3,5],[3,5,1]],"field":"Q","n":5})");
    EXPECT_EQ(betti_table_from_json(j), t);
}

TEST(Invariants, Examples) {
    const auto c5 = invariants(cycle_graph(5));
    EXPECT_EQ(c5.regularity_quotient, 2);
    EXPECT_EQ(c5.regularity_ideal, 3);
    EXPECT_EQ(c5.pd_quotient, 3);
    EXPECT_EQ(c5.depth_quotient, 2);
    EXPECT_EQ(c5.krull_dim, 2u);
    const auto k2 = invariants(complete_graph(2));
    EXPECT_EQ(k2.regularity_ideal, 2);
    EXPECT_EQ(k2.pd_quotient, 1);
    EXPECT_EQ(k2.depth_quotient, 1);
    const auto e4 = invariants(Graph(4));
    EXPECT_EQ(e4.pd_quotient, 0);
    EXPECT_EQ(e4.depth_quotient, 4);
    EXPECT_EQ(e4.regularity_quotient, 0);
}

TEST(Predicates, Examples) {
    EXPECT_FALSE(has_linear_resolution(cycle_graph(5)));
    EXPECT_TRUE(has_linear_presentation(cycle_graph(5)));
    EXPECT_TRUE(has_linear_resolution(cycle_graph(4)));
    EXPECT_TRUE(is_cochordal(cycle_graph(4)));
    EXPECT_FALSE(has_linear_resolution(two_k2()));
    EXPECT_FALSE(has_linear_presentation(two_k2()));
    EXPECT_TRUE(has_linear_resolution(Graph(3)));
    EXPECT_TRUE(has_linear_presentation(Graph(3)));
}

TEST(Predicates, FrobergAndNevoPeevaUpToSix) {
    BettiEngine e(Q, 18, 6);
    for (std::size_t n = 0; n <= 6; ++n)
        for (const Graph& g : enumerate_graphs(n)) {
            const auto t = e.table(g);
            ASSERT_EQ(linear_resolution_from_table(t), is_cochordal(g)) << to_edge_list(g);
            ASSERT_EQ(linear_presentation_from_table(t), is_4_cochordal(g)) << to_edge_list(g);
        }
}

TEST(Componentwise, Examples) {
    const Graph c5k2 = disjoint_union(cycle_graph(5), complete_graph(2));
    const auto r = regularity_componentwise(c5k2);
    EXPECT_EQ(r.value, 3u);
    EXPECT_EQ(r.value + 1, 4u);
    EXPECT_FALSE(r.censored());
    EXPECT_EQ(pd_componentwise(c5k2).value, 4u);
    EXPECT_EQ(pd_componentwise(Graph(5)).value, 0u);
    EXPECT_EQ(regularity_componentwise(Graph(5)).value, 0u);

    const Graph forest = disjoint_union(path_graph(3), path_graph(3));
    EXPECT_EQ(pd_componentwise(forest).value, static_cast<std::size_t>(betti_table(forest).pd_quotient()));
    EXPECT_EQ(regularity_componentwise(forest).value, 2u);

    // 20-vertex non-tree component: censored when reductions are off
    Graph big = cycle_graph(20);
    ComponentwiseOptions off;
    off.reductions = false;
    const auto rc = regularity_componentwise(big, off);
    EXPECT_EQ(rc.censored_components, 1u);
    EXPECT_EQ(rc.censored_vertices, 20u);
    EXPECT_LE(rc.lower, 7u);
    EXPECT_GE(rc.upper, 7u);
    EXPECT_EQ(regularity_componentwise(big).value, 7u);
    EXPECT_EQ(pd_componentwise(big).censored_components, 1u);
}

TEST(Componentwise, CycleRuleAgainstBetti) {
    for (std::size_t n = 3; n <= 16; ++n)
        EXPECT_EQ(static_cast<std::size_t>(betti_table(cycle_graph(n)).regularity_quotient()), (n + 1) / 3) << n;
}

TEST(Componentwise, ReductionRulesAgainstBetti) {
    Rng rng(23);
    ComponentwiseOptions tiny;
    tiny.guard = 3;
    for (int t = 0; t < 400; ++t) {
        const std::size_t n = 4 + rng.below(9);
        const Graph g = tree_plus(rng, n, 1 + rng.below(3));
        const auto r = regularity_componentwise(g, tiny);
        const int exact = betti_table(g).regularity_quotient();
        ASSERT_LE(r.lower, static_cast<std::size_t>(exact)) << to_edge_list(g);
        ASSERT_GE(r.upper, static_cast<std::size_t>(exact)) << to_edge_list(g);
        if (!r.censored()) {
            ASSERT_EQ(r.value, static_cast<std::size_t>(exact)) << to_edge_list(g);
        }
    }
}

TEST(Componentwise, AdditivityAndForestRegularity) {
    Rng rng(29);
    for (int t = 0; t < 60; ++t) {
        const Graph f = random_forest(rng, 2 + rng.below(11), 0.2);
        EXPECT_EQ(betti_table(f).regularity_quotient(), static_cast<int>(tree_induced_matching(f)));
        const Graph a = random_graph(rng, 1 + rng.below(6), 0.5), b = random_graph(rng, 1 + rng.below(5), 0.5);
        const Graph u = disjoint_union(a, b);
        const auto tu = betti_table(u);
        EXPECT_EQ(tu.regularity_quotient(), betti_table(a).regularity_quotient() + betti_table(b).regularity_quotient());
        EXPECT_EQ(tu.pd_quotient(), betti_table(a).pd_quotient() + betti_table(b).pd_quotient());
        EXPECT_EQ(static_cast<int>(regularity_componentwise(u).value), tu.regularity_quotient());
        EXPECT_EQ(static_cast<int>(pd_componentwise(u).value), tu.pd_quotient());
    }
}

// pd of a forest equals its big height; validated against Hochster on every
// forest up to 7 vertices and random forests up to the guard.
TEST(Componentwise, ForestPdIsBigHeight) {
    for (std::size_t n = 1; n <= 7; ++n)
        for (const Graph& g : enumerate_graphs(n)) {
            if (!is_forest(g)) continue;
            ASSERT_EQ(static_cast<std::size_t>(betti_table(g).pd_quotient()), forest_big_height(g)) << to_edge_list(g);
        }
    Rng rng(61);
    BettiEngine engine(Field::rationals(), 18, 7);
    for (int t = 0; t < 60; ++t) {
        const Graph f = random_forest(rng, 9 + rng.below(10), t % 3 == 0 ? 0.15 : 0.0);
        ASSERT_EQ(static_cast<std::size_t>(engine.table(f).pd_quotient()), forest_big_height(f)) << to_edge_list(f);
    }
}
