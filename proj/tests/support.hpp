#pragma once

// Test-only generators and brute-force oracles.

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <vector>

#include "eideal/graph.hpp"
#include "eideal/rng.hpp"

namespace eideal::testing {

inline Graph random_graph(Rng& rng, std::size_t n, double p) {
    Graph g(n);
    for (Vertex u = 0; u < n; ++u)
        for (Vertex v = u + 1; v < n; ++v)
            if (rng.bernoulli(p)) g.set_edge_unchecked(u, v);
    return g;
}

/// Uniform labeled tree on n vertices from a random Prüfer sequence.
inline Graph random_tree(Rng& rng, std::size_t n) {
    Graph g(n);
    if (n < 2) return g;
    std::vector<Vertex> seq(n - 2);
    for (auto& x : seq) x = static_cast<Vertex>(rng.below(n));
    std::vector<std::size_t> deg(n, 1);
    for (Vertex x : seq) ++deg[x];
    for (Vertex x : seq) {
        Vertex leaf = 0;
        while (deg[leaf] != 1) ++leaf;
        g.set_edge_unchecked(leaf, x);
        --deg[leaf];
        --deg[x];
    }
    Vertex a = 0;
    while (deg[a] != 1) ++a;
    Vertex b = a + 1;
    while (deg[b] != 1) ++b;
    g.set_edge_unchecked(a, b);
    return g;
}

/// Random forest: a random tree with each edge dropped with probability drop.
inline Graph random_forest(Rng& rng, std::size_t n, double drop) {
    const Graph t = random_tree(rng, n);
    Graph g(n);
    for (auto [u, v] : t.edges())
        if (!rng.bernoulli(drop)) g.set_edge_unchecked(u, v);
    return g;
}

/// Applies a random vertex permutation.
inline Graph relabel(const Graph& g, const std::vector<Vertex>& perm) {
    Graph h(g.n());
    for (auto [u, v] : g.edges()) h.set_edge_unchecked(perm[u], perm[v]);
    return h;
}

inline bool isomorphic_brute(const Graph& a, const Graph& b) {
    if (a.n() != b.n() || a.edge_count() != b.edge_count()) return false;
    std::vector<Vertex> perm(a.n());
    std::iota(perm.begin(), perm.end(), 0);
    do {
        if (relabel(a, perm) == b) return true;
    } while (std::next_permutation(perm.begin(), perm.end()));
    return false;
}

inline std::vector<Vertex> mask_vertices(std::uint64_t mask, std::size_t n) {
    std::vector<Vertex> w;
    for (Vertex v = 0; v < n; ++v)
        if ((mask >> v) & 1u) w.push_back(v);
    return w;
}

/// True iff the graph is a single cycle through all its vertices.
inline bool is_cycle_graph(const Graph& h) {
    if (h.n() < 3) return false;
    for (Vertex v = 0; v < h.n(); ++v)
        if (h.degree(v) != 2) return false;
    return is_connected(h);
}

/// Chordless cycles of length k by checking every k-subset.
inline std::uint64_t chordless_cycles_brute(const Graph& g, std::size_t k) {
    std::uint64_t c = 0;
    for (std::uint64_t m = 0; m < (std::uint64_t{1} << g.n()); ++m)
        if (static_cast<std::size_t>(std::popcount(m)) == k && is_cycle_graph(induced_subgraph(g, mask_vertices(m, g.n()))))
            ++c;
    return c;
}

inline bool chordal_brute(const Graph& g) {
    for (std::size_t k = 4; k <= g.n(); ++k)
        if (chordless_cycles_brute(g, k)) return false;
    return true;
}

/// Largest set of edges whose endpoints induce exactly those edges, by
/// exhaustive backtracking over the edge list.
inline std::size_t induced_matching_brute(const Graph& g) {
    const auto es = g.edges();
    std::size_t best = 0;
    std::vector<Vertex> used;
    auto ok = [&](Vertex x) {
        for (Vertex y : used)
            if (x == y || g.adjacent(x, y)) return false;
        return true;
    };
    auto rec = [&](auto&& self, std::size_t i, std::size_t k) -> void {
        best = std::max(best, k);
        for (std::size_t e = i; e < es.size(); ++e) {
            auto [u, v] = es[e];
            if (!ok(u) || !ok(v)) continue;
            used.push_back(u);
            used.push_back(v);
            self(self, e + 1, k + 1);
            used.pop_back();
            used.pop_back();
        }
    };
    rec(rec, 0, 0);
    return best;
}

inline std::size_t matching_brute(const Graph& g) {
    const auto es = g.edges();
    std::size_t best = 0;
    std::uint64_t used = 0;
    auto rec = [&](auto&& self, std::size_t i, std::size_t k) -> void {
        best = std::max(best, k);
        for (std::size_t e = i; e < es.size(); ++e) {
            const std::uint64_t b = (std::uint64_t{1} << es[e].first) | (std::uint64_t{1} << es[e].second);
            if (used & b) continue;
            used |= b;
            self(self, e + 1, k + 1);
            used &= ~b;
        }
    };
    rec(rec, 0, 0);
    return best;
}

inline bool independent_mask(const Graph& g, std::uint64_t m) {
    for (Vertex v = 0; v < g.n(); ++v)
        if ((m >> v) & 1u)
            for (Vertex u = v + 1; u < g.n(); ++u)
                if (((m >> u) & 1u) && g.adjacent(u, v)) return false;
    return true;
}

/// (min cover, max minimal cover) over all vertex subsets, isolated vertices excluded.
inline std::pair<std::size_t, std::size_t> cover_extremes_brute(const Graph& g) {
    std::size_t lo = g.n(), hi = 0;
    bool any = false;
    for (std::uint64_t c = 0; c < (std::uint64_t{1} << g.n()); ++c) {
        if (!independent_mask(g, ~c & ((std::uint64_t{1} << g.n()) - 1))) continue;
        bool minimal = true;
        for (Vertex v = 0; v < g.n() && minimal; ++v)
            if (((c >> v) & 1u) && independent_mask(g, (~c | (std::uint64_t{1} << v)) & ((std::uint64_t{1} << g.n()) - 1)))
                minimal = false;
        if (!minimal) continue;
        any = true;
        const std::size_t s = static_cast<std::size_t>(std::popcount(c));
        lo = std::min(lo, s);
        hi = std::max(hi, s);
    }
    if (!any) return {0, 0};
    return {lo, hi};
}

}  // namespace eideal::testing
