#pragma once

#include <algorithm>
#include <cstdint>
#include <limits>
#include <numeric>
#include <queue>
#include <stdexcept>
#include <vector>

#include "errors.hpp"
#include "graph.hpp"

namespace eideal {

inline constexpr std::uint64_t kDefaultNodeBudget = 10'000'000;

namespace detail {

inline constexpr long long kNeg = std::numeric_limits<long long>::min() / 4;

/// Induced matching DP over a rooted forest given as a parent array in which
/// every vertex appears after its parent (roots have parent[v] == v).
/// States per vertex: unused; matched to a child; reserved for its parent.
inline std::size_t forest_induced_matching(const std::vector<std::uint32_t>& parent) {
    const std::size_t n = parent.size();
    std::vector<long long> sum_best(n, 0), sum_unused(n, 0), gain(n, kNeg);
    long long total = 0;
    for (std::size_t i = n; i-- > 0;) {
        const long long unused = sum_best[i];
        const long long up = sum_unused[i];
        const long long down = gain[i] == kNeg ? kNeg : 1 + up + gain[i];
        const long long best = std::max(unused, down);
        const std::size_t p = parent[i];
        if (p == i) {
            total += best;
            continue;
        }
        sum_best[p] += best;
        sum_unused[p] += unused;
        gain[p] = std::max(gain[p], up - unused);
    }
    return static_cast<std::size_t>(total);
}

/// Smallest maximal independent set of a rooted forest (parent array as
/// above). States per vertex: in the set; out and dominated by a child; out
/// and left for its parent to dominate.
inline std::size_t forest_independent_domination(const std::vector<std::uint32_t>& parent) {
    constexpr long long inf = std::numeric_limits<long long>::max() / 4;
    const std::size_t n = parent.size();
    std::vector<long long> in(n, 1), free_sum(n, 0), sum_ab(n, 0), extra(n, inf), sum_b(n, 0);
    long long total = 0;
    for (std::size_t i = n; i-- > 0;) {
        const long long a = in[i] + free_sum[i];
        const long long b = extra[i] == inf ? inf : sum_ab[i] + extra[i];
        const long long c = sum_b[i];
        const std::size_t p = parent[i];
        if (p == i) {
            total += std::min(a, b);
            continue;
        }
        const long long ab = std::min(a, b);
        free_sum[p] += std::min(b, c);
        sum_ab[p] += ab;
        extra[p] = std::min(extra[p], a - ab);
        sum_b[p] = (b == inf || sum_b[p] >= inf) ? inf : sum_b[p] + b;
    }
    return static_cast<std::size_t>(total);
}

/// BFS parent array of a forest, renumbered so parents precede children.
/// Returns false if g has a cycle.
inline bool forest_parent_array(const Graph& g, std::vector<std::uint32_t>& parent) {
    const std::size_t n = g.n();
    if (g.edge_count() >= n && n > 0) return false;
    std::vector<std::uint32_t> pos(n, UINT32_MAX);
    parent.clear();
    parent.reserve(n);
    std::vector<Vertex> order;
    order.reserve(n);
    std::size_t edges_seen = 0;
    for (Vertex r = 0; r < n; ++r) {
        if (pos[r] != UINT32_MAX) continue;
        pos[r] = static_cast<std::uint32_t>(order.size());
        parent.push_back(pos[r]);
        order.push_back(r);
        for (std::size_t head = pos[r]; head < order.size(); ++head) {
            const Vertex v = order[head];
            g.for_each_neighbor(v, [&](Vertex u) {
                if (pos[u] == UINT32_MAX) {
                    pos[u] = static_cast<std::uint32_t>(order.size());
                    parent.push_back(static_cast<std::uint32_t>(head));
                    order.push_back(u);
                    ++edges_seen;
                }
            });
        }
    }
    return edges_seen == g.edge_count();
}

}  // namespace detail

inline std::size_t tree_induced_matching(const Graph& g) {
    std::vector<std::uint32_t> parent;
    if (!detail::forest_parent_array(g, parent)) throw std::invalid_argument("tree_induced_matching: input has a cycle");
    return detail::forest_induced_matching(parent);
}

/// Same DP for a GW-style parent array (parent[0] == 0, parent[v] < v).
inline std::size_t tree_induced_matching(const std::vector<std::uint32_t>& parent) {
    return detail::forest_induced_matching(parent);
}

/// Largest minimal vertex cover of a forest: n minus the smallest maximal
/// independent set.
inline std::size_t forest_big_height(const std::vector<std::uint32_t>& parent) {
    return parent.size() - detail::forest_independent_domination(parent);
}

inline std::size_t forest_big_height(const Graph& g) {
    std::vector<std::uint32_t> parent;
    if (!detail::forest_parent_array(g, parent)) throw std::invalid_argument("forest_big_height: input has a cycle");
    return forest_big_height(parent);
}

namespace detail {

inline std::size_t induced_matching_rec(const Graph& h, std::uint64_t& budget) {
    if (budget == 0) throw BudgetExceeded("induced_matching_number: node budget exhausted");
    --budget;
    if (h.edge_count() == 0) return 0;
    const Graph core = strip_isolated(h);
    auto parts = connected_components(core, true);
    if (parts.count() > 1) {
        std::size_t s = 0;
        for (const auto& c : parts.component_subgraphs) s += induced_matching_rec(c, budget);
        return s;
    }
    std::vector<std::uint32_t> parent;
    if (forest_parent_array(core, parent)) return forest_induced_matching(parent);
    Vertex v = 0;
    for (Vertex u = 1; u < core.n(); ++u)
        if (core.degree(u) > core.degree(v)) v = u;
    std::size_t best = induced_matching_rec(delete_vertex(core, v), budget);
    const std::size_t bound = core.n() / 2;
    for (Vertex w : core.neighbors(v)) {
        if (best >= bound) break;
        std::vector<bool> keep(core.n(), true);
        keep[v] = keep[w] = false;
        core.for_each_neighbor(v, [&](Vertex x) { keep[x] = false; });
        core.for_each_neighbor(w, [&](Vertex x) { keep[x] = false; });
        best = std::max(best, 1 + induced_matching_rec(induced_subgraph_mask(core, keep), budget));
    }
    return best;
}

}  // namespace detail

/// Exact induced matching number. A vertex of maximum degree is either left
/// out or matched along one of its edges.
inline std::size_t induced_matching_number(const Graph& g, std::uint64_t budget = kDefaultNodeBudget) {
    return detail::induced_matching_rec(g, budget);
}

/// Maximum matching size by Edmonds' blossom algorithm.
inline std::size_t matching_number(const Graph& g) {
    const std::size_t n = g.n();
    if (n < 2) return 0;
    std::vector<std::vector<Vertex>> adj(n);
    for (Vertex v = 0; v < n; ++v) adj[v] = g.neighbors(v);
    constexpr int none = -1;
    std::vector<int> match(n, none), par(n), base(n);
    std::vector<char> used(n), blossom(n);
    std::vector<int> q;

    auto lca = [&](int a, int b) {
        std::vector<char> seen(n, 0);
        for (;;) {
            a = base[a];
            seen[a] = 1;
            if (match[a] == none) break;
            a = par[match[a]];
        }
        for (;;) {
            b = base[b];
            if (seen[b]) return b;
            b = par[match[b]];
        }
    };
    auto mark_path = [&](int v, int b, int child) {
        while (base[v] != b) {
            blossom[base[v]] = blossom[base[match[v]]] = 1;
            par[v] = child;
            child = match[v];
            v = par[match[v]];
        }
    };
    auto find_path = [&](int root) -> int {
        std::fill(used.begin(), used.end(), 0);
        std::fill(par.begin(), par.end(), none);
        std::iota(base.begin(), base.end(), 0);
        used[root] = 1;
        q.assign(1, root);
        for (std::size_t qh = 0; qh < q.size(); ++qh) {
            const int v = q[qh];
            for (Vertex uu : adj[v]) {
                const int to = static_cast<int>(uu);
                if (base[v] == base[to] || match[v] == to) continue;
                if (to == root || (match[to] != none && par[match[to]] != none)) {
                    const int cur = lca(v, to);
                    std::fill(blossom.begin(), blossom.end(), 0);
                    mark_path(v, cur, to);
                    mark_path(to, cur, v);
                    for (std::size_t i = 0; i < n; ++i)
                        if (blossom[base[i]]) {
                            base[i] = cur;
                            if (!used[i]) {
                                used[i] = 1;
                                q.push_back(static_cast<int>(i));
                            }
                        }
                } else if (par[to] == none) {
                    par[to] = v;
                    if (match[to] == none) return to;
                    used[match[to]] = 1;
                    q.push_back(match[to]);
                }
            }
        }
        return none;
    };

    // greedy start
    for (Vertex v = 0; v < n; ++v)
        if (match[v] == none)
            for (Vertex u : adj[v])
                if (match[u] == none) {
                    match[u] = static_cast<int>(v);
                    match[v] = static_cast<int>(u);
                    break;
                }
    for (Vertex v = 0; v < n; ++v) {
        if (match[v] != none || adj[v].empty()) continue;
        int x = find_path(static_cast<int>(v));
        while (x != none) {
            const int pv = par[x], ppv = match[pv];
            match[x] = pv;
            match[pv] = x;
            x = ppv;
        }
    }
    std::size_t m = 0;
    for (Vertex v = 0; v < n; ++v) m += match[v] != none;
    return m / 2;
}

namespace detail {

/// Maximum clique with greedy-coloring bound (MCQ style).
inline std::size_t max_clique(const Graph& h, std::uint64_t& budget) {
    const std::size_t n = h.n();
    if (n == 0) return 0;
    std::size_t best = 0;
    std::vector<Vertex> cand(n);
    std::iota(cand.begin(), cand.end(), 0);
    std::sort(cand.begin(), cand.end(), [&](Vertex a, Vertex b) { return h.degree(a) > h.degree(b); });

    auto rec = [&](auto&& self, std::vector<Vertex>& p, std::size_t depth) -> void {
        if (budget == 0) throw BudgetExceeded("independence_number: node budget exhausted");
        --budget;
        // greedy coloring of p; color classes are independent in h
        std::vector<std::vector<Vertex>> classes;
        for (Vertex v : p) {
            bool placed = false;
            for (auto& cl : classes) {
                bool ok = true;
                for (Vertex u : cl)
                    if (h.adjacent(u, v)) {
                        ok = false;
                        break;
                    }
                if (ok) {
                    cl.push_back(v);
                    placed = true;
                    break;
                }
            }
            if (!placed) classes.push_back({v});
        }
        std::vector<std::pair<Vertex, std::size_t>> order;
        for (std::size_t c = 0; c < classes.size(); ++c)
            for (Vertex v : classes[c]) order.emplace_back(v, c + 1);
        for (std::size_t i = order.size(); i-- > 0;) {
            if (depth + order[i].second <= best) return;
            const Vertex v = order[i].first;
            std::vector<Vertex> np;
            for (std::size_t j = 0; j < i; ++j)
                if (h.adjacent(v, order[j].first)) np.push_back(order[j].first);
            if (np.empty()) best = std::max(best, depth + 1);
            else self(self, np, depth + 1);
        }
    };
    rec(rec, cand, 0);
    return best;
}

}  // namespace detail

inline std::size_t independence_number(const Graph& g, std::uint64_t budget = kDefaultNodeBudget) {
    std::size_t alpha = 0;
    auto parts = connected_components(g, true);
    for (const auto& c : parts.component_subgraphs) {
        if (c.n() == 1) {
            ++alpha;
            continue;
        }
        alpha += detail::max_clique(complement(c), budget);
    }
    return alpha;
}

namespace detail {

template <class Fn>
void enumerate_mis(const Graph& g, Fn&& fn, std::uint64_t& budget) {
    const std::size_t n = g.n(), s = g.stride();
    using Set = std::vector<Word>;
    Set all(s, 0);
    for (Vertex v = 0; v < n; ++v) all[v / kWordBits] |= Word{1} << (v % kWordBits);
    auto non_nbrs = [&](Vertex v, Set& out) {
        const Word* r = g.row(v);
        for (std::size_t k = 0; k < s; ++k) out[k] = all[k] & ~r[k];
        out[v / kWordBits] &= ~(Word{1} << (v % kWordBits));
    };
    std::vector<Vertex> r;
    auto empty = [](const Set& x) {
        for (Word w : x)
            if (w) return false;
        return true;
    };
    auto rec = [&](auto&& self, Set p, Set x) -> void {
        if (empty(p)) {
            if (empty(x)) {
                if (budget == 0) throw BudgetExceeded("maximal independent set enumeration budget exhausted");
                --budget;
                fn(static_cast<const std::vector<Vertex>&>(r));
            }
            return;
        }
        // pivot: vertex of p or x with the most non-neighbors in p
        Vertex pivot = 0;
        long best = -1;
        Set tmp(s);
        for (const Set* src : {&p, &x})
            for (std::size_t k = 0; k < s; ++k) {
                Word w = (*src)[k];
                while (w) {
                    const Vertex u = static_cast<Vertex>(k * kWordBits + std::countr_zero(w));
                    w &= w - 1;
                    non_nbrs(u, tmp);
                    long c = 0;
                    for (std::size_t t = 0; t < s; ++t) c += std::popcount(tmp[t] & p[t]);
                    if (c > best) {
                        best = c;
                        pivot = u;
                    }
                }
            }
        Set branch(s);
        const Word* rp = g.row(pivot);
        for (std::size_t k = 0; k < s; ++k) branch[k] = p[k] & rp[k];
        branch[pivot / kWordBits] |= p[pivot / kWordBits] & (Word{1} << (pivot % kWordBits));
        for (std::size_t k = 0; k < s; ++k) {
            Word w = branch[k];
            while (w) {
                const Vertex v = static_cast<Vertex>(k * kWordBits + std::countr_zero(w));
                w &= w - 1;
                non_nbrs(v, tmp);
                Set np(s), nx(s);
                for (std::size_t t = 0; t < s; ++t) {
                    np[t] = p[t] & tmp[t];
                    nx[t] = x[t] & tmp[t];
                }
                r.push_back(v);
                self(self, std::move(np), std::move(nx));
                r.pop_back();
                p[v / kWordBits] &= ~(Word{1} << (v % kWordBits));
                x[v / kWordBits] |= Word{1} << (v % kWordBits);
            }
        }
    };
    rec(rec, all, Set(s, 0));
}

}  // namespace detail

/// Calls fn(set) for every maximal independent set of g (vertices in
/// discovery order). Bron-Kerbosch with pivoting, phrased on independent sets.
template <class Fn>
void for_each_maximal_independent_set(const Graph& g, Fn&& fn, std::uint64_t budget = kDefaultNodeBudget) {
    detail::enumerate_mis(g, fn, budget);
}

struct CoverProfile {
    std::size_t min_cover = 0;
    std::size_t max_minimal_cover = 0;
    bool unmixed = true;
};

/// Extremes of minimal vertex cover sizes via maximal independent sets of each
/// non-trivial component. An edgeless graph has the single empty cover.
inline CoverProfile cover_profile(const Graph& g, std::uint64_t budget = kDefaultNodeBudget) {
    CoverProfile cp;
    auto parts = connected_components(g, true);
    for (const auto& c : parts.component_subgraphs) {
        if (c.n() == 1) continue;
        std::size_t lo = c.n(), hi = 0;
        detail::enumerate_mis(
            c,
            [&](const std::vector<Vertex>& set) {
                lo = std::min(lo, set.size());
                hi = std::max(hi, set.size());
            },
            budget);
        cp.min_cover += c.n() - hi;
        cp.max_minimal_cover += c.n() - lo;
    }
    cp.unmixed = cp.min_cover == cp.max_minimal_cover;
    return cp;
}

/// Whether all minimal vertex covers have one size. Stops at the first
/// component whose maximal independent sets differ in size.
inline bool is_unmixed(const Graph& g, std::uint64_t budget = kDefaultNodeBudget) {
    struct Mixed {};
    auto parts = connected_components(g, true);
    try {
        for (const auto& c : parts.component_subgraphs) {
            if (c.n() == 1) continue;
            std::size_t size = 0;
            detail::enumerate_mis(
                c,
                [&](const std::vector<Vertex>& set) {
                    if (size && set.size() != size) throw Mixed{};
                    size = set.size();
                },
                budget);
        }
    } catch (const Mixed&) {
        return false;
    }
    return true;
}

/// Number of components with at least one edge.
inline std::size_t nontrivial_components(const Graph& g) {
    auto parts = connected_components(g, false);
    std::size_t c = 0;
    for (std::size_t s : parts.sizes) c += s > 1;
    return c;
}

}  // namespace eideal
