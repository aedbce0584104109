#pragma once

#include <bit>
#include <cstdint>
#include <map>
#include <vector>

#include "graph.hpp"

namespace eideal {

struct ChordlessCycleCount {
    std::map<std::size_t, std::uint64_t> by_length;  // k >= 4, zero entries included
    std::size_t truncation_length = 0;

    std::uint64_t at(std::size_t k) const {
        auto it = by_length.find(k);
        return it == by_length.end() ? 0 : it->second;
    }
    std::uint64_t total() const {
        std::uint64_t t = 0;
        for (auto& [k, c] : by_length) t += c;
        return t;
    }
};

namespace detail {

inline void set_bit(std::vector<Word>& m, Vertex v) { m[v / kWordBits] |= Word{1} << (v % kWordBits); }
inline bool test_bit(const std::vector<Word>& m, Vertex v) { return (m[v / kWordBits] >> (v % kWordBits)) & 1u; }

template <class Fn>
void for_each_bit(const std::vector<Word>& m, Fn&& fn) {
    for (std::size_t k = 0; k < m.size(); ++k) {
        Word w = m[k];
        while (w) {
            fn(static_cast<Vertex>(k * kWordBits + std::countr_zero(w)));
            w &= w - 1;
        }
    }
}

}  // namespace detail

/// Maximum cardinality search, then zero fill-in verification of the
/// reversed visit order.
inline bool is_chordal(const Graph& g) {
    const std::size_t n = g.n();
    if (n <= 3) return true;
    std::vector<std::size_t> weight(n, 0), order(n, 0);
    std::vector<bool> numbered(n, false);
    std::vector<std::vector<Vertex>> bucket(n + 1);
    bucket[0].reserve(n);
    for (Vertex v = n; v-- > 0;) bucket[0].push_back(v);
    std::size_t top = 0;
    std::vector<Word> visited(g.stride(), 0), later(g.stride());
    for (std::size_t i = 0; i < n; ++i) {
        Vertex v = 0;
        for (;;) {
            while (bucket[top].empty()) --top;
            v = bucket[top].back();
            bucket[top].pop_back();
            if (!numbered[v] && weight[v] == top) break;
        }
        numbered[v] = true;
        order[v] = i;
        // earlier-visited neighbors must form a clique around the latest one
        const Word* r = g.row(v);
        bool any = false;
        for (std::size_t k = 0; k < g.stride(); ++k) {
            later[k] = r[k] & visited[k];
            any |= later[k] != 0;
        }
        if (any) {
            Vertex u = 0;
            std::size_t best = 0;
            detail::for_each_bit(later, [&](Vertex x) {
                if (order[x] >= best) {
                    best = order[x];
                    u = x;
                }
            });
            later[u / kWordBits] &= ~(Word{1} << (u % kWordBits));
            const Word* ru = g.row(u);
            for (std::size_t k = 0; k < g.stride(); ++k)
                if (later[k] & ~ru[k]) return false;
        }
        detail::set_bit(visited, v);
        g.for_each_neighbor(v, [&](Vertex u) {
            if (!numbered[u]) {
                ++weight[u];
                bucket[weight[u]].push_back(u);
                if (weight[u] > top) top = weight[u];
            }
        });
    }
    return true;
}

/// True iff some four vertices induce a 4-cycle.
inline bool has_induced_c4(const Graph& g) {
    const std::size_t n = g.n(), s = g.stride();
    std::vector<Word> reach(s), common(s);
    for (Vertex a = 0; a < n; ++a) {
        if (g.degree(a) < 2) continue;
        std::fill(reach.begin(), reach.end(), 0);
        g.for_each_neighbor(a, [&](Vertex b) {
            const Word* rb = g.row(b);
            for (std::size_t k = 0; k < s; ++k) reach[k] |= rb[k];
        });
        const Word* ra = g.row(a);
        for (std::size_t k = 0; k < s; ++k) reach[k] &= ~ra[k];
        // opposite corner c > a, non-adjacent to a
        for (std::size_t k = 0; k < s; ++k) {
            Word w = reach[k];
            if (k == a / kWordBits) w &= ~((Word{2} << (a % kWordBits)) - 1);
            else if (k < a / kWordBits) w = 0;
            while (w) {
                const Vertex c = static_cast<Vertex>(k * kWordBits + std::countr_zero(w));
                w &= w - 1;
                const Word* rc = g.row(c);
                std::size_t pc = 0;
                for (std::size_t t = 0; t < s; ++t) {
                    common[t] = ra[t] & rc[t];
                    pc += std::popcount(common[t]);
                }
                if (pc < 2) continue;
                bool found = false;
                detail::for_each_bit(common, [&](Vertex b) {
                    if (found) return;
                    const Word* rb = g.row(b);
                    for (std::size_t t = 0; t < s; ++t) {
                        Word rest = common[t] & ~rb[t];
                        if (t == b / kWordBits) rest &= ~(Word{1} << (b % kWordBits));
                        if (rest) {
                            found = true;
                            return;
                        }
                    }
                });
                if (found) return true;
            }
        }
    }
    return false;
}

/// True iff two edges span an induced 2K2 (a gap).
inline bool has_gap(const Graph& g) {
    const std::size_t n = g.n(), s = g.stride();
    std::vector<Word> outside(s);
    for (Vertex u = 0; u < n; ++u) {
        const Word* ru = g.row(u);
        for (std::size_t k = 0; k < s; ++k) {
            Word w = ru[k];
            while (w) {
                const Vertex v = static_cast<Vertex>(k * kWordBits + std::countr_zero(w));
                w &= w - 1;
                if (v < u) continue;
                const Word* rv = g.row(v);
                for (std::size_t t = 0; t < s; ++t) outside[t] = ~(ru[t] | rv[t]);
                if (n % kWordBits) outside[s - 1] &= (Word{1} << (n % kWordBits)) - 1;
                outside[u / kWordBits] &= ~(Word{1} << (u % kWordBits));
                outside[v / kWordBits] &= ~(Word{1} << (v % kWordBits));
                bool found = false;
                detail::for_each_bit(outside, [&](Vertex x) {
                    if (found) return;
                    const Word* rx = g.row(x);
                    for (std::size_t t = 0; t < s; ++t)
                        if (rx[t] & outside[t]) {
                            found = true;
                            return;
                        }
                });
                if (found) return true;
            }
        }
    }
    return false;
}

// Isolated vertices are universal in the complement and never lie on a
// chordless cycle of length >= 4 there, so they are dropped first.
inline bool is_cochordal(const Graph& g) { return is_chordal(complement(strip_isolated(g))); }

inline bool is_4_cochordal(const Graph& g) {
    const Graph h = strip_isolated(g);
    const std::size_t n = h.n();
    const std::size_t pairs = n * (n == 0 ? 0 : n - 1) / 2;
    if (2 * h.edge_count() <= pairs) return !has_gap(h);
    return !has_induced_c4(complement(h));
}

inline bool is_locally_cochordal(const Graph& g) {
    for (Vertex v = 0; v < g.n(); ++v)
        if (!is_cochordal(delete_closed_neighborhood(g, v))) return false;
    return true;
}

inline bool is_locally_4_cochordal(const Graph& g) {
    for (Vertex v = 0; v < g.n(); ++v)
        if (!is_4_cochordal(delete_closed_neighborhood(g, v))) return false;
    return true;
}

/// Calls fn(cycle) once per chordless cycle of length 4..k_max. The cycle
/// starts at its smallest vertex and the second vertex is the smaller of the
/// start's two cycle neighbors.
template <class Fn>
void for_each_chordless_cycle(const Graph& g, std::size_t k_max, Fn&& fn) {
    const std::size_t n = g.n(), s = g.stride();
    if (k_max < 4 || n < 4) return;
    std::vector<Vertex> path;
    std::vector<std::vector<Word>> blocked(k_max + 1, std::vector<Word>(s));

    auto rec = [&](auto&& self, std::size_t j) -> void {
        const Vertex start = path[0], last = path[j];
        const Word* rl = g.row(last);
        const Word* rs = g.row(start);
        const auto& B = blocked[j];
        for (std::size_t k = 0; k < s; ++k) {
            Word w = rl[k] & ~B[k];
            if (k < start / kWordBits) w = 0;
            else if (k == start / kWordBits) w &= ~((Word{2} << (start % kWordBits)) - 1);
            while (w) {
                const Vertex x = static_cast<Vertex>(k * kWordBits + std::countr_zero(w));
                w &= w - 1;
                const bool closes = (rs[x / kWordBits] >> (x % kWordBits)) & 1u;
                if (closes) {
                    if (j >= 2 && path[1] < x) {
                        path.push_back(x);
                        fn(static_cast<const std::vector<Vertex>&>(path));
                        path.pop_back();
                    }
                    continue;
                }
                if (j + 3 > k_max) continue;
                auto& nb = blocked[j + 1];
                const Word* rprev = g.row(last);
                for (std::size_t t = 0; t < s; ++t) nb[t] = B[t] | (j >= 1 ? rprev[t] : 0);
                detail::set_bit(nb, x);
                path.push_back(x);
                self(self, j + 1);
                path.pop_back();
            }
        }
    };

    for (Vertex a = 0; a < n; ++a) {
        path.assign(1, a);
        auto& b0 = blocked[0];
        std::fill(b0.begin(), b0.end(), 0);
        detail::set_bit(b0, a);
        g.for_each_neighbor(a, [&](Vertex p1) {
            if (p1 < a) return;
            auto& b1 = blocked[1];
            b1 = b0;
            detail::set_bit(b1, p1);
            path.push_back(p1);
            rec(rec, 1);
            path.pop_back();
        });
    }
}

inline ChordlessCycleCount count_chordless_cycles(const Graph& g, std::size_t k_max) {
    ChordlessCycleCount c;
    c.truncation_length = k_max;
    for (std::size_t k = 4; k <= k_max; ++k) c.by_length[k] = 0;
    for_each_chordless_cycle(g, k_max, [&](const std::vector<Vertex>& cyc) { ++c.by_length[cyc.size()]; });
    return c;
}

/// Number of chordless k-cycles of complement(g) that avoid the closed
/// neighborhood (in g) of at least one vertex outside the cycle.
inline std::uint64_t count_local_chordless_cycles(const Graph& g, std::size_t k) {
    const Graph h = complement(g);
    const std::size_t s = g.stride();
    std::uint64_t count = 0;
    std::vector<Word> cover(s);
    for_each_chordless_cycle(h, k, [&](const std::vector<Vertex>& cyc) {
        if (cyc.size() != k) return;
        std::fill(cover.begin(), cover.end(), 0);
        for (Vertex v : cyc) {
            const Word* r = g.row(v);
            for (std::size_t t = 0; t < s; ++t) cover[t] |= r[t];
            detail::set_bit(cover, v);
        }
        std::size_t covered = 0;
        for (Word w : cover) covered += std::popcount(w);
        if (covered < g.n()) ++count;
    });
    return count;
}

inline std::uint64_t count_triangles(const Graph& g) {
    std::uint64_t t = 0;
    const std::size_t s = g.stride();
    for (Vertex u = 0; u < g.n(); ++u) {
        const Word* ru = g.row(u);
        g.for_each_neighbor(u, [&](Vertex v) {
            if (v <= u) return;
            const Word* rv = g.row(v);
            for (std::size_t k = 0; k < s; ++k) t += std::popcount(ru[k] & rv[k]);
        });
    }
    return t / 3;
}

}  // namespace eideal
