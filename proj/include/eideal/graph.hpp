#pragma once

#include <algorithm>
#include <bit>
#include <cstdint>
#include <functional>
#include <iomanip>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace eideal {

using Vertex = std::uint32_t;
using Word = std::uint64_t;
inline constexpr std::size_t kWordBits = 64;

inline std::size_t words_for(std::size_t n) { return (n + kWordBits - 1) / kWordBits; }

/// Simple undirected graph on 0..n-1 stored as packed adjacency rows.
/// Every row uses the same word stride, so small graphs (n <= 64) cost one
/// word per vertex and large graphs fall back to multi-word rows.
class Graph {
public:
    Graph() = default;
    explicit Graph(std::size_t n) : n_(n), stride_(words_for(n)), bits_(n * stride_, 0) {}

    std::size_t n() const { return n_; }
    std::size_t stride() const { return stride_; }

    const Word* row(Vertex v) const { return bits_.data() + static_cast<std::size_t>(v) * stride_; }

    bool adjacent(Vertex u, Vertex v) const {
        return (row(u)[v / kWordBits] >> (v % kWordBits)) & 1u;
    }

    std::size_t degree(Vertex v) const {
        std::size_t d = 0;
        const Word* r = row(v);
        for (std::size_t k = 0; k < stride_; ++k) d += std::popcount(r[k]);
        return d;
    }

    std::size_t edge_count() const {
        std::size_t total = 0;
        for (Word w : bits_) total += std::popcount(w);
        return total / 2;
    }

    /// Calls fn(u) for every neighbor u of v in increasing order.
    template <class Fn>
    void for_each_neighbor(Vertex v, Fn&& fn) const {
        const Word* r = row(v);
        for (std::size_t k = 0; k < stride_; ++k) {
            Word w = r[k];
            while (w) {
                fn(static_cast<Vertex>(k * kWordBits + std::countr_zero(w)));
                w &= w - 1;
            }
        }
    }

    std::vector<Vertex> neighbors(Vertex v) const {
        std::vector<Vertex> out;
        for_each_neighbor(v, [&](Vertex u) { out.push_back(u); });
        return out;
    }

    std::vector<std::pair<Vertex, Vertex>> edges() const {
        std::vector<std::pair<Vertex, Vertex>> out;
        for (Vertex u = 0; u < n_; ++u)
            for_each_neighbor(u, [&](Vertex v) {
                if (u < v) out.emplace_back(u, v);
            });
        return out;
    }

    friend bool operator==(const Graph& a, const Graph& b) { return a.n_ == b.n_ && a.bits_ == b.bits_; }

    // Mutation is restricted to builders inside the library.
    void set_edge_unchecked(Vertex u, Vertex v) {
        bits_[u * stride_ + v / kWordBits] |= Word{1} << (v % kWordBits);
        bits_[v * stride_ + u / kWordBits] |= Word{1} << (u % kWordBits);
    }
    Word* mutable_row(Vertex v) { return bits_.data() + static_cast<std::size_t>(v) * stride_; }

private:
    std::size_t n_ = 0;
    std::size_t stride_ = 0;
    std::vector<Word> bits_;
};

inline Graph build_graph(std::size_t n, const std::vector<std::pair<Vertex, Vertex>>& edges) {
    Graph g(n);
    for (auto [u, v] : edges) {
        if (u >= n || v >= n)
            throw std::invalid_argument("edge (" + std::to_string(u) + "," + std::to_string(v) +
                                        ") has a vertex outside 0.." + std::to_string(n == 0 ? 0 : n - 1));
        if (u == v) throw std::invalid_argument("self-loop at vertex " + std::to_string(u));
        g.set_edge_unchecked(u, v);
    }
    return g;
}

inline Graph complement(const Graph& g) {
    const std::size_t n = g.n();
    Graph h(n);
    for (Vertex v = 0; v < n; ++v) {
        const Word* src = g.row(v);
        Word* dst = h.mutable_row(v);
        for (std::size_t k = 0; k < g.stride(); ++k) dst[k] = ~src[k];
        if (n % kWordBits) dst[g.stride() - 1] &= (Word{1} << (n % kWordBits)) - 1;
        dst[v / kWordBits] &= ~(Word{1} << (v % kWordBits));
    }
    return h;
}

/// Vertices of w are relabeled 0..|w|-1 in the order given.
inline Graph induced_subgraph(const Graph& g, const std::vector<Vertex>& w) {
    Graph h(w.size());
    for (std::size_t i = 0; i < w.size(); ++i)
        for (std::size_t j = i + 1; j < w.size(); ++j)
            if (g.adjacent(w[i], w[j])) h.set_edge_unchecked(static_cast<Vertex>(i), static_cast<Vertex>(j));
    return h;
}

/// Induced subgraph on the vertices whose flag is set, in increasing order.
inline Graph induced_subgraph_mask(const Graph& g, const std::vector<bool>& keep) {
    std::vector<Vertex> w;
    for (Vertex v = 0; v < g.n(); ++v)
        if (keep[v]) w.push_back(v);
    return induced_subgraph(g, w);
}

inline Graph delete_vertex(const Graph& g, Vertex v) {
    std::vector<bool> keep(g.n(), true);
    keep[v] = false;
    return induced_subgraph_mask(g, keep);
}

inline Graph delete_closed_neighborhood(const Graph& g, Vertex v) {
    std::vector<bool> keep(g.n(), true);
    keep[v] = false;
    g.for_each_neighbor(v, [&](Vertex u) { keep[u] = false; });
    return induced_subgraph_mask(g, keep);
}

inline Graph disjoint_union(const Graph& a, const Graph& b) {
    Graph h(a.n() + b.n());
    for (auto [u, v] : a.edges()) h.set_edge_unchecked(u, v);
    const auto off = static_cast<Vertex>(a.n());
    for (auto [u, v] : b.edges()) h.set_edge_unchecked(u + off, v + off);
    return h;
}

inline std::size_t max_degree(const Graph& g) {
    std::size_t d = 0;
    for (Vertex v = 0; v < g.n(); ++v) d = std::max(d, g.degree(v));
    return d;
}

inline std::size_t isolated_count(const Graph& g) {
    std::size_t c = 0;
    for (Vertex v = 0; v < g.n(); ++v) c += g.degree(v) == 0;
    return c;
}

/// Drops isolated vertices, keeping the relative order of the rest.
inline Graph strip_isolated(const Graph& g) {
    std::vector<Vertex> w;
    for (Vertex v = 0; v < g.n(); ++v)
        if (g.degree(v) > 0) w.push_back(v);
    if (w.size() == g.n()) return g;
    return induced_subgraph(g, w);
}

struct ComponentPartition {
    std::vector<std::size_t> labels;
    std::vector<std::size_t> sizes;
    std::vector<std::vector<Vertex>> members;
    std::vector<Graph> component_subgraphs;

    std::size_t count() const { return sizes.size(); }
};

/// Components are numbered in order of their smallest vertex.
inline ComponentPartition connected_components(const Graph& g, bool with_subgraphs = true) {
    const std::size_t n = g.n();
    constexpr std::size_t unset = static_cast<std::size_t>(-1);
    ComponentPartition p;
    p.labels.assign(n, unset);
    std::vector<Vertex> stack;
    for (Vertex s = 0; s < n; ++s) {
        if (p.labels[s] != unset) continue;
        const std::size_t id = p.sizes.size();
        std::vector<Vertex> comp;
        p.labels[s] = id;
        stack.push_back(s);
        while (!stack.empty()) {
            Vertex v = stack.back();
            stack.pop_back();
            comp.push_back(v);
            g.for_each_neighbor(v, [&](Vertex u) {
                if (p.labels[u] == unset) {
                    p.labels[u] = id;
                    stack.push_back(u);
                }
            });
        }
        std::sort(comp.begin(), comp.end());
        p.sizes.push_back(comp.size());
        p.members.push_back(std::move(comp));
    }
    if (with_subgraphs) {
        p.component_subgraphs.reserve(p.members.size());
        for (const auto& m : p.members) p.component_subgraphs.push_back(induced_subgraph(g, m));
    }
    return p;
}

inline bool is_connected(const Graph& g) { return g.n() <= 1 || connected_components(g, false).count() == 1; }

inline bool is_forest(const Graph& g) {
    return g.edge_count() + connected_components(g, false).count() == g.n();
}

/// Pair index order used by edge masks: (0,1),(0,2),...,(0,n-1),(1,2),...
inline std::vector<std::pair<Vertex, Vertex>> pair_order(std::size_t n) {
    std::vector<std::pair<Vertex, Vertex>> out;
    for (Vertex u = 0; u < n; ++u)
        for (Vertex v = u + 1; v < n; ++v) out.emplace_back(u, v);
    return out;
}

inline Graph graph_from_mask(std::size_t n, std::uint64_t mask) {
    Graph g(n);
    std::size_t k = 0;
    for (Vertex u = 0; u < n; ++u)
        for (Vertex v = u + 1; v < n; ++v, ++k)
            if ((mask >> k) & 1u) g.set_edge_unchecked(u, v);
    return g;
}

/// All 2^(n choose 2) labeled graphs on n vertices, in increasing edge-mask order.
class GraphEnumeration {
public:
    static constexpr std::size_t kMaxVertices = 8;

    explicit GraphEnumeration(std::size_t n) : n_(n) {
        if (n > kMaxVertices)
            throw std::invalid_argument("enumerate_graphs supports n <= 8, got " + std::to_string(n));
        count_ = std::uint64_t{1} << (n * (n == 0 ? 0 : n - 1) / 2);
    }

    std::uint64_t size() const { return count_; }
    std::size_t vertices() const { return n_; }

    class iterator {
    public:
        using value_type = Graph;
        using difference_type = std::ptrdiff_t;
        iterator(std::size_t n, std::uint64_t mask) : n_(n), mask_(mask) {}
        Graph operator*() const { return graph_from_mask(n_, mask_); }
        iterator& operator++() {
            ++mask_;
            return *this;
        }
        bool operator==(const iterator& o) const { return mask_ == o.mask_; }
        std::uint64_t mask() const { return mask_; }

    private:
        std::size_t n_;
        std::uint64_t mask_;
    };

    iterator begin() const { return {n_, 0}; }
    iterator end() const { return {n_, count_}; }

private:
    std::size_t n_;
    std::uint64_t count_;
};

inline GraphEnumeration enumerate_graphs(std::size_t n) { return GraphEnumeration(n); }

// ---- serialization ----

inline std::string to_edge_list(const Graph& g) {
    std::ostringstream os;
    auto es = g.edges();
    os << g.n() << ' ' << es.size() << '\n';
    for (auto [u, v] : es) os << u << ' ' << v << '\n';
    return os.str();
}

inline Graph read_edge_list(std::istream& in) {
    long long n = -1, m = -1;
    if (!(in >> n >> m) || n < 0 || m < 0) throw std::invalid_argument("edge list: expected header 'n m'");
    std::vector<std::pair<Vertex, Vertex>> es;
    es.reserve(static_cast<std::size_t>(m));
    for (long long i = 0; i < m; ++i) {
        long long u = -1, v = -1;
        if (!(in >> u >> v)) throw std::invalid_argument("edge list: truncated at edge " + std::to_string(i));
        if (u < 0 || v < 0) throw std::invalid_argument("edge list: negative vertex at edge " + std::to_string(i));
        es.emplace_back(static_cast<Vertex>(u), static_cast<Vertex>(v));
    }
    return build_graph(static_cast<std::size_t>(n), es);
}

inline Graph from_edge_list(const std::string& text) {
    std::istringstream is(text);
    return read_edge_list(is);
}

/// Hex dump: "n:" followed by one hex string per row (row words little-endian,
/// each word as 16 hex digits, most significant first), rows separated by '.'.
inline std::string to_hex(const Graph& g) {
    std::ostringstream os;
    os << g.n() << ':';
    for (Vertex v = 0; v < g.n(); ++v) {
        if (v) os << '.';
        const Word* r = g.row(v);
        for (std::size_t k = 0; k < g.stride(); ++k) os << std::hex << std::setw(16) << std::setfill('0') << r[k];
        os << std::dec;
    }
    return os.str();
}

inline Graph from_hex(const std::string& s) {
    auto colon = s.find(':');
    if (colon == std::string::npos) throw std::invalid_argument("hex dump: missing ':'");
    const std::size_t n = std::stoull(s.substr(0, colon));
    Graph g(n);
    std::size_t pos = colon + 1;
    for (Vertex v = 0; v < n; ++v) {
        if (v) {
            if (pos >= s.size() || s[pos] != '.') throw std::invalid_argument("hex dump: expected '.'");
            ++pos;
        }
        for (std::size_t k = 0; k < g.stride(); ++k) {
            if (pos + 16 > s.size()) throw std::invalid_argument("hex dump: truncated row " + std::to_string(v));
            g.mutable_row(v)[k] = std::stoull(s.substr(pos, 16), nullptr, 16);
            pos += 16;
        }
    }
    if (pos != s.size()) throw std::invalid_argument("hex dump: trailing characters");
    for (Vertex u = 0; u < n; ++u) {
        if (g.adjacent(u, u)) throw std::invalid_argument("hex dump: self-loop");
        for (Vertex v = 0; v < n; ++v)
            if (g.adjacent(u, v) != g.adjacent(v, u)) throw std::invalid_argument("hex dump: asymmetric rows");
    }
    // padding bits beyond n must be clear
    for (Vertex u = 0; u < n; ++u)
        if (n % kWordBits && (g.row(u)[g.stride() - 1] >> (n % kWordBits)))
            throw std::invalid_argument("hex dump: bits beyond n");
    return g;
}

// Common shapes used throughout tests and examples.
inline Graph cycle_graph(std::size_t n) {
    if (n < 3) throw std::invalid_argument("cycle_graph needs n >= 3");
    Graph g(n);
    for (Vertex v = 0; v < n; ++v) g.set_edge_unchecked(v, static_cast<Vertex>((v + 1) % n));
    return g;
}
inline Graph path_graph(std::size_t n) {
    Graph g(n);
    for (Vertex v = 0; v + 1 < n; ++v) g.set_edge_unchecked(v, v + 1);
    return g;
}
inline Graph complete_graph(std::size_t n) { return complement(Graph(n)); }
inline Graph star_graph(std::size_t leaves) {
    Graph g(leaves + 1);
    for (Vertex v = 1; v <= leaves; ++v) g.set_edge_unchecked(0, v);
    return g;
}

}  // namespace eideal
