#pragma once

#include <algorithm>
#include <bit>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "comb_invariants.hpp"
#include "graph.hpp"
#include "linalg.hpp"

namespace eideal {

using FaceMask = std::uint32_t;

/// A simplicial complex given by its facets. No facets at all is the void
/// complex; the single facet 0 is the complex {∅}.
class SimplicialComplex {
public:
    static constexpr std::size_t kMaxGround = 32;

    SimplicialComplex() = default;
    SimplicialComplex(std::size_t ground, std::vector<FaceMask> facets) : ground_(ground) {
        if (ground > kMaxGround) throw std::invalid_argument("simplicial complex ground set limited to 32 vertices");
        std::sort(facets.begin(), facets.end());
        facets.erase(std::unique(facets.begin(), facets.end()), facets.end());
        for (FaceMask f : facets) {
            if (ground < kMaxGround && (f >> ground)) throw std::invalid_argument("facet outside ground set");
            bool dominated = false;
            for (FaceMask h : facets)
                if (h != f && (f & h) == f) {
                    dominated = true;
                    break;
                }
            if (!dominated) facets_.push_back(f);
        }
    }

    static SimplicialComplex void_complex(std::size_t ground = 0) { return {ground, {}}; }
    static SimplicialComplex empty_complex(std::size_t ground = 0) { return {ground, {0}}; }
    static SimplicialComplex simplex(std::size_t k) {
        return {k, {k == 32 ? ~FaceMask{0} : (FaceMask{1} << k) - 1}};
    }

    std::size_t ground() const { return ground_; }
    const std::vector<FaceMask>& facets() const { return facets_; }
    bool is_void() const { return facets_.empty(); }
    int dimension() const {
        int d = -2;
        for (FaceMask f : facets_) d = std::max(d, std::popcount(f) - 1);
        return d;
    }

private:
    std::size_t ground_ = 0;
    std::vector<FaceMask> facets_;
};

inline SimplicialComplex independence_complex(const Graph& g) {
    if (g.n() > SimplicialComplex::kMaxGround) throw std::invalid_argument("independence_complex limited to 32 vertices");
    std::vector<FaceMask> facets;
    if (g.n() == 0) return SimplicialComplex::empty_complex(0);
    for_each_maximal_independent_set(g, [&](const std::vector<Vertex>& s) {
        FaceMask m = 0;
        for (Vertex v : s) m |= FaceMask{1} << v;
        facets.push_back(m);
    });
    return {g.n(), facets};
}

/// dims[d + 1] = dim of reduced homology in degree d, for d = -1..dim.
struct ReducedHomology {
    std::vector<std::uint64_t> dims;

    std::uint64_t at(int d) const {
        const int e = d + 1;
        return e >= 0 && static_cast<std::size_t>(e) < dims.size() ? dims[static_cast<std::size_t>(e)] : 0;
    }
    bool is_zero() const {
        return std::all_of(dims.begin(), dims.end(), [](std::uint64_t x) { return x == 0; });
    }
};

namespace detail {

/// Reduced homology from faces grouped by cardinality (faces[e] holds the
/// faces with e vertices, sorted; faces[0] is {∅} unless the complex is void).
inline ReducedHomology homology_from_faces(const std::vector<std::vector<FaceMask>>& faces, Field f) {
    ReducedHomology h;
    if (faces.empty() || faces[0].empty()) return h;
    const std::size_t top = faces.size();
    std::vector<std::size_t> rank(top + 1, 0);  // rank[e] = rank of the map from size-e faces
    for (std::size_t e = 1; e < top; ++e) {
        const auto& src = faces[e];
        const auto& dst = faces[e - 1];
        if (src.empty() || dst.empty()) continue;
        std::vector<SparseRow> rows;
        rows.reserve(src.size());
        for (FaceMask s : src) {
            SparseRow row;
            int sign = 1;
            for (FaceMask rest = s; rest; rest &= rest - 1) {
                const FaceMask bit = rest & (~rest + 1);
                const FaceMask b = s & ~bit;
                const auto col = static_cast<std::uint32_t>(std::lower_bound(dst.begin(), dst.end(), b) - dst.begin());
                row.emplace_back(col, sign);
                sign = -sign;
            }
            rows.push_back(std::move(row));
        }
        rank[e] = matrix_rank(rows, dst.size(), f);
    }
    h.dims.resize(top, 0);
    for (std::size_t e = 0; e < top; ++e) h.dims[e] = faces[e].size() - rank[e] - rank[e + 1];
    while (!h.dims.empty() && h.dims.back() == 0 && faces[h.dims.size() - 1].empty()) h.dims.pop_back();
    return h;
}

}  // namespace detail

inline constexpr std::size_t kHomologyGroundLimit = 24;

inline ReducedHomology reduced_homology_dims(const SimplicialComplex& c, Field f) {
    if (c.ground() > kHomologyGroundLimit)
        throw std::invalid_argument("reduced_homology_dims: ground set " + std::to_string(c.ground()) + " exceeds 24");
    if (c.is_void()) return {};
    const int dim = c.dimension();
    ReducedHomology zero;
    zero.dims.assign(static_cast<std::size_t>(dim + 2), 0);
    // a vertex common to all facets makes the complex a cone
    FaceMask common = ~FaceMask{0};
    for (FaceMask m : c.facets()) common &= m;
    if (common) return zero;
    std::vector<std::uint8_t> seen(std::size_t{1} << c.ground(), 0);
    std::vector<std::vector<FaceMask>> faces(static_cast<std::size_t>(dim + 2));
    for (FaceMask m : c.facets()) {
        for (FaceMask s = m;; s = (s - 1) & m) {
            if (!seen[s]) {
                seen[s] = 1;
                faces[static_cast<std::size_t>(std::popcount(s))].push_back(s);
            }
            if (s == 0) break;
        }
    }
    for (auto& layer : faces) std::sort(layer.begin(), layer.end());
    auto h = detail::homology_from_faces(faces, f);
    h.dims.resize(static_cast<std::size_t>(dim + 2), 0);
    return h;
}

}  // namespace eideal
