#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "graph.hpp"
#include "rng.hpp"

namespace eideal {

enum class ScheduleKind { sparse, power, complement_power, window_sparse, window_dense, constant };

struct ParamSchedule {
    ScheduleKind kind = ScheduleKind::constant;
    double lambda = 0;  // sparse, window_sparse, window_dense
    double c = 1;       // power, complement_power
    double alpha = 0;   // power, complement_power
    double p = 0;       // constant

    static ParamSchedule sparse(double lambda) { return {ScheduleKind::sparse, lambda, 1, 0, 0}; }
    static ParamSchedule power(double c, double alpha) { return {ScheduleKind::power, 0, c, alpha, 0}; }
    static ParamSchedule complement_power(double c, double alpha) {
        return {ScheduleKind::complement_power, 0, c, alpha, 0};
    }
    static ParamSchedule window_sparse(double lambda) { return {ScheduleKind::window_sparse, lambda, 1, 0, 0}; }
    static ParamSchedule window_dense(double lambda) { return {ScheduleKind::window_dense, lambda, 1, 0, 0}; }
    static ParamSchedule constant(double p) { return {ScheduleKind::constant, 0, 1, 0, p}; }
};

inline double clamp01(double x) { return std::clamp(x, 0.0, 1.0); }

inline double schedule_p(const ParamSchedule& s, std::size_t n) {
    if (n < 1) throw std::invalid_argument("schedule_p needs n >= 1");
    const double nn = static_cast<double>(n);
    switch (s.kind) {
        case ScheduleKind::sparse: return clamp01(std::min(s.lambda / nn, 1.0));
        case ScheduleKind::power: return clamp01(s.c * std::pow(nn, -s.alpha));
        case ScheduleKind::complement_power: return clamp01(1.0 - s.c * std::pow(nn, -s.alpha));
        case ScheduleKind::window_sparse: return clamp01(std::sqrt(s.lambda) / (nn * nn));
        case ScheduleKind::window_dense: return clamp01(1.0 - std::pow(s.lambda, 0.25) / nn);
        case ScheduleKind::constant: return clamp01(s.p);
    }
    return 0;
}

inline std::string to_string(ScheduleKind k) {
    switch (k) {
        case ScheduleKind::sparse: return "sparse";
        case ScheduleKind::power: return "power";
        case ScheduleKind::complement_power: return "complement_power";
        case ScheduleKind::window_sparse: return "window_sparse";
        case ScheduleKind::window_dense: return "window_dense";
        case ScheduleKind::constant: return "constant";
    }
    return "?";
}

inline void to_json(nlohmann::json& j, const ParamSchedule& s) {
    j = nlohmann::json{{"kind", to_string(s.kind)}};
    switch (s.kind) {
        case ScheduleKind::sparse:
        case ScheduleKind::window_sparse:
        case ScheduleKind::window_dense: j["lambda"] = s.lambda; break;
        case ScheduleKind::power:
        case ScheduleKind::complement_power:
            j["c"] = s.c;
            j["alpha"] = s.alpha;
            break;
        case ScheduleKind::constant: j["p"] = s.p; break;
    }
}

inline void from_json(const nlohmann::json& j, ParamSchedule& s) {
    if (!j.is_object() || !j.contains("kind")) throw std::invalid_argument("schedule: expected object with 'kind'");
    const std::string k = j.at("kind").get<std::string>();
    auto num = [&](const char* key, double dflt, bool required) {
        if (!j.contains(key)) {
            if (required) throw std::invalid_argument("schedule '" + k + "' needs '" + key + "'");
            return dflt;
        }
        return j.at(key).get<double>();
    };
    if (k == "sparse") s = ParamSchedule::sparse(num("lambda", 0, true));
    else if (k == "power") s = ParamSchedule::power(num("c", 1, false), num("alpha", 0, true));
    else if (k == "complement_power") s = ParamSchedule::complement_power(num("c", 1, false), num("alpha", 0, true));
    else if (k == "window_sparse") s = ParamSchedule::window_sparse(num("lambda", 0, true));
    else if (k == "window_dense") s = ParamSchedule::window_dense(num("lambda", 0, true));
    else if (k == "constant") s = ParamSchedule::constant(num("p", 0, true));
    else throw std::invalid_argument("unknown schedule kind '" + k + "'");
    if (s.lambda < 0 || s.alpha < 0 || s.c < 0) throw std::invalid_argument("schedule parameters must be non-negative");
    if (s.kind == ScheduleKind::constant && (s.p < 0 || s.p > 1))
        throw std::invalid_argument("constant schedule needs p in [0,1]");
}

namespace detail {

/// Batagelj-Brandes skipping over the pairs (w < v): calls add(v, w) for each
/// pair kept, each independently with probability q.
template <class Fn>
void geometric_pairs(std::size_t n, double q, Rng& rng, Fn&& add) {
    if (q <= 0 || n < 2) return;
    const double lq = std::log1p(-q);
    long long v = 1, w = -1;
    const long long nn = static_cast<long long>(n);
    for (;;) {
        const double skip = std::floor(std::log(rng.uniform_pos()) / lq);
        if (skip > 4.0 * static_cast<double>(n) * static_cast<double>(n)) return;
        w += 1 + static_cast<long long>(skip);
        while (w >= v && v < nn) {
            w -= v;
            ++v;
        }
        if (v >= nn) return;
        add(static_cast<Vertex>(v), static_cast<Vertex>(w));
    }
}

}  // namespace detail

/// Each pair is an edge independently with probability p. Sparse and
/// co-sparse p use geometric skipping; mid-range p uses one Bernoulli per pair.
inline Graph sample_gnp(std::size_t n, double p, std::uint64_t seed) {
    if (!(p >= 0 && p <= 1)) throw std::invalid_argument("sample_gnp needs p in [0,1]");
    Rng rng(seed);
    Graph g(n);
    if (p == 0) return g;
    if (p == 1) return complete_graph(n);
    if (p < 0.05) {
        detail::geometric_pairs(n, p, rng, [&](Vertex v, Vertex w) { g.set_edge_unchecked(v, w); });
        return g;
    }
    if (p > 0.95) {
        Graph h(n);
        detail::geometric_pairs(n, 1 - p, rng, [&](Vertex v, Vertex w) { h.set_edge_unchecked(v, w); });
        return complement(h);
    }
    for (Vertex u = 0; u < n; ++u)
        for (Vertex v = u + 1; v < n; ++v)
            if (rng.bernoulli(p)) g.set_edge_unchecked(u, v);
    return g;
}

/// A Galton-Watson tree stored as a parent array in breadth-first order;
/// parent[0] is the root's own index. Large trees never need a dense adjacency.
struct GwSample {
    std::vector<std::uint32_t> parent;
    bool censored = false;

    std::size_t size() const { return parent.size(); }

    Graph graph() const {
        Graph g(parent.size());
        for (std::size_t v = 1; v < parent.size(); ++v) g.set_edge_unchecked(parent[v], static_cast<Vertex>(v));
        return g;
    }
};

/// Breadth-first GW(lambda) tree with Poisson offspring. Stops when the tree
/// would exceed cap vertices; the sample is then truncated and censored.
inline GwSample sample_gw_tree(double lambda, std::size_t cap, std::uint64_t seed) {
    if (lambda < 0) throw std::invalid_argument("sample_gw_tree needs lambda >= 0");
    if (cap < 1) throw std::invalid_argument("sample_gw_tree needs cap >= 1");
    Rng rng(seed);
    GwSample s;
    s.parent.push_back(0);
    for (std::size_t head = 0; head < s.parent.size(); ++head) {
        const std::uint64_t kids = rng.poisson(lambda);
        if (kids > cap - s.parent.size()) {
            s.censored = true;
            s.parent.resize(cap, static_cast<std::uint32_t>(head));
            return s;
        }
        for (std::uint64_t k = 0; k < kids; ++k) s.parent.push_back(static_cast<std::uint32_t>(head));
    }
    return s;
}

}  // namespace eideal
