#pragma once

#include <cmath>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "betti.hpp"
#include "comb_invariants.hpp"
#include "parallel.hpp"
#include "random_models.hpp"
#include "rng.hpp"

namespace eideal {

struct TheoryValue {
    double value = 0;
    double truncation_error = 0;
    std::string formula_id;
    std::string note;
};

inline TheoryValue prob_lr_sparse_window(double lambda) {
    if (lambda < 0) throw std::invalid_argument("lambda must be >= 0");
    const double h = std::sqrt(lambda) / 2;
    return {std::exp(-h) * (1 + h), 0, "lr_sparse", ""};
}

inline TheoryValue prob_lp_dense_window(double lambda) {
    if (lambda < 0) throw std::invalid_argument("lambda must be >= 0");
    return {std::exp(-lambda / 8), 0, "lp_dense", ""};
}

/// exp(-sum_{k>=4} x^k / 2k) with x = lambda^{1/4}. The tail after k is at
/// most x^{k+1} / (2(k+1)(1-x)), which also bounds the error of the value.
inline TheoryValue prob_lr_dense_window(double lambda, double tol = 1e-12) {
    if (lambda < 0) throw std::invalid_argument("lambda must be >= 0");
    if (!(tol > 0)) throw std::invalid_argument("tol must be > 0");
    if (lambda >= 1) return {0, 0, "lr_dense", "series diverges for lambda >= 1; limit is 0"};
    const double x = std::pow(lambda, 0.25);
    if (x == 0) return {1, 0, "lr_dense", ""};
    double sum = 0, pw = x * x * x;
    std::size_t k = 3;
    double tail = 0;
    do {
        ++k;
        pw *= x;
        sum += pw / (2.0 * static_cast<double>(k));
        tail = pw * x / (2.0 * static_cast<double>(k + 1) * (1 - x));
    } while (tail > tol);
    return {std::exp(-sum), tail, "lr_dense", "truncated at k=" + std::to_string(k)};
}

/// (k-1)!/2 * C(m,k) * q^k * (1-q)^{C(k,2)-k}
inline double expected_chordless_cycles(std::size_t m, double q, std::size_t k) {
    if (k < 4 || k > m) throw std::invalid_argument("expected_chordless_cycles needs 4 <= k <= m");
    const double chords = static_cast<double>(k * (k - 1) / 2 - k);
    if (q <= 0 || q >= 1) return 0;  // chords > 0 for every k >= 4
    // (k-1)!/2 * C(m,k) = m(m-1)...(m-k+1) / (2k); logs only when the direct
    // product leaves the double range
    double v = 1;
    for (std::size_t i = 0; i < k; ++i) v *= static_cast<double>(m - i) * q;
    const double direct = v / (2.0 * static_cast<double>(k)) * std::pow(1 - q, chords);
    if (std::isfinite(v) && v < 1e300 && direct > 1e-300) return direct;
    double lv = chords * std::log1p(-q) - std::log(2.0 * static_cast<double>(k));
    for (std::size_t i = 0; i < k; ++i) lv += std::log(static_cast<double>(m - i) * q);
    return std::exp(lv);
}

inline double expected_local_cycles(std::size_t n, double p, std::size_t k) {
    const double base = expected_chordless_cycles(n, 1 - p, k);
    const double miss = std::pow(1 - p, static_cast<double>(k));
    return base * (1 - std::pow(1 - miss, static_cast<double>(n - k)));
}

struct KarpSipser {
    double t_star = 0;
    TheoryValue bound;
};

/// Smallest root of t = exp(-lambda exp(-lambda t)) on [0,1] (first sign
/// change on a 1e-3 grid, then bisection), and the matching bound it gives.
inline KarpSipser karp_sipser_upper(double lambda) {
    if (!(lambda > 0)) throw std::invalid_argument("karp_sipser_upper needs lambda > 0");
    auto f = [&](double t) { return t - std::exp(-lambda * std::exp(-lambda * t)); };
    double lo = 0, hi = 1;
    for (int i = 1; i <= 1000; ++i) {
        const double t = i * 1e-3;
        if (f(t) >= 0) {
            lo = (i - 1) * 1e-3;
            hi = t;
            break;
        }
    }
    while (hi - lo > 1e-12) {
        const double mid = 0.5 * (lo + hi);
        (f(mid) >= 0 ? hi : lo) = mid;
    }
    const double t = 0.5 * (lo + hi);
    const double e = std::exp(-lambda * t);
    return {t, {1 - (t + e + lambda * t * e) / 2, 5e-13, "karp_sipser", ""}};
}

inline double mcdiarmid_tail(double n, double M, double t) { return 2 * std::exp(-t * t / (4 * n * M * M)); }

inline double near_lipschitz_tail(double n, double lambda, double M, double t) {
    return mcdiarmid_tail(n, M, t) + 2 * n * n * std::pow(lambda * std::exp(1.0) / M, M);
}

enum class TreeInvariant { induced_matching, pd, depth };

inline std::string to_string(TreeInvariant w) {
    switch (w) {
        case TreeInvariant::induced_matching: return "induced_matching";
        case TreeInvariant::pd: return "pd";
        case TreeInvariant::depth: return "depth";
    }
    return "?";
}

struct GwEstimate {
    double estimate = 0;
    double stderr_ = 0;
    double censor_fraction = 0;
    std::size_t used = 0;
    std::size_t censored = 0;
};

/// Per-sample ratio invariant(tree)/|tree|, or nullopt when censored.
inline std::optional<double> gw_ratio(const GwSample& s, TreeInvariant which) {
    if (s.censored) return std::nullopt;
    const double size = static_cast<double>(s.size());
    if (which == TreeInvariant::induced_matching) return static_cast<double>(tree_induced_matching(s.parent)) / size;
    const double pd = static_cast<double>(forest_big_height(s.parent));
    return which == TreeInvariant::pd ? pd / size : (size - pd) / size;
}

inline std::uint64_t gw_trial_seed(std::uint64_t seed, double lambda, std::size_t trial) {
    return derive_seed(seed, {fnv1a("gw_tree"), static_cast<std::uint64_t>(std::llround(lambda * 1e9)), trial});
}

/// Monte Carlo mean of invariant(T)/|T| over uncensored GW(lambda) trees.
inline GwEstimate gw_limit_estimate(double lambda, std::size_t trials, std::size_t cap, TreeInvariant which,
                                    std::uint64_t seed, unsigned workers = 1) {
    if (lambda < 0 || lambda > 1) throw std::invalid_argument("gw_limit_estimate needs 0 <= lambda <= 1");
    if (trials < 1) throw std::invalid_argument("gw_limit_estimate needs trials >= 1");
    std::vector<double> value(trials, -1);
    const std::size_t chunk = 1024;
    const std::size_t chunks = (trials + chunk - 1) / chunk;
    parallel_for(chunks, workers, [&](std::size_t c) {
        for (std::size_t i = c * chunk; i < std::min(trials, (c + 1) * chunk); ++i) {
            const auto s = sample_gw_tree(lambda, cap, gw_trial_seed(seed, lambda, i));
            if (auto r = gw_ratio(s, which)) value[i] = *r;
        }
    });
    GwEstimate e;
    double sum = 0, sq = 0;
    for (double v : value) {
        if (v < 0) {
            ++e.censored;
            continue;
        }
        ++e.used;
        sum += v;
        sq += v * v;
    }
    e.censor_fraction = static_cast<double>(e.censored) / static_cast<double>(trials);
    if (e.used) {
        const double m = sum / static_cast<double>(e.used);
        e.estimate = m;
        if (e.used > 1) {
            const double var = std::max(0.0, (sq - e.used * m * m) / static_cast<double>(e.used - 1));
            e.stderr_ = std::sqrt(var / static_cast<double>(e.used));
        }
    }
    return e;
}

}  // namespace eideal
