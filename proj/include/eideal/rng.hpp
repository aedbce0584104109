#pragma once

#include <cmath>
#include <cstdint>
#include <initializer_list>
#include <random>
#include <string_view>

namespace eideal {

inline std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

inline std::uint64_t fnv1a(std::string_view s) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : s) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    return h;
}

/// Substream seed derived from a master seed and a list of coordinates.
inline std::uint64_t derive_seed(std::uint64_t seed, std::initializer_list<std::uint64_t> coords) {
    std::uint64_t h = splitmix64(seed);
    for (std::uint64_t c : coords) h = splitmix64(h ^ splitmix64(c + 0x632be59bd9b4e019ULL));
    return h;
}

/// mt19937_64 seeded through splitmix64. The engine output is fixed by the
/// standard; all distributions below are implemented here so that streams
/// agree across standard libraries.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : eng_(splitmix64(seed)) {}

    std::uint64_t next() { return eng_(); }

    /// Uniform in [0,1) with 53 random bits.
    double uniform() { return static_cast<double>(eng_() >> 11) * 0x1.0p-53; }

    /// Uniform in (0,1].
    double uniform_pos() { return (static_cast<double>(eng_() >> 11) + 1.0) * 0x1.0p-53; }

    bool bernoulli(double p) { return uniform() < p; }

    /// Uniform integer in [0, bound) by rejection.
    std::uint64_t below(std::uint64_t bound) {
        if (bound <= 1) return 0;
        const std::uint64_t limit = -bound % bound;
        for (;;) {
            std::uint64_t x = eng_();
            if (x >= limit) return x % bound;
        }
    }

    std::uint64_t poisson(double lambda) {
        if (lambda <= 0) return 0;
        if (lambda < 10) {
            double u = uniform();
            double p = std::exp(-lambda);
            double f = p;
            std::uint64_t k = 0;
            while (u > f && k < 1000) {
                ++k;
                p *= lambda / static_cast<double>(k);
                f += p;
            }
            return k;
        }
        // Hörmann's transformed rejection (PTRS).
        const double slam = std::sqrt(lambda);
        const double loglam = std::log(lambda);
        const double b = 0.931 + 2.53 * slam;
        const double a = -0.059 + 0.02483 * b;
        const double invalpha = 1.1239 + 1.1328 / (b - 3.4);
        const double vr = 0.9277 - 3.6224 / (b - 2);
        for (;;) {
            const double U = uniform() - 0.5;
            const double V = uniform();
            const double us = 0.5 - std::fabs(U);
            const double k = std::floor((2 * a / us + b) * U + lambda + 0.43);
            if (us >= 0.07 && V <= vr) return static_cast<std::uint64_t>(k);
            if (k < 0 || (us < 0.013 && V > us)) continue;
            if (std::log(V) + std::log(invalpha) - std::log(a / (us * us) + b) <=
                -lambda + k * loglam - std::lgamma(k + 1))
                return static_cast<std::uint64_t>(k);
        }
    }

private:
    std::mt19937_64 eng_;
};

}  // namespace eideal
