#pragma once

#include <bit>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

namespace eideal {

/// Coefficient field: the rationals (p == 0) or GF(p) for a prime p.
struct Field {
    std::uint32_t p = 0;

    static Field rationals() { return {0}; }
    static Field gf(std::uint32_t prime) {
        if (prime < 2 || prime >= (1u << 31)) throw std::invalid_argument("GF(p) needs a prime 2 <= p < 2^31");
        for (std::uint32_t d = 2; d * d <= prime; ++d)
            if (prime % d == 0) throw std::invalid_argument("GF(p) needs a prime, got " + std::to_string(prime));
        return {prime};
    }
    bool is_rational() const { return p == 0; }
    std::string name() const { return p == 0 ? "Q" : "GF(" + std::to_string(p) + ")"; }
    static Field parse(const std::string& s) {
        if (s == "Q" || s == "q" || s == "QQ") return rationals();
        std::string t = s;
        if (t.rfind("GF(", 0) == 0 && t.back() == ')') t = t.substr(3, t.size() - 4);
        else if (t.rfind("GF", 0) == 0 || t.rfind("gf", 0) == 0 || t.rfind("F", 0) == 0 || t.rfind("f", 0) == 0)
            t = t.substr(t[0] == 'F' || t[0] == 'f' ? 1 : 2);
        try {
            std::size_t used = 0;
            const unsigned long v = std::stoul(t, &used);
            if (used == t.size()) return gf(static_cast<std::uint32_t>(v));
        } catch (const std::logic_error&) {
        }
        throw std::invalid_argument("unknown field '" + s + "' (use Q, GF(2), f3, ...)");
    }
    friend bool operator==(Field a, Field b) { return a.p == b.p; }
};

/// Sparse integer matrix row: (column, value) pairs.
using SparseRow = std::vector<std::pair<std::uint32_t, int>>;

namespace detail {

inline std::size_t rank_gf2(const std::vector<SparseRow>& rows, std::size_t cols) {
    const std::size_t words = (cols + 63) / 64;
    std::vector<std::vector<std::uint64_t>> basis(cols);  // indexed by pivot column
    std::vector<std::uint64_t> v(words);
    std::size_t rank = 0;
    for (const auto& r : rows) {
        std::fill(v.begin(), v.end(), 0);
        for (auto [c, x] : r)
            if (x & 1) v[c / 64] ^= std::uint64_t{1} << (c % 64);
        for (std::size_t k = 0; k < words;) {
            if (!v[k]) {
                ++k;
                continue;
            }
            const std::size_t c = k * 64 + std::countr_zero(v[k]);
            if (basis[c].empty()) {
                basis[c] = v;
                ++rank;
                break;
            }
            const auto& b = basis[c];
            for (std::size_t t = k; t < words; ++t) v[t] ^= b[t];
        }
    }
    return rank;
}

inline std::size_t rank_gfp(const std::vector<SparseRow>& rows, std::size_t cols, std::uint32_t p) {
    std::vector<std::vector<std::int64_t>> basis(cols);
    std::vector<std::int64_t> v(cols);
    const std::int64_t P = p;
    auto inv = [&](std::int64_t a) {
        std::int64_t r = 1, e = P - 2;
        a %= P;
        while (e) {
            if (e & 1) r = r * a % P;
            a = a * a % P;
            e >>= 1;
        }
        return r;
    };
    std::size_t rank = 0;
    for (const auto& r : rows) {
        std::fill(v.begin(), v.end(), 0);
        for (auto [c, x] : r) v[c] = ((v[c] + x) % P + P) % P;
        for (std::size_t c = 0; c < cols; ++c) {
            if (!v[c]) continue;
            if (basis[c].empty()) {
                const std::int64_t s = inv(v[c]);
                for (std::size_t t = c; t < cols; ++t) v[t] = v[t] * s % P;
                basis[c] = v;
                ++rank;
                break;
            }
            const std::int64_t f = v[c];
            const auto& b = basis[c];
            for (std::size_t t = c; t < cols; ++t) v[t] = ((v[t] - f * b[t]) % P + P) % P;
        }
    }
    return rank;
}

struct Overflow {};

inline std::int64_t checked_bareiss(std::int64_t a, std::int64_t b, std::int64_t c, std::int64_t d, std::int64_t q) {
    const __int128 x = static_cast<__int128>(a) * b - static_cast<__int128>(c) * d;
    const __int128 y = x / q;
    if (y > INT64_MAX || y < INT64_MIN) throw Overflow{};
    return static_cast<std::int64_t>(y);
}

inline std::int64_t bareiss_step(std::int64_t a, std::int64_t b, std::int64_t c, std::int64_t d, std::int64_t q) {
    return checked_bareiss(a, b, c, d, q);
}

inline boost::multiprecision::cpp_int bareiss_step(const boost::multiprecision::cpp_int& a,
                                                   const boost::multiprecision::cpp_int& b,
                                                   const boost::multiprecision::cpp_int& c,
                                                   const boost::multiprecision::cpp_int& d,
                                                   const boost::multiprecision::cpp_int& q) {
    return (a * b - c * d) / q;
}

/// Fraction-free (Bareiss) row echelon rank over the rationals.
template <class T>
std::size_t bareiss_rank(std::vector<std::vector<T>> a, std::size_t cols) {
    const std::size_t m = a.size();
    T prev = 1;
    std::size_t r = 0;
    for (std::size_t c = 0; c < cols && r < m; ++c) {
        std::size_t piv = r;
        while (piv < m && a[piv][c] == 0) ++piv;
        if (piv == m) continue;
        std::swap(a[piv], a[r]);
        for (std::size_t i = r + 1; i < m; ++i) {
            for (std::size_t j = c + 1; j < cols; ++j) a[i][j] = bareiss_step(a[r][c], a[i][j], a[i][c], a[r][j], prev);
            a[i][c] = 0;
        }
        prev = a[r][c];
        ++r;
    }
    return r;
}

inline std::size_t rank_rational(const std::vector<SparseRow>& rows, std::size_t cols) {
    std::vector<std::vector<std::int64_t>> a(rows.size(), std::vector<std::int64_t>(cols, 0));
    for (std::size_t i = 0; i < rows.size(); ++i)
        for (auto [c, x] : rows[i]) a[i][c] += x;
    try {
        return bareiss_rank(a, cols);
    } catch (const Overflow&) {
        std::vector<std::vector<boost::multiprecision::cpp_int>> b(rows.size());
        for (std::size_t i = 0; i < rows.size(); ++i) b[i].assign(a[i].begin(), a[i].end());
        return bareiss_rank(std::move(b), cols);
    }
}

}  // namespace detail

inline std::size_t matrix_rank(const std::vector<SparseRow>& rows, std::size_t cols, Field f) {
    if (rows.empty() || cols == 0) return 0;
    if (f.p == 2) return detail::rank_gf2(rows, cols);
    if (f.p != 0) return detail::rank_gfp(rows, cols, f.p);
    return detail::rank_rational(rows, cols);
}

}  // namespace eideal
