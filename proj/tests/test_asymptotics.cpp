#include <gtest/gtest.h>

#include <boost/multiprecision/cpp_int.hpp>
#include <cmath>

#include "eideal/asymptotics.hpp"
#include "eideal/chordality.hpp"
#include "support.hpp"

using namespace eideal;
using namespace eideal::testing;
using boost::multiprecision::cpp_rational;

TEST(Windows, ClosedForms) {
    EXPECT_DOUBLE_EQ(prob_lr_sparse_window(0).value, 1.0);
    EXPECT_NEAR(prob_lr_sparse_window(4).value, 2 * std::exp(-1.0), 1e-15);
    EXPECT_NEAR(prob_lr_sparse_window(4).value, 0.735759, 5e-7);
    double prev = 1;
    for (double l = 0.5; l < 1e4; l *= 1.5) {
        const double v = prob_lr_sparse_window(l).value;
        EXPECT_LT(v, prev);
        prev = v;
    }
    EXPECT_LT(prev, 1e-3);
    EXPECT_DOUBLE_EQ(prob_lp_dense_window(0).value, 1.0);
    EXPECT_NEAR(prob_lp_dense_window(8).value, 0.367879441171, 1e-12);
    EXPECT_NEAR(prob_lp_dense_window(16).value, std::exp(-2.0), 1e-15);
    EXPECT_THROW(prob_lr_sparse_window(-1), std::invalid_argument);
}

TEST(Windows, DenseLrSeries) {
    EXPECT_DOUBLE_EQ(prob_lr_dense_window(0).value, 1.0);
    const auto one = prob_lr_dense_window(1);
    EXPECT_EQ(one.value, 0.0);
    EXPECT_FALSE(one.note.empty());
    EXPECT_EQ(prob_lr_dense_window(16).value, 0.0);
    // sum_{k>=1} x^k/k = -log(1-x), so the exponent has a closed form
    for (double lambda : {0.01, 0.2, 0.5, 0.9}) {
        const auto v = prob_lr_dense_window(lambda, 1e-12);
        const double x = std::pow(lambda, 0.25);
        const double exponent = 0.5 * (-std::log1p(-x) - x - x * x / 2 - x * x * x / 3);
        EXPECT_GT(v.value, 0.0);
        EXPECT_LT(v.value, 1.0);
        EXPECT_LE(v.truncation_error, 1e-12);
        EXPECT_NEAR(v.value, std::exp(-exponent), 1e-11) << lambda;
        // a coarser tolerance stops earlier but stays within its bound
        const auto coarse = prob_lr_dense_window(lambda, 1e-4);
        EXPECT_LE(std::fabs(coarse.value - v.value), 1e-4 + 1e-12);
        EXPECT_LE(v.value, prob_lp_dense_window(lambda).value);
    }
    EXPECT_NEAR(prob_lr_dense_window(0.5).value, 0.80, 0.01);
}

TEST(Windows, LrBelowLp) {
    for (int i = 1; i <= 200; ++i) {
        const double l = i * 0.05;
        EXPECT_LE(prob_lr_dense_window(l).value, prob_lp_dense_window(l).value) << l;
    }
}

TEST(ChordlessExpectation, Examples) {
    EXPECT_EQ(expected_chordless_cycles(4, 1, 4), 0.0);
    EXPECT_DOUBLE_EQ(expected_chordless_cycles(4, 0.5, 4), 3.0 / 64);
    EXPECT_EQ(expected_chordless_cycles(9, 0, 5), 0.0);
    EXPECT_TRUE(std::isfinite(expected_chordless_cycles(4000, 0.0005, 3000)));
    EXPECT_TRUE(std::isfinite(expected_chordless_cycles(4000, 0.5, 60)));
    EXPECT_THROW(expected_chordless_cycles(4, 0.5, 3), std::invalid_argument);
    EXPECT_THROW(expected_chordless_cycles(4, 0.5, 5), std::invalid_argument);
}

// Exact expectation over all labeled graphs on m vertices, q = a/4.
TEST(ChordlessExpectation, ExhaustiveRational) {
    for (std::size_t m : {4u, 5u}) {
        const std::size_t pairs = m * (m - 1) / 2;
        for (int a : {1, 2, 3}) {
            for (std::size_t k = 4; k <= m; ++k) {
                cpp_rational exact = 0;
                for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << pairs); ++mask) {
                    const Graph g = graph_from_mask(m, mask);
                    const std::size_t e = g.edge_count();
                    const std::uint64_t c = chordless_cycles_brute(g, k);
                    if (!c) continue;
                    cpp_rational w = c;
                    for (std::size_t i = 0; i < e; ++i) w *= cpp_rational(a, 4);
                    for (std::size_t i = e; i < pairs; ++i) w *= cpp_rational(4 - a, 4);
                    exact += w;
                }
                // closed form in rationals: m(m-1)...(m-k+1)/(2k) q^k (1-q)^{C(k,2)-k}
                cpp_rational formula = 1;
                for (std::size_t i = 0; i < k; ++i) formula *= static_cast<long>(m - i);
                formula /= static_cast<long>(2 * k);
                for (std::size_t i = 0; i < k; ++i) formula *= cpp_rational(a, 4);
                for (std::size_t i = 0; i < k * (k - 1) / 2 - k; ++i) formula *= cpp_rational(4 - a, 4);
                EXPECT_EQ(exact, formula) << m << " " << a << " " << k;
                EXPECT_NEAR(expected_chordless_cycles(m, a / 4.0, k), static_cast<double>(exact), 1e-12);
            }
        }
    }
}

TEST(LocalExpectation, Examples) {
    EXPECT_EQ(expected_local_cycles(8, 1, 4), 0.0);
    EXPECT_EQ(expected_local_cycles(8, 0, 4), 0.0);
}

TEST(LocalExpectation, MonteCarlo) {
    const std::size_t n = 6, k = 4;
    const double p = 0.5;
    const int trials = 100000;
    double s = 0, s2 = 0;
    for (int t = 0; t < trials; ++t) {
        const Graph g = sample_gnp(n, p, derive_seed(71, {std::uint64_t(t)}));
        const double c = static_cast<double>(count_local_chordless_cycles(g, k));
        s += c;
        s2 += c * c;
    }
    const double mean = s / trials;
    const double sd = std::sqrt((s2 / trials - mean * mean) / trials);
    EXPECT_LE(std::fabs(mean - expected_local_cycles(n, p, k)), 4 * sd) << mean;
}

namespace {
double grid_root(double lambda, double step) {
    auto f = [&](double t) { return t - std::exp(-lambda * std::exp(-lambda * t)); };
    for (double t = step; t <= 1 + step / 2; t += step)
        if (f(t) >= 0) return t;
    return NAN;
}
}  // namespace

TEST(KarpSipser, GridOracle) {
    for (double lambda : {0.1, 0.5, 1.0, 2.0, 2.7, 3.5, 4.0}) {
        const auto ks = karp_sipser_upper(lambda);
        const double t = grid_root(lambda, 1e-6);
        EXPECT_NEAR(ks.t_star, t, 1.1e-6) << lambda;
        EXPECT_NEAR(ks.t_star, std::exp(-lambda * std::exp(-lambda * ks.t_star)), 1e-10);
    }
    // lambda = 1: t* = W(1), the omega constant
    const auto one = karp_sipser_upper(1);
    EXPECT_NEAR(one.t_star, 0.567143290409784, 1e-11);
    EXPECT_NEAR(one.bound.value, 1 - (one.t_star + std::exp(-one.t_star) * (1 + one.t_star)) / 2, 1e-15);
    EXPECT_THROW(karp_sipser_upper(0), std::invalid_argument);
}

TEST(KarpSipser, SmallestRootAboveE) {
    // beyond lambda = e the map has three fixed points; the smallest is taken
    const double lambda = 4.0;
    auto f = [&](double t) { return t - std::exp(-lambda * std::exp(-lambda * t)); };
    int changes = 0;
    double first = NAN;
    for (int i = 1; i <= 1000000; ++i) {
        const double a = (i - 1) * 1e-6, b = i * 1e-6;
        if ((f(a) < 0) != (f(b) < 0)) {
            if (!changes) first = b;
            ++changes;
        }
    }
    EXPECT_EQ(changes, 3);
    EXPECT_NEAR(karp_sipser_upper(lambda).t_star, first, 1e-6);
    // lambda = 2 sits below e: one root
    EXPECT_NEAR(karp_sipser_upper(2).t_star, grid_root(2, 1e-6), 1.1e-6);
}

TEST(KarpSipser, LimitsAndMonotone) {
    EXPECT_LT(karp_sipser_upper(1e-4).bound.value, 1e-3);
    double prev = -1;
    for (int i = 1; i <= 100; ++i) {
        const double v = karp_sipser_upper(0.04 * i).bound.value;
        EXPECT_GT(v, prev) << i;
        prev = v;
    }
}

TEST(Tails, Examples) {
    EXPECT_DOUBLE_EQ(mcdiarmid_tail(100, 1, 40), 2 * std::exp(-4.0));
    EXPECT_GE(mcdiarmid_tail(100, 1, 0), 1.0);
    EXPECT_GT(near_lipschitz_tail(100, 1, 2, 1), 1.0);
    const double big_m = near_lipschitz_tail(100, 1, 200, 400) - mcdiarmid_tail(100, 200, 400);
    EXPECT_LT(big_m, 1e-100);
}

TEST(GwLimit, Trivial) {
    const auto nu = gw_limit_estimate(0, 100, 1000, TreeInvariant::induced_matching, 1);
    EXPECT_EQ(nu.estimate, 0.0);
    EXPECT_EQ(nu.censored, 0u);
    EXPECT_EQ(gw_limit_estimate(0, 100, 1000, TreeInvariant::depth, 1).estimate, 1.0);
    EXPECT_EQ(gw_limit_estimate(0, 100, 1000, TreeInvariant::pd, 1).estimate, 0.0);
    EXPECT_THROW(gw_limit_estimate(1.5, 10, 10, TreeInvariant::pd, 1), std::invalid_argument);
}

TEST(GwLimit, PdPlusDepthIsOne) {
    const auto pd = gw_limit_estimate(0.7, 5000, 100000, TreeInvariant::pd, 3);
    const auto depth = gw_limit_estimate(0.7, 5000, 100000, TreeInvariant::depth, 3);
    EXPECT_NEAR(pd.estimate + depth.estimate, 1.0, 1e-12);
    EXPECT_EQ(pd.used, depth.used);
}

TEST(GwLimit, WorkerCountIrrelevant) {
    const auto a = gw_limit_estimate(0.9, 5000, 100000, TreeInvariant::induced_matching, 5, 1);
    const auto b = gw_limit_estimate(0.9, 5000, 100000, TreeInvariant::induced_matching, 5, 3);
    EXPECT_EQ(a.estimate, b.estimate);
    EXPECT_EQ(a.stderr_, b.stderr_);
}

// Two seeds agree within 4 combined standard errors; the value is frozen as a
// regression constant.
TEST(GwLimit, HalfSelfOracle) {
    const auto a = gw_limit_estimate(0.5, 100000, 100000, TreeInvariant::induced_matching, 1);
    const auto b = gw_limit_estimate(0.5, 100000, 100000, TreeInvariant::induced_matching, 2);
    EXPECT_EQ(a.censored, 0u);
    EXPECT_LE(std::fabs(a.estimate - b.estimate), 4 * std::hypot(a.stderr_, b.stderr_));
    EXPECT_NEAR(a.estimate, 0.154381, 1e-6);
}
