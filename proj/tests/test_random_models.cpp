#include <gtest/gtest.h>

#include <cmath>

#include "eideal/random_models.hpp"

using namespace eideal;

TEST(Schedule, Examples) {
    EXPECT_DOUBLE_EQ(schedule_p(ParamSchedule::window_dense(16), 100), 0.98);
    EXPECT_DOUBLE_EQ(schedule_p(ParamSchedule::sparse(1), 1000), 0.001);
    EXPECT_NEAR(schedule_p(ParamSchedule::power(1, 1.75), 10000), 1e-7, 1e-20);
    EXPECT_DOUBLE_EQ(schedule_p(ParamSchedule::sparse(5), 3), 1.0);
    EXPECT_DOUBLE_EQ(schedule_p(ParamSchedule::complement_power(2, 0.0), 10), 0.0);
    EXPECT_DOUBLE_EQ(schedule_p(ParamSchedule::constant(0.3), 7), 0.3);
    EXPECT_THROW(schedule_p(ParamSchedule::sparse(1), 0), std::invalid_argument);
}

TEST(Schedule, WindowsConverge) {
    for (double lambda : {0.5, 4.0, 16.0}) {
        for (auto s : {ParamSchedule::window_sparse(lambda), ParamSchedule::window_dense(lambda)}) {
            double prev = INFINITY;
            for (std::size_t n : {10u, 100u, 1000u, 10000u}) {
                const double p = schedule_p(s, n);
                const double v = std::pow(n * (1 - p), 4) * p * p;
                const double err = std::fabs(v - lambda);
                EXPECT_LE(err, prev + 1e-12);
                prev = err;
            }
            EXPECT_LT(prev / lambda, 1e-3);
        }
    }
}

TEST(Schedule, JsonRoundTrip) {
    for (auto s : {ParamSchedule::sparse(1.5), ParamSchedule::power(2, 1.75), ParamSchedule::complement_power(1, 1.5),
                   ParamSchedule::window_sparse(4), ParamSchedule::window_dense(16), ParamSchedule::constant(0.25)}) {
        nlohmann::json j = s;
        const auto back = j.get<ParamSchedule>();
        EXPECT_EQ(back.kind, s.kind);
        EXPECT_EQ(schedule_p(back, 37), schedule_p(s, 37));
    }
    EXPECT_THROW(nlohmann::json({{"kind", "bogus"}}).get<ParamSchedule>(), std::invalid_argument);
    EXPECT_THROW(nlohmann::json({{"kind", "sparse"}}).get<ParamSchedule>(), std::invalid_argument);
    EXPECT_THROW(nlohmann::json({{"kind", "constant"}, {"p", 1.5}}).get<ParamSchedule>(), std::invalid_argument);
}

TEST(Gnp, Trivial) {
    for (std::uint64_t seed : {1u, 2u, 99u}) {
        EXPECT_EQ(sample_gnp(12, 0, seed).edge_count(), 0u);
        EXPECT_EQ(sample_gnp(12, 1, seed), complete_graph(12));
    }
    EXPECT_EQ(sample_gnp(0, 0.5, 1).n(), 0u);
    EXPECT_EQ(sample_gnp(1, 0.5, 1).edge_count(), 0u);
    EXPECT_THROW(sample_gnp(5, 1.2, 1), std::invalid_argument);
    EXPECT_THROW(sample_gnp(5, -0.1, 1), std::invalid_argument);
}

TEST(Gnp, Deterministic) {
    for (double p : {0.01, 0.5, 0.99}) {
        EXPECT_EQ(sample_gnp(80, p, 7), sample_gnp(80, p, 7));
        EXPECT_FALSE(sample_gnp(80, p, 7) == sample_gnp(80, p, 8));
    }
}

// Edge counts are Binomial(C(n,2), p); every sampling route is checked on mean
// and variance within 4 sigma of the sampling error of each statistic.
TEST(Gnp, EdgeCountIsBinomial) {
    struct Case {
        std::size_t n;
        double p;
    };
    for (Case c : {Case{30, 0.5}, Case{60, 0.02}, Case{40, 0.97}, Case{200, 0.001}, Case{25, 0.3}}) {
        const double N = c.n * (c.n - 1) / 2.0;
        const double mu = N * c.p, var = N * c.p * (1 - c.p);
        const int trials = 10000;
        double s = 0, s2 = 0;
        for (int t = 0; t < trials; ++t) {
            const double m = static_cast<double>(sample_gnp(c.n, c.p, derive_seed(11, {c.n, std::uint64_t(t)})).edge_count());
            s += m;
            s2 += m * m;
        }
        const double mean = s / trials;
        const double sv = (s2 - trials * mean * mean) / (trials - 1);
        EXPECT_LE(std::fabs(mean - mu), 4 * std::sqrt(var / trials)) << c.n << " " << c.p;
        // variance of the sample variance: (mu4 - var^2 (n-3)/(n-1)) / n, mu4 of a binomial
        const double mu4 = var * (1 + 3 * (N - 2) * c.p * (1 - c.p));
        const double sd_var = std::sqrt((mu4 - var * var * (trials - 3.0) / (trials - 1.0)) / trials);
        EXPECT_LE(std::fabs(sv - var), 4 * sd_var) << c.n << " " << c.p;
    }
}

TEST(Gnp, PairsAreUniform) {
    // every pair is hit equally often by the skipping sampler
    const std::size_t n = 12;
    std::vector<int> hits(n * n, 0);
    const int trials = 20000;
    for (int t = 0; t < trials; ++t) {
        const Graph g = sample_gnp(n, 0.04, derive_seed(5, {std::uint64_t(t)}));
        for (auto [u, v] : g.edges()) ++hits[u * n + v];
    }
    const double mu = trials * 0.04, sd = std::sqrt(trials * 0.04 * 0.96);
    for (Vertex u = 0; u < n; ++u)
        for (Vertex v = u + 1; v < n; ++v) EXPECT_LE(std::fabs(hits[u * n + v] - mu), 4.5 * sd) << u << "," << v;
}

TEST(Poisson, MomentsBothBranches) {
    for (double lambda : {0.5, 3.0, 9.5, 10.0, 25.0, 200.0}) {
        Rng rng(derive_seed(3, {std::uint64_t(lambda * 10)}));
        const int trials = 100000;
        double s = 0, s2 = 0;
        for (int t = 0; t < trials; ++t) {
            const double k = static_cast<double>(rng.poisson(lambda));
            s += k;
            s2 += k * k;
        }
        const double mean = s / trials, var = s2 / trials - mean * mean;
        EXPECT_LE(std::fabs(mean - lambda), 4 * std::sqrt(lambda / trials)) << lambda;
        // Var of sample variance of Poisson: (lambda + 2 lambda^2) / trials
        EXPECT_LE(std::fabs(var - lambda), 4 * std::sqrt((lambda + 2 * lambda * lambda) / trials)) << lambda;
    }
}

TEST(Poisson, PmfLargeLambda) {
    const double lambda = 12;
    Rng rng(17);
    const int trials = 200000;
    std::vector<int> hist(40, 0);
    for (int t = 0; t < trials; ++t) ++hist[std::min<std::uint64_t>(rng.poisson(lambda), 39)];
    double tv = 0;
    for (int k = 0; k < 39; ++k) tv += std::fabs(hist[k] / double(trials) - std::exp(-lambda + k * std::log(lambda) - std::lgamma(k + 1.0)));
    EXPECT_LT(tv / 2, 0.01);
}

TEST(Gw, Trivial) {
    for (std::uint64_t seed : {1u, 2u, 3u}) {
        const auto s = sample_gw_tree(0, 100, seed);
        EXPECT_EQ(s.size(), 1u);
        EXPECT_FALSE(s.censored);
    }
    int censored = 0;
    for (std::uint64_t seed = 0; seed < 200; ++seed) {
        const auto s = sample_gw_tree(10, 1, seed);
        EXPECT_EQ(s.size(), 1u);
        censored += s.censored;
    }
    EXPECT_GE(censored, 195);  // P(root has no child) = e^-10
    EXPECT_THROW(sample_gw_tree(-1, 10, 1), std::invalid_argument);
    EXPECT_THROW(sample_gw_tree(1, 0, 1), std::invalid_argument);
}

TEST(Gw, TreeShapeAndCap) {
    for (std::uint64_t seed = 0; seed < 300; ++seed) {
        const auto s = sample_gw_tree(1.0, 50, seed);
        ASSERT_LE(s.size(), 50u);
        ASSERT_EQ(s.parent[0], 0u);
        for (std::size_t v = 1; v < s.size(); ++v) ASSERT_LT(s.parent[v], v);
        const Graph g = s.graph();
        EXPECT_TRUE(is_forest(g) && is_connected(g));
        if (s.censored) {
            EXPECT_EQ(s.size(), 50u);
        }
    }
    EXPECT_EQ(sample_gw_tree(0.8, 1000, 9).parent, sample_gw_tree(0.8, 1000, 9).parent);
}

TEST(Gw, SubcriticalMeanSize) {
    const int trials = 100000;
    double s = 0;
    for (int t = 0; t < trials; ++t) {
        const auto g = sample_gw_tree(0.5, 100000, derive_seed(21, {std::uint64_t(t)}));
        ASSERT_FALSE(g.censored);
        s += g.size();
    }
    // |GW(0.5)| has mean 2 and variance lambda/(1-lambda)^3 = 4
    EXPECT_LE(std::fabs(s / trials - 2.0), 3 * std::sqrt(4.0 / trials));
}

TEST(Gw, CensorFractionSubcritical) {
    for (double lambda : {0.5, 0.9}) {
        const int trials = 100000;
        int censored = 0;
        for (int t = 0; t < trials; ++t) censored += sample_gw_tree(lambda, 100000, derive_seed(23, {std::uint64_t(t)})).censored;
        EXPECT_LT(censored, trials / 1000) << lambda;
    }
}
