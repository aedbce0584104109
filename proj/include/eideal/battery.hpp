#pragma once

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <numeric>
#include <sstream>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>
#include <json.hpp>

#include "asymptotics.hpp"
#include "betti.hpp"
#include "chordality.hpp"
#include "comb_invariants.hpp"
#include "experiments.hpp"

namespace eideal {

struct BatteryOptions {
    bool quick = false;
    std::uint64_t seed = 1;
    unsigned workers = 1;
    std::filesystem::path outdir = "battery_out";
    std::vector<int> only;  // criterion ids; empty runs all
    std::function<void(const std::string&)> on_line;
};

struct CriterionResult {
    int id = 0;
    std::string name;
    bool pass = false;
    std::string detail;
    double seconds = 0;
};

struct BatteryResult {
    std::vector<CriterionResult> criteria;
    std::vector<std::string> notes;

    bool all_pass() const {
        return std::all_of(criteria.begin(), criteria.end(), [](const CriterionResult& c) { return c.pass; });
    }
};

inline constexpr int kCriteria = 14;

inline std::string format_line(const CriterionResult& c) {
    char head[64];
    std::snprintf(head, sizeof head, "%s %02d %s: ", c.pass ? "PASS" : "FAIL", c.id, c.name.c_str());
    return head + c.detail;
}

namespace detail {

inline std::string fmt(double x, int digits = 4) {
    char buf[48];
    std::snprintf(buf, sizeof buf, "%.*g", digits, x);
    return buf;
}

/// Trial counts and tolerances for one battery mode. Quick runs widen
/// statistical tolerances by the extra 4-sigma sampling noise of the smaller
/// sample; exact gates are never widened.
struct Scale {
    bool quick = false;

    std::size_t pick(std::size_t full, std::size_t quick_value) const { return quick ? quick_value : full; }
    double slack(double p, std::size_t full, std::size_t quick_value) const {
        if (!quick) return 0;
        const double sd = std::sqrt(std::clamp(p * (1 - p), 0.0, 0.25));
        return 4 * sd * (1 / std::sqrt(double(quick_value)) - 1 / std::sqrt(double(full)));
    }
};

struct Artifact {
    std::filesystem::path dir;
    std::string stem;
    std::vector<ExperimentReport> reports;
    nlohmann::json checks = nlohmann::json::object();

    void write() const {
        nlohmann::json j;
        j["checks"] = checks;
        j["reports"] = nlohmann::json::array();
        for (const auto& r : reports) j["reports"].push_back(to_json(r, false));
        std::ofstream(dir / (stem + ".json")) << j.dump(2) << '\n';
        std::ofstream csv(dir / (stem + ".csv"));
        csv << kCsvHeader << '\n';
        for (const auto& r : reports) csv << to_csv(r, false, false);
    }
};

inline ExperimentConfig base_config(ExperimentKind kind, const std::string& id, std::uint64_t seed) {
    ExperimentConfig c;
    c.kind = kind;
    c.id = id;
    c.seed = seed;
    return c;
}

/// Random labeled forest: a random recursive tree with each edge kept with
/// probability keep, then shuffled labels.
inline Graph random_forest(Rng& rng, std::size_t n, double keep) {
    std::vector<Vertex> perm(n);
    std::iota(perm.begin(), perm.end(), Vertex{0});
    for (std::size_t i = n; i > 1; --i) std::swap(perm[i - 1], perm[rng.below(i)]);
    Graph g(n);
    for (Vertex v = 1; v < n; ++v) {
        const Vertex u = static_cast<Vertex>(rng.below(v));
        if (rng.bernoulli(keep)) g.set_edge_unchecked(perm[u], perm[v]);
    }
    return g;
}

struct Ctx {
    BatteryOptions opt;
    Scale scale;
    std::vector<ExperimentReport> all_reports;

    Artifact artifact(const std::string& stem) const { return {opt.outdir, stem, {}, nlohmann::json::object()}; }
    ExperimentReport run(const ExperimentConfig& c) {
        auto r = run_experiment(c, opt.workers);
        all_reports.push_back(r);
        return r;
    }
};

inline CriterionResult c01_froberg(Ctx& x) {
    auto c = base_config(ExperimentKind::froberg_audit, "c01_froberg", x.opt.seed);
    c.exhaustive_max = x.scale.pick(7, 6);
    c.n_list = {8, 9};
    c.trials = x.scale.pick(500, 100);
    auto a = x.artifact("c01_froberg");
    a.reports.push_back(x.run(c));
    const auto& r = a.reports.back();
    std::size_t graphs = 0, lr = 0, lp = 0, rgraphs = 0, rbad = 0;
    for (const auto& cell : r.cells) {
        const auto bad = cell.extra["disagreements"].get<std::size_t>();
        const auto g = cell.extra["graphs"].get<std::size_t>();
        const bool is_lr = cell.cell_id.starts_with("lr");
        if (cell.cell_id.ends_with("_random")) {
            rbad += bad;
            if (is_lr) rgraphs += g;
            continue;
        }
        (is_lr ? lr : lp) += bad;
        if (cell.n == c.exhaustive_max) graphs = g;
    }
    a.write();
    CriterionResult res{1, "froberg_exhaustive", false, {}};
    res.pass = lr == 0 && lp == 0 && rbad == 0 && !r.audit_failed;
    res.detail = "n<=" + std::to_string(c.exhaustive_max) + " (" + std::to_string(graphs) + " graphs at n=" +
                 std::to_string(c.exhaustive_max) + "): LR/co-chordal disagreements " + std::to_string(lr) +
                 ", LP/4-co-chordal disagreements " + std::to_string(lp) + "; random n=8,9 (" +
                 std::to_string(rgraphs) + " graphs): " + std::to_string(rbad) + " disagreements";
    return res;
}

inline CriterionResult c02_c5(Ctx& x) {
    const Graph c5 = cycle_graph(5);
    const BettiTable t = betti_table(c5);
    const auto inv = invariants(c5);
    const std::map<std::pair<int, int>, std::uint64_t> want = {{{1, 2}, 5}, {{2, 3}, 5}, {{3, 5}, 1}};
    const bool table_ok = t.entries == want;
    const bool inv_ok = inv.regularity_ideal == 3 && inv.pd_quotient == 3 && inv.depth_quotient == 2;
    const bool pred_ok = !linear_resolution_from_table(t) && !is_cochordal(c5) && linear_presentation_from_table(t) &&
                         is_4_cochordal(c5);
    auto a = x.artifact("c02_c5");
    a.checks = {{"betti_table", to_json(t)},
                {"reg_ideal", inv.regularity_ideal},
                {"pd_quotient", inv.pd_quotient},
                {"depth_quotient", inv.depth_quotient},
                {"krull_dim", inv.krull_dim}};
    a.write();
    CriterionResult res{2, "c5_example", false, {}};
    res.pass = table_ok && inv_ok && pred_ok;
    std::string entries;
    for (auto& [ij, b] : t.entries)
        entries += (entries.empty() ? "" : " ") + std::string("b") + std::to_string(ij.first) + "," +
                   std::to_string(ij.second) + "=" + std::to_string(b);
    res.detail = entries + "; reg(I)=" + std::to_string(inv.regularity_ideal) + " pd=" +
                 std::to_string(inv.pd_quotient) + " depth=" + std::to_string(inv.depth_quotient) +
                 (pred_ok ? "; LR false, LP true" : "; predicate mismatch");
    return res;
}

inline CriterionResult c03_forests(Ctx& x) {
    const std::size_t count = 500;
    std::vector<std::uint8_t> bad(count);
    std::vector<std::size_t> sizes(count);
    const std::size_t chunk = 25;
    parallel_for(count / chunk, x.opt.workers, [&](std::size_t ch) {
        BettiEngine engine(Field::rationals(), 14, 7);
        for (std::size_t i = ch * chunk; i < (ch + 1) * chunk; ++i) {
            Rng rng(derive_seed(x.opt.seed, {fnv1a("c03_forests"), i}));
            const std::size_t n = 1 + rng.below(14);
            const Graph f = random_forest(rng, n, 0.5 + 0.5 * rng.uniform());
            const int reg_ideal = engine.table(f).regularity_quotient() + 1;
            const std::size_t nu = tree_induced_matching(f);
            bad[i] = reg_ideal != static_cast<int>(nu) + 1 || nu != induced_matching_number(f);
            sizes[i] = n;
        }
    });
    const std::size_t mismatches = std::accumulate(bad.begin(), bad.end(), std::size_t{0});
    auto a = x.artifact("c03_forests");
    a.checks = {{"forests", count}, {"max_vertices", *std::max_element(sizes.begin(), sizes.end())},
                {"mismatches", mismatches}};
    a.write();
    CriterionResult res{3, "forest_regularity", false, {}};
    res.pass = mismatches == 0;
    res.detail = std::to_string(count) + " random forests (<=14 vertices): reg(I) = nu + 1 mismatches " +
                 std::to_string(mismatches);
    return res;
}

inline CriterionResult c04_lipschitz(Ctx& x) {
    auto c = base_config(ExperimentKind::lipschitz_audit, "c04_lipschitz", x.opt.seed);
    c.n_list = {10};
    c.trials = x.scale.pick(1000, 200);
    auto a = x.artifact("c04_lipschitz");
    a.reports.push_back(x.run(c));
    const auto& r = a.reports.back();
    auto v = [&](const char* id) { return r.find(id, 10)->extra["violations"].get<std::size_t>(); };
    const std::size_t reg = v("reg_violations"), pd = v("pd_violations"), add = v("additivity_violations");
    a.write();
    CriterionResult res{4, "lipschitz", false, {}};
    res.pass = reg + pd + add == 0 && !r.audit_failed;
    res.detail = std::to_string(c.trials) + " (graph<=10, vertex) pairs: |d reg| violations " + std::to_string(reg) +
                 ", |d pd| violations " + std::to_string(pd) + "; " + std::to_string(c.trials) +
                 " disjoint unions <=12 vertices: additivity violations " + std::to_string(add);
    return res;
}

inline CriterionResult c05_dense_window(Ctx& x) {
    const std::size_t full = 10000, quick = 1000, trials = x.scale.pick(full, quick);
    auto lp = base_config(ExperimentKind::threshold, "c05_dense_lp", x.opt.seed);
    lp.schedule = ParamSchedule::window_dense(16);
    lp.n_list = {400};
    lp.trials = trials;
    lp.selectors = {"is_4_cochordal"};
    auto lr = base_config(ExperimentKind::threshold, "c05_dense_lr", x.opt.seed);
    lr.schedule = ParamSchedule::window_dense(0.5);
    lr.n_list = {400};
    lr.trials = trials;
    lr.selectors = {"is_cochordal"};
    auto a = x.artifact("c05_dense_window");
    a.reports.push_back(x.run(lp));
    a.reports.push_back(x.run(lr));
    const Cell& p4 = a.reports[0].cells[0];
    const Cell& pc = a.reports[1].cells[0];
    const double tol4 = 0.02 + x.scale.slack(*p4.theory, full, quick);
    const double tolc = 0.02 + x.scale.slack(*pc.theory, full, quick);
    const double d4 = std::fabs(p4.estimate - *p4.theory), dc = std::fabs(pc.estimate - *pc.theory);
    a.checks = {{"lp_tolerance", tol4}, {"lr_tolerance", tolc}, {"lp_deviation", d4}, {"lr_deviation", dc}};
    a.write();
    CriterionResult res{5, "dense_window", false, {}};
    res.pass = d4 <= tol4 && dc <= tolc;
    res.detail = "n=400, " + std::to_string(trials) + " trials: P(4-co-chordal | lambda=16) = " + fmt(p4.estimate) +
                 " vs " + fmt(*p4.theory) + " (|diff| " + fmt(d4, 3) + " <= " + fmt(tol4, 3) + "? " +
                 (d4 <= tol4 ? "yes" : "no") + "); P(co-chordal | lambda=0.5) = " + fmt(pc.estimate) + " vs " +
                 fmt(*pc.theory) + " (|diff| " + fmt(dc, 3) + " <= " + fmt(tolc, 3) + "? " +
                 (dc <= tolc ? "yes" : "no") + ")";
    return res;
}

inline CriterionResult c06_sparse_window(Ctx& x) {
    const std::size_t full = 10000, quick = 1000, trials = x.scale.pick(full, quick);
    auto c = base_config(ExperimentKind::threshold, "c06_sparse_window", x.opt.seed);
    c.schedule = ParamSchedule::window_sparse(4);
    c.n_list = {2000};
    c.trials = trials;
    c.selectors = {"is_cochordal", "is_4_cochordal"};
    auto a = x.artifact("c06_sparse_window");
    a.reports.push_back(x.run(c));
    const Cell* pc = a.reports[0].find("is_cochordal", 2000);
    const Cell* p4 = a.reports[0].find("is_4_cochordal", 2000);
    const double tol4 = 0.02 + x.scale.slack(*p4->theory, full, quick);
    const double gap = std::fabs(p4->estimate - pc->estimate);
    // co-chordal implies 4-co-chordal, so the gap is the disagreement rate
    const double tolg = 0.01 + x.scale.slack(std::max(gap, 0.01), full, quick);
    const double d4 = std::fabs(p4->estimate - *p4->theory);
    a.checks = {{"lp_tolerance", tol4}, {"gap_tolerance", tolg}, {"lp_deviation", d4}, {"gap", gap}};
    a.write();
    CriterionResult res{6, "sparse_window", false, {}};
    res.pass = d4 <= tol4 && gap <= tolg;
    res.detail = "lambda=4, n=2000, " + std::to_string(trials) + " trials: P(4-co-chordal) = " + fmt(p4->estimate) +
                 " vs 2/e = " + fmt(*p4->theory) + " (|diff| " + fmt(d4, 3) + ", tol " + fmt(tol4, 3) +
                 "); P(co-chordal) = " + fmt(pc->estimate) + ", gap " + fmt(gap, 3) + " (tol " + fmt(tolg, 3) + ")";
    return res;
}

inline CriterionResult c07_endpoints(Ctx& x) {
    const std::size_t full = 1000, quick = 200, trials = x.scale.pick(full, quick);
    struct End {
        const char* id;
        ParamSchedule s;
        bool high;
        double gate;
    };
    const End ends[] = {{"c07_sparse", ParamSchedule::power(1, 2.5), true, 0.99},
                        {"c07_half", ParamSchedule::constant(0.5), false, 0.01},
                        {"c07_dense", ParamSchedule::complement_power(1, 1.5), true, 0.99}};
    auto a = x.artifact("c07_endpoints");
    bool pass = true;
    std::string detail = "n=500, " + std::to_string(trials) + " trials:";
    const char* labels[] = {" p=n^-2.5 ", "; p=0.5 ", "; p=1-n^-1.5 "};
    int k = 0;
    for (const auto& e : ends) {
        auto c = base_config(ExperimentKind::threshold, e.id, x.opt.seed);
        c.schedule = e.s;
        c.n_list = {500};
        c.trials = trials;
        c.selectors = {"is_4_cochordal"};
        a.reports.push_back(x.run(c));
        const double est = a.reports.back().cells[0].estimate;
        const double slack = x.scale.slack(e.gate, full, quick);
        const bool ok = e.high ? est >= e.gate - slack : est <= e.gate + slack;
        pass = pass && ok;
        detail += labels[k++] + std::string("P(4-co-chordal) = ") + fmt(est) + (e.high ? " >= " : " <= ") +
                  fmt(e.high ? e.gate - slack : e.gate + slack, 3) + (ok ? "" : " (violated)");
    }
    a.write();
    return {7, "phase_endpoints", pass, detail};
}

inline CriterionResult c08_cycles(Ctx& x) {
    using boost::multiprecision::cpp_rational;
    const std::size_t trials = x.scale.pick(10000, 2000);
    auto a = x.artifact("c08_cycle_calibration");
    bool pass = true;
    std::string detail = std::to_string(trials) + " samples:";
    for (auto [n, q] : {std::pair<std::size_t, double>{60, 0.1}, {30, 0.3}}) {
        auto c = base_config(ExperimentKind::cycle_calibration, "c08_n" + std::to_string(n), x.opt.seed);
        c.schedule = ParamSchedule::constant(q);
        c.n_list = {n};
        c.trials = trials;
        c.k_max = 4;
        a.reports.push_back(x.run(c));
        const Cell* c4 = a.reports.back().find("C4", n);
        const double z = c4->extra["z"].get<double>();
        pass = pass && std::fabs(z) <= 4;
        detail += " (n=" + std::to_string(n) + ", q=" + fmt(q) + ") mean C4 = " + fmt(c4->estimate, 6) + " vs " +
                  fmt(*c4->theory, 6) + ", z = " + fmt(z, 3) + ";";
    }
    // exact expectation over all labeled graphs on m vertices at q = a/4
    std::size_t exact_cases = 0, exact_bad = 0;
    for (std::size_t m : {4u, 5u}) {
        const std::size_t pairs = m * (m - 1) / 2;
        std::vector<ChordlessCycleCount> counts;
        std::vector<std::size_t> edges;
        for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << pairs); ++mask) {
            const Graph g = graph_from_mask(m, mask);
            counts.push_back(count_chordless_cycles(g, m));
            edges.push_back(g.edge_count());
        }
        for (int num = 1; num <= 3; ++num)
            for (std::size_t k = 4; k <= m; ++k) {
                const cpp_rational q(num, 4), r(4 - num, 4);
                cpp_rational enumerated = 0;
                for (std::size_t i = 0; i < counts.size(); ++i) {
                    if (!counts[i].at(k)) continue;
                    cpp_rational w = counts[i].at(k);
                    for (std::size_t e = 0; e < edges[i]; ++e) w *= q;
                    for (std::size_t e = edges[i]; e < pairs; ++e) w *= r;
                    enumerated += w;
                }
                cpp_rational formula = 1;
                for (std::size_t i = 0; i < k; ++i) formula *= cpp_rational(static_cast<long>(m - i)) * q;
                formula /= static_cast<long>(2 * k);
                for (std::size_t i = 0; i < k * (k - 1) / 2 - k; ++i) formula *= r;
                const double numeric = expected_chordless_cycles(m, num / 4.0, k);
                ++exact_cases;
                exact_bad += enumerated != formula ||
                             std::fabs(numeric - static_cast<double>(formula)) > 1e-12 * static_cast<double>(formula);
            }
    }
    pass = pass && exact_bad == 0;
    a.checks = {{"exact_cases", exact_cases}, {"exact_mismatches", exact_bad}};
    a.write();
    detail += " exact rational check m=4,5: " + std::to_string(exact_cases - exact_bad) + "/" +
              std::to_string(exact_cases) + " equal";
    return {8, "cycle_calibration", pass, detail};
}

inline CriterionResult c09_gw_limit(Ctx& x) {
    auto c = base_config(ExperimentKind::gw_limit, "c09_gw_limit", x.opt.seed);
    c.schedule = ParamSchedule::sparse(0.5);
    c.n_list = {2000};
    c.trials = x.scale.pick(200, 50);
    c.gw_trials = x.scale.pick(100000, 20000);
    c.selectors = {"reg_star", "pd", "depth"};
    auto a = x.artifact("c09_gw_limit");
    a.reports.push_back(x.run(c));
    bool pass = true;
    std::string detail = "lambda=0.5, n=2000, " + std::to_string(c.trials) + " graphs vs " +
                         std::to_string(c.gw_trials) + " trees:";
    for (const char* id : {"reg_star", "pd", "depth"}) {
        const Cell* cell = a.reports[0].find(id, 2000);
        const double gap = cell->extra["gap_in_combined_se"].get<double>();
        const double frac = cell->extra["censored_component_fraction"].get<double>();
        const double tree_frac = cell->extra["tree_censor_fraction"].get<double>();
        const bool ok = gap <= 4 && frac < 1e-3 && tree_frac < 1e-3;
        pass = pass && ok;
        detail += std::string(" ") + id + " " + fmt(cell->estimate, 5) + " vs " + fmt(*cell->theory, 5) + " (gap " +
                  fmt(gap, 3) + " se, censored " + fmt(frac, 2) + "/" + fmt(tree_frac, 2) + ")" + (ok ? ";" : " FAILED;");
    }
    detail.pop_back();
    a.write();
    return {9, "gw_limit", pass, detail};
}

inline CriterionResult c10_sandwich(Ctx& x) {
    const std::size_t full = 200, quick = 50;
    auto c = base_config(ExperimentKind::gw_limit, "c10_sandwich", x.opt.seed);
    c.schedule = ParamSchedule::sparse(1);
    c.n_list = {2000};
    c.trials = x.scale.pick(full, quick);
    c.gw_trials = 0;
    c.selectors = {"sandwich"};
    auto a = x.artifact("c10_sandwich");
    a.reports.push_back(x.run(c));
    const auto& r = a.reports[0];
    const Cell *lo = r.find("sandwich_lower", 2000), *hi = r.find("sandwich_upper", 2000),
               *chain = r.find("sandwich_chain", 2000);
    const double gate = 0.99 - x.scale.slack(0.99, full, quick);
    const bool pass = lo->estimate >= gate && hi->estimate >= gate && chain->estimate == 1.0;
    a.write();
    return {10, "regularity_sandwich", pass,
            "lambda=1, n=2000, " + std::to_string(c.trials) + " trials: lower bound held in " + fmt(lo->estimate) +
                ", Karp-Sipser upper (" + fmt(*hi->theory, 5) + ") held in " + fmt(hi->estimate) + " (gate " +
                fmt(gate, 3) + "); nontrivial <= reg* <= matching in " + fmt(chain->estimate) +
                " (gate 1); mean reg*/n in [" + fmt(lo->extra["reg_star_lower_over_n"].get<double>(), 5) + ", " +
                fmt(hi->extra["reg_star_upper_over_n"].get<double>(), 5) + "], censored components " +
                std::to_string(lo->censored)};
}

inline CriterionResult c11_unmixed(Ctx& x) {
    const std::size_t full = 200, quick = 50, trials = x.scale.pick(full, quick);
    struct Regime {
        const char* name;
        ParamSchedule s;
        std::size_t n;
        bool high;
        double gate;
    };
    const Regime regimes[] = {{"1", ParamSchedule::power(1, 1.75), 10000, true, 0.95},
                              {"2", ParamSchedule::power(1, 1.2), 2000, false, 0.05},
                              {"3", ParamSchedule::constant(0.5), 50, false, 0.01},
                              {"4", ParamSchedule::power(1, 0.4), 300, false, 0.05},
                              {"5", ParamSchedule::power(1, 2.5), 200, true, 0.99}};
    auto a = x.artifact("c11_unmixed");
    bool pass = true;
    std::string detail = std::to_string(trials) + " trials each:";
    for (const auto& g : regimes) {
        auto c = base_config(ExperimentKind::unmixed_scan, std::string("c11_regime") + g.name, x.opt.seed);
        c.schedule = g.s;
        c.n_list = {g.n};
        c.trials = trials;
        a.reports.push_back(x.run(c));
        const Cell& cell = a.reports.back().cells[0];
        // guard trips count against the gate
        const double unmixed = static_cast<double>(std::llround(cell.estimate * double(cell.trials)));
        const double frac = g.high ? unmixed / double(trials) : (unmixed + double(cell.guard_trips)) / double(trials);
        const double slack = x.scale.slack(g.gate, full, quick);
        const bool ok = g.high ? frac >= g.gate - slack : frac <= g.gate + slack;
        pass = pass && ok;
        detail += std::string(" (") + g.name + ") n=" + std::to_string(g.n) + " " + fmt(frac, 3) +
                  (g.high ? ">=" : "<=") + fmt(g.high ? g.gate - slack : g.gate + slack, 3) +
                  (cell.guard_trips ? " trips " + std::to_string(cell.guard_trips) : "") + (ok ? "" : " violated");
    }
    a.write();
    return {11, "unmixed_regimes", pass, detail};
}

inline CriterionResult c12_variance(Ctx& x) {
    auto c = base_config(ExperimentKind::variance_audit, "c12_variance", x.opt.seed);
    c.schedule = ParamSchedule::sparse(1);
    c.n_list = {100, 200, 400};
    c.trials = x.scale.pick(500, 100);
    auto a = x.artifact("c12_variance");
    a.reports.push_back(x.run(c));
    bool pass = true;
    std::string detail = "lambda=1, " + std::to_string(c.trials) + " trials: Var(reg*)/n =";
    for (const auto& cell : a.reports[0].cells) {
        pass = pass && cell.estimate <= 8 && cell.trials > 1;
        detail += " " + fmt(cell.estimate, 3) + " (n=" + std::to_string(cell.n) +
                  (cell.censored ? ", censored " + std::to_string(cell.censored) : "") + ")";
    }
    a.write();
    return {12, "variance", pass, detail + "; gate <= 8"};
}

inline CriterionResult c13_poisson(Ctx& x) {
    auto c = base_config(ExperimentKind::cycle_calibration, "c13_poisson", x.opt.seed);
    c.schedule = ParamSchedule::sparse(1);
    c.n_list = {500};
    c.trials = x.scale.pick(10000, 2000);
    c.k_max = 4;
    auto a = x.artifact("c13_poisson");
    a.reports.push_back(x.run(c));
    const Cell* tv = a.reports[0].find("triangles_tv", 500);
    const Cell* mean = a.reports[0].find("triangles_mean", 500);
    a.write();
    return {13, "poisson_triangles", tv->estimate <= 0.05,
            "lambda=1, n=500, " + std::to_string(c.trials) + " trials: TV(triangles, Poisson(1/6)) = " +
                fmt(tv->estimate, 3) + " <= 0.05; mean " + fmt(mean->estimate, 4) + " vs " + fmt(*mean->theory, 4)};
}

inline std::vector<std::string> report_files(const std::filesystem::path& dir) {
    std::vector<std::string> out;
    if (!std::filesystem::exists(dir)) return out;
    for (const auto& e : std::filesystem::directory_iterator(dir)) {
        const std::string name = e.path().filename().string();
        if (e.is_regular_file() && name.size() > 4 && name[0] == 'c' && name.compare(0, 3, "c14") != 0 &&
            (name.ends_with(".json") || name.ends_with(".csv")))
            out.push_back(name);
    }
    std::sort(out.begin(), out.end());
    return out;
}

inline std::string slurp(const std::filesystem::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
}

}  // namespace detail

inline BatteryResult run_battery(const BatteryOptions& opt);

namespace detail {

inline CriterionResult c14_determinism(Ctx& x) {
    // quick runs of criteria 1-13 with one seed at different worker counts
    const unsigned other = x.opt.workers == 1 ? 3 : 1;
    std::vector<std::pair<std::filesystem::path, unsigned>> runs;
    if (x.opt.quick) runs.emplace_back(x.opt.outdir, x.opt.workers);
    for (unsigned w : x.opt.quick ? std::vector<unsigned>{other} : std::vector<unsigned>{x.opt.workers, other}) {
        BatteryOptions o;
        o.quick = true;
        o.seed = x.opt.seed;
        o.workers = w;
        o.outdir = x.opt.outdir / ("c14_rerun_w" + std::to_string(w));
        for (int k = 1; k < kCriteria; ++k) o.only.push_back(k);
        run_battery(o);
        runs.emplace_back(o.outdir, w);
    }
    const auto names = report_files(runs[0].first);
    std::size_t differ = 0;
    std::string first_diff;
    for (std::size_t r = 1; r < runs.size(); ++r) {
        if (report_files(runs[r].first) != names && first_diff.empty()) first_diff = "file sets differ";
        for (const auto& n : names)
            if (slurp(runs[0].first / n) != slurp(runs[r].first / n)) {
                ++differ;
                if (first_diff.empty()) first_diff = n;
            }
    }
    auto a = x.artifact("c14_determinism");
    a.checks = {{"files_compared", names.size()}, {"differing", differ}};
    a.write();
    std::string detail = std::to_string(runs.size()) + " quick runs, workers";
    for (const auto& r : runs) detail += " " + std::to_string(r.second);
    detail += ": " + std::to_string(names.size()) + " report files, " + std::to_string(differ) + " differ";
    if (!first_diff.empty()) detail += " (first: " + first_diff + ")";
    return {14, "determinism", first_diff.empty() && !names.empty(), detail};
}

}  // namespace detail

/// Runs the acceptance criteria, writing per-criterion report files (no
/// timing, so reruns compare byte for byte), timing.csv and summary.txt.
inline BatteryResult run_battery(const BatteryOptions& opt) {
    using Fn = CriterionResult (*)(detail::Ctx&);
    static const Fn fns[kCriteria] = {detail::c01_froberg,      detail::c02_c5,          detail::c03_forests,
                                      detail::c04_lipschitz,    detail::c05_dense_window, detail::c06_sparse_window,
                                      detail::c07_endpoints,    detail::c08_cycles,      detail::c09_gw_limit,
                                      detail::c10_sandwich,     detail::c11_unmixed,     detail::c12_variance,
                                      detail::c13_poisson,      detail::c14_determinism};
    std::filesystem::create_directories(opt.outdir);
    detail::Ctx ctx{opt, detail::Scale{opt.quick}, {}};
    BatteryResult out;
    std::ofstream timing(opt.outdir / "timing.csv");
    timing << "criterion,name,pass,seconds\n";
    for (int id = 1; id <= kCriteria; ++id) {
        if (!opt.only.empty() && std::find(opt.only.begin(), opt.only.end(), id) == opt.only.end()) continue;
        const auto t0 = detail::Clock::now();
        CriterionResult r;
        try {
            r = fns[id - 1](ctx);
        } catch (const std::exception& e) {
            r = {id, "criterion_" + std::to_string(id), false, std::string("error: ") + e.what()};
        }
        r.seconds = detail::since(t0);
        timing << id << ',' << r.name << ',' << (r.pass ? 1 : 0) << ',' << detail::fmt(r.seconds, 4) << '\n';
        timing.flush();
        if (opt.on_line) opt.on_line(format_line(r));
        out.criteria.push_back(std::move(r));
    }
    // coverage of theory values by Wilson intervals, over proportion cells with a theory
    std::size_t cells = 0, covered = 0;
    std::string flagged;
    for (const auto& rep : ctx.all_reports) {
        if (rep.config.kind != ExperimentKind::threshold) continue;
        for (const auto& c : rep.cells) {
            if (!c.theory) continue;
            ++cells;
            if (c.ci_lo <= *c.theory && *c.theory <= c.ci_hi) {
                ++covered;
            } else {
                flagged += " " + c.experiment + "/" + c.cell_id;
            }
        }
    }
    if (cells)
        out.notes.push_back("wilson coverage of theory: " + std::to_string(covered) + "/" + std::to_string(cells) +
                            " cells" + (flagged.empty() ? "" : "; finite-n bias flagged:" + flagged));
    std::ofstream summary(opt.outdir / "summary.txt");
    summary << "mode " << (opt.quick ? "quick" : "full") << " seed " << opt.seed << '\n';
    for (const auto& r : out.criteria) summary << format_line(r) << '\n';
    for (const auto& n : out.notes) summary << n << '\n';
    return out;
}

}  // namespace eideal
