#pragma once

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <map>
#include <memory>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <tuple>
#include <vector>

#include <json.hpp>

#include "asymptotics.hpp"
#include "betti.hpp"
#include "chordality.hpp"
#include "comb_invariants.hpp"
#include "parallel.hpp"
#include "random_models.hpp"
#include "rng.hpp"

#ifndef EIDEAL_VERSION
#define EIDEAL_VERSION "unknown"
#endif

namespace eideal {

inline constexpr const char* kVersion = EIDEAL_VERSION;

/// Config validation failure; `pointer` names the offending field.
class ConfigError : public std::invalid_argument {
public:
    ConfigError(std::string pointer, const std::string& what)
        : std::invalid_argument(pointer + ": " + what), pointer_(std::move(pointer)) {}
    const std::string& pointer() const { return pointer_; }

private:
    std::string pointer_;
};

enum class ExperimentKind {
    threshold,
    gw_limit,
    unmixed_scan,
    cycle_calibration,
    lipschitz_audit,
    froberg_audit,
    variance_audit
};

inline const std::vector<std::pair<ExperimentKind, std::string>>& experiment_kind_names() {
    static const std::vector<std::pair<ExperimentKind, std::string>> names = {
        {ExperimentKind::threshold, "threshold"},
        {ExperimentKind::gw_limit, "gw_limit"},
        {ExperimentKind::unmixed_scan, "unmixed_scan"},
        {ExperimentKind::cycle_calibration, "cycle_calibration"},
        {ExperimentKind::lipschitz_audit, "lipschitz_audit"},
        {ExperimentKind::froberg_audit, "froberg_audit"},
        {ExperimentKind::variance_audit, "variance_audit"},
    };
    return names;
}

inline std::string to_string(ExperimentKind k) {
    for (auto& [kind, name] : experiment_kind_names())
        if (kind == k) return name;
    return "?";
}

inline std::optional<ExperimentKind> parse_experiment_kind(const std::string& s) {
    for (auto& [kind, name] : experiment_kind_names())
        if (name == s) return kind;
    return std::nullopt;
}

inline const std::vector<std::string>& threshold_predicates() {
    static const std::vector<std::string> p = {"is_cochordal", "is_4_cochordal", "is_locally_cochordal",
                                               "is_locally_4_cochordal"};
    return p;
}

struct ExperimentConfig {
    ExperimentKind kind = ExperimentKind::threshold;
    std::string id;  // seeding and labeling; defaults to the kind name
    ParamSchedule schedule = ParamSchedule::constant(0);
    std::vector<std::size_t> n_list{10};
    std::size_t trials = 100;
    std::uint64_t seed = 1;
    // threshold: predicate names; gw_limit: any of reg_star, pd, depth, sandwich
    std::vector<std::string> selectors;
    std::size_t k_max = 4;
    std::size_t gw_trials = 100000;
    std::size_t gw_cap = 100000;
    std::size_t betti_guard = kDefaultBettiGuard;
    std::uint64_t node_budget = kDefaultNodeBudget;
    std::uint64_t branch_budget = 20000;
    std::size_t exhaustive_max = 7;  // froberg_audit
    Field field = Field::rationals();

    std::string label() const { return id.empty() ? to_string(kind) : id; }
    std::vector<std::string> active_selectors() const;
};

inline std::vector<std::string> default_selectors(ExperimentKind k) {
    switch (k) {
        case ExperimentKind::threshold: return {"is_cochordal", "is_4_cochordal"};
        case ExperimentKind::gw_limit: return {"reg_star", "pd", "depth"};
        default: return {};
    }
}

inline std::vector<std::string> ExperimentConfig::active_selectors() const {
    return selectors.empty() ? default_selectors(kind) : selectors;
}

inline nlohmann::json to_json(const ExperimentConfig& c) {
    nlohmann::json j;
    j["kind"] = to_string(c.kind);
    j["id"] = c.label();
    j["schedule"] = c.schedule;
    j["n_list"] = c.n_list;
    j["trials"] = c.trials;
    j["seed"] = c.seed;
    j["selectors"] = c.active_selectors();
    j["k_max"] = c.k_max;
    j["gw_trials"] = c.gw_trials;
    j["gw_cap"] = c.gw_cap;
    j["betti_guard"] = c.betti_guard;
    j["node_budget"] = c.node_budget;
    j["branch_budget"] = c.branch_budget;
    j["exhaustive_max"] = c.exhaustive_max;
    j["field"] = c.field.name();
    return j;
}

/// Parses and validates a config; unknown keys are rejected.
inline ExperimentConfig experiment_config_from_json(const nlohmann::json& j) {
    static const std::vector<std::string> known = {"kind",       "id",          "schedule",      "n_list",
                                                   "trials",     "seed",        "selectors",     "k_max",
                                                   "gw_trials",  "gw_cap",      "betti_guard",   "node_budget",
                                                   "branch_budget", "exhaustive_max", "field"};
    if (!j.is_object()) throw ConfigError("/", "config must be a JSON object");
    for (auto it = j.begin(); it != j.end(); ++it)
        if (std::find(known.begin(), known.end(), it.key()) == known.end())
            throw ConfigError("/" + it.key(), "unknown field");
    ExperimentConfig c;
    auto get = [&](const char* key, auto& out) {
        if (!j.contains(key)) return;
        try {
            j.at(key).get_to(out);
        } catch (const nlohmann::json::exception& e) {
            throw ConfigError(std::string("/") + key, e.what());
        }
    };
    if (!j.contains("kind")) throw ConfigError("/kind", "required");
    std::string kind;
    get("kind", kind);
    auto k = parse_experiment_kind(kind);
    if (!k) throw ConfigError("/kind", "unknown experiment kind '" + kind + "'");
    c.kind = *k;
    get("id", c.id);
    if (j.contains("schedule")) {
        try {
            c.schedule = j.at("schedule").get<ParamSchedule>();
        } catch (const std::exception& e) {
            throw ConfigError("/schedule", e.what());
        }
    }
    get("n_list", c.n_list);
    get("trials", c.trials);
    get("seed", c.seed);
    get("selectors", c.selectors);
    get("k_max", c.k_max);
    get("gw_trials", c.gw_trials);
    get("gw_cap", c.gw_cap);
    get("betti_guard", c.betti_guard);
    get("node_budget", c.node_budget);
    get("branch_budget", c.branch_budget);
    get("exhaustive_max", c.exhaustive_max);
    if (j.contains("field")) {
        std::string f;
        get("field", f);
        try {
            c.field = Field::parse(f);
        } catch (const std::exception& e) {
            throw ConfigError("/field", e.what());
        }
    }
    if (c.selectors.empty()) c.selectors = default_selectors(c.kind);
    if (c.trials < 1) throw ConfigError("/trials", "must be >= 1");
    if (c.kind != ExperimentKind::froberg_audit && c.n_list.empty()) throw ConfigError("/n_list", "must be non-empty");
    for (std::size_t i = 0; i < c.n_list.size(); ++i)
        if (c.n_list[i] < 1) throw ConfigError("/n_list/" + std::to_string(i), "must be >= 1");
    if (c.betti_guard > 24) throw ConfigError("/betti_guard", "must be <= 24");
    if (c.gw_cap < 1) throw ConfigError("/gw_cap", "must be >= 1");
    if (c.exhaustive_max > 7) throw ConfigError("/exhaustive_max", "must be <= 7");
    if (c.k_max < 4) throw ConfigError("/k_max", "must be >= 4");
    for (std::size_t i = 0; i < c.selectors.size(); ++i) {
        const std::string& s = c.selectors[i];
        bool ok = true;
        if (c.kind == ExperimentKind::threshold)
            ok = std::find(threshold_predicates().begin(), threshold_predicates().end(), s) != threshold_predicates().end();
        else if (c.kind == ExperimentKind::gw_limit)
            ok = s == "reg_star" || s == "pd" || s == "depth" || s == "sandwich";
        if (!ok) throw ConfigError("/selectors/" + std::to_string(i), "unknown selector '" + s + "'");
    }
    const bool sparse = c.schedule.kind == ScheduleKind::sparse;
    if ((c.kind == ExperimentKind::gw_limit || c.kind == ExperimentKind::variance_audit) && !sparse)
        throw ConfigError("/schedule", "needs a sparse schedule");
    if (c.kind == ExperimentKind::gw_limit && c.schedule.lambda > 1) throw ConfigError("/schedule/lambda", "must be <= 1");
    if (c.kind == ExperimentKind::lipschitz_audit)
        for (std::size_t i = 0; i < c.n_list.size(); ++i)
            if (c.n_list[i] > 12) throw ConfigError("/n_list/" + std::to_string(i), "audit graphs are limited to 12 vertices");
    return c;
}

struct Interval {
    double lo = 0, hi = 0;
};

/// 95% Wilson score interval for k successes in n trials.
inline Interval wilson_interval(std::size_t k, std::size_t n, double z = 1.959963984540054) {
    if (n == 0) return {0, 1};
    const double nn = static_cast<double>(n), ph = static_cast<double>(k) / nn;
    const double denom = 1 + z * z / nn;
    const double centre = (ph + z * z / (2 * nn)) / denom;
    const double half = z * std::sqrt(ph * (1 - ph) / nn + z * z / (4 * nn * nn)) / denom;
    return {k == 0 ? 0.0 : std::max(0.0, centre - half), k == n ? 1.0 : std::min(1.0, centre + half)};
}

struct Cell {
    std::string experiment;
    std::size_t n = 0;
    std::string cell_id;
    double estimate = 0;
    double ci_lo = 0, ci_hi = 0;
    std::optional<double> theory;
    std::string theory_note;
    std::size_t censored = 0;
    std::size_t guard_trips = 0;
    std::size_t trials = 0;
    double seconds = 0;
    nlohmann::json extra = nlohmann::json::object();
};

struct ExperimentReport {
    ExperimentConfig config;
    std::string version = kVersion;
    std::vector<Cell> cells;
    std::vector<std::string> witnesses;
    bool audit_failed = false;

    const Cell* find(const std::string& cell_id, std::size_t n) const {
        for (const auto& c : cells)
            if (c.cell_id == cell_id && c.n == n) return &c;
        return nullptr;
    }
};

namespace detail {

/// Shortest decimal form that reads back to the same double.
inline std::string fmt_double(double x) {
    if (std::isnan(x)) return "nan";
    char buf[64];
    for (int prec = 1; prec <= 17; ++prec) {
        std::snprintf(buf, sizeof buf, "%.*g", prec, x);
        if (std::strtod(buf, nullptr) == x) break;
    }
    return buf;
}

}  // namespace detail

inline nlohmann::json to_json(const Cell& c, bool timing) {
    nlohmann::json j = {{"experiment", c.experiment}, {"n", c.n},           {"cell_id", c.cell_id},
                        {"estimate", c.estimate},     {"ci_lo", c.ci_lo},   {"ci_hi", c.ci_hi},
                        {"censored", c.censored},     {"guard_trips", c.guard_trips}, {"trials", c.trials}};
    j["theory"] = c.theory ? nlohmann::json(*c.theory) : nlohmann::json(nullptr);
    if (!c.theory_note.empty()) j["theory_note"] = c.theory_note;
    if (!c.extra.empty()) j["extra"] = c.extra;
    if (timing) j["seconds"] = c.seconds;
    return j;
}

inline nlohmann::json to_json(const ExperimentReport& r, bool timing = true) {
    nlohmann::json cells = nlohmann::json::array();
    for (const auto& c : r.cells) cells.push_back(to_json(c, timing));
    return {{"version", r.version},     {"config", to_json(r.config)}, {"cells", cells},
            {"witnesses", r.witnesses}, {"audit_failed", r.audit_failed}};
}

inline const char* kCsvHeader = "experiment,n,cell_id,estimate,ci_lo,ci_hi,theory,censored,guard_trips,trials,seconds";

/// Flat cells. With timing off the seconds column is left empty so reruns
/// compare byte for byte.
inline std::string to_csv(const ExperimentReport& r, bool timing = true, bool header = true) {
    std::ostringstream out;
    if (header) out << kCsvHeader << '\n';
    for (const auto& c : r.cells) {
        out << c.experiment << ',' << c.n << ',' << c.cell_id << ',' << detail::fmt_double(c.estimate) << ','
            << detail::fmt_double(c.ci_lo) << ',' << detail::fmt_double(c.ci_hi) << ','
            << (c.theory ? detail::fmt_double(*c.theory) : "") << ',' << c.censored << ',' << c.guard_trips << ','
            << c.trials << ',';
        if (timing) out << detail::fmt_double(c.seconds);
        out << '\n';
    }
    return out.str();
}

namespace detail {

using Clock = std::chrono::steady_clock;

inline double since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

inline std::uint64_t trial_seed(const ExperimentConfig& c, std::size_t n, std::size_t trial) {
    return derive_seed(c.seed, {fnv1a(c.label()), n, trial});
}

inline Cell make_cell(const ExperimentConfig& c, std::size_t n, std::string id) {
    Cell cell;
    cell.experiment = c.label();
    cell.n = n;
    cell.cell_id = std::move(id);
    return cell;
}

inline void set_proportion(Cell& cell, std::size_t k, std::size_t valid) {
    cell.trials = valid;
    cell.estimate = valid ? static_cast<double>(k) / static_cast<double>(valid) : 0;
    const auto w = wilson_interval(k, valid);
    cell.ci_lo = w.lo;
    cell.ci_hi = w.hi;
}

struct Moments {
    std::size_t count = 0;
    double sum = 0, sq = 0;

    void add(double x) {
        ++count;
        sum += x;
        sq += x * x;
    }
    double mean() const { return count ? sum / static_cast<double>(count) : 0; }
    double variance() const {
        if (count < 2) return 0;
        const double m = mean();
        return std::max(0.0, (sq - static_cast<double>(count) * m * m) / static_cast<double>(count - 1));
    }
    double stderr_() const { return count ? std::sqrt(variance() / static_cast<double>(count)) : 0; }
};

inline void set_mean(Cell& cell, const Moments& m) {
    cell.trials = m.count;
    cell.estimate = m.mean();
    const double h = 1.959963984540054 * m.stderr_();
    cell.ci_lo = cell.estimate - h;
    cell.ci_hi = cell.estimate + h;
    cell.extra["stderr"] = m.stderr_();
}

inline bool eval_predicate(const std::string& name, const Graph& g) {
    if (name == "is_cochordal") return is_cochordal(g);
    if (name == "is_4_cochordal") return is_4_cochordal(g);
    if (name == "is_locally_cochordal") return is_locally_cochordal(g);
    if (name == "is_locally_4_cochordal") return is_locally_4_cochordal(g);
    throw std::invalid_argument("unknown predicate " + name);
}

inline std::optional<TheoryValue> threshold_theory(const ParamSchedule& s, const std::string& predicate) {
    if (s.kind == ScheduleKind::window_sparse && (predicate == "is_cochordal" || predicate == "is_4_cochordal"))
        return prob_lr_sparse_window(s.lambda);
    if (s.kind == ScheduleKind::window_dense) {
        if (predicate == "is_4_cochordal") return prob_lp_dense_window(s.lambda);
        if (predicate == "is_cochordal") return prob_lr_dense_window(s.lambda);
    }
    return std::nullopt;
}

inline std::string witness(const std::string& what, const Graph& g) {
    std::string el = to_edge_list(g);
    std::replace(el.begin(), el.end(), '\n', ';');
    return what + " | " + el;
}

}  // namespace detail

/// Fraction of G(n, p(n)) samples satisfying each predicate, with the window
/// limit as theory where one exists. All predicates see the same samples.
inline ExperimentReport run_threshold(const ExperimentConfig& c, unsigned workers = 1) {
    ExperimentReport r;
    r.config = c;
    const auto sel = c.active_selectors();
    const std::size_t np = sel.size();
    for (std::size_t n : c.n_list) {
        const auto t0 = detail::Clock::now();
        const double p = schedule_p(c.schedule, n);
        std::vector<std::uint8_t> hit(c.trials * np);
        parallel_for(c.trials, workers, [&](std::size_t t) {
            const Graph g = sample_gnp(n, p, detail::trial_seed(c, n, t));
            for (std::size_t k = 0; k < np; ++k) hit[t * np + k] = detail::eval_predicate(sel[k], g);
        });
        const double secs = detail::since(t0);
        for (std::size_t k = 0; k < np; ++k) {
            std::size_t count = 0;
            for (std::size_t t = 0; t < c.trials; ++t) count += hit[t * np + k];
            Cell cell = detail::make_cell(c, n, sel[k]);
            detail::set_proportion(cell, count, c.trials);
            if (auto th = detail::threshold_theory(c.schedule, sel[k])) {
                cell.theory = th->value;
                cell.theory_note = th->formula_id + (th->note.empty() ? "" : "; " + th->note);
            }
            cell.extra["p"] = p;
            cell.seconds = secs;
            r.cells.push_back(std::move(cell));
        }
    }
    return r;
}

/// Graph side n^-1 reg*, n^-1 pd, n^-1 depth of G(n, lambda/n) against the
/// GW(lambda) tree side. The "sandwich" selector adds per-trial checks of
/// beta_0/n - e^-lambda <= reg*/n <= Karp-Sipser bound, and of
/// (non-trivial components) <= reg* <= matching number.
inline ExperimentReport run_gw_limit(const ExperimentConfig& c, unsigned workers = 1) {
    ExperimentReport r;
    r.config = c;
    const double lambda = c.schedule.lambda;
    const auto sel = c.active_selectors();
    auto wants = [&](const char* s) { return std::find(sel.begin(), sel.end(), s) != sel.end(); };
    const bool want_reg = wants("reg_star"), want_pd = wants("pd") || wants("depth"), sandwich = wants("sandwich");
    ComponentwiseOptions opt;
    opt.field = c.field;
    opt.guard = c.betti_guard;
    opt.branch_budget = c.branch_budget;

    struct Trial {
        ComponentwiseResult reg, pd;
        std::size_t components = 0, nontrivial = 0, matching = 0;
    };
    for (std::size_t n : c.n_list) {
        const auto t0 = detail::Clock::now();
        const double p = schedule_p(c.schedule, n);
        std::vector<Trial> trials(c.trials);
        parallel_for(c.trials, workers, [&](std::size_t t) {
            const Graph g = sample_gnp(n, p, detail::trial_seed(c, n, t));
            Trial& tr = trials[t];
            if (want_reg || sandwich) tr.reg = regularity_componentwise(g, opt);
            if (want_pd) tr.pd = pd_componentwise(g, opt);
            auto parts = connected_components(g, sandwich);
            tr.components = parts.count();
            for (std::size_t k = 0; k < parts.count(); ++k)
                if (parts.sizes[k] > 1) {
                    ++tr.nontrivial;
                    if (sandwich) tr.matching += matching_number(parts.component_subgraphs[k]);
                }
        });
        const double secs = detail::since(t0);
        const double nn = static_cast<double>(n);

        auto graph_cell = [&](const std::string& id, auto value_of, auto res_of, TreeInvariant which) {
            detail::Moments m;
            std::size_t censored_trials = 0, censored_components = 0;
            for (const auto& tr : trials) {
                const ComponentwiseResult& res = res_of(tr);
                censored_components += res.censored_components;
                if (res.censored()) {
                    ++censored_trials;
                    continue;
                }
                m.add(value_of(res) / nn);
            }
            Cell cell = detail::make_cell(c, n, id);
            detail::set_mean(cell, m);
            cell.censored = censored_trials;
            cell.extra["censored_components"] = censored_components;
            cell.extra["p"] = p;
            if (c.gw_trials > 0) {
                const auto tree = gw_limit_estimate(lambda, c.gw_trials, c.gw_cap, which,
                                                    derive_seed(c.seed, {fnv1a(c.label()), fnv1a("tree"), n}), workers);
                cell.theory = tree.estimate;
                cell.theory_note = "gw_tree_mean";
                cell.extra["tree_stderr"] = tree.stderr_;
                cell.extra["tree_censor_fraction"] = tree.censor_fraction;
                cell.extra["tree_used"] = tree.used;
                const double se = std::hypot(m.stderr_(), tree.stderr_);
                cell.extra["gap_in_combined_se"] = se > 0 ? std::fabs(m.mean() - tree.estimate) / se : 0.0;
            }
            cell.seconds = secs;
            r.cells.push_back(std::move(cell));
        };
        std::size_t nontrivial_total = 0;
        for (const auto& tr : trials) nontrivial_total += tr.nontrivial;

        if (want_reg)
            graph_cell(
                "reg_star", [](const ComponentwiseResult& x) { return static_cast<double>(x.value); },
                [](const Trial& t) -> const ComponentwiseResult& { return t.reg; }, TreeInvariant::induced_matching);
        if (wants("pd"))
            graph_cell(
                "pd", [](const ComponentwiseResult& x) { return static_cast<double>(x.value); },
                [](const Trial& t) -> const ComponentwiseResult& { return t.pd; }, TreeInvariant::pd);
        if (wants("depth"))
            graph_cell(
                "depth", [nn](const ComponentwiseResult& x) { return nn - static_cast<double>(x.value); },
                [](const Trial& t) -> const ComponentwiseResult& { return t.pd; }, TreeInvariant::depth);

        if (sandwich) {
            const double ks = karp_sipser_upper(lambda).bound.value;
            const double el = std::exp(-lambda);
            std::size_t lower_ok = 0, upper_ok = 0, chain_ok = 0, censored_components = 0;
            detail::Moments b0, b0hat, reg_lo, reg_hi, match;
            for (const auto& tr : trials) {
                const double lower = static_cast<double>(tr.components) / nn - el;
                lower_ok += lower <= static_cast<double>(tr.reg.lower) / nn;
                upper_ok += static_cast<double>(tr.reg.upper) / nn <= ks;
                chain_ok += tr.nontrivial <= tr.reg.lower && tr.reg.upper <= tr.matching;
                censored_components += tr.reg.censored_components;
                b0.add(static_cast<double>(tr.components) / nn);
                b0hat.add(static_cast<double>(tr.nontrivial) / nn);
                reg_lo.add(static_cast<double>(tr.reg.lower) / nn);
                reg_hi.add(static_cast<double>(tr.reg.upper) / nn);
                match.add(static_cast<double>(tr.matching) / nn);
            }
            const double frac = nontrivial_total ? static_cast<double>(censored_components) / nontrivial_total : 0.0;
            Cell lo = detail::make_cell(c, n, "sandwich_lower");
            detail::set_proportion(lo, lower_ok, c.trials);
            lo.theory_note = "beta0/n - exp(-lambda) <= reg*/n";
            lo.extra = {{"beta0_over_n", b0.mean()},         {"beta0hat_over_n", b0hat.mean()},
                        {"exp_minus_lambda", el},            {"reg_star_lower_over_n", reg_lo.mean()},
                        {"censored_component_fraction", frac}};
            lo.censored = censored_components;
            lo.seconds = secs;
            Cell hi = detail::make_cell(c, n, "sandwich_upper");
            detail::set_proportion(hi, upper_ok, c.trials);
            hi.theory = ks;
            hi.theory_note = "karp_sipser";
            hi.extra = {{"reg_star_upper_over_n", reg_hi.mean()}, {"matching_over_n", match.mean()}};
            hi.censored = censored_components;
            hi.seconds = secs;
            Cell chain = detail::make_cell(c, n, "sandwich_chain");
            detail::set_proportion(chain, chain_ok, c.trials);
            chain.theory_note = "nontrivial components <= reg* <= matching number";
            chain.seconds = secs;
            r.cells.push_back(std::move(lo));
            r.cells.push_back(std::move(hi));
            r.cells.push_back(std::move(chain));
        }
        for (auto& cell : r.cells)
            if (cell.n == n && (cell.cell_id == "reg_star" || cell.cell_id == "pd" || cell.cell_id == "depth"))
                cell.extra["censored_component_fraction"] =
                    nontrivial_total ? cell.extra["censored_components"].get<double>() / nontrivial_total : 0.0;
    }
    return r;
}

/// Fraction of unmixed samples; samples whose cover enumeration exceeds the
/// node budget are excluded and counted as guard trips.
inline ExperimentReport run_unmixed_scan(const ExperimentConfig& c, unsigned workers = 1) {
    ExperimentReport r;
    r.config = c;
    for (std::size_t n : c.n_list) {
        const auto t0 = detail::Clock::now();
        const double p = schedule_p(c.schedule, n);
        std::vector<std::int8_t> res(c.trials);
        parallel_for(c.trials, workers, [&](std::size_t t) {
            const Graph g = sample_gnp(n, p, detail::trial_seed(c, n, t));
            try {
                res[t] = is_unmixed(g, c.node_budget) ? 1 : 0;
            } catch (const BudgetExceeded&) {
                res[t] = -1;
            }
        });
        std::size_t yes = 0, trips = 0;
        for (auto v : res) {
            yes += v == 1;
            trips += v < 0;
        }
        Cell cell = detail::make_cell(c, n, "unmixed");
        detail::set_proportion(cell, yes, c.trials - trips);
        cell.guard_trips = trips;
        cell.extra["p"] = p;
        cell.seconds = detail::since(t0);
        r.cells.push_back(std::move(cell));
    }
    return r;
}

namespace detail {

inline double poisson_pmf(double mu, std::size_t k) {
    if (mu == 0) return k == 0 ? 1.0 : 0.0;
    return std::exp(-mu + static_cast<double>(k) * std::log(mu) - std::lgamma(static_cast<double>(k) + 1));
}

inline double tv_to_poisson(const std::map<std::uint64_t, std::size_t>& hist, std::size_t total, double mu) {
    // sum over the observed support plus the Poisson mass outside it
    double tv = 0, covered = 0;
    for (auto& [k, cnt] : hist) {
        const double q = poisson_pmf(mu, k);
        covered += q;
        tv += std::fabs(static_cast<double>(cnt) / static_cast<double>(total) - q);
    }
    tv += std::max(0.0, 1 - covered);
    return tv / 2;
}

}  // namespace detail

/// Mean chordless k-cycle counts against the closed-form expectation, and in
/// the sparse regime the triangle-count law against Poisson(lambda^3/6).
inline ExperimentReport run_cycle_calibration(const ExperimentConfig& c, unsigned workers = 1) {
    ExperimentReport r;
    r.config = c;
    const bool sparse = c.schedule.kind == ScheduleKind::sparse;
    for (std::size_t n : c.n_list) {
        const auto t0 = detail::Clock::now();
        const double q = schedule_p(c.schedule, n);
        const std::size_t kmax = std::min(c.k_max, n);
        const std::size_t width = kmax + 1;
        std::vector<std::uint64_t> counts(c.trials * width, 0);
        parallel_for(c.trials, workers, [&](std::size_t t) {
            const Graph g = sample_gnp(n, q, detail::trial_seed(c, n, t));
            if (kmax >= 4) {
                const auto cc = count_chordless_cycles(g, kmax);
                for (std::size_t k = 4; k <= kmax; ++k) counts[t * width + k] = cc.at(k);
            }
            if (sparse) counts[t * width + 3] = count_triangles(g);
        });
        const double secs = detail::since(t0);
        for (std::size_t k = 4; k <= kmax; ++k) {
            detail::Moments m;
            for (std::size_t t = 0; t < c.trials; ++t) m.add(static_cast<double>(counts[t * width + k]));
            Cell cell = detail::make_cell(c, n, "C" + std::to_string(k));
            detail::set_mean(cell, m);
            cell.theory = expected_chordless_cycles(n, q, k);
            cell.theory_note = "expected_chordless_cycles";
            const double se = m.stderr_();
            cell.extra["z"] = se > 0 ? (m.mean() - *cell.theory) / se : 0.0;
            cell.extra["q"] = q;
            cell.seconds = secs;
            r.cells.push_back(std::move(cell));
        }
        if (sparse) {
            std::map<std::uint64_t, std::size_t> hist;
            detail::Moments m;
            for (std::size_t t = 0; t < c.trials; ++t) {
                ++hist[counts[t * width + 3]];
                m.add(static_cast<double>(counts[t * width + 3]));
            }
            const double mu = std::pow(c.schedule.lambda, 3) / 6;
            Cell mean = detail::make_cell(c, n, "triangles_mean");
            detail::set_mean(mean, m);
            mean.theory = mu;
            mean.theory_note = "lambda^3/6";
            mean.seconds = secs;
            Cell tv = detail::make_cell(c, n, "triangles_tv");
            tv.trials = c.trials;
            tv.estimate = tv.ci_lo = tv.ci_hi = detail::tv_to_poisson(hist, c.trials, mu);
            tv.theory = 0;
            tv.theory_note = "total variation to Poisson(lambda^3/6)";
            tv.seconds = secs;
            r.cells.push_back(std::move(mean));
            r.cells.push_back(std::move(tv));
        }
    }
    return r;
}

/// Vertex-deletion bounds |d reg*| <= 1 and |d pd| <= max degree + 1 on random
/// graphs with at most n vertices, plus additivity of reg* and pd over a
/// disjoint union. Every violation is a witness and fails the audit.
inline ExperimentReport run_lipschitz_audit(const ExperimentConfig& c, unsigned workers = 1) {
    ExperimentReport r;
    r.config = c;
    for (std::size_t nmax : c.n_list) {
        const auto t0 = detail::Clock::now();
        struct Outcome {
            std::uint8_t reg_bad = 0, pd_bad = 0, add_bad = 0;
            std::string witness;
        };
        std::vector<Outcome> out(c.trials);
        const std::size_t chunk = 64;
        parallel_for((c.trials + chunk - 1) / chunk, workers, [&](std::size_t ch) {
            BettiEngine engine(c.field, 24, 6);
            for (std::size_t t = ch * chunk; t < std::min(c.trials, (ch + 1) * chunk); ++t) {
                Rng rng(detail::trial_seed(c, nmax, t));
                Outcome& o = out[t];
                const std::size_t n = 1 + rng.below(nmax);
                const Graph g = sample_gnp(n, rng.uniform(), rng.next());
                const Vertex v = static_cast<Vertex>(rng.below(n));
                const Graph h = delete_vertex(g, v);
                const BettiTable tg = engine.table(g), th = engine.table(h);
                // reg* = reg(I) - 1 = reg(S/I) with reg*(edgeless) = 0; pd(I) = pd(S/I) - 1 on both sides
                const int dreg = tg.regularity_quotient() - th.regularity_quotient();
                const int dpd = tg.pd_quotient() - th.pd_quotient();
                o.reg_bad = std::abs(dreg) > 1;
                o.pd_bad = std::abs(dpd) > static_cast<int>(max_degree(g)) + 1;
                if (o.reg_bad || o.pd_bad)
                    o.witness = detail::witness("deletion of vertex " + std::to_string(v), g);

                // disjoint union of two random pieces, at most nmax + 2 vertices
                const std::size_t a = 1 + rng.below(std::max<std::size_t>(1, (nmax + 2) / 2));
                const std::size_t b = 1 + rng.below(std::max<std::size_t>(1, nmax + 2 - a));
                const Graph u = disjoint_union(sample_gnp(a, rng.uniform(), rng.next()),
                                               sample_gnp(b, rng.uniform(), rng.next()));
                const BettiTable tu = engine.table(u);
                int reg_sum = 0, pd_sum = 0;
                for (const auto& comp : connected_components(u, true).component_subgraphs) {
                    const BettiTable tc = engine.table(comp);
                    reg_sum += tc.regularity_quotient();
                    pd_sum += tc.pd_quotient();
                }
                o.add_bad = tu.regularity_quotient() != reg_sum || tu.pd_quotient() != pd_sum;
                if (o.add_bad && o.witness.empty()) o.witness = detail::witness("additivity", u);
            }
        });
        std::size_t reg_bad = 0, pd_bad = 0, add_bad = 0;
        for (const auto& o : out) {
            reg_bad += o.reg_bad;
            pd_bad += o.pd_bad;
            add_bad += o.add_bad;
            if (!o.witness.empty()) r.witnesses.push_back(o.witness);
        }
        const double secs = detail::since(t0);
        for (auto [id, bad] : {std::pair<const char*, std::size_t>{"reg_violations", reg_bad},
                               {"pd_violations", pd_bad},
                               {"additivity_violations", add_bad}}) {
            Cell cell = detail::make_cell(c, nmax, id);
            detail::set_proportion(cell, bad, c.trials);
            cell.theory = 0;
            cell.extra["violations"] = bad;
            cell.seconds = secs;
            r.cells.push_back(std::move(cell));
        }
    }
    r.audit_failed = !r.witnesses.empty();
    return r;
}

/// Sample variance of reg* over G(n, lambda/n), divided by n, against the
/// bound 8 from integrating the bounded-difference tail with M = 1.
inline ExperimentReport run_variance_audit(const ExperimentConfig& c, unsigned workers = 1) {
    ExperimentReport r;
    r.config = c;
    ComponentwiseOptions opt;
    opt.field = c.field;
    opt.guard = c.betti_guard;
    opt.branch_budget = c.branch_budget;
    for (std::size_t n : c.n_list) {
        const auto t0 = detail::Clock::now();
        const double p = schedule_p(c.schedule, n);
        std::vector<ComponentwiseResult> res(c.trials);
        parallel_for(c.trials, workers, [&](std::size_t t) {
            res[t] = regularity_componentwise(sample_gnp(n, p, detail::trial_seed(c, n, t)), opt);
        });
        detail::Moments m;
        std::size_t censored = 0;
        for (const auto& x : res) {
            if (x.censored()) {
                ++censored;
                continue;
            }
            m.add(static_cast<double>(x.value));
        }
        Cell cell = detail::make_cell(c, n, "var_over_n");
        cell.trials = m.count;
        cell.estimate = m.variance() / static_cast<double>(n);
        // chi-square style interval is not needed for the gate; report the point value
        cell.ci_lo = cell.ci_hi = cell.estimate;
        cell.theory = 8;
        cell.theory_note = "upper bound";
        cell.censored = censored;
        cell.extra = {{"mean_over_n", m.mean() / static_cast<double>(n)}, {"p", p}};
        cell.seconds = detail::since(t0);
        r.cells.push_back(std::move(cell));
    }
    return r;
}

/// Linear resolution and presentation read off Betti tables against
/// co-chordality and 4-co-chordality: every labeled graph up to
/// exhaustive_max vertices, then `trials` random graphs for each n in n_list
/// (skipping n within the exhaustive range).
inline ExperimentReport run_froberg_audit(const ExperimentConfig& c, unsigned workers = 1) {
    ExperimentReport r;
    r.config = c;
    struct Tally {
        std::size_t graphs = 0, lr_bad = 0, lp_bad = 0, lr_true = 0, lp_true = 0;
        std::vector<std::string> witnesses;
        Tally& operator+=(const Tally& o) {
            graphs += o.graphs;
            lr_bad += o.lr_bad;
            lp_bad += o.lp_bad;
            lr_true += o.lr_true;
            lp_true += o.lp_true;
            witnesses.insert(witnesses.end(), o.witnesses.begin(), o.witnesses.end());
            return *this;
        }
    };
    auto check = [&](BettiEngine& engine, const Graph& g, Tally& t) {
        const BettiTable tab = engine.table(g);
        const bool lr = linear_resolution_from_table(tab), lp = linear_presentation_from_table(tab);
        const bool lr_bad = lr != is_cochordal(g), lp_bad = lp != is_4_cochordal(g);
        ++t.graphs;
        t.lr_true += lr;
        t.lp_true += lp;
        t.lr_bad += lr_bad;
        t.lp_bad += lp_bad;
        if ((lr_bad || lp_bad) && t.witnesses.size() < 10) t.witnesses.push_back(detail::witness("froberg", g));
    };
    auto emit = [&](std::size_t n, const std::string& scope, const Tally& t, double secs) {
        for (auto [id, bad, truth] :
             {std::tuple<std::string, std::size_t, std::size_t>{"lr_disagreements_" + scope, t.lr_bad, t.lr_true},
              {"lp_disagreements_" + scope, t.lp_bad, t.lp_true}}) {
            Cell cell = detail::make_cell(c, n, id);
            detail::set_proportion(cell, bad, t.graphs);
            cell.theory = 0;
            cell.extra = {{"disagreements", bad}, {"graphs", t.graphs}, {"predicate_true", truth}};
            cell.seconds = secs;
            r.cells.push_back(std::move(cell));
        }
        r.witnesses.insert(r.witnesses.end(), t.witnesses.begin(), t.witnesses.end());
    };

    for (std::size_t n = 1; n <= c.exhaustive_max; ++n) {
        const auto t0 = detail::Clock::now();
        const std::uint64_t total = std::uint64_t{1} << (n * (n - 1) / 2);
        const std::uint64_t chunk = std::uint64_t{1} << 14;
        const std::size_t chunks = static_cast<std::size_t>((total + chunk - 1) / chunk);
        std::vector<Tally> part(chunks);
        const std::size_t lanes = std::min<std::size_t>(std::max(1u, workers), chunks);
        // one engine per lane keeps the memo warm across chunks
        std::vector<std::unique_ptr<BettiEngine>> engines(lanes);
        parallel_for(lanes, workers, [&](std::size_t lane) {
            engines[lane] = std::make_unique<BettiEngine>(c.field, std::max<std::size_t>(n, 1), 7);
            for (std::size_t ch = lane; ch < chunks; ch += lanes)
                for (std::uint64_t m = ch * chunk; m < std::min(total, (ch + 1) * chunk); ++m)
                    check(*engines[lane], graph_from_mask(n, m), part[ch]);
        });
        Tally all;
        for (const auto& t : part) all += t;
        emit(n, "exhaustive", all, detail::since(t0));
    }
    for (std::size_t n : c.n_list) {
        if (n <= c.exhaustive_max) continue;
        if (n > c.betti_guard) throw ConfigError("/n_list", "random audit size exceeds betti_guard");
        const auto t0 = detail::Clock::now();
        const std::size_t chunk = 256;
        const std::size_t chunks = (c.trials + chunk - 1) / chunk;
        std::vector<Tally> part(chunks);
        parallel_for(chunks, workers, [&](std::size_t ch) {
            BettiEngine engine(c.field, c.betti_guard, 6);
            for (std::size_t t = ch * chunk; t < std::min(c.trials, (ch + 1) * chunk); ++t) {
                Rng rng(detail::trial_seed(c, n, t));
                check(engine, sample_gnp(n, rng.uniform(), rng.next()), part[ch]);
            }
        });
        Tally all;
        for (const auto& t : part) all += t;
        emit(n, "random", all, detail::since(t0));
    }
    r.audit_failed = !r.witnesses.empty();
    return r;
}

inline ExperimentReport run_experiment(const ExperimentConfig& c, unsigned workers = 1) {
    switch (c.kind) {
        case ExperimentKind::threshold: return run_threshold(c, workers);
        case ExperimentKind::gw_limit: return run_gw_limit(c, workers);
        case ExperimentKind::unmixed_scan: return run_unmixed_scan(c, workers);
        case ExperimentKind::cycle_calibration: return run_cycle_calibration(c, workers);
        case ExperimentKind::lipschitz_audit: return run_lipschitz_audit(c, workers);
        case ExperimentKind::froberg_audit: return run_froberg_audit(c, workers);
        case ExperimentKind::variance_audit: return run_variance_audit(c, workers);
    }
    throw std::invalid_argument("unknown experiment kind");
}

}  // namespace eideal
