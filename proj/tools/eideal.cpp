#include <CLI11.hpp>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include "eideal/battery.hpp"
#include "eideal/experiments.hpp"

using namespace eideal;
using nlohmann::json;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitFail = 1;
constexpr int kExitUsage = 2;
constexpr int kExitWitness = 3;

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

std::string num12(double x) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.12g", x);
    return buf;
}

Graph load_graph(const std::string& path) {
    try {
        if (path == "-") return read_edge_list(std::cin);
        std::ifstream in(path);
        if (!in) throw UsageError("cannot open " + path);
        std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
        const auto first = text.find_first_not_of(" \t\r\n");
        // the hex dump starts with "n:"; edge lists with "n m"
        const auto colon = text.find(':');
        if (first != std::string::npos && colon != std::string::npos && text.find_first_of(" \t\r\n", first) > colon) {
            const auto last = text.find_last_not_of(" \t\r\n");
            return from_hex(text.substr(first, last - first + 1));
        }
        return from_edge_list(text);
    } catch (const UsageError&) {
        throw;
    } catch (const std::exception& e) {
        throw UsageError(path + ": " + e.what());
    }
}

json graph_summary(const Graph& g) {
    return {{"n", g.n()},
            {"m", g.edge_count()},
            {"components", connected_components(g, false).count()},
            {"max_degree", max_degree(g)}};
}

void write_text(const std::string& path, const std::string& text) {
    if (path.empty() || path == "-") {
        std::cout << text;
        return;
    }
    std::ofstream out(path, std::ios::binary);
    if (!out) throw UsageError("cannot write " + path);
    out << text;
}

void echo_config(const json& cfg, bool as_json) {
    if (!as_json) std::cout << "# config " << cfg.dump() << '\n';
}

// ---- sample ----

struct SampleArgs {
    std::string model;
    std::optional<std::size_t> n;
    std::optional<double> p, lambda;
    std::size_t cap = 100000;
    std::optional<std::uint64_t> seed;
    std::string out, format = "edges";
};

int cmd_sample(const SampleArgs& a, bool as_json) {
    if (as_json && !a.seed) throw UsageError("--json needs an explicit --seed");
    const std::uint64_t seed = a.seed.value_or(1);
    Graph g;
    json cfg = {{"command", "sample"}, {"model", a.model}, {"seed", seed}, {"format", a.format}, {"out", a.out}};
    bool censored = false;
    if (a.model == "gnp") {
        if (!a.n || !a.p) throw UsageError("gnp needs --n and --p");
        if (*a.p < 0 || *a.p > 1) throw UsageError("--p must lie in [0,1]");
        cfg["n"] = *a.n;
        cfg["p"] = *a.p;
        g = sample_gnp(*a.n, *a.p, seed);
    } else {
        if (!a.lambda) throw UsageError("gw needs --lambda");
        if (*a.lambda < 0) throw UsageError("--lambda must be >= 0");
        if (a.cap < 1) throw UsageError("--cap must be >= 1");
        cfg["lambda"] = *a.lambda;
        cfg["cap"] = a.cap;
        const auto s = sample_gw_tree(*a.lambda, a.cap, seed);
        censored = s.censored;
        g = s.graph();
    }
    const std::string text = a.format == "hex" ? to_hex(g) + "\n" : to_edge_list(g);
    json summary = graph_summary(g);
    if (a.model == "gw") summary["censored"] = censored;
    // the graph goes to stdout when no --out is given, so the summary moves to stderr
    std::ostream& info = a.out.empty() || a.out == "-" ? std::cerr : std::cout;
    if (as_json) {
        info << json{{"config", cfg}, {"summary", summary}}.dump() << '\n';
    } else {
        info << "# config " << cfg.dump() << '\n';
        info << "n " << summary["n"] << "  m " << summary["m"] << "  components " << summary["components"]
             << "  max_degree " << summary["max_degree"];
        if (a.model == "gw") info << "  censored " << (censored ? "yes" : "no");
        info << '\n';
    }
    write_text(a.out, text);
    return kExitOk;
}

// ---- invariants ----

struct InvariantArgs {
    std::string in, field = "q";
    std::size_t guard = kDefaultBettiGuard;
    std::uint64_t budget = kDefaultNodeBudget;
};

std::string betti_diagram(const BettiTable& t) {
    const int pd = t.pd_quotient(), reg = t.regularity_quotient();
    std::vector<std::uint64_t> total(pd + 1, 0);
    total[0] = 1;
    for (auto& [ij, b] : t.entries) total[ij.first] += b;
    auto cell = [](std::uint64_t v) { return v ? std::to_string(v) : std::string("."); };
    std::vector<std::size_t> width(pd + 1, 1);
    for (int i = 0; i <= pd; ++i) {
        width[i] = std::max(std::to_string(i).size(), std::to_string(total[i]).size());
    }
    std::ostringstream os;
    auto row = [&](const std::string& label, auto value_of) {
        os << std::string(8 - std::min<std::size_t>(8, label.size()), ' ') << label;
        for (int i = 0; i <= pd; ++i) {
            const std::string v = value_of(i);
            os << ' ' << std::string(width[i] - v.size(), ' ') << v;
        }
        os << '\n';
    };
    row("", [](int i) { return std::to_string(i); });
    row("total:", [&](int i) { return std::to_string(total[i]); });
    for (int r = 0; r <= reg; ++r) row(std::to_string(r) + ":", [&](int i) { return cell(t.at(i, i + r)); });
    return os.str();
}

int cmd_invariants(const InvariantArgs& a, bool as_json) {
    const Graph g = load_graph(a.in);
    Field field;
    try {
        field = Field::parse(a.field);
    } catch (const std::exception& e) {
        throw UsageError(e.what());
    }
    if (a.guard > 24) throw UsageError("--guard must be <= 24");
    const json cfg = {{"command", "invariants"}, {"in", a.in},           {"field", field.name()},
                      {"guard", a.guard},        {"budget", a.budget}};
    json out = {{"config", cfg}, {"graph", graph_summary(g)}};
    json censored = json::object();

    std::optional<BettiTable> table;
    try {
        table = betti_table(g, field, a.guard);
    } catch (const GuardExceeded&) {
    }
    censored["betti"] = !table;
    out["betti"] = table ? to_json(*table) : json(nullptr);

    // reg and pd: from the table, else componentwise, else a censored bracket
    if (table) {
        out["reg_ideal"] = table->regularity_quotient() + 1;
        out["reg_quotient"] = table->regularity_quotient();
        out["pd_quotient"] = table->pd_quotient();
        out["depth_quotient"] = static_cast<int>(g.n()) - table->pd_quotient();
        out["method"] = "betti";
        censored["reg"] = censored["pd"] = false;
    } else {
        ComponentwiseOptions opt;
        opt.field = field;
        opt.guard = a.guard;
        const auto reg = regularity_componentwise(g, opt);
        const auto pd = pd_componentwise(g, opt);
        censored["reg"] = reg.censored();
        censored["pd"] = pd.censored();
        out["reg_ideal"] = reg.censored() ? json(nullptr) : json(reg.value + 1);
        out["reg_quotient"] = reg.censored() ? json(nullptr) : json(reg.value);
        out["pd_quotient"] = pd.censored() ? json(nullptr) : json(pd.value);
        out["depth_quotient"] = pd.censored() ? json(nullptr) : json(g.n() - pd.value);
        out["reg_quotient_bracket"] = {reg.lower, reg.upper};
        out["pd_quotient_bracket"] = {pd.lower, pd.upper};
        out["method"] = "componentwise";
    }
    auto guarded = [&](const char* key, auto fn) {
        try {
            out[key] = fn();
            censored[key] = false;
        } catch (const BudgetExceeded&) {
            out[key] = nullptr;
            censored[key] = true;
        }
    };
    guarded("krull_dim", [&] { return independence_number(g, a.budget); });
    guarded("induced_matching", [&] { return induced_matching_number(g, a.budget); });
    out["matching"] = matching_number(g);
    guarded("cover_profile", [&] {
        const auto cp = cover_profile(g, a.budget);
        return json{{"min_cover", cp.min_cover}, {"max_minimal_cover", cp.max_minimal_cover}, {"unmixed", cp.unmixed}};
    });
    out["censored"] = censored;

    if (as_json) {
        std::cout << out.dump(2) << '\n';
        return kExitOk;
    }
    echo_config(cfg, false);
    auto show = [&](const char* label, const json& v, const char* cens_key = nullptr) {
        std::cout << label;
        if (v.is_null()) std::cout << "censored";
        else std::cout << v.dump();
        if (cens_key && censored.value(cens_key, false)) {
            const std::string bracket = std::string(cens_key) == "reg" ? "reg_quotient_bracket" : "pd_quotient_bracket";
            if (out.contains(bracket)) std::cout << "  (" << cens_key << "(S/I) in " << out[bracket].dump() << ")";
        }
        std::cout << '\n';
    };
    std::cout << "vertices        " << g.n() << "\nedges           " << g.edge_count() << "\ncomponents      "
              << out["graph"]["components"] << "\nmax degree      " << out["graph"]["max_degree"] << '\n';
    show("reg(I)          ", out["reg_ideal"], "reg");
    show("reg(S/I)        ", out["reg_quotient"]);
    show("pd(S/I)         ", out["pd_quotient"], "pd");
    show("depth(S/I)      ", out["depth_quotient"]);
    show("Krull dim       ", out["krull_dim"]);
    show("induced match   ", out["induced_matching"]);
    show("matching        ", out["matching"]);
    if (out["cover_profile"].is_null()) {
        std::cout << "minimal covers  censored\n";
    } else {
        const auto& cp = out["cover_profile"];
        std::cout << "minimal covers  " << cp["min_cover"] << ".." << cp["max_minimal_cover"]
                  << (cp["unmixed"].get<bool>() ? "  (unmixed)" : "  (mixed)") << '\n';
    }
    if (table) {
        std::cout << "Betti table of S/I over " << field.name() << ":\n" << betti_diagram(*table);
    } else {
        std::cout << "Betti table     censored (" << g.n() << " vertices > guard " << a.guard << ")\n";
    }
    return kExitOk;
}

// ---- predicates ----

int cmd_predicates(const std::string& in, std::size_t k_max, bool as_json) {
    const Graph g = load_graph(in);
    if (k_max < 4) throw UsageError("--k-max must be >= 4");
    const json cfg = {{"command", "predicates"}, {"in", in}, {"k_max", k_max}};
    const auto cycles = count_chordless_cycles(g, k_max);
    json counts = json::object();
    for (std::size_t k = 4; k <= k_max; ++k) counts[std::to_string(k)] = cycles.at(k);
    json out = {{"config", cfg},
                {"graph", graph_summary(g)},
                {"is_chordal", is_chordal(g)},
                {"is_cochordal", is_cochordal(g)},
                {"is_4_cochordal", is_4_cochordal(g)},
                {"is_locally_cochordal", is_locally_cochordal(g)},
                {"is_locally_4_cochordal", is_locally_4_cochordal(g)},
                {"is_forest", is_forest(g)},
                {"triangles", count_triangles(g)},
                {"chordless_cycles", counts}};
    if (as_json) {
        std::cout << out.dump(2) << '\n';
        return kExitOk;
    }
    echo_config(cfg, false);
    for (const char* key : {"is_chordal", "is_cochordal", "is_4_cochordal", "is_locally_cochordal",
                            "is_locally_4_cochordal", "is_forest"})
        std::printf("%-24s %s\n", key, out[key].get<bool>() ? "yes" : "no");
    std::printf("%-24s %s\n", "triangles", out["triangles"].dump().c_str());
    for (std::size_t k = 4; k <= k_max; ++k)
        std::printf("chordless %-14s %s\n", ("C" + std::to_string(k)).c_str(), counts[std::to_string(k)].dump().c_str());
    return kExitOk;
}

// ---- experiment ----

struct ExperimentArgs {
    std::string config, outdir = ".";
    std::optional<std::uint64_t> seed;
    std::optional<std::size_t> trials;
    bool no_timing = false;
};

int cmd_experiment(const ExperimentArgs& a, unsigned workers, bool as_json) {
    json j;
    {
        std::ifstream in(a.config);
        if (!in) throw UsageError("cannot open " + a.config);
        try {
            in >> j;
        } catch (const json::exception& e) {
            throw UsageError(a.config + ": invalid JSON: " + e.what());
        }
    }
    if (a.seed) j["seed"] = *a.seed;
    if (a.trials) j["trials"] = *a.trials;
    if (as_json && !j.contains("seed")) throw UsageError("--json needs a seed in the config or --seed");
    ExperimentConfig c;
    try {
        c = experiment_config_from_json(j);
    } catch (const ConfigError& e) {
        throw UsageError(a.config + ": " + e.what());
    }
    const json resolved = to_json(c);
    std::filesystem::create_directories(a.outdir);
    const auto report = run_experiment(c, workers);
    const bool timing = !a.no_timing;
    const std::filesystem::path base = std::filesystem::path(a.outdir) / c.label();
    write_text(base.string() + ".json", to_json(report, timing).dump(2) + "\n");
    write_text(base.string() + ".csv", to_csv(report, timing));
    if (as_json) {
        std::cout << to_json(report, timing).dump(2) << '\n';
    } else {
        std::cout << "# config " << resolved.dump() << "\n# workers " << workers << '\n';
        std::cout << "# wrote " << base.string() << ".json, " << base.string() << ".csv\n";
        for (const auto& cell : report.cells) {
            std::cout << cell.experiment << "  n=" << cell.n << "  " << cell.cell_id << "  " << num12(cell.estimate)
                      << "  [" << num12(cell.ci_lo) << ", " << num12(cell.ci_hi) << "]";
            if (cell.theory) std::cout << "  theory " << num12(*cell.theory);
            if (cell.censored) std::cout << "  censored " << cell.censored;
            if (cell.guard_trips) std::cout << "  guard_trips " << cell.guard_trips;
            std::cout << "  trials " << cell.trials << '\n';
        }
        if (c.kind == ExperimentKind::froberg_audit || c.kind == ExperimentKind::lipschitz_audit) {
            std::size_t total = 0;
            for (const auto& cell : report.cells) total += cell.extra.value("violations", cell.extra.value("disagreements", std::size_t{0}));
            std::cout << total << (c.kind == ExperimentKind::froberg_audit ? " disagreements" : " violations") << '\n';
        }
        for (const auto& w : report.witnesses) std::cout << "witness: " << w << '\n';
    }
    return report.audit_failed ? kExitWitness : kExitOk;
}

// ---- battery ----

int cmd_battery(bool quick, std::optional<std::uint64_t> seed, const std::string& outdir, unsigned workers,
                const std::vector<int>& only, bool as_json) {
    if (as_json && !seed) throw UsageError("--json needs an explicit --seed");
    BatteryOptions opt;
    opt.quick = quick;
    opt.seed = seed.value_or(1);
    opt.workers = workers;
    opt.outdir = outdir;
    opt.only = only;
    const json cfg = {{"command", "battery"}, {"mode", quick ? "quick" : "full"}, {"seed", opt.seed},
                      {"outdir", outdir},     {"workers", workers},               {"only", only}};
    if (!as_json) {
        std::cout << "# config " << cfg.dump() << std::endl;
        opt.on_line = [](const std::string& line) { std::cout << line << std::endl; };
    }
    const auto result = run_battery(opt);
    if (as_json) {
        json rows = json::array();
        for (const auto& c : result.criteria)
            rows.push_back({{"id", c.id}, {"name", c.name}, {"pass", c.pass}, {"detail", c.detail}});
        std::cout << json{{"config", cfg}, {"criteria", rows}, {"notes", result.notes}}.dump(2) << '\n';
    } else {
        for (const auto& n : result.notes) std::cout << "note: " << n << '\n';
    }
    return result.all_pass() ? kExitOk : kExitFail;
}

// ---- theory ----

struct TheoryArgs {
    std::string formula;
    std::optional<double> lambda, q, t, m_bound;
    std::optional<std::size_t> n, k;
    double tol = 1e-12;
};

int cmd_theory(const TheoryArgs& a, bool as_json) {
    auto need = [&](const auto& v, const char* flag) {
        if (!v) throw UsageError(a.formula + " needs " + flag);
        return *v;
    };
    json cfg = {{"command", "theory"}, {"formula", a.formula}};
    json out;
    std::vector<std::pair<std::string, double>> lines;
    try {
        if (a.formula == "lr_sparse" || a.formula == "lp_dense" || a.formula == "lr_dense") {
            const double lambda = need(a.lambda, "--lambda");
            cfg["lambda"] = lambda;
            TheoryValue v;
            if (a.formula == "lr_sparse") v = prob_lr_sparse_window(lambda);
            else if (a.formula == "lp_dense") v = prob_lp_dense_window(lambda);
            else {
                cfg["tol"] = a.tol;
                v = prob_lr_dense_window(lambda, a.tol);
            }
            out = {{"value", v.value}, {"truncation_error", v.truncation_error}, {"note", v.note}};
            lines = {{"value", v.value}, {"truncation_error", v.truncation_error}};
        } else if (a.formula == "karp_sipser") {
            const double lambda = need(a.lambda, "--lambda");
            cfg["lambda"] = lambda;
            const auto ks = karp_sipser_upper(lambda);
            out = {{"t_star", ks.t_star}, {"bound", ks.bound.value}};
            lines = {{"t_star", ks.t_star}, {"bound", ks.bound.value}};
        } else if (a.formula == "expected_cycles" || a.formula == "expected_local_cycles") {
            const std::size_t n = need(a.n, "--n"), k = need(a.k, "--k");
            const double q = need(a.q, "--q");
            cfg["n"] = n;
            cfg["q"] = q;
            cfg["k"] = k;
            const double v = a.formula == "expected_cycles" ? expected_chordless_cycles(n, q, k) : expected_local_cycles(n, q, k);
            out = {{"value", v}};
            lines = {{"value", v}};
        } else if (a.formula == "mcdiarmid" || a.formula == "near_lipschitz") {
            const double n = static_cast<double>(need(a.n, "--n")), t = need(a.t, "--t");
            cfg["n"] = n;
            cfg["t"] = t;
            double v;
            if (a.formula == "mcdiarmid") {
                const double m = a.m_bound.value_or(1);
                cfg["M"] = m;
                v = mcdiarmid_tail(n, m, t);
            } else {
                const double lambda = need(a.lambda, "--lambda"), m = need(a.m_bound, "--M");
                cfg["lambda"] = lambda;
                cfg["M"] = m;
                v = near_lipschitz_tail(n, lambda, m, t);
            }
            out = {{"value", v}};
            lines = {{"value", v}};
        } else {
            throw UsageError("unknown formula '" + a.formula + "'");
        }
    } catch (const std::invalid_argument& e) {
        throw UsageError(e.what());
    }
    if (as_json) {
        std::cout << json{{"config", cfg}, {"result", out}}.dump(2) << '\n';
        return kExitOk;
    }
    echo_config(cfg, false);
    for (auto& [k, v] : lines) std::cout << k << ' ' << num12(v) << '\n';
    if (out.contains("note") && !out["note"].get<std::string>().empty()) std::cout << "note " << out["note"].get<std::string>() << '\n';
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Edge ideals of random graphs: invariants, predicates and Monte Carlo experiments"};
    app.require_subcommand(1);
    bool as_json = false;
    int workers_flag = 0;
    app.add_flag("--json", as_json, "machine-readable output");
    app.add_option("--workers", workers_flag, "worker threads (fallback EIDEAL_WORKERS, then all cores)")
        ->check(CLI::PositiveNumber);
    app.add_flag_callback("--version", [] { throw CLI::CallForVersion(std::string("eideal ") + kVersion, 0); },
                          "print version");

    SampleArgs sa;
    auto* sample = app.add_subcommand("sample", "sample a G(n,p) graph or a GW(lambda) tree");
    sample->add_option("--model", sa.model, "gnp or gw")->required()->check(CLI::IsMember({"gnp", "gw"}));
    sample->add_option("--n", sa.n, "vertices (gnp)");
    sample->add_option("--p", sa.p, "edge probability (gnp)");
    sample->add_option("--lambda", sa.lambda, "offspring mean (gw)");
    sample->add_option("--cap", sa.cap, "tree size cap (gw)")->capture_default_str();
    sample->add_option("--seed", sa.seed, "seed (required with --json)");
    sample->add_option("--out", sa.out, "output file (default stdout)");
    sample->add_option("--format", sa.format, "edges or hex")->check(CLI::IsMember({"edges", "hex"}))->capture_default_str();
    sample->add_flag("--json", as_json, "machine-readable summary");

    InvariantArgs ia;
    auto* inv = app.add_subcommand("invariants", "reg, pd, depth, Betti table and combinatorial invariants");
    inv->add_option("--in", ia.in, "graph file (edge list or hex dump, - for stdin)")->required();
    inv->add_option("--field", ia.field, "coefficient field: q or f2 (also f3, GF(5), ...)")->capture_default_str();
    inv->add_option("--guard", ia.guard, "largest vertex count for Betti tables")->capture_default_str();
    inv->add_option("--budget", ia.budget, "search node budget")->capture_default_str();
    inv->add_flag("--json", as_json, "machine-readable output");

    std::string pred_in;
    std::size_t k_max = 6;
    auto* pred = app.add_subcommand("predicates", "chordality predicates and chordless cycle counts");
    pred->add_option("--in", pred_in, "graph file (- for stdin)")->required();
    pred->add_option("--k-max", k_max, "longest chordless cycle counted")->capture_default_str();
    pred->add_flag("--json", as_json, "machine-readable output");

    ExperimentArgs ea;
    auto* exp = app.add_subcommand("experiment", "run an experiment config and write JSON and CSV reports");
    exp->add_option("--config", ea.config, "experiment config JSON")->required();
    exp->add_option("--outdir", ea.outdir, "report directory")->capture_default_str();
    exp->add_option("--seed", ea.seed, "override the config seed");
    exp->add_option("--trials", ea.trials, "override the config trial count");
    exp->add_flag("--no-timing", ea.no_timing, "omit wall times so reruns are byte-identical");
    exp->add_flag("--json", as_json, "print the report JSON");

    bool quick = false, full = false;
    std::optional<std::uint64_t> battery_seed;
    std::string battery_out = "battery_out";
    std::vector<int> only;
    auto* bat = app.add_subcommand("battery", "run the acceptance criteria");
    auto* q = bat->add_flag("--quick", quick, "reduced trial counts");
    bat->add_flag("--full", full, "full trial counts (default)")->excludes(q);
    bat->add_option("--seed", battery_seed, "master seed (default 1; required with --json)");
    bat->add_option("--outdir", battery_out, "report directory")->capture_default_str();
    bat->add_option("--only", only, "criterion ids")->check(CLI::Range(1, kCriteria));
    bat->add_flag("--json", as_json, "machine-readable summary");

    TheoryArgs ta;
    auto* th = app.add_subcommand("theory", "evaluate a limit formula or bound");
    th->add_option("--formula", ta.formula,
                   "lr_sparse, lp_dense, lr_dense, karp_sipser, expected_cycles, expected_local_cycles, mcdiarmid, "
                   "near_lipschitz")
        ->required();
    th->add_option("--lambda", ta.lambda, "lambda");
    th->add_option("--n", ta.n, "vertices");
    th->add_option("--q", ta.q, "edge probability");
    th->add_option("--k", ta.k, "cycle length");
    th->add_option("--t", ta.t, "deviation");
    th->add_option("--M", ta.m_bound, "Lipschitz constant");
    th->add_option("--tol", ta.tol, "series truncation tolerance")->capture_default_str();
    th->add_flag("--json", as_json, "machine-readable output");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForVersion& e) {
        std::cout << e.what() << '\n';
        return kExitOk;
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitUsage;
    }

    const unsigned workers = resolve_workers(workers_flag);
    try {
        if (*sample) return cmd_sample(sa, as_json);
        if (*inv) return cmd_invariants(ia, as_json);
        if (*pred) return cmd_predicates(pred_in, k_max, as_json);
        if (*exp) return cmd_experiment(ea, workers, as_json);
        if (*bat) return cmd_battery(quick, battery_seed, battery_out, workers, only, as_json);
        if (*th) return cmd_theory(ta, as_json);
    } catch (const UsageError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitFail;
    }
    return kExitUsage;
}
