#include "chipfire/cli.hpp"

#include "chipfire/error.hpp"
#include "chipfire/quasipoly.hpp"
#include "chipfire/verify.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <fstream>
#include <ostream>
#include <sstream>
#include <thread>

namespace chipfire::cli {

namespace {

// Thrown by subcommands whose check ran but came out negative.
struct CheckFailed {
    std::string message;
};

unsigned default_jobs()
{
    const unsigned hw = std::thread::hardware_concurrency();
    return hw == 0 ? 1 : hw;
}

struct LimitFlags {
    std::optional<std::uint64_t> max_states;
    std::optional<std::uint64_t> max_configurations;

    void attach(CLI::App* app)
    {
        app->add_option("--max-states", max_states, "BFS state cap (overrides CHIPFIRE_MAX_STATES)");
        app->add_option("--max-configurations", max_configurations, "composition count cap per total");
    }

    ResourceLimits resolve() const
    {
        ResourceLimits l = ResourceLimits::from_environment();
        if (max_states) l.max_states = *max_states;
        if (max_configurations) l.max_configurations = *max_configurations;
        return l;
    }
};

// ---- count -------------------------------------------------------------

struct CountArgs {
    std::string graph;
    std::string source;
    std::string mode = "debt";
    std::size_t list = 0;
    LimitFlags limits;
};

void cmd_count(const CountArgs& a, std::ostream& out)
{
    const Graph g = graph_from_spec(a.graph);
    const Configuration from = parse_configuration(a.source);
    if (from.size() != g.vertex_count()) {
        throw ParseError("source has " + std::to_string(from.size()) + " entries, graph has " +
                         std::to_string(g.vertex_count()) + " vertices");
    }
    const ResourceLimits limits = a.limits.resolve();
    Integer count;
    std::vector<Configuration> listed;
    if (a.mode == "debt") {
        count = count_debt_reachable(g, from, limits);
        if (a.list > 0) listed = list_debt_reachable(g, from, a.list, limits);
    } else if (a.mode == "reachable") {
        count = count_reachable(g, from, limits);
        if (a.list > 0) listed = list_reachable(g, from, a.list, limits);
    } else {
        throw ParseError("unknown mode '" + a.mode + "' (debt, reachable)");
    }
    out << count << '\n';
    for (const auto& c : listed) out << to_string(c) << '\n';
}

// ---- sweep -------------------------------------------------------------

struct SweepArgs {
    std::string graph;
    Vertex source_vertex = 0;
    std::int64_t c_min = 0;
    std::int64_t c_max = 0;
    std::string modes = "debt";
    std::string format = "csv";
    std::string out_path;
    unsigned jobs = default_jobs();
    bool timing = false;
    LimitFlags limits;
};

std::vector<SweepRecord> run_sweep(const SweepArgs& a, const Graph& g, SweepModes modes)
{
    if (a.c_min > a.c_max) {
        throw DomainError("empty range: cmin " + std::to_string(a.c_min) + " > cmax " + std::to_string(a.c_max));
    }
    if (a.source_vertex >= g.vertex_count()) {
        throw DomainError("source vertex " + std::to_string(a.source_vertex) + " out of range");
    }
    return sweep(g, a.source_vertex, a.c_min, a.c_max, modes, a.limits.resolve(), std::max(1u, a.jobs));
}

void cmd_sweep(const SweepArgs& a, std::ostream& out)
{
    const Graph g = graph_from_spec(a.graph);
    const SweepModes modes = parse_modes(a.modes);
    const OutputFormat format = parse_output_format(a.format);
    const auto records = run_sweep(a, g, modes);

    std::ofstream file;
    std::ostream* os = &out;
    if (!a.out_path.empty()) {
        file.open(a.out_path, std::ios::binary);
        if (!file) throw ParseError("cannot write '" + a.out_path + "'");
        os = &file;
    }
    switch (format) {
    case OutputFormat::csv: write_sweep_csv(*os, records, a.timing); break;
    case OutputFormat::jsonl: write_sweep_jsonl(*os, records, a.timing); break;
    case OutputFormat::human: write_sweep_human(*os, records, a.timing); break;
    }
}

// ---- fit ---------------------------------------------------------------

struct FitArgs {
    std::string values_path;
    std::string column;
    SweepArgs inline_sweep;
    std::string mode = "debt";
    std::optional<std::int64_t> period, degree, onset;
    std::int64_t max_period = 12;
    std::int64_t max_degree = 6;
    std::optional<std::int64_t> max_onset;
    std::string format = "human";
};

std::vector<std::string> split_fields(const std::string& line)
{
    std::vector<std::string> out;
    std::string cell;
    std::istringstream in(line);
    while (std::getline(in, cell, ',')) {
        const auto b = cell.find_first_not_of(" \t\r");
        const auto e = cell.find_last_not_of(" \t\r");
        out.push_back(b == std::string::npos ? "" : cell.substr(b, e - b + 1));
    }
    if (!line.empty() && line.back() == ',') out.emplace_back();
    return out;
}

// Accepts "c,value" rows or a sweep CSV with a header; `column` picks the
// value column when a header is present.
SampleMap read_samples(const std::string& path, const std::string& column)
{
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open values file '" + path + "'");
    SampleMap values;
    std::string line;
    std::size_t c_col = 0, v_col = 1;
    bool first = true;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty() || line[0] == '#') continue;
        auto cells = split_fields(line);
        if (first) {
            first = false;
            const bool header = !cells.empty() && !cells[0].empty() &&
                                !(std::isdigit(static_cast<unsigned char>(cells[0][0])) || cells[0][0] == '-');
            if (header) {
                auto find = [&](const std::string& name) -> std::optional<std::size_t> {
                    auto it = std::find(cells.begin(), cells.end(), name);
                    if (it == cells.end()) return std::nullopt;
                    return static_cast<std::size_t>(it - cells.begin());
                };
                auto cc = find("c");
                if (!cc) throw ParseError("values header has no 'c' column");
                c_col = *cc;
                std::string want = column;
                if (want.empty()) want = cells.size() == 2 ? cells[1 - c_col] : "debt_count";
                auto vc = find(want);
                if (!vc) throw ParseError("values header has no '" + want + "' column");
                v_col = *vc;
                continue;
            }
        }
        if (cells.size() <= std::max(c_col, v_col)) {
            throw ParseError(path + ":" + std::to_string(lineno) + ": expected at least " +
                             std::to_string(std::max(c_col, v_col) + 1) + " fields");
        }
        if (cells[v_col].empty()) continue;
        const auto ci = parse_integer_list(cells[c_col]);
        const auto vi = parse_integer_list(cells[v_col]);
        if (ci.size() != 1 || vi.size() != 1 || !fits_int64(ci[0])) {
            throw ParseError(path + ":" + std::to_string(lineno) + ": malformed row");
        }
        if (!values.emplace(to_int64(ci[0]), vi[0]).second) {
            throw ParseError(path + ":" + std::to_string(lineno) + ": repeated c value");
        }
    }
    if (values.empty()) throw ParseError("no samples in '" + path + "'");
    return values;
}

void cmd_fit(const FitArgs& a, std::ostream& out)
{
    SampleMap values;
    std::optional<Graph> g;
    if (!a.values_path.empty()) {
        values = read_samples(a.values_path, a.column);
        if (!a.inline_sweep.graph.empty()) g = graph_from_spec(a.inline_sweep.graph);
    } else {
        if (a.inline_sweep.graph.empty()) throw ParseError("fit needs --values FILE or --graph with a c range");
        g = graph_from_spec(a.inline_sweep.graph);
        SweepModes modes;
        if (a.mode == "debt") modes.debt = true;
        else if (a.mode == "reachable") modes.reachable = true;
        else throw ParseError("unknown mode '" + a.mode + "' (debt, reachable)");
        for (const auto& r : run_sweep(a.inline_sweep, *g, modes)) {
            values.emplace(r.c, modes.debt ? *r.debt_count : *r.reachable_count);
        }
    }
    const bool json = a.format == "json" || a.format == "jsonl";
    if (!json && a.format != "human") throw ParseError("unknown fit format '" + a.format + "' (json, human)");

    std::optional<Quasipolynomial> q;
    const bool explicit_law = a.period || a.degree || a.onset;
    if (explicit_law) {
        if (!a.period || !a.degree) throw ParseError("--period and --degree go together");
        q = fit_quasipolynomial(values, *a.period, *a.degree, a.onset.value_or(values.begin()->first));
    } else {
        const std::int64_t max_onset = a.max_onset.value_or(values.rbegin()->first);
        if (auto d = detect_quasipolynomial(values, a.max_period, a.max_degree, max_onset)) q = d->quasipolynomial;
    }
    if (!q) throw CheckFailed{"no quasipolynomial fits the samples"};

    std::optional<bool> leading;
    std::optional<std::int64_t> onset_bound;
    if (g) {
        leading = leading_coefficient_check(*q, *g);
        onset_bound = 2 * static_cast<std::int64_t>(g->edge_count()) - static_cast<std::int64_t>(g->vertex_count());
    }
    if (json) {
        auto doc = nlohmann::ordered_json::parse(fit_report_json(*q));
        doc["samples"] = values.size();
        if (g) {
            doc["expected_leading_coefficient"] = expected_leading_coefficient(*g).get_str();
            doc["leading_coefficient_check"] = *leading;
            doc["onset_bound_2e_minus_n"] = *onset_bound;
        }
        out << doc.dump() << '\n';
    } else {
        out << fit_report_human(*q);
        if (g) {
            out << "leading coefficient 1/((n-1)! kappa) = " << expected_leading_coefficient(*g).get_str() << ": "
                << (*leading ? "matches" : "differs") << '\n';
            out << "onset " << q->onset() << " vs 2E-n = " << *onset_bound << '\n';
        }
    }
}

// ---- blocks ------------------------------------------------------------

struct BlocksArgs {
    std::string graph;
    std::int64_t c = 0;
    bool list = false;
    LimitFlags limits;
};

void cmd_blocks(const BlocksArgs& a, std::ostream& out)
{
    const Graph g = graph_from_spec(a.graph);
    if (a.c < 0) throw DomainError("c must be nonnegative");
    const DebtLattice lattice(g);
    const auto part = block_partition(lattice, from_int64(a.c), a.limits.resolve(), a.list);
    out << "c = " << a.c << "  blocks = " << part.block_count() << "  kappa = " << lattice.determinant() << '\n';
    Integer lo = part.blocks.front().size, hi = lo;
    for (const auto& b : part.blocks) {
        lo = std::min(lo, b.size);
        hi = std::max(hi, b.size);
        out << "  [" << to_string(b.label) << "] size " << b.size << '\n';
        if (a.list) {
            for (const auto& m : b.members) out << "    " << to_string(m) << '\n';
        }
    }
    Rational ratio(hi, lo);
    ratio.canonicalize();
    out << "max/min block size = " << ratio.get_str() << " (" << ratio.get_d() << ")\n";
}

// ---- verify ------------------------------------------------------------

struct VerifyArgs {
    std::string id;
    std::optional<std::size_t> n;
    std::optional<std::int64_t> c_max;
    unsigned trials = 200;
    std::uint64_t seed = 20100801;
    LimitFlags limits;
};

int cmd_verify(const VerifyArgs& a, std::ostream& out)
{
    if (!verify::is_bundle(a.id)) {
        std::string known;
        for (const auto& id : verify::bundle_ids()) known += " " + id;
        throw ParseError("unknown verification id '" + a.id + "' (known:" + known + ")");
    }
    verify::Options o;
    o.n = a.n;
    o.c_max = a.c_max;
    o.trials = a.trials;
    o.seed = a.seed;
    o.limits = a.limits.resolve();
    const auto result = verify::run_bundle(a.id, o, out);
    out << a.id << ": " << (result.passed ? "pass" : "FAIL") << " (" << result.checks << " checks, "
        << result.failures.size() << " failed)\n";
    return result.passed ? exit_ok : exit_verification_failed;
}

// ---- spanning-trees ----------------------------------------------------

void cmd_spanning_trees(const std::string& graph, std::optional<Vertex> omit, std::ostream& out)
{
    const Graph g = graph_from_spec(graph);
    out << (omit ? spanning_tree_count(g, *omit) : spanning_tree_count(g)) << '\n';
}

// ---- reachability ------------------------------------------------------

struct ReachArgs {
    std::string graph;
    std::string from;
    std::string to;
    bool bfs = false;
    LimitFlags limits;
};

int cmd_reachability(const ReachArgs& a, std::ostream& out)
{
    const Graph g = graph_from_spec(a.graph);
    const Configuration from = parse_configuration(a.from);
    const Configuration to = parse_configuration(a.to);
    if (from.size() != g.vertex_count() || to.size() != g.vertex_count()) {
        throw ParseError("configurations must have one entry per vertex");
    }
    const DebtLattice lattice(g);
    const auto x = lattice.firing_vector(from, to);
    const bool reach = is_reachable(lattice, from, to);
    out << "debt-reachable: " << (x ? "yes" : "no") << '\n';
    if (x) out << "firing vector: " << to_string(*x) << '\n';
    out << "reachable: " << (reach ? "yes" : "no") << '\n';
    if (a.bfs) {
        const bool by_search = is_reachable_bfs(g, from, to, a.limits.resolve());
        out << "reachable (search): " << (by_search ? "yes" : "no") << '\n';
        if (by_search != reach) throw CheckFailed{"greedy and search answers disagree"};
    }
    return exit_ok;
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err)
{
    CLI::App app{"Chip-firing reachability, counting and quasipolynomial fitting"};
    app.name("chipfire");
    app.require_subcommand(1);

    CountArgs count;
    auto* c_count = app.add_subcommand("count", "count configurations reachable from a source");
    c_count->add_option("--graph", count.graph, "cycle:N, path:N, complete:N or file:PATH")->required();
    c_count->add_option("--source", count.source, "source configuration, e.g. 3,0,0")->required();
    c_count->add_option("--mode", count.mode, "debt or reachable")->capture_default_str();
    c_count->add_option("--list", count.list, "also print up to this many configurations");
    count.limits.attach(c_count);

    SweepArgs sw;
    auto* c_sweep = app.add_subcommand("sweep", "tabulate counts from c*e_v over a range of c");
    c_sweep->add_option("--graph", sw.graph)->required();
    c_sweep->add_option("--source-vertex", sw.source_vertex)->capture_default_str();
    c_sweep->add_option("--cmin", sw.c_min)->capture_default_str();
    c_sweep->add_option("--cmax", sw.c_max)->required();
    c_sweep->add_option("--modes", sw.modes, "comma list of debt, reachable, blocks")->capture_default_str();
    c_sweep->add_option("--format", sw.format, "csv, jsonl or human")->capture_default_str();
    c_sweep->add_option("--out", sw.out_path, "write the table here instead of stdout");
    c_sweep->add_option("--jobs", sw.jobs, "worker threads")->capture_default_str();
    c_sweep->add_flag("--timing", sw.timing, "fill the seconds column");
    sw.limits.attach(c_sweep);

    FitArgs fit;
    auto* c_fit = app.add_subcommand("fit", "fit or detect a quasipolynomial in c");
    c_fit->add_option("--values", fit.values_path, "CSV of c,count rows or a sweep table");
    c_fit->add_option("--column", fit.column, "value column when the file has a header");
    c_fit->add_option("--graph", fit.inline_sweep.graph, "sweep this graph (or annotate a values file)");
    c_fit->add_option("--source-vertex", fit.inline_sweep.source_vertex);
    c_fit->add_option("--cmin", fit.inline_sweep.c_min);
    c_fit->add_option("--cmax", fit.inline_sweep.c_max);
    c_fit->add_option("--jobs", fit.inline_sweep.jobs);
    c_fit->add_option("--mode", fit.mode, "debt or reachable")->capture_default_str();
    c_fit->add_option("--period", fit.period);
    c_fit->add_option("--degree", fit.degree);
    c_fit->add_option("--onset", fit.onset);
    c_fit->add_option("--max-period", fit.max_period)->capture_default_str();
    c_fit->add_option("--max-degree", fit.max_degree)->capture_default_str();
    c_fit->add_option("--max-onset", fit.max_onset);
    c_fit->add_option("--format", fit.format, "json or human")->capture_default_str();
    fit.inline_sweep.limits.attach(c_fit);

    BlocksArgs blocks;
    auto* c_blocks = app.add_subcommand("blocks", "partition configurations with c chips into blocks");
    c_blocks->add_option("--graph", blocks.graph)->required();
    c_blocks->add_option("--c", blocks.c)->required();
    c_blocks->add_flag("--list", blocks.list, "print the members of every block");
    blocks.limits.attach(c_blocks);

    VerifyArgs ver;
    auto* c_verify = app.add_subcommand("verify", "run a verification bundle");
    c_verify->add_option("id", ver.id, "thm1 thm3 thm8 thm9 thm10 thm10_5 thm13 lem11 blocks")->required();
    c_verify->add_option("--n", ver.n, "restrict to one graph size");
    c_verify->add_option("--cmax", ver.c_max);
    c_verify->add_option("--trials", ver.trials)->capture_default_str();
    c_verify->add_option("--seed", ver.seed)->capture_default_str();
    ver.limits.attach(c_verify);

    std::string st_graph;
    std::optional<Vertex> st_omit;
    auto* c_trees = app.add_subcommand("spanning-trees", "count spanning trees via the reduced Laplacian");
    c_trees->add_option("--graph", st_graph)->required();
    c_trees->add_option("--omit", st_omit, "vertex removed from the Laplacian (default: last)");

    ReachArgs reach;
    auto* c_reach = app.add_subcommand("reachability", "decide whether one configuration reaches another");
    c_reach->add_option("--graph", reach.graph)->required();
    c_reach->add_option("--from", reach.from)->required();
    c_reach->add_option("--to", reach.to)->required();
    c_reach->add_flag("--bfs", reach.bfs, "confirm with exhaustive search");
    reach.limits.attach(c_reach);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? exit_ok : exit_usage;
    }

    try {
        if (c_count->parsed()) cmd_count(count, out);
        else if (c_sweep->parsed()) cmd_sweep(sw, out);
        else if (c_fit->parsed()) cmd_fit(fit, out);
        else if (c_blocks->parsed()) cmd_blocks(blocks, out);
        else if (c_verify->parsed()) return cmd_verify(ver, out);
        else if (c_trees->parsed()) cmd_spanning_trees(st_graph, st_omit, out);
        else if (c_reach->parsed()) return cmd_reachability(reach, out);
        return exit_ok;
    } catch (const CheckFailed& e) {
        err << "chipfire: " << e.message << '\n';
        return exit_verification_failed;
    } catch (const ResourceExceeded& e) {
        err << "chipfire: resource limit: " << e.what() << '\n';
        return exit_resource;
    } catch (const Error& e) {
        err << "chipfire: " << e.what() << '\n';
        return exit_usage;
    } catch (const std::exception& e) {
        err << "chipfire: internal error: " << e.what() << '\n';
        return exit_verification_failed;
    }
}

}  // namespace chipfire::cli
