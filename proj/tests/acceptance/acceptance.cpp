// Acceptance suite. One line per criterion: PASS or FAIL, a short summary
// and the elapsed time. Run with criterion numbers to select a subset.

#include "oracles.hpp"

#include "chipfire/chip.hpp"
#include "chipfire/enumerate.hpp"
#include "chipfire/quasipoly.hpp"
#include "chipfire/reach.hpp"
#include "chipfire/verify.hpp"

#include <chrono>
#include <cstdlib>
#include <functional>
#include <iostream>
#include <map>
#include <numeric>
#include <random>
#include <sstream>
#include <string>
#include <thread>
#include <iomanip>
#include <set>
#include <algorithm>

using namespace chipfire;

namespace {

// Wall-clock budgets in seconds, one per criterion.
constexpr double budget_seconds[10] = {0, 5, 5, 60, 60, 120, 120, 600, 120, 60};

constexpr std::uint64_t property_seed = 20100801;
constexpr unsigned property_trials = 200;
// Random 5-vertex graph for the block checks: 7 edges, 21 spanning trees.
constexpr std::uint64_t block_graph_seed = 20100802;
constexpr double block_graph_density = 0.5;

struct Report {
    bool ok = true;
    std::ostringstream detail;
    std::vector<std::string> notes;

    void fail(const std::string& why)
    {
        if (ok) detail << why;
        ok = false;
    }
    void note(const std::string& s) { notes.push_back(s); }
};

unsigned jobs() { return std::max(1u, std::thread::hardware_concurrency()); }

Configuration concentrated(std::size_t n, long c) { return Configuration::concentrated(n, 0, c); }

std::string str(const Integer& v) { return v.get_str(); }
std::string str(const Rational& v) { return v.get_str(); }

SampleMap sweep_samples(const Graph& g, long c_min, long c_max, bool reachable)
{
    SweepModes modes;
    (reachable ? modes.reachable : modes.debt) = true;
    SampleMap m;
    for (const auto& r : sweep(g, 0, c_min, c_max, modes, ResourceLimits::from_environment(), jobs()))
        m.emplace(r.c, reachable ? *r.reachable_count : *r.debt_count);
    return m;
}

// 1. Triangle debt counts, two methods, against the closed form.
void criterion_1(Report& r)
{
    const Graph g = make_cycle(3);
    const DebtLattice lattice(g);
    for (long c = 0; c <= 30; ++c) {
        const Integer expected = oracle::triangle_debt(c);
        const Integer by_label = count_debt_reachable(lattice, concentrated(3, c));
        const Integer by_simplex = simplex_lattice_count(g, 0, c);
        if (by_label != expected) r.fail("residue count c=" + std::to_string(c) + " got " + str(by_label));
        if (by_simplex != expected) r.fail("simplex count c=" + std::to_string(c) + " got " + str(by_simplex));
    }
    r.detail << "C3 debt counts c=0..30 match the three branch formulas by labels and by simplex points";
}

// 2. Triangle reachable counts.
void criterion_2(Report& r)
{
    const Graph g = make_cycle(3);
    const DebtLattice lattice(g);
    for (long c = 1; c <= 30; ++c) {
        const Integer reach = count_reachable(g, concentrated(3, c));
        const Integer debt = count_debt_reachable(lattice, concentrated(3, c));
        const Integer expected = c % 3 == 0 ? debt - 2 : debt;
        if (reach != expected) r.fail("c=" + std::to_string(c) + " reachable " + str(reach) + ", debt " + str(debt));
        if (reach != oracle::triangle_reachable(c)) r.fail("c=" + std::to_string(c) + " closed form mismatch");
    }
    const std::map<long, long> spot{{3, 2}, {6, 8}, {9, 17}};
    for (auto [c, v] : spot)
        if (count_reachable(g, concentrated(3, c)) != v) r.fail("spot value c=" + std::to_string(c));
    r.detail << "C3 reachable counts c=1..30: equal to debt counts off multiples of 3, two less on them; "
                "c=3,6,9 give 2,8,17";
}

// 3. Cycles: even split for coprime totals, constant offset per residue.
void criterion_3(Report& r)
{
    std::size_t coprime_checked = 0;
    std::vector<std::string> offset_failures;
    for (long n = 3; n <= 6; ++n) {
        const DebtLattice lattice(make_cycle(static_cast<std::size_t>(n)));
        for (long c = 1; c <= 25; ++c) {
            if (std::gcd(c, n) != 1) continue;
            ++coprime_checked;
            const Integer got = count_debt_reachable(lattice, concentrated(static_cast<std::size_t>(n), c));
            if (got * n != oracle::binom(c + n - 1, n - 1))
                r.fail("C" + std::to_string(n) + " c=" + std::to_string(c) + " count " + str(got));
        }
        std::map<long, Rational> offset;
        for (long c = n; c <= 30; ++c) {
            const Integer got = count_debt_reachable(lattice, concentrated(static_cast<std::size_t>(n), c));
            Rational diff = Rational(got) - Rational(oracle::binom(c + n - 1, n - 1), n);
            diff.canonicalize();
            auto [it, fresh] = offset.try_emplace(c % n, diff);
            if (!fresh && it->second != diff) {
                offset_failures.push_back("C" + std::to_string(n) + " c=" + std::to_string(c) + " offset " +
                                          str(diff) + " vs " + str(it->second));
            }
        }
    }
    r.detail << coprime_checked << " coprime (n, c) pairs split evenly";
    if (!offset_failures.empty()) {
        r.ok = false;
        r.detail << "; offset not constant per residue in " << offset_failures.size() << " cases, first: "
                 << offset_failures.front();
        std::set<std::string> graphs;
        for (const auto& f : offset_failures) graphs.insert(f.substr(0, f.find(' ')));
        std::string which;
        for (const auto& g : graphs) which += " " + g;
        r.note("offset failures occur on" + which + " only, for residues sharing a factor with n");
    } else {
        r.detail << "; offsets constant per residue for n=3..6, c=n..30";
    }
}

// 4. Block counts on cycles, trees and two further graphs.
void criterion_4(Report& r)
{
    for (std::size_t n = 3; n <= 6; ++n) {
        const DebtLattice lattice(make_cycle(n));
        for (long c = 1; c <= 15; ++c) {
            const auto b = block_partition(lattice, c).block_count();
            if (b != n) r.fail("C" + std::to_string(n) + " c=" + std::to_string(c) + " b=" + std::to_string(b));
        }
    }
    for (std::size_t n = 2; n <= 5; ++n) {
        const DebtLattice lattice(make_path(n));
        for (long c = 0; c <= 15; ++c)
            if (block_partition(lattice, c).block_count() != 1) r.fail("P" + std::to_string(n) + " c=" + std::to_string(c));
    }
    const std::vector<std::pair<std::string, Graph>> others{
        {"K4", make_complete(4)}, {"random", make_random_connected(5, block_graph_seed, block_graph_density)}};
    for (const auto& [name, graph] : others) {
        const DebtLattice lattice(graph);
        std::size_t prev = 0;
        std::ostringstream seq;
        for (long c = 0; c <= 15; ++c) {
            const auto b = block_partition(lattice, c).block_count();
            if (b < prev) r.fail("block count decreased at c=" + std::to_string(c));
            if (Integer(static_cast<unsigned long>(b)) > lattice.determinant()) r.fail("block count above kappa");
            prev = b;
            seq << (c ? "," : "") << b;
        }
        r.note(name + " " + to_json(graph) + " kappa=" + str(lattice.determinant()) +
               " b_0..15=" + seq.str());
    }
    r.detail << "b_c = n on C3..C6 (c=1..15), b_c = 1 on P2..P5, monotone and <= kappa on K4 and a random 5-vertex graph";
}

// 5. Greedy reachability against exhaustive search on every pair.
void criterion_5(Report& r)
{
    struct Case {
        std::string name;
        Graph g;
        long cmax;
    };
    const std::vector<Case> cases{{"C3", make_cycle(3), 8}, {"C4", make_cycle(4), 6}, {"P3", make_path(3), 8}};
    std::size_t pairs = 0, reachable = 0;
    for (const auto& k : cases) {
        const DebtLattice lattice(k.g);
        for (long c = 0; c <= k.cmax; ++c) {
            std::vector<Configuration> all;
            for (const auto& x : all_configurations(k.g.vertex_count(), c)) all.push_back(x);
            for (const auto& a : all)
                for (const auto& b : all) {
                    ++pairs;
                    const bool greedy = is_reachable(lattice, a, b);
                    const bool search = is_reachable_bfs(k.g, a, b);
                    reachable += greedy;
                    if (greedy != search) r.fail(k.name + " " + to_string(a) + " -> " + to_string(b));
                }
        }
    }
    r.detail << pairs << " ordered pairs on C3 (c<=8), C4 (c<=6), P3 (c<=8) agree; " << reachable << " reachable";
}

// 6. Fitted debt laws: degree n-1, period dividing kappa, leading term.
void criterion_6(Report& r)
{
    const std::vector<std::pair<std::string, Graph>> graphs{
        {"C3", make_cycle(3)}, {"C4", make_cycle(4)}, {"C5", make_cycle(5)}, {"P3", make_path(3)}, {"K4", make_complete(4)}};
    for (const auto& [name, g] : graphs) {
        const long n = static_cast<long>(g.vertex_count());
        const long kappa = spanning_tree_count(g).get_si();
        const long max_onset = 2 * static_cast<long>(g.edge_count());
        // enough points for period kappa and degree n with the latest onset
        const long cmax = max_onset + kappa * (n + 2);
        const auto found = detect_quasipolynomial(sweep_samples(g, 0, cmax, false), kappa, n, max_onset);
        if (!found) {
            r.fail(name + ": no law found");
            continue;
        }
        const auto& q = found->quasipolynomial;
        std::ostringstream s;
        s << name << ": period " << found->period << " degree " << found->degree << " onset " << found->onset
          << " leading " << str(q.branch(0)[static_cast<std::size_t>(q.degree())]) << " (expected "
          << str(expected_leading_coefficient(g)) << ")";
        r.note(s.str());
        if (found->degree != n - 1) r.fail(name + ": degree " + std::to_string(found->degree));
        if (kappa % found->period != 0) r.fail(name + ": period " + std::to_string(found->period) + " does not divide kappa");
        if (!leading_coefficient_check(q, g)) r.fail(name + ": leading coefficient");
    }
    if (r.ok) r.detail << "debt laws on C3, C4, C5, P3, K4 have degree n-1, period | kappa, leading 1/((n-1)! kappa)";
}

// 7. Reachable-count laws on C4 and C5.
void criterion_7(Report& r)
{
    constexpr long max_period = 12;
    constexpr long max_onset = 30;
    const auto c4 = detect_quasipolynomial(sweep_samples(make_cycle(4), 1, 60, true), max_period, 3, max_onset);
    const auto c5 = detect_quasipolynomial(sweep_samples(make_cycle(5), 1, 40, true), max_period, 4, max_onset);

    std::ostringstream d;
    if (!c4) {
        r.fail("C4 c=1..60: no law detected");
    } else {
        d << "C4 c=1..60: onset " << c4->onset << " period " << c4->period << " degree " << c4->degree;
        if (c4->onset != 4) r.ok = false;
    }
    if (!c5) {
        d << "; C5 c=1..40: no law detected (period 10, degree 4 needs 6 samples per residue past the onset)";
        r.ok = false;
    } else {
        d << "; C5 c=1..40: period " << c5->period;
        if (c5->period != 10) r.ok = false;
    }
    r.detail << d.str() << (r.ok ? "" : " [expected C4 onset 4, C5 period 10]");

    // Supplementary evidence, not part of the pass/fail decision.
    if (c4) {
        const auto from4 = fit_quasipolynomial(sweep_samples(make_cycle(4), 1, 60, true), c4->period, c4->degree, 4);
        r.note(std::string("C4 law also verified from onset 4: ") + (from4 ? "yes" : "no"));
    }
    const auto c5_long = detect_quasipolynomial(sweep_samples(make_cycle(5), 1, 70, true), max_period, 4, max_onset);
    if (c5_long) {
        r.note("C5 c=1..70: onset " + std::to_string(c5_long->onset) + " period " + std::to_string(c5_long->period) +
               " degree " + std::to_string(c5_long->degree));
    } else {
        r.note("C5 c=1..70: no law detected");
    }
}

// 8. Randomized property suites.
void criterion_8(Report& r)
{
    std::mt19937_64 rng(property_seed);
    auto random_graph = [&](std::size_t lo, std::size_t hi) {
        return make_random_connected(std::uniform_int_distribution<std::size_t>(lo, hi)(rng), rng());
    };
    auto random_config = [&](std::size_t n, long total) {
        std::vector<Integer> c(n);
        std::uniform_int_distribution<std::size_t> pick(0, n - 1);
        for (long i = 0; i < total; ++i) c[pick(rng)] += 1;
        return Configuration(std::move(c));
    };

    // commutativity and all-ones invariance
    for (unsigned t = 0; t < property_trials; ++t) {
        const Graph g = random_graph(2, 7);
        const std::size_t n = g.vertex_count();
        std::vector<Integer> chips(n), x(n), shifted(n);
        for (std::size_t v = 0; v < n; ++v) {
            chips[v] = std::uniform_int_distribution<int>(-5, 9)(rng);
            x[v] = std::uniform_int_distribution<int>(-3, 5)(rng);
            shifted[v] = x[v] + 1;
        }
        const GeneralConfiguration c(chips);
        const Vertex i = rng() % n, j = rng() % n;
        const auto ij = fire(g, fire(g, c, i, FireMode::general), j, FireMode::general);
        const auto ji = fire(g, fire(g, c, j, FireMode::general), i, FireMode::general);
        if (ij != ji) r.fail("firing does not commute");
        if (apply_firing_vector(g, c, FiringVector(x)) != apply_firing_vector(g, c, FiringVector(shifted)))
            r.fail("all-ones shift changed the result");
    }
    // equivalence relation laws, with labels checked against the rational oracle
    for (unsigned t = 0; t < property_trials; ++t) {
        const Graph g = random_graph(2, 6);
        const DebtLattice lattice(g);
        const long total = static_cast<long>(rng() % 12);
        const auto a = random_config(g.vertex_count(), total), b = random_config(g.vertex_count(), total),
                   c = random_config(g.vertex_count(), total);
        if (!lattice.firing_vector(a, a)) r.fail("not reflexive");
        if (lattice.firing_vector(a, b).has_value() != lattice.firing_vector(b, a).has_value()) r.fail("not symmetric");
        if (lattice.firing_vector(a, b) && lattice.firing_vector(b, c) && !lattice.firing_vector(a, c))
            r.fail("not transitive");
        oracle::Chips ca, cb;
        for (const auto& v : a.chips()) ca.push_back(v.get_si());
        for (const auto& v : b.chips()) cb.push_back(v.get_si());
        if (lattice.firing_vector(a, b).has_value() != oracle::debt_equivalent(g, ca, cb))
            r.fail("debt reachability disagrees with rational solve");
    }

    verify::Options o;
    o.trials = property_trials;
    o.seed = property_seed;
    std::ostringstream sink;
    for (const std::string id : {"thm13", "lem11"}) {
        const auto out = verify::run_bundle(id, o, sink);
        if (!out.passed) r.fail(id + ": " + out.failures.front());
    }
    // gcd criterion on cycles
    for (std::size_t n = 3; n <= 8; ++n) {
        const DebtLattice lattice(make_cycle(n));
        for (long c = 1; c <= 20; ++c) {
            std::set<std::string> labels;
            for (Vertex i = 0; i < n; ++i) labels.insert(to_string(lattice.label(Configuration::concentrated(n, i, c))));
            if ((labels.size() == n) != (std::gcd(c, static_cast<long>(n)) == 1))
                r.fail("gcd criterion C" + std::to_string(n) + " c=" + std::to_string(c));
        }
    }
    // on the triangle, only permutations of (c,0,0) are debt-reachable but not reachable
    const Graph c3 = make_cycle(3);
    const DebtLattice l3(c3);
    for (long c = 1; c <= 15; ++c) {
        const Configuration from = concentrated(3, c);
        const auto reach = oracle::reachable_set(c3, oracle::concentrated(3, c));
        for (const auto& to : all_configurations(3, c)) {
            oracle::Chips t{to[0].get_si(), to[1].get_si(), to[2].get_si()};
            const bool debt = oracle::cycle_debt_equivalent(oracle::concentrated(3, c), t);
            if (debt != l3.firing_vector(from, to).has_value()) r.fail("triangle debt relation mismatch");
            if (debt && reach.count(t) == 0) {
                auto s = t;
                std::sort(s.begin(), s.end());
                if (s != oracle::Chips{0, 0, c}) r.fail("triangle: " + to_string(to) + " debt-only");
            }
        }
    }
    if (r.ok)
        r.detail << "commutativity, all-ones invariance, equivalence laws, order independence, degree shift, "
                    "gcd criterion (n=3..8, c=1..20), triangle characterization (c=1..15); "
                 << property_trials << " trials, seed " << property_seed;
}

// 9. Ratio to the asymptotic main term moves toward 1.
void criterion_9(Report& r)
{
    for (std::size_t n : {3u, 4u}) {
        const Graph g = make_cycle(n);
        const long cmax = n == 3 ? 60 : 40;
        const Rational scale(Integer(1), factorial(n - 1) * spanning_tree_count(g));
        for (bool reachable : {false, true}) {
            const auto s = sweep_samples(g, cmax / 2, cmax, reachable);
            auto gap = [&](long c) {
                Integer p = 1;
                for (std::size_t i = 0; i + 1 < n; ++i) p *= c;
                return Rational(abs(Rational(s.at(c)) / (scale * Rational(p)) - 1));
            };
            const Rational far = gap(cmax), half = gap(cmax / 2);
            std::ostringstream note;
            note << "C" << n << (reachable ? " reachable" : " debt") << ": |ratio-1| " << far.get_d() << " at c=" << cmax
                 << ", " << half.get_d() << " at c=" << cmax / 2;
            r.note(note.str());
            if (!(far < half)) r.fail(note.str());
        }
    }
    if (r.ok) r.detail << "ratio to c^(n-1)/((n-1)! kappa) is closer to 1 at c_max than at c_max/2 for C3, C4, debt and reachable";
}

const std::function<void(Report&)> criteria[10] = {nullptr,     criterion_1, criterion_2, criterion_3, criterion_4,
                                                    criterion_5, criterion_6, criterion_7, criterion_8, criterion_9};

}  // namespace

int main(int argc, char** argv)
{
    std::vector<int> selected;
    for (int i = 1; i < argc; ++i) {
        const int id = std::atoi(argv[i]);
        if (id < 1 || id > 9) {
            std::cerr << "unknown criterion '" << argv[i] << "' (1..9)\n";
            return 2;
        }
        selected.push_back(id);
    }
    if (selected.empty())
        for (int i = 1; i <= 9; ++i) selected.push_back(i);

    bool all = true;
    for (int id : selected) {
        Report report;
        const auto start = std::chrono::steady_clock::now();
        try {
            criteria[id](report);
        } catch (const std::exception& e) {
            report.fail(std::string("exception: ") + e.what());
        }
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        if (secs > budget_seconds[id]) {
            report.ok = false;
            report.detail << " [over time budget " << budget_seconds[id] << " s]";
        }
        std::cout << (report.ok ? "PASS" : "FAIL") << " criterion " << id << ": " << report.detail.str() << " ("
                  << std::fixed << std::setprecision(2) << secs << " s)\n";
        std::cout.unsetf(std::ios::fixed);
        for (const auto& n : report.notes) std::cout << "    " << n << '\n';
        all = all && report.ok;
    }
    return all ? 0 : 1;
}
