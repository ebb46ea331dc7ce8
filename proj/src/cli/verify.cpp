#include "chipfire/verify.hpp"

#include "chipfire/chip.hpp"
#include "chipfire/enumerate.hpp"
#include "chipfire/error.hpp"
#include "chipfire/graph.hpp"

#include <map>
#include <numeric>
#include <ostream>
#include <random>
#include <sstream>

namespace chipfire::verify {

Integer triangle_debt_count(std::int64_t c)
{
    const Integer k = from_int64(c / 3);
    switch (c % 3) {
    case 0: return (3 * k * k + 3 * k + 2) / 2;
    case 1: return (3 * k * k + 5 * k + 2) / 2;
    default: return (3 * k * k + 7 * k + 4) / 2;
    }
}

Integer triangle_reachable_count(std::int64_t c)
{
    const Integer k = from_int64(c / 3);
    if (c % 3 == 0) return (3 * k * k + 3 * k - 2) / 2;
    return triangle_debt_count(c);
}

Rational cycle_block_share(std::int64_t n, std::int64_t c)
{
    Rational r(binomial(static_cast<std::uint64_t>(c + n - 1), static_cast<std::uint64_t>(n - 1)), from_int64(n));
    r.canonicalize();
    return r;
}

const std::vector<std::string>& bundle_ids()
{
    static const std::vector<std::string> ids{"thm1",  "thm3",    "thm8",  "thm9",  "thm10",
                                              "thm10_5", "thm13", "lem11", "blocks"};
    return ids;
}

bool is_bundle(const std::string& id)
{
    const auto& ids = bundle_ids();
    return std::find(ids.begin(), ids.end(), id) != ids.end();
}

namespace {

class Checker {
public:
    Checker(Outcome& outcome, std::ostream& log) : outcome_(outcome), log_(log) {}

    void expect(bool ok, const std::string& what)
    {
        ++outcome_.checks;
        if (!ok) {
            outcome_.passed = false;
            outcome_.failures.push_back(what);
            log_ << "FAIL " << what << '\n';
        }
    }

    std::ostream& log() { return log_; }

private:
    Outcome& outcome_;
    std::ostream& log_;
};

std::vector<std::size_t> cycle_sizes(const Options& o, std::size_t lo, std::size_t hi)
{
    if (o.n) return {*o.n};
    std::vector<std::size_t> out;
    for (std::size_t n = lo; n <= hi; ++n) out.push_back(n);
    return out;
}

void check_thm1(const Options& o, Checker& ck)
{
    const Graph g = make_cycle(3);
    const DebtLattice lattice(g);
    const std::int64_t cmax = o.c_max.value_or(30);
    for (std::int64_t c = 0; c <= cmax; ++c) {
        const auto from = Configuration::concentrated(3, 0, from_int64(c));
        const Integer expected = triangle_debt_count(c);
        const Integer by_label = count_debt_reachable(lattice, from, o.limits);
        const Integer by_simplex = simplex_lattice_count(g, 0, from_int64(c));
        ck.expect(by_label == expected, "C3 debt count c=" + std::to_string(c) + ": " + by_label.get_str() +
                                            " != " + expected.get_str());
        ck.expect(by_simplex == expected, "C3 simplex count c=" + std::to_string(c) + ": " + by_simplex.get_str() +
                                              " != " + expected.get_str());
    }
    ck.log() << "thm1: C3 debt counts c=0.." << cmax << " checked by labels and simplex points\n";
}

void check_thm3(const Options& o, Checker& ck)
{
    const Graph g = make_cycle(3);
    const std::int64_t cmax = o.c_max.value_or(30);
    for (std::int64_t c = 1; c <= cmax; ++c) {
        const auto from = Configuration::concentrated(3, 0, from_int64(c));
        const Integer got = count_reachable(g, from, o.limits);
        const Integer expected = triangle_reachable_count(c);
        ck.expect(got == expected, "C3 reachable count c=" + std::to_string(c) + ": " + got.get_str() +
                                       " != " + expected.get_str());
    }
    ck.log() << "thm3: C3 reachable counts c=1.." << cmax << '\n';
}

void check_thm8(const Options& o, Checker& ck)
{
    for (std::size_t n : cycle_sizes(o, 3, 8)) {
        const auto b1 = block_partition(make_cycle(n), 1, o.limits).block_count();
        ck.expect(b1 == n, "C" + std::to_string(n) + ": b_1 = " + std::to_string(b1));
    }
    ck.log() << "thm8: b_1 = n on cycles\n";
}

void check_thm9(const Options& o, Checker& ck)
{
    const std::int64_t cmax = o.c_max.value_or(20);
    for (std::size_t n : cycle_sizes(o, 3, 8)) {
        const DebtLattice lattice(make_cycle(n));
        for (std::int64_t c = 1; c <= cmax; ++c) {
            std::vector<ResidueLabel> labels;
            for (std::size_t i = 0; i < n; ++i) labels.push_back(lattice.label(Configuration::concentrated(n, i, from_int64(c))));
            bool distinct = true;
            for (std::size_t i = 0; i < n; ++i)
                for (std::size_t j = i + 1; j < n; ++j)
                    if (labels[i] == labels[j]) distinct = false;
            const bool coprime = std::gcd(c, static_cast<std::int64_t>(n)) == 1;
            ck.expect(distinct == coprime, "C" + std::to_string(n) + " c=" + std::to_string(c) +
                                               ": labels of c*e_i distinct=" + std::to_string(distinct) +
                                               " but gcd(c,n)=1 is " + std::to_string(coprime));
        }
    }
    ck.log() << "thm9: gcd criterion for c=1.." << cmax << '\n';
}

void check_thm10(const Options& o, Checker& ck)
{
    const std::int64_t cmax = o.c_max.value_or(25);
    for (std::size_t n : cycle_sizes(o, 3, 6)) {
        const DebtLattice lattice(make_cycle(n));
        for (std::int64_t c = 1; c <= cmax; ++c) {
            if (std::gcd(c, static_cast<std::int64_t>(n)) != 1) continue;
            const Integer got = count_debt_reachable(lattice, Configuration::concentrated(n, 0, from_int64(c)), o.limits);
            const Rational expected = cycle_block_share(static_cast<std::int64_t>(n), c);
            ck.expect(Rational(got) == expected, "C" + std::to_string(n) + " c=" + std::to_string(c) + ": " +
                                                     got.get_str() + " != " + expected.get_str());
        }
    }
    ck.log() << "thm10: coprime c up to " << cmax << '\n';
}

void check_thm10_5(const Options& o, Checker& ck)
{
    const std::int64_t cmax = o.c_max.value_or(30);
    for (std::size_t n : cycle_sizes(o, 3, 6)) {
        const auto ni = static_cast<std::int64_t>(n);
        const DebtLattice lattice(make_cycle(n));
        std::map<std::int64_t, Rational> offset;
        for (std::int64_t c = ni; c <= cmax; ++c) {
            const Integer got = count_debt_reachable(lattice, Configuration::concentrated(n, 0, from_int64(c)), o.limits);
            const Rational diff = Rational(got) - cycle_block_share(ni, c);
            auto [it, fresh] = offset.try_emplace(c % ni, diff);
            ck.expect(fresh || it->second == diff, "C" + std::to_string(n) + " c=" + std::to_string(c) +
                                                       ": offset " + diff.get_str() + " differs from " +
                                                       it->second.get_str() + " for the same residue");
        }
        std::ostringstream f;
        for (auto& [r, v] : offset) f << ' ' << r << ':' << v.get_str();
        ck.log() << "thm10_5: C" << n << " offsets by c mod n:" << f.str() << '\n';
    }
}

Configuration random_configuration(std::size_t n, std::int64_t total, std::mt19937_64& rng)
{
    std::vector<Integer> chips(n);
    std::uniform_int_distribution<std::size_t> pick(0, n - 1);
    for (std::int64_t i = 0; i < total; ++i) chips[pick(rng)] += 1;
    return Configuration(std::move(chips));
}

void check_thm13(const Options& o, Checker& ck)
{
    std::mt19937_64 rng(o.seed);
    for (unsigned t = 0; t < o.trials; ++t) {
        const std::size_t n = std::uniform_int_distribution<std::size_t>(2, 6)(rng);
        const Graph g = make_random_connected(n, rng());
        const auto total = std::uniform_int_distribution<std::int64_t>(0, 14)(rng);
        const Configuration from = random_configuration(n, total, rng);
        std::vector<Integer> b(n);
        for (auto& x : b) x = static_cast<long>(std::uniform_int_distribution<int>(0, 4)(rng));
        const FiringVector budget(std::move(b));

        const MostFiredResult reference = most_fired(g, from, budget);
        for (int order = 0; order < 10; ++order) {
            std::mt19937_64 local(rng());
            const MostFiredResult other = most_fired(g, from, budget, [&](std::span<const Vertex> eligible) {
                return eligible[std::uniform_int_distribution<std::size_t>(0, eligible.size() - 1)(local)];
            });
            ck.expect(other.configuration == reference.configuration && other.remaining == reference.remaining,
                      "most-fired result depends on order: trial " + std::to_string(t) + " from " + to_string(from) +
                          " budget " + to_string(budget));
        }
        for (Vertex v = 0; v < n; ++v) {
            if (reference.remaining[v] > 0) {
                ck.expect(!can_fire(g, reference.configuration, v),
                          "vertex with budget left can still fire: trial " + std::to_string(t));
            }
        }
    }
    ck.log() << "thm13: " << o.trials << " trials x 10 firing orders\n";
}

void check_lem11(const Options& o, Checker& ck)
{
    std::mt19937_64 rng(o.seed ^ 0x5bd1e995ULL);
    unsigned done = 0;
    while (done < o.trials) {
        const std::size_t n = std::uniform_int_distribution<std::size_t>(2, 5)(rng);
        const Graph g = make_random_connected(n, rng());
        const auto total = std::uniform_int_distribution<std::int64_t>(0, 10)(rng);
        const Configuration a = random_configuration(n, total, rng);
        const Configuration b = random_configuration(n, total, rng);
        const DebtLattice lattice(g);
        if (!lattice.firing_vector(a, b)) continue;
        ++done;
        const Configuration deg = degree_configuration(g);
        const Configuration from = a + deg;
        const Configuration to = b + deg;
        ck.expect(is_reachable(lattice, from, to), "degree shift not reachable (greedy): " + to_string(from) + " -> " +
                                                       to_string(to));
        ck.expect(is_reachable_bfs(g, from, to, o.limits), "degree shift not reachable (search): " + to_string(from) +
                                                               " -> " + to_string(to));
    }
    ck.log() << "lem11: " << o.trials << " debt-reachable pairs shifted by the degree vector\n";
}

void check_blocks(const Options& o, Checker& ck)
{
    const std::int64_t cmax = o.c_max.value_or(15);
    for (std::size_t n : cycle_sizes(o, 3, 6)) {
        const DebtLattice lattice(make_cycle(n));
        for (std::int64_t c = 1; c <= cmax; ++c) {
            const auto b = block_partition(lattice, from_int64(c), o.limits).block_count();
            ck.expect(b == n, "C" + std::to_string(n) + " c=" + std::to_string(c) + ": b_c=" + std::to_string(b));
        }
    }
    for (std::size_t n = 2; n <= 5; ++n) {
        const DebtLattice lattice(make_path(n));
        for (std::int64_t c = 0; c <= cmax; ++c) {
            const auto b = block_partition(lattice, from_int64(c), o.limits).block_count();
            ck.expect(b == 1, "P" + std::to_string(n) + " c=" + std::to_string(c) + ": b_c=" + std::to_string(b));
        }
    }
    for (const Graph& g : {make_complete(4), make_random_connected(5, o.seed + 1, 0.5)}) {
        const DebtLattice lattice(g);
        const Integer kappa = lattice.determinant();
        std::size_t prev = 0;
        for (std::int64_t c = 0; c <= cmax; ++c) {
            const auto b = block_partition(lattice, from_int64(c), o.limits).block_count();
            ck.expect(b >= prev, to_json(g) + " c=" + std::to_string(c) + ": b_c decreased");
            ck.expect(Integer(static_cast<unsigned long>(b)) <= kappa, to_json(g) + " c=" + std::to_string(c) +
                                                                           ": b_c exceeds spanning tree count");
            prev = b;
        }
    }
    ck.log() << "blocks: cycles, paths, K4 and a random 5-vertex graph up to c=" << cmax << '\n';
}

}  // namespace

Outcome run_bundle(const std::string& id, const Options& options, std::ostream& log)
{
    Outcome outcome;
    Checker ck(outcome, log);
    if (id == "thm1") check_thm1(options, ck);
    else if (id == "thm3") check_thm3(options, ck);
    else if (id == "thm8") check_thm8(options, ck);
    else if (id == "thm9") check_thm9(options, ck);
    else if (id == "thm10") check_thm10(options, ck);
    else if (id == "thm10_5") check_thm10_5(options, ck);
    else if (id == "thm13") check_thm13(options, ck);
    else if (id == "lem11") check_lem11(options, ck);
    else if (id == "blocks") check_blocks(options, ck);
    else throw DomainError("unknown verification id '" + id + "'");
    return outcome;
}

}  // namespace chipfire::verify
