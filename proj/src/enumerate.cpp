#include "chipfire/enumerate.hpp"

#include "chipfire/error.hpp"
#include "chipfire/exact_linalg.hpp"
#include "detail/guards.hpp"
#include "detail/legal_bfs.hpp"

#include <json.hpp>

#include <algorithm>
#include <atomic>
#include <chrono>
#include <exception>
#include <iomanip>
#include <ostream>
#include <thread>

namespace chipfire {

ConfigurationRange::iterator::iterator(std::size_t parts, const Integer& total)
{
    if (parts == 0) throw DomainError("configurations need at least one vertex");
    if (total < 0) throw DomainError("total chip count must be nonnegative");
    cursor_.emplace(parts, total);
    value_ = Configuration(cursor_->current());
    done_ = false;
}

ConfigurationRange::iterator& ConfigurationRange::iterator::operator++()
{
    if (cursor_ && cursor_->advance()) {
        value_ = Configuration(cursor_->current());
    } else {
        done_ = true;
        cursor_.reset();
    }
    return *this;
}

ConfigurationRange all_configurations(std::size_t n, const Integer& total) { return {n, total}; }

Integer configuration_count(std::size_t n, const Integer& total)
{
    if (total < 0) return 0;
    if (n == 0) return total == 0 ? 1 : 0;
    if (!total.fits_ulong_p()) throw ResourceExceeded("total " + total.get_str() + " too large to count compositions");
    return binomial(total.get_ui() + n - 1, n - 1);
}

namespace {

Configuration to_configuration(std::span<const std::int64_t> chips)
{
    std::vector<Integer> v;
    v.reserve(chips.size());
    for (auto x : chips) v.push_back(from_int64(x));
    return Configuration(std::move(v));
}

// Calls visit(chips-as-int64, lazily-built Configuration) for every member of
// the block of `from`. Returns the member count.
template <class Fn>
Integer scan_block(const DebtLattice& lattice, const Configuration& from, const ResourceLimits& limits, Fn&& visit)
{
    const std::size_t n = lattice.graph().vertex_count();
    if (from.size() != n) throw DomainError("configuration size does not match graph");
    detail::check_composition_budget(n, from.total(), limits);

    Integer count = 0;
    if (lattice.has_fast_labels() && fits_int64(from.total())) {
        std::vector<std::int64_t> target;
        std::vector<std::int64_t> key;
        lattice.label_fast(detail::to_int64_vector(from.chips()), target);
        std::uint64_t small = 0;
        CompositionCursor<std::int64_t> cur(n, to_int64(from.total()));
        do {
            lattice.label_fast(cur.current(), key);
            if (key != target) continue;
            ++small;
            if (!visit([&] { return to_configuration(cur.current()); })) break;
        } while (cur.advance());
        count = Integer(static_cast<unsigned long>(small));
        return count;
    }

    const ResidueLabel target = lattice.label(from);
    for (const auto& c : all_configurations(n, from.total())) {
        if (lattice.label(c) != target) continue;
        count += 1;
        if (!visit([&] { return c; })) break;
    }
    return count;
}

}  // namespace

Integer count_debt_reachable(const DebtLattice& lattice, const Configuration& from, const ResourceLimits& limits)
{
    return scan_block(lattice, from, limits, [](auto&&) { return true; });
}

Integer count_debt_reachable(const Graph& g, const Configuration& from, const ResourceLimits& limits)
{
    return count_debt_reachable(DebtLattice(g), from, limits);
}

void for_each_debt_reachable(const DebtLattice& lattice, const Configuration& from, const ConfigurationVisitor& visit,
                             const ResourceLimits& limits)
{
    scan_block(lattice, from, limits, [&](auto&& make) { return visit(make()); });
}

std::vector<Configuration> list_debt_reachable(const Graph& g, const Configuration& from, std::size_t max_items,
                                               const ResourceLimits& limits)
{
    std::vector<Configuration> out;
    if (max_items == 0) return out;
    for_each_debt_reachable(
        DebtLattice(g), from,
        [&](const Configuration& c) {
            out.push_back(c);
            return out.size() < max_items;
        },
        limits);
    return out;
}

namespace {

void check_source(const Graph& g, const Configuration& from)
{
    if (from.size() != g.vertex_count()) throw DomainError("configuration size does not match graph");
}

}  // namespace

void for_each_reachable(const Graph& g, const Configuration& from, const ConfigurationVisitor& visit,
                        const ResourceLimits& limits)
{
    check_source(g, from);
    if (fits_int64(from.total())) {
        detail::LegalBfs<std::int64_t> bfs(g, limits.max_states);
        const auto start = detail::to_int64_vector(from.chips());
        bfs.run(std::span<const std::int64_t>(start),
                [&](std::span<const std::int64_t> s) { return visit(to_configuration(s)); });
    } else {
        detail::LegalBfs<Integer> bfs(g, limits.max_states);
        bfs.run(from.chips(), [&](std::span<const Integer> s) {
            return visit(Configuration(std::vector<Integer>(s.begin(), s.end())));
        });
    }
}

Integer count_reachable(const Graph& g, const Configuration& from, const ResourceLimits& limits)
{
    check_source(g, from);
    std::uint64_t count = 0;
    if (fits_int64(from.total())) {
        detail::LegalBfs<std::int64_t> bfs(g, limits.max_states);
        const auto start = detail::to_int64_vector(from.chips());
        count = bfs.run(std::span<const std::int64_t>(start), [](auto) { return true; });
    } else {
        detail::LegalBfs<Integer> bfs(g, limits.max_states);
        count = bfs.run(from.chips(), [](auto) { return true; });
    }
    return Integer(static_cast<unsigned long>(count));
}

std::vector<Configuration> list_reachable(const Graph& g, const Configuration& from, std::size_t max_items,
                                          const ResourceLimits& limits)
{
    std::vector<Configuration> out;
    if (max_items == 0) return out;
    for_each_reachable(
        g, from,
        [&](const Configuration& c) {
            out.push_back(c);
            return out.size() < max_items;
        },
        limits);
    return out;
}

SimplexSpec make_simplex_spec(const Graph& g, Vertex source, const Integer& c)
{
    const std::size_t n = g.vertex_count();
    if (source >= n) throw DomainError("source vertex out of range");
    if (c < 0) throw DomainError("total chip count must be nonnegative");

    SimplexSpec spec;
    spec.dimension = n - 1;
    spec.source = source;
    spec.omitted = n - 1;
    spec.scale = c;
    const IntMatrix lap = laplacian(g);
    spec.constraints = IntMatrix(n, n - 1);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0, col = 0; j < n; ++j)
            if (j != spec.omitted) spec.constraints(i, col++) = lap(i, j);
    spec.constants.assign(n, Integer(0));
    spec.constants[source] = c;

    spec.corners.emplace_back(n - 1, Rational(0));
    // Corner opposite facet i: every constraint except row i is tight.
    for (std::size_t i = 0; i < n; ++i) {
        if (i == source) continue;
        IntMatrix tight(n - 1, n - 1);
        std::vector<Integer> rhs;
        for (std::size_t r = 0, row = 0; r < n; ++r) {
            if (r == i) continue;
            for (std::size_t j = 0; j < n - 1; ++j) tight(row, j) = spec.constraints(r, j);
            rhs.push_back(-spec.constants[r]);
            ++row;
        }
        const Integer det = exact_determinant(tight);
        if (det == 0) throw Error("simplex is unbounded: degenerate constraint system");
        const std::vector<Integer> scaled = adjugate(tight) * std::span<const Integer>(rhs);
        std::vector<Rational> corner;
        for (const auto& v : scaled) {
            Rational q(v, det);
            q.canonicalize();
            corner.push_back(q);
        }
        spec.corners.push_back(std::move(corner));
    }
    return spec;
}

namespace {

class SimplexCounter {
public:
    explicit SimplexCounter(const SimplexSpec& spec) : spec_(spec), m_(spec.dimension), rows_(spec.constraints.rows())
    {
        lo_.resize(m_);
        hi_.resize(m_);
        for (std::size_t k = 0; k < m_; ++k) {
            Rational mn = spec.corners[0][k];
            Rational mx = mn;
            for (const auto& corner : spec.corners) {
                if (corner[k] < mn) mn = corner[k];
                if (corner[k] > mx) mx = corner[k];
            }
            lo_[k] = ceil_of(mn);
            hi_[k] = floor_of(mx);
        }
        // slack_[k][i]: largest value row i can still gain from coordinates k..m-1
        slack_.assign(m_ + 1, std::vector<Integer>(rows_, Integer(0)));
        for (std::size_t k = m_; k-- > 0;) {
            for (std::size_t i = 0; i < rows_; ++i) {
                const Integer& a = spec.constraints(i, k);
                Integer best = a * lo_[k];
                Integer other = a * hi_[k];
                if (other > best) best = other;
                slack_[k][i] = slack_[k + 1][i] + best;
            }
        }
        partial_.assign(rows_, Integer(0));
    }

    Integer count()
    {
        for (std::size_t k = 0; k < m_; ++k)
            if (lo_[k] > hi_[k]) return 0;
        Integer total = 0;
        recurse(0, total);
        return total;
    }

private:
    bool feasible(std::size_t depth) const
    {
        for (std::size_t i = 0; i < rows_; ++i)
            if (partial_[i] + slack_[depth][i] < -spec_.constants[i]) return false;
        return true;
    }

    void recurse(std::size_t depth, Integer& total)
    {
        if (!feasible(depth)) return;
        if (depth == m_) {
            total += 1;
            return;
        }
        for (Integer x = lo_[depth]; x <= hi_[depth]; ++x) {
            for (std::size_t i = 0; i < rows_; ++i) partial_[i] += spec_.constraints(i, depth) * x;
            recurse(depth + 1, total);
            for (std::size_t i = 0; i < rows_; ++i) partial_[i] -= spec_.constraints(i, depth) * x;
        }
    }

    const SimplexSpec& spec_;
    std::size_t m_;
    std::size_t rows_;
    std::vector<Integer> lo_, hi_;
    std::vector<std::vector<Integer>> slack_;
    std::vector<Integer> partial_;
};

}  // namespace

Integer simplex_lattice_count(const SimplexSpec& spec) { return SimplexCounter(spec).count(); }

Integer simplex_lattice_count(const Graph& g, Vertex source, const Integer& c)
{
    return simplex_lattice_count(make_simplex_spec(g, source, c));
}

std::vector<SweepRecord> sweep(const Graph& g, Vertex source, std::int64_t c_min, std::int64_t c_max,
                               SweepModes modes, const ResourceLimits& limits, unsigned jobs)
{
    if (c_min > c_max) throw DomainError("empty sweep range");
    if (c_min < 0) throw DomainError("sweep range must be nonnegative");
    if (source >= g.vertex_count()) throw DomainError("source vertex out of range");

    const DebtLattice lattice(g);
    const auto count = static_cast<std::size_t>(c_max - c_min + 1);
    std::vector<SweepRecord> records(count);
    std::vector<std::exception_ptr> errors(count);
    std::atomic<std::size_t> next{0};

    auto worker = [&] {
        for (std::size_t idx = next++; idx < count; idx = next++) {
            try {
                const auto t0 = std::chrono::steady_clock::now();
                SweepRecord& r = records[idx];
                r.c = c_min + static_cast<std::int64_t>(idx);
                const Configuration from = Configuration::concentrated(g.vertex_count(), source, from_int64(r.c));
                if (modes.debt) r.debt_count = count_debt_reachable(lattice, from, limits);
                if (modes.reachable) r.reachable_count = count_reachable(g, from, limits);
                if (modes.blocks) r.block_count = block_partition(lattice, from.total(), limits).block_count();
                r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
            } catch (...) {
                errors[idx] = std::current_exception();
            }
        }
    };

    const unsigned width = std::max(1u, std::min<unsigned>(jobs, static_cast<unsigned>(count)));
    if (width == 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        for (unsigned t = 0; t < width; ++t) pool.emplace_back(worker);
        for (auto& t : pool) t.join();
    }
    for (auto& e : errors)
        if (e) std::rethrow_exception(e);
    return records;
}

namespace {

std::string optional_field(const std::optional<Integer>& v) { return v ? v->get_str() : std::string(); }

std::string seconds_field(double s)
{
    std::ostringstream os;
    os << std::fixed << std::setprecision(6) << s;
    return os.str();
}

}  // namespace

void write_sweep_csv(std::ostream& os, const std::vector<SweepRecord>& records, bool timing)
{
    os << "c,debt_count,reachable_count,block_count,seconds\n";
    for (const auto& r : records) {
        os << r.c << ',' << optional_field(r.debt_count) << ',' << optional_field(r.reachable_count) << ','
           << (r.block_count ? std::to_string(*r.block_count) : std::string()) << ','
           << (timing ? seconds_field(r.seconds) : std::string()) << '\n';
    }
}

void write_sweep_jsonl(std::ostream& os, const std::vector<SweepRecord>& records, bool timing)
{
    auto integer_json = [](const std::optional<Integer>& v) -> nlohmann::json {
        if (!v) return nullptr;
        if (fits_int64(*v)) return to_int64(*v);
        return v->get_str();
    };
    for (const auto& r : records) {
        nlohmann::ordered_json j;
        j["c"] = r.c;
        j["debt_count"] = integer_json(r.debt_count);
        j["reachable_count"] = integer_json(r.reachable_count);
        j["block_count"] = r.block_count ? nlohmann::ordered_json(*r.block_count) : nlohmann::ordered_json(nullptr);
        j["seconds"] = timing ? nlohmann::ordered_json(r.seconds) : nlohmann::ordered_json(nullptr);
        os << j.dump() << '\n';
    }
}

void write_sweep_human(std::ostream& os, const std::vector<SweepRecord>& records, bool timing)
{
    os << std::setw(6) << "c" << std::setw(16) << "debt" << std::setw(16) << "reachable" << std::setw(8) << "blocks";
    if (timing) os << std::setw(12) << "seconds";
    os << '\n';
    for (const auto& r : records) {
        os << std::setw(6) << r.c << std::setw(16) << (r.debt_count ? r.debt_count->get_str() : "-") << std::setw(16)
           << (r.reachable_count ? r.reachable_count->get_str() : "-") << std::setw(8)
           << (r.block_count ? std::to_string(*r.block_count) : "-");
        if (timing) os << std::setw(12) << seconds_field(r.seconds);
        os << '\n';
    }
}

}  // namespace chipfire
