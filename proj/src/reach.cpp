#include "chipfire/reach.hpp"

#include "chipfire/compositions.hpp"
#include "chipfire/error.hpp"
#include "detail/guards.hpp"
#include "detail/legal_bfs.hpp"

#include <algorithm>
#include <charconv>
#include <cstdlib>
#include <cstring>
#include <unordered_map>

namespace chipfire {

ResourceLimits ResourceLimits::from_environment()
{
    ResourceLimits limits;
    if (const char* env = std::getenv("CHIPFIRE_MAX_STATES"); env != nullptr && *env != '\0') {
        std::uint64_t v = 0;
        const char* end = env + std::strlen(env);
        auto [ptr, ec] = std::from_chars(env, end, v);
        if (ec != std::errc() || ptr != end || v == 0) {
            throw ParseError(std::string("CHIPFIRE_MAX_STATES must be a positive integer, got '") + env + "'");
        }
        limits.max_states = v;
    }
    return limits;
}

std::string to_string(const ResidueLabel& label) { return "(" + join(label.coordinates) + ")"; }

DebtLattice::DebtLattice(Graph g)
    : graph_(std::move(g)),
      omit_(graph_.vertex_count() - 1),
      reduced_(chipfire::reduced_laplacian(graph_, omit_)),
      adjugate_(adjugate(reduced_)),
      det_(exact_determinant(reduced_)),
      smith_(smith_normal_form(reduced_))
{
    const auto diag = smith_.diagonal();
    for (std::size_t k = 0; k < diag.size(); ++k) {
        if (diag[k] == 1) continue;
        factors_.push_back(diag[k]);
        std::vector<Integer> row;
        for (const auto& u : smith_.U.row(k)) row.push_back(mod_positive(u, diag[k]));
        label_rows_.push_back(std::move(row));
    }
    fast_ = std::all_of(factors_.begin(), factors_.end(),
                        [](const Integer& d) { return fits_int64(d) && to_int64(d) < (std::int64_t(1) << 62); });
    if (fast_) {
        for (std::size_t k = 0; k < factors_.size(); ++k) {
            fast_factors_.push_back(to_int64(factors_[k]));
            std::vector<std::int64_t> row;
            for (const auto& u : label_rows_[k]) row.push_back(to_int64(u));
            fast_rows_.push_back(std::move(row));
        }
    }
}

ResidueLabel DebtLattice::label(const Configuration& c) const
{
    if (c.size() != graph_.vertex_count()) throw DomainError("configuration size does not match graph");
    ResidueLabel out;
    out.coordinates.reserve(factors_.size());
    for (std::size_t k = 0; k < factors_.size(); ++k) {
        Integer acc = 0;
        for (std::size_t j = 0, col = 0; j < c.size(); ++j) {
            if (j == omit_) continue;
            acc += label_rows_[k][col++] * c[j];
        }
        out.coordinates.push_back(mod_positive(acc, factors_[k]));
    }
    return out;
}

bool DebtLattice::label_fast(std::span<const std::int64_t> chips, std::vector<std::int64_t>& out) const
{
    if (!fast_) return false;
    out.resize(fast_factors_.size());
    for (std::size_t k = 0; k < fast_factors_.size(); ++k) {
        const std::int64_t d = fast_factors_[k];
        const auto& row = fast_rows_[k];
        std::int64_t acc = 0;
        for (std::size_t j = 0, col = 0; j < chips.size(); ++j) {
            if (j == omit_) continue;
            const auto term = static_cast<std::int64_t>((static_cast<__int128>(row[col++]) * (chips[j] % d)) % d);
            acc += term;
            if (acc >= d) acc -= d;
        }
        out[k] = acc;
    }
    return true;
}

std::optional<FiringVector> DebtLattice::firing_vector(const Configuration& from, const Configuration& to) const
{
    const std::size_t n = graph_.vertex_count();
    if (from.size() != n || to.size() != n) throw DomainError("configuration size does not match graph");
    if (from.total() != to.total()) return std::nullopt;
    std::vector<Integer> rhs;
    rhs.reserve(n - 1);
    for (std::size_t j = 0; j < n; ++j)
        if (j != omit_) rhs.push_back(from[j] - to[j]);
    auto kept = solve_integer(adjugate_, det_, rhs);
    if (!kept) return std::nullopt;
    std::vector<Integer> x(n);
    for (std::size_t j = 0, col = 0; j < n; ++j)
        if (j != omit_) x[j] = (*kept)[col++];
    return reduce_firing_vector(FiringVector(std::move(x)));
}

std::optional<FiringVector> debt_reachability_vector(const Graph& g, const Configuration& from,
                                                     const Configuration& to)
{
    if (from.total() != to.total()) return std::nullopt;
    return DebtLattice(g).firing_vector(from, to);
}

ResidueLabel residue_label(const Graph& g, const Configuration& c) { return DebtLattice(g).label(c); }

namespace {

struct Int64VectorHash {
    std::size_t operator()(const std::vector<std::int64_t>& v) const noexcept { return detail::hash_state(v); }
};

}  // namespace

BlockPartition block_partition(const DebtLattice& lattice, const Integer& total, const ResourceLimits& limits,
                               bool keep_members)
{
    const std::size_t n = lattice.graph().vertex_count();
    detail::check_composition_budget(n, total, limits);
    BlockPartition out{total, {}};

    if (lattice.has_fast_labels() && fits_int64(total)) {
        std::unordered_map<std::vector<std::int64_t>, std::size_t, Int64VectorHash> index;
        std::vector<std::int64_t> key;
        CompositionCursor<std::int64_t> cur(n, to_int64(total));
        do {
            lattice.label_fast(cur.current(), key);
            auto [it, fresh] = index.try_emplace(key, out.blocks.size());
            if (fresh) {
                ResidueLabel label;
                for (auto v : key) label.coordinates.push_back(from_int64(v));
                out.blocks.push_back({std::move(label), 0, {}});
            }
            Block& b = out.blocks[it->second];
            b.size += 1;
            if (keep_members) {
                std::vector<Integer> chips;
                for (auto v : cur.current()) chips.push_back(from_int64(v));
                b.members.emplace_back(std::move(chips));
            }
        } while (cur.advance());
        return out;
    }

    std::vector<ResidueLabel> labels;
    CompositionCursor<Integer> cur(n, total);
    do {
        Configuration c(cur.current());
        ResidueLabel label = lattice.label(c);
        auto it = std::find(labels.begin(), labels.end(), label);
        std::size_t idx = static_cast<std::size_t>(it - labels.begin());
        if (it == labels.end()) {
            labels.push_back(label);
            out.blocks.push_back({std::move(label), 0, {}});
        }
        out.blocks[idx].size += 1;
        if (keep_members) out.blocks[idx].members.push_back(std::move(c));
    } while (cur.advance());
    return out;
}

BlockPartition block_partition(const Graph& g, const Integer& total, const ResourceLimits& limits,
                               bool keep_members)
{
    return block_partition(DebtLattice(g), total, limits, keep_members);
}

namespace {

void check_budget(const Graph& g, const Configuration& from, const FiringVector& budget)
{
    if (from.size() != g.vertex_count() || budget.size() != g.vertex_count()) {
        throw DomainError("configuration or budget size does not match graph");
    }
    for (std::size_t v = 0; v < budget.size(); ++v)
        if (budget[v] < 0) throw DomainError("firing budget entries must be nonnegative");
}

}  // namespace

MostFiredResult most_fired(const Graph& g, const Configuration& from, const FiringVector& budget)
{
    check_budget(g, from, budget);
    const std::size_t n = g.vertex_count();
    std::vector<Integer> chips(from.chips().begin(), from.chips().end());
    FiringVector remaining = budget;
    for (;;) {
        Vertex v = 0;
        while (v < n && !(remaining[v] > 0 && chips[v] >= static_cast<unsigned long>(g.degree(v)))) ++v;
        if (v == n) break;
        const unsigned long deg = g.degree(v);
        Integer times = chips[v] / deg;
        if (times > remaining[v]) times = remaining[v];
        chips[v] -= times * deg;
        for (Vertex w : g.neighbors(v)) chips[w] += times;
        remaining[v] -= times;
    }
    return {Configuration(std::move(chips)), std::move(remaining)};
}

MostFiredResult most_fired(const Graph& g, const Configuration& from, const FiringVector& budget,
                           const FiringPolicy& policy)
{
    check_budget(g, from, budget);
    const std::size_t n = g.vertex_count();
    std::vector<Integer> chips(from.chips().begin(), from.chips().end());
    FiringVector remaining = budget;
    std::vector<Vertex> eligible;
    for (;;) {
        eligible.clear();
        for (Vertex v = 0; v < n; ++v)
            if (remaining[v] > 0 && chips[v] >= static_cast<unsigned long>(g.degree(v))) eligible.push_back(v);
        if (eligible.empty()) break;
        const Vertex v = policy(eligible);
        if (std::find(eligible.begin(), eligible.end(), v) == eligible.end()) {
            throw DomainError("firing policy chose an ineligible vertex");
        }
        chips[v] -= static_cast<unsigned long>(g.degree(v));
        for (Vertex w : g.neighbors(v)) chips[w] += 1;
        remaining[v] -= 1;
    }
    return {Configuration(std::move(chips)), std::move(remaining)};
}

bool is_reachable(const DebtLattice& lattice, const Configuration& from, const Configuration& to)
{
    auto x = lattice.firing_vector(from, to);
    if (!x) return false;
    return most_fired(lattice.graph(), from, *x).remaining.is_zero();
}

bool is_reachable(const Graph& g, const Configuration& from, const Configuration& to)
{
    if (from.total() != to.total()) return false;
    return is_reachable(DebtLattice(g), from, to);
}

bool is_reachable_bfs(const Graph& g, const Configuration& from, const Configuration& to,
                      const ResourceLimits& limits)
{
    if (from.size() != g.vertex_count() || to.size() != g.vertex_count()) {
        throw DomainError("configuration size does not match graph");
    }
    if (from.total() != to.total()) return false;
    bool found = false;
    if (fits_int64(from.total())) {
        const auto start = detail::to_int64_vector(from.chips());
        const auto target = detail::to_int64_vector(to.chips());
        detail::LegalBfs<std::int64_t> bfs(g, limits.max_states);
        bfs.run(std::span<const std::int64_t>(start), [&](std::span<const std::int64_t> s) {
            found = std::equal(s.begin(), s.end(), target.begin());
            return !found;
        });
    } else {
        detail::LegalBfs<Integer> bfs(g, limits.max_states);
        bfs.run(from.chips(), [&](std::span<const Integer> s) {
            found = std::equal(s.begin(), s.end(), to.chips().begin());
            return !found;
        });
    }
    return found;
}

}  // namespace chipfire
