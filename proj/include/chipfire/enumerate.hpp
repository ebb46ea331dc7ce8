#pragma once

#include "chipfire/chip.hpp"
#include "chipfire/compositions.hpp"
#include "chipfire/graph.hpp"
#include "chipfire/integer.hpp"
#include "chipfire/reach.hpp"

#include <cstddef>
#include <cstdint>
#include <functional>
#include <iosfwd>
#include <iterator>
#include <optional>
#include <vector>

namespace chipfire {

/// Every configuration with `total` chips on `parts` vertices, in
/// descending lexicographic order. Configurations are produced one at a time.
class ConfigurationRange {
public:
    class iterator {
    public:
        using iterator_category = std::input_iterator_tag;
        using value_type = Configuration;
        using difference_type = std::ptrdiff_t;
        using pointer = const Configuration*;
        using reference = const Configuration&;

        iterator() = default;
        iterator(std::size_t parts, const Integer& total);

        reference operator*() const { return value_; }
        pointer operator->() const { return &value_; }
        iterator& operator++();
        void operator++(int) { ++*this; }
        friend bool operator==(const iterator& a, const iterator& b) { return a.done_ == b.done_; }

    private:
        std::optional<CompositionCursor<Integer>> cursor_;
        Configuration value_;
        bool done_ = true;
    };

    ConfigurationRange(std::size_t parts, Integer total) : parts_(parts), total_(std::move(total)) {}
    iterator begin() const { return iterator(parts_, total_); }
    iterator end() const { return {}; }

private:
    std::size_t parts_;
    Integer total_;
};

ConfigurationRange all_configurations(std::size_t n, const Integer& total);

// binom(total + n - 1, n - 1)
Integer configuration_count(std::size_t n, const Integer& total);

// Visitor returns false to stop early.
using ConfigurationVisitor = std::function<bool(const Configuration&)>;

/// Configurations debt-reachable from `from`: same total, same residue label.
Integer count_debt_reachable(const DebtLattice& lattice, const Configuration& from,
                             const ResourceLimits& limits = {});
Integer count_debt_reachable(const Graph& g, const Configuration& from, const ResourceLimits& limits = {});
void for_each_debt_reachable(const DebtLattice& lattice, const Configuration& from, const ConfigurationVisitor& visit,
                             const ResourceLimits& limits = {});
std::vector<Configuration> list_debt_reachable(const Graph& g, const Configuration& from, std::size_t max_items,
                                               const ResourceLimits& limits = {});

/// Distinct configurations reachable by legal firings, `from` included.
Integer count_reachable(const Graph& g, const Configuration& from, const ResourceLimits& limits = {});
void for_each_reachable(const Graph& g, const Configuration& from, const ConfigurationVisitor& visit,
                        const ResourceLimits& limits = {});
std::vector<Configuration> list_reachable(const Graph& g, const Configuration& from, std::size_t max_items,
                                          const ResourceLimits& limits = {});

/// Firing vectors x (x[omitted] = 0) keeping c*e_source + L x nonnegative.
///
/// Row i of `constraints` is row i of L with the omitted column removed, and
/// the region is { y : constraints * y >= -constants }. Only the source row
/// has a nonzero constant, so the region is a simplex with one corner at the
/// origin; the other corners are listed in `corners` (exact rationals).
struct SimplexSpec {
    std::size_t dimension = 0;
    Vertex source = 0;
    Vertex omitted = 0;
    Integer scale;
    IntMatrix constraints;
    std::vector<Integer> constants;
    std::vector<std::vector<Rational>> corners;  // origin first
};

SimplexSpec make_simplex_spec(const Graph& g, Vertex source, const Integer& c);

// Lattice points of the simplex above, counted by coordinate-wise recursion
// inside the corners' bounding box with interval pruning.
Integer simplex_lattice_count(const Graph& g, Vertex source, const Integer& c);
Integer simplex_lattice_count(const SimplexSpec& spec);

struct SweepModes {
    bool debt = false;
    bool reachable = false;
    bool blocks = false;
};

struct SweepRecord {
    std::int64_t c = 0;
    std::optional<Integer> debt_count;
    std::optional<Integer> reachable_count;
    std::optional<std::size_t> block_count;
    double seconds = 0.0;
};

/// One record per c in [c_min, c_max], source configuration c*e_source.
/// Records are evaluated on up to `jobs` threads and returned in c order.
/// The first failing record (in c order) rethrows its error.
std::vector<SweepRecord> sweep(const Graph& g, Vertex source, std::int64_t c_min, std::int64_t c_max,
                               SweepModes modes, const ResourceLimits& limits = {}, unsigned jobs = 1);

// c,debt_count,reachable_count,block_count,seconds -- unrequested fields
// empty; seconds only when `timing` is set.
void write_sweep_csv(std::ostream& os, const std::vector<SweepRecord>& records, bool timing);
void write_sweep_jsonl(std::ostream& os, const std::vector<SweepRecord>& records, bool timing);
void write_sweep_human(std::ostream& os, const std::vector<SweepRecord>& records, bool timing);

}  // namespace chipfire
