#pragma once

#include "chipfire/chip.hpp"
#include "chipfire/exact_linalg.hpp"
#include "chipfire/graph.hpp"
#include "chipfire/integer.hpp"

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace chipfire {

/// Caps that turn combinatorial blow-up into a ResourceExceeded error.
struct ResourceLimits {
    std::uint64_t max_states = 10'000'000;          // BFS visited states
    std::uint64_t max_configurations = 500'000'000;  // compositions scanned per total

    // Defaults, with CHIPFIRE_MAX_STATES overriding max_states when set.
    static ResourceLimits from_environment();
};

/// Coordinates of a configuration in the sandpile group Z^{n-1} / L' Z^{n-1}.
/// Coordinate k is reduced modulo the k-th invariant factor greater than 1.
struct ResidueLabel {
    std::vector<Integer> coordinates;

    friend bool operator==(const ResidueLabel&, const ResidueLabel&) = default;
};

std::string to_string(const ResidueLabel& label);

/// Precomputed lattice data for debt-reachability queries on one graph:
/// the reduced Laplacian (last vertex omitted), its adjugate and determinant,
/// and the Smith form rows used for residue labels.
class DebtLattice {
public:
    explicit DebtLattice(Graph g);

    const Graph& graph() const noexcept { return graph_; }
    Vertex omitted() const noexcept { return omit_; }
    const IntMatrix& reduced_laplacian() const noexcept { return reduced_; }
    const IntMatrix& reduced_adjugate() const noexcept { return adjugate_; }
    // det L' (equals the spanning tree count; positive for Laplacian minors).
    const Integer& determinant() const noexcept { return det_; }
    const SmithDecomposition& smith() const noexcept { return smith_; }
    // Invariant factors d_k > 1 of L'. Their product is the spanning tree count.
    const std::vector<Integer>& invariant_factors() const noexcept { return factors_; }

    ResidueLabel label(const Configuration& c) const;

    // Machine-integer label for nonnegative chips. Returns false (leaving `out`
    // unspecified) if an invariant factor does not fit in 63 bits.
    bool label_fast(std::span<const std::int64_t> chips, std::vector<std::int64_t>& out) const;
    bool has_fast_labels() const noexcept { return fast_; }

    // Reduced firing vector x (fire v x[v] times) with from - L x = to, or nullopt.
    std::optional<FiringVector> firing_vector(const Configuration& from, const Configuration& to) const;

private:
    Graph graph_;
    Vertex omit_;
    IntMatrix reduced_;
    IntMatrix adjugate_;
    Integer det_;
    SmithDecomposition smith_;
    std::vector<Integer> factors_;
    // rows of U matching factors_, entries reduced modulo the factor
    std::vector<std::vector<Integer>> label_rows_;
    bool fast_ = false;
    std::vector<std::int64_t> fast_factors_;
    std::vector<std::vector<std::int64_t>> fast_rows_;
};

std::optional<FiringVector> debt_reachability_vector(const Graph& g, const Configuration& from,
                                                     const Configuration& to);

ResidueLabel residue_label(const Graph& g, const Configuration& c);

struct Block {
    ResidueLabel label;
    Integer size;
    std::vector<Configuration> members;  // filled only on request
};

/// Debt-reachability classes among all configurations with `total` chips.
/// Blocks appear in order of their first member in lexicographic enumeration.
struct BlockPartition {
    Integer total;
    std::vector<Block> blocks;

    std::size_t block_count() const noexcept { return blocks.size(); }
};

BlockPartition block_partition(const DebtLattice& lattice, const Integer& total,
                               const ResourceLimits& limits = {}, bool keep_members = false);
BlockPartition block_partition(const Graph& g, const Integer& total, const ResourceLimits& limits = {},
                               bool keep_members = false);

struct MostFiredResult {
    Configuration configuration;
    FiringVector remaining;
};

// Chooses the next vertex to fire from the nonempty, ascending list of
// vertices that still have budget and can fire.
using FiringPolicy = std::function<Vertex(std::span<const Vertex> eligible)>;

// Spends the budget greedily: while some vertex has budget left and can fire,
// fire it. Lowest index first; a vertex fires as many times in a row as its
// chips and budget allow. The stuck point does not depend on the order.
MostFiredResult most_fired(const Graph& g, const Configuration& from, const FiringVector& budget);

// One firing at a time, order decided by `policy`.
MostFiredResult most_fired(const Graph& g, const Configuration& from, const FiringVector& budget,
                           const FiringPolicy& policy);

// Greedy decision: spend the reduced firing vector and check it was used up.
bool is_reachable(const DebtLattice& lattice, const Configuration& from, const Configuration& to);
bool is_reachable(const Graph& g, const Configuration& from, const Configuration& to);

// Exhaustive search over legal firings from `from`.
bool is_reachable_bfs(const Graph& g, const Configuration& from, const Configuration& to,
                      const ResourceLimits& limits = {});

}  // namespace chipfire
