#pragma once

#include "chipfire/integer.hpp"
#include "chipfire/matrix.hpp"

#include <cstddef>
#include <cstdint>
#include <istream>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace chipfire {

using Vertex = std::size_t;
using Edge = std::pair<Vertex, Vertex>;

/// Simple connected undirected graph on vertices 0..n-1.
///
/// Immutable once constructed. The constructor rejects loops, repeated
/// edges, out-of-range endpoints, n < 2 and disconnected edge sets, so every
/// Graph value satisfies the invariants the chip-firing code relies on
/// (nonsingular reduced Laplacian, kernel of L spanned by the all-ones vector).
class Graph {
public:
    Graph(std::size_t n, std::vector<Edge> edges);

    std::size_t vertex_count() const noexcept { return n_; }
    std::size_t edge_count() const noexcept { return edges_.size(); }

    // Normalized (min, max) pairs in lexicographic order.
    const std::vector<Edge>& edges() const noexcept { return edges_; }

    std::span<const Vertex> neighbors(Vertex v) const { return adjacency_.at(v); }
    std::size_t degree(Vertex v) const { return adjacency_.at(v).size(); }
    std::vector<std::size_t> degrees() const;

    bool adjacent(Vertex a, Vertex b) const;

    friend bool operator==(const Graph& a, const Graph& b) { return a.n_ == b.n_ && a.edges_ == b.edges_; }

private:
    std::size_t n_;
    std::vector<Edge> edges_;
    std::vector<std::vector<Vertex>> adjacency_;
};

Graph make_cycle(std::size_t n);
Graph make_path(std::size_t n);
Graph make_complete(std::size_t n);

// Random spanning tree plus each remaining pair with probability
// `extra_edge_probability`. Deterministic for a given seed.
Graph make_random_connected(std::size_t n, std::uint64_t seed, double extra_edge_probability = 0.35);

// {"n": 3, "edges": [[0,1],[1,2],[2,0]]}
Graph parse_graph(std::istream& document);
Graph parse_graph(const std::string& document);
std::string to_json(const Graph& g);

// "cycle:N", "path:N", "complete:N" or "file:PATH".
Graph graph_from_spec(const std::string& spec);
// Canonical spelling of a graph spec string ("cycle:007" -> "cycle:7").
std::string canonical_graph_spec(const std::string& spec);

IntMatrix adjacency_matrix(const Graph& g);
IntMatrix degree_matrix(const Graph& g);
IntMatrix laplacian(const Graph& g);

// L with row and column `omit` deleted. The last vertex is the default.
IntMatrix reduced_laplacian(const Graph& g, Vertex omit);
IntMatrix reduced_laplacian(const Graph& g);

// |det L'| (Kirchhoff).
Integer spanning_tree_count(const Graph& g);
Integer spanning_tree_count(const Graph& g, Vertex omit);

}  // namespace chipfire
