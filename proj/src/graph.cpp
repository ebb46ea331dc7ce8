#include "chipfire/graph.hpp"

#include "chipfire/error.hpp"
#include "chipfire/exact_linalg.hpp"

#include <json.hpp>

#include <algorithm>
#include <charconv>
#include <fstream>
#include <numeric>
#include <random>
#include <queue>
#include <sstream>

namespace chipfire {

Graph::Graph(std::size_t n, std::vector<Edge> edges) : n_(n), adjacency_(n)
{
    if (n < 2) throw InvalidGraph("graph needs at least 2 vertices, got " + std::to_string(n));
    for (auto& [a, b] : edges) {
        if (a >= n || b >= n) {
            throw InvalidGraph("edge {" + std::to_string(a) + "," + std::to_string(b) + "} out of range for n=" +
                               std::to_string(n));
        }
        if (a == b) throw InvalidGraph("loop at vertex " + std::to_string(a));
        if (a > b) std::swap(a, b);
    }
    std::sort(edges.begin(), edges.end());
    if (auto dup = std::adjacent_find(edges.begin(), edges.end()); dup != edges.end()) {
        throw InvalidGraph("repeated edge {" + std::to_string(dup->first) + "," + std::to_string(dup->second) + "}");
    }
    edges_ = std::move(edges);
    for (const auto& [a, b] : edges_) {
        adjacency_[a].push_back(b);
        adjacency_[b].push_back(a);
    }
    for (auto& adj : adjacency_) std::sort(adj.begin(), adj.end());

    std::vector<bool> seen(n, false);
    std::queue<Vertex> q;
    seen[0] = true;
    q.push(0);
    std::size_t visited = 1;
    while (!q.empty()) {
        const Vertex v = q.front();
        q.pop();
        for (Vertex w : adjacency_[v]) {
            if (!seen[w]) {
                seen[w] = true;
                ++visited;
                q.push(w);
            }
        }
    }
    if (visited != n) throw InvalidGraph("graph is disconnected");
}

std::vector<std::size_t> Graph::degrees() const
{
    std::vector<std::size_t> d(n_);
    for (Vertex v = 0; v < n_; ++v) d[v] = adjacency_[v].size();
    return d;
}

bool Graph::adjacent(Vertex a, Vertex b) const
{
    const auto& adj = adjacency_.at(a);
    return std::binary_search(adj.begin(), adj.end(), b);
}

Graph make_cycle(std::size_t n)
{
    if (n < 3) throw InvalidGraph("cycle needs n >= 3, got " + std::to_string(n));
    std::vector<Edge> e;
    for (Vertex i = 0; i < n; ++i) e.emplace_back(i, (i + 1) % n);
    return Graph(n, std::move(e));
}

Graph make_path(std::size_t n)
{
    if (n < 2) throw InvalidGraph("path needs n >= 2, got " + std::to_string(n));
    std::vector<Edge> e;
    for (Vertex i = 0; i + 1 < n; ++i) e.emplace_back(i, i + 1);
    return Graph(n, std::move(e));
}

Graph make_complete(std::size_t n)
{
    if (n < 2) throw InvalidGraph("complete graph needs n >= 2, got " + std::to_string(n));
    std::vector<Edge> e;
    for (Vertex i = 0; i < n; ++i)
        for (Vertex j = i + 1; j < n; ++j) e.emplace_back(i, j);
    return Graph(n, std::move(e));
}

Graph make_random_connected(std::size_t n, std::uint64_t seed, double extra_edge_probability)
{
    if (n < 2) throw InvalidGraph("random graph needs n >= 2, got " + std::to_string(n));
    std::mt19937_64 rng(seed);
    std::vector<Vertex> order(n);
    std::iota(order.begin(), order.end(), Vertex{0});
    std::shuffle(order.begin(), order.end(), rng);
    std::vector<Edge> e;
    for (std::size_t i = 1; i < n; ++i) {
        std::uniform_int_distribution<std::size_t> pick(0, i - 1);
        e.emplace_back(order[pick(rng)], order[i]);
    }
    std::bernoulli_distribution extra(extra_edge_probability);
    for (Vertex a = 0; a < n; ++a)
        for (Vertex b = a + 1; b < n; ++b) {
            const bool present = std::any_of(e.begin(), e.end(), [&](const Edge& x) {
                return (x.first == a && x.second == b) || (x.first == b && x.second == a);
            });
            if (!present && extra(rng)) e.emplace_back(a, b);
        }
    return Graph(n, std::move(e));
}

namespace {

std::size_t as_index(const nlohmann::json& v, const char* what)
{
    if (!v.is_number_integer()) throw ParseError(std::string(what) + " must be an integer");
    const auto x = v.get<long long>();
    if (x < 0) throw InvalidGraph(std::string(what) + " must be nonnegative");
    return static_cast<std::size_t>(x);
}

Graph graph_from_json(const nlohmann::json& doc)
{
    if (!doc.is_object() || !doc.contains("n") || !doc.contains("edges")) {
        throw ParseError("graph document must be an object with \"n\" and \"edges\"");
    }
    const std::size_t n = as_index(doc.at("n"), "n");
    const auto& list = doc.at("edges");
    if (!list.is_array()) throw ParseError("\"edges\" must be an array");
    std::vector<Edge> edges;
    for (const auto& e : list) {
        if (!e.is_array() || e.size() != 2) throw ParseError("each edge must be a pair [i, j]");
        edges.emplace_back(as_index(e[0], "edge endpoint"), as_index(e[1], "edge endpoint"));
    }
    return Graph(n, std::move(edges));
}

}  // namespace

Graph parse_graph(std::istream& document)
{
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(document);
    } catch (const nlohmann::json::parse_error& e) {
        throw ParseError(std::string("malformed graph JSON: ") + e.what());
    }
    return graph_from_json(doc);
}

Graph parse_graph(const std::string& document)
{
    std::istringstream in(document);
    return parse_graph(in);
}

std::string to_json(const Graph& g)
{
    nlohmann::json doc;
    doc["n"] = g.vertex_count();
    doc["edges"] = nlohmann::json::array();
    for (const auto& [a, b] : g.edges()) doc["edges"].push_back({a, b});
    return doc.dump();
}

namespace {

struct SpecParts {
    std::string family;
    std::string argument;
};

SpecParts split_spec(const std::string& spec)
{
    const auto colon = spec.find(':');
    if (colon == std::string::npos || colon == 0 || colon + 1 == spec.size()) {
        throw ParseError("graph spec must look like family:ARG, got '" + spec + "'");
    }
    return {spec.substr(0, colon), spec.substr(colon + 1)};
}

std::size_t parse_size(const std::string& text, const std::string& spec)
{
    std::size_t v = 0;
    const auto* end = text.data() + text.size();
    auto [ptr, ec] = std::from_chars(text.data(), end, v);
    if (ec != std::errc() || ptr != end) throw ParseError("bad vertex count in graph spec '" + spec + "'");
    return v;
}

}  // namespace

Graph graph_from_spec(const std::string& spec)
{
    const auto [family, arg] = split_spec(spec);
    if (family == "file") {
        std::ifstream in(arg);
        if (!in) throw ParseError("cannot open graph file '" + arg + "'");
        return parse_graph(in);
    }
    const std::size_t n = parse_size(arg, spec);
    if (family == "cycle") return make_cycle(n);
    if (family == "path") return make_path(n);
    if (family == "complete") return make_complete(n);
    throw ParseError("unknown graph family '" + family + "'");
}

std::string canonical_graph_spec(const std::string& spec)
{
    const auto [family, arg] = split_spec(spec);
    if (family == "file") return spec;
    if (family != "cycle" && family != "path" && family != "complete") {
        throw ParseError("unknown graph family '" + family + "'");
    }
    return family + ":" + std::to_string(parse_size(arg, spec));
}

IntMatrix adjacency_matrix(const Graph& g)
{
    IntMatrix a(g.vertex_count(), g.vertex_count());
    for (const auto& [u, v] : g.edges()) {
        a(u, v) = 1;
        a(v, u) = 1;
    }
    return a;
}

IntMatrix degree_matrix(const Graph& g)
{
    IntMatrix d(g.vertex_count(), g.vertex_count());
    for (Vertex v = 0; v < g.vertex_count(); ++v) d(v, v) = static_cast<unsigned long>(g.degree(v));
    return d;
}

IntMatrix laplacian(const Graph& g)
{
    IntMatrix l = degree_matrix(g);
    for (const auto& [u, v] : g.edges()) {
        l(u, v) = -1;
        l(v, u) = -1;
    }
    return l;
}

IntMatrix reduced_laplacian(const Graph& g, Vertex omit)
{
    if (omit >= g.vertex_count()) {
        throw DomainError("omitted vertex " + std::to_string(omit) + " out of range");
    }
    return laplacian(g).minor(omit, omit);
}

IntMatrix reduced_laplacian(const Graph& g) { return reduced_laplacian(g, g.vertex_count() - 1); }

Integer spanning_tree_count(const Graph& g, Vertex omit)
{
    return abs(exact_determinant(reduced_laplacian(g, omit)));
}

Integer spanning_tree_count(const Graph& g) { return spanning_tree_count(g, g.vertex_count() - 1); }

}  // namespace chipfire
