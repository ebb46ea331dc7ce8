#include "chipfire/chip.hpp"

#include "chipfire/error.hpp"

#include <algorithm>

namespace chipfire {

namespace {

std::vector<Integer> from_longs(std::initializer_list<long> values)
{
    std::vector<Integer> out;
    out.reserve(values.size());
    for (long v : values) out.emplace_back(v);
    return out;
}

void check_size(const Graph& g, std::size_t size, const char* what)
{
    if (size != g.vertex_count()) {
        throw DomainError(std::string(what) + " has " + std::to_string(size) + " entries, graph has " +
                          std::to_string(g.vertex_count()) + " vertices");
    }
}

void check_vertex(const Graph& g, Vertex v)
{
    if (v >= g.vertex_count()) throw DomainError("vertex " + std::to_string(v) + " out of range");
}

}  // namespace

GeneralConfiguration::GeneralConfiguration(std::initializer_list<long> chips) : chips_(from_longs(chips)) {}

Integer GeneralConfiguration::total() const
{
    Integer t = 0;
    for (const auto& v : chips_) t += v;
    return t;
}

bool GeneralConfiguration::in_debt() const
{
    return std::any_of(chips_.begin(), chips_.end(), [](const Integer& v) { return v < 0; });
}

Configuration::Configuration(std::vector<Integer> chips) : chips_(std::move(chips)), total_(0)
{
    for (const auto& v : chips_) {
        if (v < 0) throw DomainError("configuration entries must be nonnegative");
        total_ += v;
    }
}

Configuration::Configuration(std::initializer_list<long> chips) : Configuration(from_longs(chips)) {}

Configuration::Configuration(const GeneralConfiguration& c)
    : Configuration(std::vector<Integer>(c.chips().begin(), c.chips().end()))
{
}

Configuration Configuration::concentrated(std::size_t n, std::size_t source, const Integer& c)
{
    if (source >= n) throw DomainError("source vertex out of range");
    std::vector<Integer> chips(n);
    chips[source] = c;
    return Configuration(std::move(chips));
}

FiringVector::FiringVector(std::initializer_list<long> counts) : counts_(from_longs(counts)) {}

bool FiringVector::is_reduced() const
{
    if (counts_.empty()) return true;
    return *std::min_element(counts_.begin(), counts_.end()) == 0;
}

bool FiringVector::is_zero() const
{
    return std::all_of(counts_.begin(), counts_.end(), [](const Integer& v) { return v == 0; });
}

bool can_fire(const Graph& g, const GeneralConfiguration& c, Vertex v)
{
    check_size(g, c.size(), "configuration");
    check_vertex(g, v);
    return c[v] >= static_cast<unsigned long>(g.degree(v));
}

bool can_fire(const Graph& g, const Configuration& c, Vertex v)
{
    check_size(g, c.size(), "configuration");
    check_vertex(g, v);
    return c[v] >= static_cast<unsigned long>(g.degree(v));
}

GeneralConfiguration fire(const Graph& g, GeneralConfiguration c, Vertex v, FireMode mode)
{
    if (mode == FireMode::legal && !can_fire(g, c, v)) {
        throw IllegalMove("vertex " + std::to_string(v) + " holds " + c[v].get_str() + " chips, needs " +
                          std::to_string(g.degree(v)));
    }
    check_size(g, c.size(), "configuration");
    check_vertex(g, v);
    c[v] -= static_cast<unsigned long>(g.degree(v));
    for (Vertex w : g.neighbors(v)) c[w] += 1;
    return c;
}

GeneralConfiguration apply_firing_vector(const Graph& g, const GeneralConfiguration& c, const FiringVector& x)
{
    check_size(g, c.size(), "configuration");
    check_size(g, x.size(), "firing vector");
    GeneralConfiguration out = c;
    for (Vertex v = 0; v < g.vertex_count(); ++v) {
        if (x[v] == 0) continue;
        out[v] -= x[v] * static_cast<unsigned long>(g.degree(v));
        for (Vertex w : g.neighbors(v)) out[w] += x[v];
    }
    return out;
}

FiringVector reduce_firing_vector(FiringVector x)
{
    if (x.size() == 0) return x;
    const Integer m = *std::min_element(x.counts().begin(), x.counts().end());
    for (std::size_t i = 0; i < x.size(); ++i) x[i] -= m;
    return x;
}

Configuration degree_configuration(const Graph& g)
{
    std::vector<Integer> d;
    for (auto deg : g.degrees()) d.emplace_back(static_cast<unsigned long>(deg));
    return Configuration(std::move(d));
}

Configuration operator+(const Configuration& a, const Configuration& b)
{
    if (a.size() != b.size()) throw DomainError("configuration sizes differ");
    std::vector<Integer> s(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) s[i] = a[i] + b[i];
    return Configuration(std::move(s));
}

GeneralConfiguration parse_general_configuration(const std::string& text)
{
    return GeneralConfiguration(parse_integer_list(text));
}

Configuration parse_configuration(const std::string& text)
{
    auto values = parse_integer_list(text);
    for (const auto& v : values)
        if (v < 0) throw ParseError("configuration '" + text + "' has a negative entry");
    return Configuration(std::move(values));
}

std::string to_string(const GeneralConfiguration& c) { return join(c.chips()); }
std::string to_string(const Configuration& c) { return join(c.chips()); }
std::string to_string(const FiringVector& x) { return join(x.counts()); }

}  // namespace chipfire
