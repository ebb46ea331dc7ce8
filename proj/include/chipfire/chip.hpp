#pragma once

#include "chipfire/graph.hpp"
#include "chipfire/integer.hpp"

#include <cstddef>
#include <functional>
#include <span>
#include <string>
#include <vector>

namespace chipfire {

/// Chip counts per vertex with arbitrary sign. "In debt" when any entry is negative.
class GeneralConfiguration {
public:
    GeneralConfiguration() = default;
    explicit GeneralConfiguration(std::vector<Integer> chips) : chips_(std::move(chips)) {}
    GeneralConfiguration(std::initializer_list<long> chips);

    std::size_t size() const noexcept { return chips_.size(); }
    const Integer& operator[](std::size_t v) const { return chips_[v]; }
    Integer& operator[](std::size_t v) { return chips_[v]; }
    std::span<const Integer> chips() const noexcept { return chips_; }

    Integer total() const;
    bool in_debt() const;

    friend bool operator==(const GeneralConfiguration&, const GeneralConfiguration&) = default;

private:
    std::vector<Integer> chips_;
};

/// Nonnegative chip counts per vertex, with the total cached.
class Configuration {
public:
    Configuration() = default;
    // Throws DomainError if any entry is negative.
    explicit Configuration(std::vector<Integer> chips);
    Configuration(std::initializer_list<long> chips);
    explicit Configuration(const GeneralConfiguration& c);

    // c chips on `source`, zero elsewhere.
    static Configuration concentrated(std::size_t n, std::size_t source, const Integer& c);

    std::size_t size() const noexcept { return chips_.size(); }
    const Integer& operator[](std::size_t v) const { return chips_[v]; }
    std::span<const Integer> chips() const noexcept { return chips_; }
    const Integer& total() const noexcept { return total_; }

    GeneralConfiguration general() const { return GeneralConfiguration(chips_); }

    friend bool operator==(const Configuration& a, const Configuration& b) { return a.chips_ == b.chips_; }

private:
    std::vector<Integer> chips_;
    Integer total_;
};

/// x[v] = number of times vertex v fires. Reduced when min entry is exactly 0.
class FiringVector {
public:
    FiringVector() = default;
    explicit FiringVector(std::vector<Integer> counts) : counts_(std::move(counts)) {}
    FiringVector(std::initializer_list<long> counts);
    static FiringVector zeros(std::size_t n) { return FiringVector(std::vector<Integer>(n)); }

    std::size_t size() const noexcept { return counts_.size(); }
    const Integer& operator[](std::size_t v) const { return counts_[v]; }
    Integer& operator[](std::size_t v) { return counts_[v]; }
    std::span<const Integer> counts() const noexcept { return counts_; }

    bool is_reduced() const;
    bool is_zero() const;

    friend bool operator==(const FiringVector&, const FiringVector&) = default;

private:
    std::vector<Integer> counts_;
};

enum class FireMode { legal, general };

bool can_fire(const Graph& g, const Configuration& c, Vertex v);
bool can_fire(const Graph& g, const GeneralConfiguration& c, Vertex v);

// v loses deg(v) chips, each neighbour gains one. In legal mode throws
// IllegalMove when v holds fewer than deg(v) chips.
GeneralConfiguration fire(const Graph& g, GeneralConfiguration c, Vertex v, FireMode mode);

// Fires vertex v x[v] times in debt mode: c - L x.
GeneralConfiguration apply_firing_vector(const Graph& g, const GeneralConfiguration& c, const FiringVector& x);

// Subtracts the minimum entry. Result min is 0 and L x is unchanged.
FiringVector reduce_firing_vector(FiringVector x);

// Degree of every vertex as a configuration.
Configuration degree_configuration(const Graph& g);

Configuration operator+(const Configuration& a, const Configuration& b);

// "4,0,0,0"
GeneralConfiguration parse_general_configuration(const std::string& text);
Configuration parse_configuration(const std::string& text);
std::string to_string(const GeneralConfiguration& c);
std::string to_string(const Configuration& c);
std::string to_string(const FiringVector& x);

}  // namespace chipfire

template <>
struct std::hash<chipfire::Configuration> {
    std::size_t operator()(const chipfire::Configuration& c) const noexcept
    {
        return chipfire::IntegerVectorHash{}(c.chips());
    }
};
