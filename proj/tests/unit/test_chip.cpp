#include "chipfire/chip.hpp"
#include "chipfire/error.hpp"
#include "chipfire/graph.hpp"

#include <doctest.h>

#include <random>

using namespace chipfire;

namespace {

GeneralConfiguration random_general(std::size_t n, std::mt19937_64& rng)
{
    std::uniform_int_distribution<int> d(-6, 9);
    std::vector<Integer> c(n);
    for (auto& x : c) x = d(rng);
    return GeneralConfiguration(std::move(c));
}

FiringVector random_firing(std::size_t n, std::mt19937_64& rng, int lo = -3, int hi = 5)
{
    std::uniform_int_distribution<int> d(lo, hi);
    std::vector<Integer> x(n);
    for (auto& v : x) v = d(rng);
    return FiringVector(std::move(x));
}

}  // namespace

TEST_CASE("configurations reject negative entries")
{
    CHECK_THROWS_AS(Configuration({1, -1, 0}), DomainError);
    const Configuration c{4, 0, 1};
    CHECK(c.total() == 5);
    CHECK(Configuration::concentrated(4, 2, 3) == Configuration{0, 0, 3, 0});
    CHECK(GeneralConfiguration{0, -1}.in_debt());
    CHECK_FALSE(GeneralConfiguration{0, 1}.in_debt());
}

TEST_CASE("can_fire examples")
{
    const Graph c3 = make_cycle(3);
    CHECK(can_fire(c3, Configuration{3, 0, 0}, 0));
    CHECK_FALSE(can_fire(c3, Configuration{1, 1, 1}, 0));
    CHECK(can_fire(make_path(2), Configuration{1, 0}, 0));
    CHECK_FALSE(can_fire(make_path(3), Configuration{0, 1, 0}, 1));
}

TEST_CASE("fire examples")
{
    const Graph c3 = make_cycle(3);
    CHECK(fire(c3, GeneralConfiguration{3, 0, 0}, 0, FireMode::legal) == GeneralConfiguration{1, 1, 1});
    CHECK(fire(c3, GeneralConfiguration{0, 0, 0}, 0, FireMode::general) == GeneralConfiguration{-2, 1, 1});
    CHECK_THROWS_AS(fire(c3, GeneralConfiguration{1, 1, 1}, 0, FireMode::legal), IllegalMove);
    CHECK_THROWS_AS(fire(c3, GeneralConfiguration{1, 1, 1}, 3, FireMode::general), DomainError);
}

TEST_CASE("apply_firing_vector examples")
{
    const Graph c3 = make_cycle(3);
    const GeneralConfiguration c{3, 0, 0};
    CHECK(apply_firing_vector(c3, c, FiringVector{1, 1, 1}) == c);
    CHECK(apply_firing_vector(c3, c, FiringVector{1, 0, 0}) == GeneralConfiguration{1, 1, 1});
    CHECK(apply_firing_vector(c3, c, FiringVector{2, 0, 1}) == GeneralConfiguration{0, 3, 0});
}

TEST_CASE("reduce_firing_vector examples")
{
    CHECK(reduce_firing_vector(FiringVector{1, -1, 0}) == FiringVector{2, 0, 1});
    CHECK(reduce_firing_vector(FiringVector{0, 0, 0}) == FiringVector{0, 0, 0});
    CHECK(reduce_firing_vector(FiringVector{5, 5, 5}) == FiringVector{0, 0, 0});
    CHECK(FiringVector{2, 0, 1}.is_reduced());
    CHECK_FALSE(FiringVector{2, 1, 1}.is_reduced());
}

TEST_CASE("firing preserves the total and commutes")
{
    std::mt19937_64 rng(101);
    for (int t = 0; t < 300; ++t) {
        const std::size_t n = 2 + t % 6;
        const Graph g = make_random_connected(n, rng());
        const GeneralConfiguration c = random_general(n, rng);
        std::uniform_int_distribution<std::size_t> pick(0, n - 1);
        const Vertex i = pick(rng), j = pick(rng);
        const auto ci = fire(g, c, i, FireMode::general);
        CHECK(ci.total() == c.total());
        CHECK(fire(g, ci, j, FireMode::general) == fire(g, fire(g, c, j, FireMode::general), i, FireMode::general));
    }
}

TEST_CASE("firing every vertex once changes nothing")
{
    std::mt19937_64 rng(102);
    for (int t = 0; t < 300; ++t) {
        const std::size_t n = 2 + t % 6;
        const Graph g = make_random_connected(n, rng());
        const GeneralConfiguration c = random_general(n, rng);
        const FiringVector x = random_firing(n, rng);
        std::vector<Integer> shifted(x.counts().begin(), x.counts().end());
        for (auto& v : shifted) v += 1;
        const auto base = apply_firing_vector(g, c, x);
        CHECK(apply_firing_vector(g, c, FiringVector(shifted)) == base);
        CHECK(apply_firing_vector(g, c, reduce_firing_vector(x)) == base);
        CHECK(base.total() == c.total());
    }
}

TEST_CASE("firing vector equals a sequence of single fires in any order")
{
    std::mt19937_64 rng(103);
    for (int t = 0; t < 200; ++t) {
        const std::size_t n = 2 + t % 5;
        const Graph g = make_random_connected(n, rng());
        GeneralConfiguration c = random_general(n, rng);
        const FiringVector x = random_firing(n, rng, 0, 4);
        std::vector<Vertex> order;
        for (Vertex v = 0; v < n; ++v)
            for (long k = 0; k < x[v].get_si(); ++k) order.push_back(v);
        std::shuffle(order.begin(), order.end(), rng);
        const auto expected = apply_firing_vector(g, c, x);
        for (Vertex v : order) c = fire(g, c, v, FireMode::general);
        CHECK(c == expected);
    }
}

TEST_CASE("configuration text form")
{
    CHECK(parse_configuration("4,0,0,0") == Configuration{4, 0, 0, 0});
    CHECK(parse_configuration(" 1, 2 ,3") == Configuration{1, 2, 3});
    CHECK(to_string(Configuration{4, 0, 1}) == "4,0,1");
    CHECK(parse_general_configuration("-2,1,1") == GeneralConfiguration{-2, 1, 1});
    CHECK_THROWS_AS(parse_configuration("1,-1"), ParseError);
    CHECK_THROWS_AS(parse_configuration("1,,2"), ParseError);
    CHECK_THROWS_AS(parse_configuration("a"), ParseError);
    CHECK_THROWS_AS(parse_configuration(""), ParseError);
    const std::string big = "123456789012345678901234567890,0";
    CHECK(to_string(parse_configuration(big)) == big);
}

TEST_CASE("degree configuration")
{
    CHECK(degree_configuration(make_path(4)) == Configuration{1, 2, 2, 1});
    CHECK(Configuration{1, 0} + Configuration{2, 5} == Configuration{3, 5});
}
