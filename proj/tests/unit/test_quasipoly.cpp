#include "oracles.hpp"

#include "chipfire/enumerate.hpp"
#include "chipfire/error.hpp"
#include "chipfire/quasipoly.hpp"

#include <doctest.h>

#include <json.hpp>

#include <random>

using namespace chipfire;

namespace {

Quasipolynomial triangle_debt_law()
{
    // 1/6 c^2 + 1/2 c + {1, 1/3, 1/3}
    const Rational a(1, 6), b(1, 2);
    return Quasipolynomial(3, 2, 0, {{1, b, a}, {Rational(1, 3), b, a}, {Rational(1, 3), b, a}});
}

SampleMap sweep_values(const Graph& g, long c_min, long c_max, bool reachable)
{
    SampleMap m;
    SweepModes modes;
    (reachable ? modes.reachable : modes.debt) = true;
    for (const auto& r : sweep(g, 0, c_min, c_max, modes, {}, 2))
        m.emplace(r.c, reachable ? *r.reachable_count : *r.debt_count);
    return m;
}

}  // namespace

TEST_CASE("evaluate examples")
{
    CHECK(triangle_debt_law().evaluate(6) == 10);
    for (long c = 0; c <= 30; ++c) CHECK(triangle_debt_law().evaluate(c) == oracle::triangle_debt(c));
    const Quasipolynomial seven(1, 0, 0, {{7}});
    CHECK(seven.evaluate(0) == 7);
    CHECK(seven.evaluate(12345) == 7);
    const Quasipolynomial late(1, 1, 5, {{0, 1}});
    CHECK_THROWS_AS(late.evaluate(4), DomainError);
    const Quasipolynomial half(1, 1, 0, {{0, Rational(1, 2)}});
    CHECK_THROWS_AS(half.evaluate(3), Error);
    CHECK(half.evaluate_rational(3) == Rational(3, 2));
}

TEST_CASE("quasipolynomial validation")
{
    CHECK_THROWS_AS(Quasipolynomial(0, 1, 0, {}), DomainError);
    CHECK_THROWS_AS(Quasipolynomial(2, 1, 0, {{1, 1}}), DomainError);
    CHECK_THROWS_AS(Quasipolynomial(1, 1, 0, {{1}}), DomainError);
    const Quasipolynomial q(1, 1, 0, {{Rational(2, 4), Rational(6, 3)}});
    CHECK(q.branch(0)[0].get_den() == 2);
    CHECK(q.branch(0)[1] == 2);
}

TEST_CASE("fit recovers the triangle laws")
{
    const auto debt = sweep_values(make_cycle(3), 0, 11, false);
    const auto q = fit_quasipolynomial(debt, 3, 2, 0);
    REQUIRE(q.has_value());
    CHECK(*q == triangle_debt_law());

    const auto reach = sweep_values(make_cycle(3), 1, 20, true);
    const auto r = fit_quasipolynomial(reach, 3, 2, 1);
    REQUIRE(r.has_value());
    CHECK(r->evaluate(9) == 17);
    for (long c = 1; c <= 40; ++c) CHECK(r->evaluate(c) == oracle::triangle_reachable(c));
    // branch c = 0 mod 3 sits two below the debt branch
    CHECK(r->branch(0)[0] == Rational(-1));
}

TEST_CASE("fit of constant data")
{
    SampleMap m;
    for (long c = 0; c < 5; ++c) m[c] = 4;
    const auto q = fit_quasipolynomial(m, 1, 0, 0);
    REQUIRE(q.has_value());
    CHECK(q->branch(0) == std::vector<Rational>{4});
    const auto d = detect_quasipolynomial(m, 4, 3, 4);
    REQUIRE(d.has_value());
    CHECK(d->period == 1);
    CHECK(d->degree == 0);
    CHECK(d->onset == 0);
}

TEST_CASE("fit reports missing samples distinctly from a failed fit")
{
    SampleMap m{{0, 1}, {1, 2}, {2, 3}};
    CHECK_THROWS_AS(fit_quasipolynomial(m, 1, 2, 0), InsufficientSamples);
    CHECK_THROWS_AS(fit_quasipolynomial(m, 2, 1, 0), InsufficientSamples);
    SampleMap bent{{0, 1}, {1, 2}, {2, 4}, {3, 8}};
    CHECK_FALSE(fit_quasipolynomial(bent, 1, 1, 0).has_value());
}

TEST_CASE("fit round trips generated quasipolynomials")
{
    std::mt19937_64 rng(301);
    for (int t = 0; t < 200; ++t) {
        const std::int64_t p = 1 + static_cast<std::int64_t>(rng() % 5);
        const std::int64_t d = static_cast<std::int64_t>(rng() % 4);
        const std::int64_t onset = static_cast<std::int64_t>(rng() % 4);
        // binom(c, j) has integer values, so integer combinations of it do too
        std::vector<std::vector<Rational>> coeffs(static_cast<std::size_t>(p));
        for (auto& row : coeffs) {
            row.assign(static_cast<std::size_t>(d) + 1, 0);
            for (std::size_t j = 0; j <= static_cast<std::size_t>(d); ++j) {
                const long w = static_cast<long>(rng() % 21) - 10;
                // w * c (c-1) ... (c-j+1) / j!
                std::vector<Rational> falling{1};
                for (std::size_t i = 0; i < j; ++i) {
                    std::vector<Rational> next(falling.size() + 1, 0);
                    for (std::size_t k = 0; k < falling.size(); ++k) {
                        next[k + 1] += falling[k];
                        next[k] -= falling[k] * static_cast<long>(i);
                    }
                    falling = next;
                }
                for (std::size_t k = 0; k < falling.size(); ++k)
                    row[k] += Rational(w) * falling[k] / Rational(factorial(j));
            }
        }
        const Quasipolynomial q(p, d, onset, coeffs);
        SampleMap samples;
        const std::int64_t last = onset + p * (d + 3);
        for (std::int64_t c = onset; c <= last; ++c) samples[c] = q.evaluate(c);
        const auto fit = fit_quasipolynomial(samples, p, d, onset);
        REQUIRE(fit.has_value());
        for (const auto& [c, v] : samples) CHECK(fit->evaluate(c) == v);
        CHECK(*fit == q);
    }
}

TEST_CASE("detection on the triangle debt sequence")
{
    const auto d = detect_quasipolynomial(sweep_values(make_cycle(3), 0, 30, false), 6, 4, 10);
    REQUIRE(d.has_value());
    CHECK(d->period == 3);
    CHECK(d->degree == 2);
    CHECK(d->onset == 0);
}

TEST_CASE("detection prefers earlier onset over smaller period")
{
    // period 1 from c = 3 on, but period 2 fits from c = 0
    SampleMap m;
    for (long c = 0; c <= 20; ++c) m[c] = c % 2 == 0 ? c : c + 1;
    const auto d = detect_quasipolynomial(m, 4, 2, 10);
    REQUIRE(d.has_value());
    CHECK(d->onset == 0);
    CHECK(d->period == 2);
    CHECK(d->degree == 1);
}

TEST_CASE("detection rejects gaps and gives up outside the grid")
{
    SampleMap gap{{0, 1}, {2, 3}, {3, 4}};
    CHECK_THROWS_AS(detect_quasipolynomial(gap, 2, 2, 2), DomainError);
    SampleMap expo;
    for (long c = 0; c <= 12; ++c) expo[c] = Integer(1) << static_cast<unsigned>(c);
    CHECK_FALSE(detect_quasipolynomial(expo, 3, 3, 3).has_value());
}

TEST_CASE("expected leading coefficients")
{
    CHECK(expected_leading_coefficient(make_cycle(3)) == Rational(1, 6));
    CHECK(expected_leading_coefficient(make_path(3)) == Rational(1, 2));
    CHECK(expected_leading_coefficient(make_cycle(4)) == Rational(1, 24));
    CHECK(leading_coefficient_check(triangle_debt_law(), make_cycle(3)));
    CHECK_FALSE(leading_coefficient_check(triangle_debt_law(), make_path(3)));
}

TEST_CASE("fitted debt laws have full degree, period dividing the tree count and the predicted leading term")
{
    for (const Graph& g : {make_cycle(3), make_cycle(4), make_path(3), make_path(4), make_complete(4),
                           make_random_connected(4, 5)}) {
        const auto kappa = spanning_tree_count(g).get_si();
        const long cmax = 3 * kappa + 2 * static_cast<long>(g.vertex_count()) + 8;
        const auto d = detect_quasipolynomial(sweep_values(g, 0, cmax, false), kappa, 4, 2);
        REQUIRE(d.has_value());
        CHECK(d->degree == static_cast<std::int64_t>(g.vertex_count()) - 1);
        CHECK(kappa % d->period == 0);
        CHECK(leading_coefficient_check(d->quasipolynomial, g));
    }
}

TEST_CASE("fit reports")
{
    const auto q = triangle_debt_law();
    CHECK(format_branch(q.branch(0)) == "1/6 c^2 + 1/2 c + 1");
    CHECK(format_branch({0, -1, Rational(1, 2)}) == "1/2 c^2 - c");
    CHECK(format_branch({0}) == "0");
    const auto human = fit_report_human(q);
    CHECK(human.find("c = 1 mod 3:  1/6 c^2 + 1/2 c + 1/3") != std::string::npos);
    const auto j = nlohmann::json::parse(fit_report_json(q));
    CHECK(j["period"] == 3);
    CHECK(j["degree"] == 2);
    CHECK(j["onset"] == 0);
    CHECK(j["coefficients"][0][2] == nlohmann::json::array({1, 6}));
    CHECK(j["coefficients"].size() == 3);
}
