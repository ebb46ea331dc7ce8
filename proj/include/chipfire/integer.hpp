#pragma once

#include <gmpxx.h>

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace chipfire {

// Exact arithmetic types. Every count, chip value and matrix entry in the
// library is one of these; there is no floating point in the math core.
using Integer = mpz_class;
using Rational = mpq_class;

inline bool fits_int64(const Integer& v)
{
    return mpz_fits_slong_p(v.get_mpz_t()) != 0 && sizeof(long) == sizeof(std::int64_t);
}

inline std::int64_t to_int64(const Integer& v)
{
    return static_cast<std::int64_t>(v.get_si());
}

inline Integer from_int64(std::int64_t v)
{
    return Integer(static_cast<long>(v));
}

inline std::optional<std::int64_t> try_int64(const Integer& v)
{
    if (!fits_int64(v)) return std::nullopt;
    return to_int64(v);
}

inline std::string to_string(const Integer& v) { return v.get_str(); }

// "num/den", or just "num" when the denominator is 1.
inline std::string to_string(const Rational& v) { return v.get_str(); }

Integer binomial(std::uint64_t n, std::uint64_t k);
Integer factorial(std::uint64_t n);

// Floor/ceil of a rational, exact.
Integer floor_of(const Rational& q);
Integer ceil_of(const Rational& q);

// Nonnegative remainder of a modulo m (m > 0).
Integer mod_positive(const Integer& a, const Integer& m);

struct IntegerHash {
    std::size_t operator()(const Integer& v) const noexcept;
};

struct IntegerVectorHash {
    std::size_t operator()(std::span<const Integer> v) const noexcept;
    std::size_t operator()(const std::vector<Integer>& v) const noexcept
    {
        return (*this)(std::span<const Integer>(v));
    }
};

// Parses "4,0,-1" (whitespace tolerated around entries). Throws ParseError.
std::vector<Integer> parse_integer_list(const std::string& text);

std::string join(std::span<const Integer> values, const std::string& sep = ",");

}  // namespace chipfire
