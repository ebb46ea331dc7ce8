#pragma once

#include "chipfire/integer.hpp"
#include "chipfire/reach.hpp"

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace chipfire::verify {

// Closed forms checked by the verification bundles. Counts from c*e_0 on C3.
Integer triangle_debt_count(std::int64_t c);
Integer triangle_reachable_count(std::int64_t c);
// binom(c+n-1, n-1) / n as an exact rational.
Rational cycle_block_share(std::int64_t n, std::int64_t c);

struct Options {
    std::optional<std::size_t> n;       // restrict to one graph size
    std::optional<std::int64_t> c_max;  // largest total tried
    unsigned trials = 200;              // randomized bundles
    std::uint64_t seed = 20100801;
    ResourceLimits limits;
};

struct Outcome {
    bool passed = true;
    std::size_t checks = 0;
    std::vector<std::string> failures;
};

// thm1 thm3 thm8 thm9 thm10 thm10_5 thm13 lem11 blocks
const std::vector<std::string>& bundle_ids();
bool is_bundle(const std::string& id);

// Runs one bundle; progress lines go to `log`. Throws DomainError for an
// unknown id.
Outcome run_bundle(const std::string& id, const Options& options, std::ostream& log);

}  // namespace chipfire::verify
