#pragma once

#include "chipfire/graph.hpp"
#include "chipfire/integer.hpp"

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace chipfire {

/// q(c) = sum_j coefficients[c mod period][j] * c^j for c >= onset.
///
/// Coefficients are exact rationals in the variable c itself (not c / period).
class Quasipolynomial {
public:
    Quasipolynomial(std::int64_t period, std::int64_t degree, std::int64_t onset,
                    std::vector<std::vector<Rational>> coefficients);

    std::int64_t period() const noexcept { return period_; }
    std::int64_t degree() const noexcept { return degree_; }
    std::int64_t onset() const noexcept { return onset_; }
    const std::vector<std::vector<Rational>>& coefficients() const noexcept { return coefficients_; }
    const std::vector<Rational>& branch(std::int64_t residue) const { return coefficients_.at(residue); }

    // Exact value; the non-integer case is an error because it can only come
    // from a corrupt fit. Throws DomainError for c < onset.
    Integer evaluate(std::int64_t c) const;
    Rational evaluate_rational(std::int64_t c) const;

    friend bool operator==(const Quasipolynomial&, const Quasipolynomial&) = default;

private:
    std::int64_t period_;
    std::int64_t degree_;
    std::int64_t onset_;
    std::vector<std::vector<Rational>> coefficients_;
};

using SampleMap = std::map<std::int64_t, Integer>;

// Per residue class: interpolate the first degree+1 samples with c >= onset,
// then require exact agreement on every later sample. Throws
// InsufficientSamples if some class has fewer than degree+2 samples.
std::optional<Quasipolynomial> fit_quasipolynomial(const SampleMap& values, std::int64_t period, std::int64_t degree,
                                                   std::int64_t onset);

struct DetectionResult {
    std::int64_t period;
    std::int64_t degree;
    std::int64_t onset;
    Quasipolynomial quasipolynomial;
};

// Searches onset ascending (from the first sample up to max_onset), then
// period ascending (1..max_period), then degree ascending (0..max_degree);
// returns the first verified fit. Grid points without enough samples are
// skipped. Throws DomainError if the sample c values are not contiguous.
std::optional<DetectionResult> detect_quasipolynomial(const SampleMap& values, std::int64_t max_period,
                                                      std::int64_t max_degree, std::int64_t max_onset);

// 1 / ((n-1)! * kappa(G))
Rational expected_leading_coefficient(const Graph& g);

// True iff q has degree n-1 and every branch's c^{n-1} coefficient equals
// expected_leading_coefficient(g).
bool leading_coefficient_check(const Quasipolynomial& q, const Graph& g);

// {"period":..,"degree":..,"onset":..,"coefficients":[[[num,den],...],...],
//  "branches":["..."]} -- coefficients listed from c^0 upward.
std::string fit_report_json(const Quasipolynomial& q);

// "c = 0 mod 3:  1/6 c^2 + 1/2 c + 1", one line per residue class.
std::string format_branch(const std::vector<Rational>& coefficients);
std::string fit_report_human(const Quasipolynomial& q);

}  // namespace chipfire
