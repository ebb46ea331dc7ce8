#include "chipfire/quasipoly.hpp"

#include "chipfire/error.hpp"

#include <json.hpp>

#include <sstream>

namespace chipfire {

namespace {

std::int64_t residue_of(std::int64_t c, std::int64_t p)
{
    const std::int64_t r = c % p;
    return r < 0 ? r + p : r;
}

Rational horner(const std::vector<Rational>& coeffs, const Rational& x)
{
    Rational acc = 0;
    for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) acc = acc * x + *it;
    return acc;
}

// Monomial coefficients of the unique polynomial of degree <= k-1 through
// k points with distinct abscissae.
std::vector<Rational> lagrange(const std::vector<std::pair<std::int64_t, Integer>>& pts)
{
    const std::size_t k = pts.size();
    std::vector<Rational> out(k, Rational(0));
    for (std::size_t i = 0; i < k; ++i) {
        // basis_i(x) = prod_{j != i} (x - x_j) / (x_i - x_j)
        std::vector<Rational> basis{Rational(1)};
        Rational denom = 1;
        for (std::size_t j = 0; j < k; ++j) {
            if (j == i) continue;
            const Rational xj(from_int64(pts[j].first));
            std::vector<Rational> next(basis.size() + 1, Rational(0));
            for (std::size_t t = 0; t < basis.size(); ++t) {
                next[t + 1] += basis[t];
                next[t] -= basis[t] * xj;
            }
            basis = std::move(next);
            denom *= Rational(from_int64(pts[i].first - pts[j].first));
        }
        const Rational scale = Rational(pts[i].second) / denom;
        for (std::size_t t = 0; t < k; ++t) out[t] += basis[t] * scale;
    }
    for (auto& c : out) c.canonicalize();
    return out;
}

}  // namespace

Quasipolynomial::Quasipolynomial(std::int64_t period, std::int64_t degree, std::int64_t onset,
                                 std::vector<std::vector<Rational>> coefficients)
    : period_(period), degree_(degree), onset_(onset), coefficients_(std::move(coefficients))
{
    if (period_ < 1) throw DomainError("quasipolynomial period must be positive");
    if (degree_ < 0) throw DomainError("quasipolynomial degree must be nonnegative");
    if (coefficients_.size() != static_cast<std::size_t>(period_)) {
        throw DomainError("need one coefficient row per residue class");
    }
    for (auto& row : coefficients_) {
        if (row.size() != static_cast<std::size_t>(degree_ + 1)) throw DomainError("coefficient row has wrong length");
        for (auto& c : row) c.canonicalize();
    }
}

Rational Quasipolynomial::evaluate_rational(std::int64_t c) const
{
    if (c < onset_) {
        throw DomainError("c = " + std::to_string(c) + " is below the onset " + std::to_string(onset_));
    }
    return horner(coefficients_[residue_of(c, period_)], Rational(from_int64(c)));
}

Integer Quasipolynomial::evaluate(std::int64_t c) const
{
    const Rational v = evaluate_rational(c);
    if (v.get_den() != 1) {
        throw Error("quasipolynomial value at c = " + std::to_string(c) + " is not an integer: " + v.get_str());
    }
    return v.get_num();
}

std::optional<Quasipolynomial> fit_quasipolynomial(const SampleMap& values, std::int64_t period, std::int64_t degree,
                                                   std::int64_t onset)
{
    if (period < 1) throw DomainError("period must be positive");
    if (degree < 0) throw DomainError("degree must be nonnegative");

    std::vector<std::vector<std::pair<std::int64_t, Integer>>> classes(static_cast<std::size_t>(period));
    for (auto it = values.lower_bound(onset); it != values.end(); ++it) {
        classes[residue_of(it->first, period)].emplace_back(it->first, it->second);
    }
    const auto needed = static_cast<std::size_t>(degree + 2);
    for (std::int64_t r = 0; r < period; ++r) {
        if (classes[r].size() < needed) {
            throw InsufficientSamples("insufficient samples: residue " + std::to_string(r) + " mod " +
                                      std::to_string(period) + " has " + std::to_string(classes[r].size()) +
                                      ", need " + std::to_string(needed));
        }
    }

    std::vector<std::vector<Rational>> coeffs;
    for (const auto& pts : classes) {
        const std::vector<std::pair<std::int64_t, Integer>> head(pts.begin(), pts.begin() + degree + 1);
        std::vector<Rational> poly = lagrange(head);
        for (std::size_t i = head.size(); i < pts.size(); ++i) {
            if (horner(poly, Rational(from_int64(pts[i].first))) != Rational(pts[i].second)) return std::nullopt;
        }
        coeffs.push_back(std::move(poly));
    }
    return Quasipolynomial(period, degree, onset, std::move(coeffs));
}

std::optional<DetectionResult> detect_quasipolynomial(const SampleMap& values, std::int64_t max_period,
                                                      std::int64_t max_degree, std::int64_t max_onset)
{
    if (values.empty()) return std::nullopt;
    const std::int64_t first = values.begin()->first;
    const std::int64_t last = values.rbegin()->first;
    if (last - first + 1 != static_cast<std::int64_t>(values.size())) {
        throw DomainError("detection needs samples on a contiguous range of c");
    }
    for (std::int64_t onset = first; onset <= max_onset && onset <= last; ++onset) {
        for (std::int64_t period = 1; period <= max_period; ++period) {
            for (std::int64_t degree = 0; degree <= max_degree; ++degree) {
                std::optional<Quasipolynomial> q;
                try {
                    q = fit_quasipolynomial(values, period, degree, onset);
                } catch (const InsufficientSamples&) {
                    break;  // higher degrees need even more samples
                }
                if (q) return DetectionResult{period, degree, onset, std::move(*q)};
            }
        }
    }
    return std::nullopt;
}

Rational expected_leading_coefficient(const Graph& g)
{
    const std::size_t n = g.vertex_count();
    Rational r(Integer(1), factorial(n - 1) * spanning_tree_count(g));
    r.canonicalize();
    return r;
}

bool leading_coefficient_check(const Quasipolynomial& q, const Graph& g)
{
    const auto d = static_cast<std::int64_t>(g.vertex_count()) - 1;
    if (q.degree() != d) return false;
    const Rational expected = expected_leading_coefficient(g);
    for (const auto& row : q.coefficients())
        if (row[static_cast<std::size_t>(d)] != expected) return false;
    return true;
}

std::string format_branch(const std::vector<Rational>& coefficients)
{
    std::ostringstream os;
    bool first = true;
    for (std::size_t j = coefficients.size(); j-- > 0;) {
        const Rational& a = coefficients[j];
        if (a == 0) continue;
        Rational mag = abs(a);
        if (first) {
            if (a < 0) os << '-';
        } else {
            os << (a < 0 ? " - " : " + ");
        }
        first = false;
        if (j == 0 || mag != 1) {
            os << mag.get_str();
            if (j > 0) os << ' ';
        }
        if (j >= 1) os << 'c';
        if (j >= 2) os << '^' << j;
    }
    if (first) os << '0';
    return os.str();
}

std::string fit_report_human(const Quasipolynomial& q)
{
    std::ostringstream os;
    os << "period " << q.period() << ", degree " << q.degree() << ", valid for c >= " << q.onset() << '\n';
    for (std::int64_t r = 0; r < q.period(); ++r) {
        os << "  c = " << r << " mod " << q.period() << ":  " << format_branch(q.branch(r)) << '\n';
    }
    return os.str();
}

std::string fit_report_json(const Quasipolynomial& q)
{
    auto integer_json = [](const Integer& v) -> nlohmann::ordered_json {
        if (fits_int64(v)) return to_int64(v);
        return v.get_str();
    };
    nlohmann::ordered_json j;
    j["period"] = q.period();
    j["degree"] = q.degree();
    j["onset"] = q.onset();
    j["coefficients"] = nlohmann::ordered_json::array();
    j["branches"] = nlohmann::ordered_json::array();
    for (std::int64_t r = 0; r < q.period(); ++r) {
        nlohmann::ordered_json row = nlohmann::ordered_json::array();
        for (const auto& c : q.branch(r)) row.push_back({integer_json(c.get_num()), integer_json(c.get_den())});
        j["coefficients"].push_back(std::move(row));
        j["branches"].push_back(format_branch(q.branch(r)));
    }
    return j.dump();
}

}  // namespace chipfire
