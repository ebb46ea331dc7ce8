#include "chipfire/exact_linalg.hpp"

#include "chipfire/error.hpp"

#include <utility>

namespace chipfire {

Integer exact_determinant(const IntMatrix& m)
{
    if (!m.square()) throw DomainError("determinant of a non-square matrix");
    const std::size_t n = m.rows();
    if (n == 0) return 1;
    IntMatrix a = m;
    Integer prev = 1;
    int sign = 1;
    for (std::size_t k = 0; k + 1 < n; ++k) {
        if (a(k, k) == 0) {
            std::size_t p = k + 1;
            while (p < n && a(p, k) == 0) ++p;
            if (p == n) return 0;
            a.swap_rows(k, p);
            sign = -sign;
        }
        for (std::size_t i = k + 1; i < n; ++i) {
            for (std::size_t j = k + 1; j < n; ++j) {
                Integer t = a(i, j) * a(k, k) - a(i, k) * a(k, j);
                mpz_divexact(a(i, j).get_mpz_t(), t.get_mpz_t(), prev.get_mpz_t());
            }
            a(i, k) = 0;
        }
        prev = a(k, k);
    }
    return sign * a(n - 1, n - 1);
}

namespace {

IntMatrix cofactor_adjugate(const IntMatrix& m)
{
    const std::size_t n = m.rows();
    IntMatrix adj(n, n);
    if (n == 1) {
        adj(0, 0) = 1;
        return adj;
    }
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            Integer d = exact_determinant(m.minor(j, i));
            adj(i, j) = ((i + j) % 2 == 0) ? d : Integer(-d);
        }
    return adj;
}

}  // namespace

IntMatrix adjugate(const IntMatrix& m)
{
    if (!m.square()) throw DomainError("adjugate of a non-square matrix");
    const std::size_t n = m.rows();
    if (n == 0) return {};
    const Integer det = exact_determinant(m);
    if (det == 0) return cofactor_adjugate(m);

    // Gauss-Jordan over Q on [M | I], then adj = det * M^{-1}.
    std::vector<Rational> a(n * 2 * n);
    auto at = [&](std::size_t r, std::size_t c) -> Rational& { return a[r * 2 * n + c]; };
    for (std::size_t r = 0; r < n; ++r) {
        for (std::size_t c = 0; c < n; ++c) at(r, c) = Rational(m(r, c));
        at(r, n + r) = 1;
    }
    for (std::size_t k = 0; k < n; ++k) {
        std::size_t p = k;
        while (at(p, k) == 0) ++p;
        if (p != k)
            for (std::size_t c = 0; c < 2 * n; ++c) std::swap(at(k, c), at(p, c));
        const Rational inv = 1 / at(k, k);
        for (std::size_t c = 0; c < 2 * n; ++c) at(k, c) *= inv;
        for (std::size_t r = 0; r < n; ++r) {
            if (r == k || at(r, k) == 0) continue;
            const Rational f = at(r, k);
            for (std::size_t c = 0; c < 2 * n; ++c) at(r, c) -= f * at(k, c);
        }
    }
    IntMatrix adj(n, n);
    for (std::size_t r = 0; r < n; ++r)
        for (std::size_t c = 0; c < n; ++c) {
            Rational v = at(r, n + c) * det;
            adj(r, c) = v.get_num();
        }
    return adj;
}

std::optional<std::vector<Integer>> solve_integer(const IntMatrix& adj, const Integer& det,
                                                  std::span<const Integer> b)
{
    if (det == 0) throw SingularMatrix("solve_integer: matrix is singular");
    std::vector<Integer> x = adj * b;
    for (auto& v : x) {
        if (!mpz_divisible_p(v.get_mpz_t(), det.get_mpz_t())) return std::nullopt;
        mpz_divexact(v.get_mpz_t(), v.get_mpz_t(), det.get_mpz_t());
    }
    return x;
}

std::optional<std::vector<Integer>> solve_integer(const IntMatrix& m, std::span<const Integer> b)
{
    if (!m.square()) throw DomainError("solve_integer needs a square matrix");
    if (m.rows() != b.size()) throw DomainError("solve_integer: right-hand side has wrong length");
    const Integer det = exact_determinant(m);
    if (det == 0) throw SingularMatrix("solve_integer: matrix is singular");
    return solve_integer(adjugate(m), det, b);
}

std::vector<Integer> SmithDecomposition::diagonal() const
{
    std::vector<Integer> d;
    for (std::size_t i = 0; i < S.rows() && i < S.cols(); ++i) d.push_back(S(i, i));
    return d;
}

std::vector<Integer> SmithDecomposition::invariant_factors() const
{
    std::vector<Integer> d;
    for (auto& v : diagonal())
        if (v != 1) d.push_back(v);
    return d;
}

SmithDecomposition smith_normal_form(const IntMatrix& m)
{
    const std::size_t rows = m.rows();
    const std::size_t cols = m.cols();
    IntMatrix a = m;
    IntMatrix u = IntMatrix::identity(rows);
    IntMatrix v = IntMatrix::identity(cols);

    auto add_row = [&](std::size_t dst, std::size_t src, const Integer& f) {
        for (std::size_t c = 0; c < cols; ++c) a(dst, c) += f * a(src, c);
        for (std::size_t c = 0; c < rows; ++c) u(dst, c) += f * u(src, c);
    };
    auto add_col = [&](std::size_t dst, std::size_t src, const Integer& f) {
        for (std::size_t r = 0; r < rows; ++r) a(r, dst) += f * a(r, src);
        for (std::size_t r = 0; r < cols; ++r) v(r, dst) += f * v(r, src);
    };

    const std::size_t k = std::min(rows, cols);
    for (std::size_t t = 0; t < k; ++t) {
        for (;;) {
            // smallest |entry| in the active block, first in row-major order on ties
            std::size_t pr = rows, pc = cols;
            for (std::size_t i = t; i < rows; ++i)
                for (std::size_t j = t; j < cols; ++j) {
                    if (a(i, j) == 0) continue;
                    if (pr == rows || mpz_cmpabs(a(i, j).get_mpz_t(), a(pr, pc).get_mpz_t()) < 0) {
                        pr = i;
                        pc = j;
                    }
                }
            if (pr == rows) break;  // active block is zero
            a.swap_rows(t, pr);
            u.swap_rows(t, pr);
            a.swap_cols(t, pc);
            v.swap_cols(t, pc);

            bool clear = true;
            for (std::size_t i = t + 1; i < rows; ++i) {
                if (a(i, t) == 0) continue;
                const Integer q = a(i, t) / a(t, t);
                add_row(i, t, -q);
                if (a(i, t) != 0) clear = false;
            }
            for (std::size_t j = t + 1; j < cols; ++j) {
                if (a(t, j) == 0) continue;
                const Integer q = a(t, j) / a(t, t);
                add_col(j, t, -q);
                if (a(t, j) != 0) clear = false;
            }
            if (!clear) continue;

            // pivot must divide the whole remaining block
            std::size_t bad_row = rows;
            for (std::size_t i = t + 1; i < rows && bad_row == rows; ++i)
                for (std::size_t j = t + 1; j < cols; ++j)
                    if (!mpz_divisible_p(a(i, j).get_mpz_t(), a(t, t).get_mpz_t())) {
                        bad_row = i;
                        break;
                    }
            if (bad_row == rows) break;
            add_row(t, bad_row, 1);
        }
        if (a(t, t) < 0) {
            for (std::size_t c = 0; c < cols; ++c) a(t, c) = -a(t, c);
            for (std::size_t c = 0; c < rows; ++c) u(t, c) = -u(t, c);
        }
    }
    return {std::move(u), std::move(a), std::move(v)};
}

}  // namespace chipfire
