#pragma once

#include "chipfire/integer.hpp"
#include "chipfire/matrix.hpp"

#include <optional>
#include <span>
#include <vector>

namespace chipfire {

// Fraction-free (Bareiss) elimination with row pivoting. Throws DomainError
// for non-square input.
Integer exact_determinant(const IntMatrix& m);

// adj(M), satisfying M * adj(M) == det(M) * I. Defined for singular M too.
IntMatrix adjugate(const IntMatrix& m);

// Integer solution of M x = b for nonsingular square M, or nullopt when the
// unique rational solution is not integral. Throws SingularMatrix when
// det(M) == 0.
std::optional<std::vector<Integer>> solve_integer(const IntMatrix& m, std::span<const Integer> b);

// Same, with adj(M) and det(M) precomputed by the caller.
std::optional<std::vector<Integer>> solve_integer(const IntMatrix& adj, const Integer& det,
                                                  std::span<const Integer> b);

/// S = U * M * V with U, V unimodular and S diagonal, nonnegative, and
/// d_1 | d_2 | ... | d_k along the diagonal.
struct SmithDecomposition {
    IntMatrix U;
    IntMatrix S;
    IntMatrix V;

    // Diagonal of S (length min(rows, cols)).
    std::vector<Integer> diagonal() const;
    // Diagonal entries other than 1 (and 0 entries, which are kept).
    std::vector<Integer> invariant_factors() const;
};

// Pivot is the entry of smallest nonzero absolute value in the active
// submatrix, lowest (row, col) on ties, so U and V are reproducible.
SmithDecomposition smith_normal_form(const IntMatrix& m);

}  // namespace chipfire
