#pragma once

#include "prox/exact.hpp"

#include <optional>
#include <set>
#include <vector>

namespace prox {

/// Exact determinant. Integer matrices go through fraction-free (Bareiss)
/// elimination; anything else through plain rational elimination.
Rational det(const Matrix& m);

/// Unique solution of m x = rhs, or nullopt when m is singular.
std::optional<Vector> solve_linear(const Matrix& m, std::span<const Rational> rhs);

std::size_t rank(const Matrix& m);

/// Basis of {x : m x = 0}. Empty when m has full column rank.
std::vector<Vector> null_space(const Matrix& m);

/// Result of the exhaustive subdeterminant scan, with the submatrix that
/// attains the maximum.
struct SubdeterminantWitness
{
    Integer value = 0;
    std::vector<std::size_t> rows;
    std::vector<std::size_t> cols;
};

/// Largest |det| over every square submatrix. Exponential in the matrix size.
/// Throws DomainError if an entry is not integer.
SubdeterminantWitness max_abs_subdeterminant(const Matrix& m);

/// Every signed subdeterminant value that occurs.
std::set<Integer> subdeterminant_values(const Matrix& m);

/// Calls `visit(subset)` for every k-subset of {0..n-1} in lexicographic order.
template <class Visit>
void for_each_subset(std::size_t n, std::size_t k, Visit&& visit)
{
    if (k > n)
        return;
    std::vector<std::size_t> idx(k);
    for (std::size_t i = 0; i < k; ++i)
        idx[i] = i;
    while (true) {
        visit(static_cast<const std::vector<std::size_t>&>(idx));
        if (k == 0)
            return;
        std::size_t i = k;
        while (i > 0 && idx[i - 1] == n - k + (i - 1))
            --i;
        if (i == 0)
            return;
        ++idx[i - 1];
        for (std::size_t j = i; j < k; ++j)
            idx[j] = idx[j - 1] + 1;
    }
}

} // namespace prox
