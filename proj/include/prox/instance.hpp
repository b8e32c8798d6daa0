#pragma once

#include "prox/exact.hpp"
#include "prox/polyhedron.hpp"

namespace prox {

/// min sum_{i<k} -q_i x_i^2 + h^T x  subject to  A x <= b, over Z^n (the
/// integer problem) or R^n (its continuous relaxation). The first k
/// coordinates carry the concave quadratic terms.
struct Instance
{
    Matrix A;
    Vector b;
    std::size_t k = 0;
    Vector q;
    Vector h;

    std::size_t n() const noexcept { return A.cols(); }
    std::size_t m() const noexcept { return A.rows(); }
    Polyhedron polyhedron() const { return Polyhedron(A, b); }

    /// Throws DimensionError / DomainError when the data is malformed
    /// (non-integer A, q_i <= 0, inconsistent lengths).
    void validate() const;

    friend bool operator==(const Instance&, const Instance&) = default;
};

/// Exact objective value.
Rational eval_f(const Instance& inst, std::span<const Rational> x);

} // namespace prox
