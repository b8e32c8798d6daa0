#pragma once

#include "prox/exact.hpp"
#include "prox/instance.hpp"

#include <optional>

namespace prox {

/// min y^T Q y + c^T y + c0  subject to  A y <= b. A general quadratic: a
/// unimodular change of variables does not keep the objective separable.
struct TransformedProblem
{
    Matrix A;
    Vector b;
    Matrix Q; // symmetric
    Vector c;
    Rational c0;
    Matrix M; // forward map y = M x + t
    Vector t;
    Matrix M_inverse;

    Rational eval(std::span<const Rational> y) const;
    Vector forward(std::span<const Rational> x) const;  // M x + t
    Vector backward(std::span<const Rational> y) const; // M^{-1} (y - t)

    /// The transformed problem as an Instance when Q is diagonal with its
    /// negative entries on a leading block; c0 is dropped. nullopt otherwise.
    std::optional<Instance> separable_instance() const;
};

/// Problem in y = M x + t with objective alpha f(M^{-1}(y - t)) + beta.
/// Throws DomainError unless M is an integer matrix with |det M| = 1, t is
/// integer and alpha > 0.
TransformedProblem apply_unimodular(const Instance& inst, const Matrix& M, std::span<const Rational> t,
                                    const Rational& alpha, const Rational& beta);

} // namespace prox
