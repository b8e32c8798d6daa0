#include "prox/transform.hpp"

#include "prox/errors.hpp"
#include "prox/linalg.hpp"

namespace prox {

Rational TransformedProblem::eval(std::span<const Rational> y) const
{
    if (y.size() != A.cols())
        throw DimensionError("transformed objective: dimension mismatch");
    return dot(y, Q * y) + dot(c, y) + c0;
}

Vector TransformedProblem::forward(std::span<const Rational> x) const
{
    return M * x + t;
}

Vector TransformedProblem::backward(std::span<const Rational> y) const
{
    return M_inverse * (Vector(y.begin(), y.end()) - t);
}

std::optional<Instance> TransformedProblem::separable_instance() const
{
    const std::size_t n = A.cols();
    std::size_t k = 0;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            if (i != j && sgn(Q(i, j)) != 0)
                return std::nullopt;
            if (i == j && sgn(Q(i, i)) > 0)
                return std::nullopt;
        }
    while (k < n && sgn(Q(k, k)) < 0)
        ++k;
    for (std::size_t i = k; i < n; ++i)
        if (sgn(Q(i, i)) != 0)
            return std::nullopt;
    Instance out{A, b, k, {}, c};
    for (std::size_t i = 0; i < k; ++i)
        out.q.push_back(-Q(i, i));
    return out;
}

TransformedProblem apply_unimodular(const Instance& inst, const Matrix& M, std::span<const Rational> t,
                                    const Rational& alpha, const Rational& beta)
{
    inst.validate();
    const std::size_t n = inst.n();
    if (M.rows() != n || M.cols() != n)
        throw DimensionError("unimodular map must be " + std::to_string(n) + " x " + std::to_string(n));
    if (t.size() != n)
        throw DimensionError("translation has the wrong dimension");
    if (!M.is_integer() || abs(det(M)) != 1)
        throw DomainError("map is not unimodular");
    if (!is_integer(t))
        throw DomainError("translation is not integer");
    if (sgn(alpha) <= 0)
        throw DomainError("alpha must be positive");

    Matrix W(n, n); // M^{-1}, integer by Cramer's rule
    for (std::size_t j = 0; j < n; ++j) {
        auto col = solve_linear(M, unit_vector(n, j));
        for (std::size_t i = 0; i < n; ++i)
            W(i, j) = (*col)[i];
    }
    const Vector shift = -(W * t); // x = W y + shift

    TransformedProblem out;
    out.M = M;
    out.t = Vector(t.begin(), t.end());
    out.M_inverse = W;
    out.A = inst.A * W;
    out.b = inst.b - inst.A * shift;
    out.Q = Matrix(n, n);
    out.c = zeros(n);
    for (std::size_t j = 0; j < n; ++j)
        for (std::size_t i = 0; i < n; ++i)
            out.c[j] += alpha * inst.h[i] * W(i, j);
    out.c0 = alpha * dot(inst.h, shift) + beta;
    for (std::size_t i = 0; i < inst.k; ++i) {
        const Rational w = alpha * inst.q[i];
        for (std::size_t a = 0; a < n; ++a) {
            out.c[a] -= 2 * w * shift[i] * W(i, a);
            for (std::size_t b = 0; b < n; ++b)
                out.Q(a, b) -= w * W(i, a) * W(i, b);
        }
        out.c0 -= w * shift[i] * shift[i];
    }
    return out;
}

} // namespace prox
