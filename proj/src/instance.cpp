#include "prox/instance.hpp"

#include "prox/errors.hpp"

namespace prox {

void Instance::validate() const
{
    if (A.cols() == 0)
        throw DimensionError("instance needs at least one variable");
    if (b.size() != A.rows())
        throw DimensionError("instance: b has " + std::to_string(b.size()) + " entries for " +
                             std::to_string(A.rows()) + " rows");
    if (h.size() != A.cols())
        throw DimensionError("instance: h has " + std::to_string(h.size()) + " entries for n = " +
                             std::to_string(A.cols()));
    if (k > A.cols())
        throw DimensionError("instance: k = " + std::to_string(k) + " exceeds n = " + std::to_string(A.cols()));
    if (q.size() != k)
        throw DimensionError("instance: q has " + std::to_string(q.size()) + " entries for k = " + std::to_string(k));
    if (!A.is_integer())
        throw DomainError("instance: constraint matrix must be integer");
    for (std::size_t i = 0; i < k; ++i)
        if (sgn(q[i]) <= 0)
            throw DomainError("instance: q_" + std::to_string(i + 1) + " = " + to_string(q[i]) +
                              " is not positive");
}

Rational eval_f(const Instance& inst, std::span<const Rational> x)
{
    if (x.size() != inst.n())
        throw DimensionError("eval_f: point of dimension " + std::to_string(x.size()) + ", expected " +
                             std::to_string(inst.n()));
    Rational value = dot(inst.h, x);
    for (std::size_t i = 0; i < inst.k; ++i)
        value -= inst.q[i] * x[i] * x[i];
    return value;
}

} // namespace prox
