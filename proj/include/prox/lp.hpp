#pragma once

#include "prox/exact.hpp"

#include <optional>
#include <vector>

namespace prox {

enum class Relation { less_equal, equal, greater_equal };
enum class Sense { minimize, maximize };
enum class LpStatus { optimal, infeasible, unbounded };

const char* to_string(LpStatus status);

struct LinearConstraint
{
    Vector coefficients;
    Relation relation = Relation::less_equal;
    Rational rhs = 0;
};

/// Variables are free unless flagged in `nonnegative`. An empty objective
/// turns the solve into a pure feasibility check.
struct LinearProgram
{
    std::size_t num_vars = 0;
    std::vector<LinearConstraint> constraints;
    Vector objective;
    Sense sense = Sense::maximize;
    std::vector<bool> nonnegative;

    void add(Vector coefficients, Relation relation, Rational rhs);
};

struct LpResult
{
    LpStatus status = LpStatus::infeasible;
    std::optional<Vector> point;     // set iff optimal
    std::optional<Rational> objective; // set iff optimal
};

/// Two-phase dense tableau simplex in exact arithmetic with Bland's rule.
LpResult lp_solve(const LinearProgram& lp);

/// Convenience wrapper for systems `A x <= b` with free variables.
LpResult lp_solve(const Matrix& A, std::span<const Rational> b, const Vector& objective, Sense sense);

bool satisfies(const LinearConstraint& c, std::span<const Rational> x);

} // namespace prox
