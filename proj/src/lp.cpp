#include "prox/lp.hpp"

#include "prox/errors.hpp"

#include <utility>

namespace prox {

const char* to_string(LpStatus status)
{
    switch (status) {
    case LpStatus::optimal:
        return "optimal";
    case LpStatus::infeasible:
        return "infeasible";
    case LpStatus::unbounded:
        return "unbounded";
    }
    return "unknown";
}

void LinearProgram::add(Vector coefficients, Relation relation, Rational rhs)
{
    constraints.push_back({std::move(coefficients), relation, std::move(rhs)});
}

bool satisfies(const LinearConstraint& c, std::span<const Rational> x)
{
    Rational lhs = dot(c.coefficients, x);
    switch (c.relation) {
    case Relation::less_equal:
        return lhs <= c.rhs;
    case Relation::equal:
        return lhs == c.rhs;
    case Relation::greater_equal:
        return lhs >= c.rhs;
    }
    return false;
}

namespace {

// Dense tableau. Row i reads  sum_j rows[i][j] x_j = rows[i][width] with the
// basic column of row i forming an identity. `reduced` holds the reduced
// costs of a maximisation and, in its last slot, minus the objective value.
class Tableau
{
public:
    std::vector<Vector> rows;
    std::vector<std::size_t> basis;
    Vector reduced;
    std::size_t width = 0;

    Rational rhs(std::size_t i) const { return rows[i][width]; }

    void pivot(std::size_t r, std::size_t c)
    {
        Rational inv = 1 / rows[r][c];
        for (auto& x : rows[r])
            if (sgn(x) != 0)
                x *= inv;
        for (std::size_t i = 0; i < rows.size(); ++i) {
            if (i == r || sgn(rows[i][c]) == 0)
                continue;
            eliminate(rows[i], rows[r], Rational(rows[i][c]));
        }
        if (sgn(reduced[c]) != 0)
            eliminate(reduced, rows[r], Rational(reduced[c]));
        basis[r] = c;
    }

    void set_costs(const Vector& cost)
    {
        reduced.assign(width + 1, Rational(0));
        for (std::size_t j = 0; j < width; ++j)
            reduced[j] = cost[j];
        for (std::size_t i = 0; i < rows.size(); ++i) {
            const Rational& cb = cost[basis[i]];
            if (sgn(cb) != 0)
                eliminate(reduced, rows[i], cb);
        }
    }

    // Bland's rule: lowest-index improving column, lowest-index basic
    // variable among ratio ties. Columns >= `allowed` never enter.
    LpStatus optimize(std::size_t allowed)
    {
        while (true) {
            std::size_t enter = width;
            for (std::size_t j = 0; j < allowed; ++j)
                if (sgn(reduced[j]) > 0) {
                    enter = j;
                    break;
                }
            if (enter == width)
                return LpStatus::optimal;

            std::size_t leave = rows.size();
            Rational best_ratio;
            for (std::size_t i = 0; i < rows.size(); ++i) {
                if (sgn(rows[i][enter]) <= 0)
                    continue;
                Rational ratio = rhs(i) / rows[i][enter];
                if (leave == rows.size() || ratio < best_ratio ||
                    (ratio == best_ratio && basis[i] < basis[leave])) {
                    leave = i;
                    best_ratio = ratio;
                }
            }
            if (leave == rows.size())
                return LpStatus::unbounded;
            pivot(leave, enter);
        }
    }

private:
    static void eliminate(Vector& target, const Vector& source, const Rational& factor)
    {
        for (std::size_t j = 0; j < target.size(); ++j)
            if (sgn(source[j]) != 0)
                target[j] -= factor * source[j];
    }
};

} // namespace

LpResult lp_solve(const LinearProgram& lp)
{
    const std::size_t n = lp.num_vars;
    for (const auto& c : lp.constraints)
        if (c.coefficients.size() != n)
            throw DimensionError("lp_solve: constraint with " + std::to_string(c.coefficients.size()) +
                                 " coefficients for " + std::to_string(n) + " variables");
    if (!lp.objective.empty() && lp.objective.size() != n)
        throw DimensionError("lp_solve: objective length mismatch");
    if (!lp.nonnegative.empty() && lp.nonnegative.size() != n)
        throw DimensionError("lp_solve: nonnegativity flags length mismatch");

    // Column layout: structural columns (free variables split in two), then
    // slack/surplus columns, then artificial columns.
    std::vector<std::size_t> pos_col(n), neg_col(n, SIZE_MAX);
    std::size_t structural = 0;
    for (std::size_t j = 0; j < n; ++j) {
        pos_col[j] = structural++;
        if (lp.nonnegative.empty() || !lp.nonnegative[j])
            neg_col[j] = structural++;
    }
    std::size_t slacks = 0;
    for (const auto& c : lp.constraints)
        if (c.relation != Relation::equal)
            ++slacks;

    const std::size_t m = lp.constraints.size();
    struct RowPlan
    {
        bool negate = false;
        std::size_t slack = SIZE_MAX;
        bool needs_artificial = false;
    };
    std::vector<RowPlan> plan(m);
    std::size_t next_slack = structural;
    std::size_t artificials = 0;
    for (std::size_t i = 0; i < m; ++i) {
        const auto& c = lp.constraints[i];
        plan[i].negate = c.rhs < 0;
        if (c.relation != Relation::equal)
            plan[i].slack = next_slack++;
        int slack_sign = c.relation == Relation::less_equal ? 1 : -1;
        if (plan[i].negate)
            slack_sign = -slack_sign;
        plan[i].needs_artificial = c.relation == Relation::equal || slack_sign < 0;
        if (plan[i].needs_artificial)
            ++artificials;
    }

    const std::size_t first_artificial = structural + slacks;
    Tableau t;
    t.width = first_artificial + artificials;
    t.rows.assign(m, zeros(t.width + 1));
    t.basis.assign(m, 0);
    std::size_t next_artificial = first_artificial;
    for (std::size_t i = 0; i < m; ++i) {
        const auto& c = lp.constraints[i];
        Vector& row = t.rows[i];
        const Rational sign = plan[i].negate ? -1 : 1;
        for (std::size_t j = 0; j < n; ++j) {
            if (sgn(c.coefficients[j]) == 0)
                continue;
            row[pos_col[j]] = sign * c.coefficients[j];
            if (neg_col[j] != SIZE_MAX)
                row[neg_col[j]] = -sign * c.coefficients[j];
        }
        if (plan[i].slack != SIZE_MAX)
            row[plan[i].slack] = sign * (c.relation == Relation::less_equal ? 1 : -1);
        row[t.width] = sign * c.rhs;
        if (plan[i].needs_artificial) {
            row[next_artificial] = 1;
            t.basis[i] = next_artificial++;
        } else {
            t.basis[i] = plan[i].slack;
        }
    }

    // Phase 1: maximise minus the sum of artificials.
    if (artificials > 0) {
        Vector cost = zeros(t.width);
        for (std::size_t j = first_artificial; j < t.width; ++j)
            cost[j] = -1;
        t.set_costs(cost);
        t.optimize(t.width);
        if (sgn(t.reduced[t.width]) != 0)
            return {LpStatus::infeasible, std::nullopt, std::nullopt};

        for (std::size_t i = 0; i < t.rows.size();) {
            if (t.basis[i] < first_artificial) {
                ++i;
                continue;
            }
            std::size_t col = first_artificial;
            for (std::size_t j = 0; j < first_artificial; ++j)
                if (sgn(t.rows[i][j]) != 0) {
                    col = j;
                    break;
                }
            if (col == first_artificial) {
                // Redundant row: all structural and slack entries are zero.
                t.rows.erase(t.rows.begin() + static_cast<std::ptrdiff_t>(i));
                t.basis.erase(t.basis.begin() + static_cast<std::ptrdiff_t>(i));
                continue;
            }
            t.pivot(i, col);
            ++i;
        }
        for (auto& row : t.rows) {
            Rational rhs = row[t.width];
            row.resize(first_artificial + 1);
            row[first_artificial] = rhs;
        }
        t.width = first_artificial;
    }

    // Phase 2.
    Vector cost = zeros(t.width);
    const bool minimize = lp.sense == Sense::minimize;
    if (!lp.objective.empty()) {
        for (std::size_t j = 0; j < n; ++j) {
            Rational c = minimize ? Rational(-lp.objective[j]) : lp.objective[j];
            cost[pos_col[j]] = c;
            if (neg_col[j] != SIZE_MAX)
                cost[neg_col[j]] = -c;
        }
    }
    t.set_costs(cost);
    if (t.optimize(t.width) == LpStatus::unbounded)
        return {LpStatus::unbounded, std::nullopt, std::nullopt};

    Vector values = zeros(t.width);
    for (std::size_t i = 0; i < t.rows.size(); ++i)
        values[t.basis[i]] = t.rhs(i);
    Vector x(n);
    for (std::size_t j = 0; j < n; ++j) {
        x[j] = values[pos_col[j]];
        if (neg_col[j] != SIZE_MAX)
            x[j] -= values[neg_col[j]];
    }
    for (const auto& c : lp.constraints)
        if (!satisfies(c, x))
            throw InvariantViolation("lp-feasibility", "simplex returned a point violating a constraint");
    Rational objective = lp.objective.empty() ? Rational(0) : dot(lp.objective, x);
    return {LpStatus::optimal, std::move(x), std::move(objective)};
}

LpResult lp_solve(const Matrix& A, std::span<const Rational> b, const Vector& objective, Sense sense)
{
    if (b.size() != A.rows())
        throw DimensionError("lp_solve: right-hand side length mismatch");
    LinearProgram lp;
    lp.num_vars = A.cols();
    lp.sense = sense;
    lp.objective = objective;
    for (std::size_t r = 0; r < A.rows(); ++r)
        lp.add(A.row_vector(r), Relation::less_equal, b[r]);
    return lp_solve(lp);
}

} // namespace prox
