#include "prox/errors.hpp"
#include "prox/linalg.hpp"
#include "prox/lp.hpp"
#include "support.hpp"

#include <gtest/gtest.h>

#include <optional>

using namespace prox;
using prox::testing::random_int;

namespace {

// Best objective over basic feasible points of {Ax <= b}, found by solving
// every n x n row subsystem with Cramer's rule.
std::optional<Rational> vertex_oracle(const Matrix& A, const Vector& b, const Vector& c, Sense sense)
{
    const std::size_t n = A.cols();
    std::optional<Rational> best;
    for_each_subset(A.rows(), n, [&](const std::vector<std::size_t>& rows) {
        Matrix D(n, n);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j)
                D(i, j) = A(rows[i], j);
        Rational d = prox::testing::leibniz_det(D);
        if (d == 0)
            return;
        Vector x(n);
        for (std::size_t j = 0; j < n; ++j) {
            Matrix Dj = D;
            for (std::size_t i = 0; i < n; ++i)
                Dj(i, j) = b[rows[i]];
            x[j] = prox::testing::leibniz_det(Dj) / d;
        }
        for (std::size_t r = 0; r < A.rows(); ++r)
            if (dot(A.row(r), x) > b[r])
                return;
        Rational value = dot(c, x);
        if (!best || (sense == Sense::maximize ? value > *best : value < *best))
            best = value;
    });
    return best;
}

} // namespace

TEST(LpSolve, BoundedInterval)
{
    auto r = lp_solve(Matrix{{1}, {-1}}, make_vector({1, 0}), make_vector({1}), Sense::maximize);
    ASSERT_EQ(r.status, LpStatus::optimal);
    EXPECT_EQ(*r.point, make_vector({1}));
    EXPECT_EQ(*r.objective, 1);
}

TEST(LpSolve, Unbounded)
{
    auto r = lp_solve(Matrix{{-1}}, make_vector({0}), make_vector({1}), Sense::maximize);
    EXPECT_EQ(r.status, LpStatus::unbounded);
    EXPECT_FALSE(r.point.has_value());
    EXPECT_FALSE(r.objective.has_value());
}

TEST(LpSolve, Infeasible)
{
    auto r = lp_solve(Matrix{{1}, {-1}}, make_vector({0, -1}), make_vector({1}), Sense::minimize);
    EXPECT_EQ(r.status, LpStatus::infeasible);
}

TEST(LpSolve, ConicFeasibility)
{
    // gamma >= 0 with V gamma = (2, 1), V's columns (1,1), (1,0), (0,-1), (-1,-1).
    const std::vector<Vector> V = {make_vector({1, 1}), make_vector({1, 0}), make_vector({0, -1}),
                                   make_vector({-1, -1})};
    LinearProgram lp;
    lp.num_vars = 4;
    lp.nonnegative.assign(4, true);
    for (std::size_t i = 0; i < 2; ++i) {
        Vector row(4);
        for (std::size_t g = 0; g < 4; ++g)
            row[g] = V[g][i];
        lp.add(row, Relation::equal, i == 0 ? 2 : 1);
    }
    auto r = lp_solve(lp);
    ASSERT_EQ(r.status, LpStatus::optimal);
    Vector combo = zeros(2);
    for (std::size_t g = 0; g < 4; ++g) {
        EXPECT_GE((*r.point)[g], 0);
        combo = combo + (*r.point)[g] * V[g];
    }
    EXPECT_EQ(combo, make_vector({2, 1}));
    for (const auto& c : lp.constraints)
        EXPECT_TRUE(satisfies(c, *r.point));
}

TEST(LpSolve, MixedRelationsAndFreeVariables)
{
    // min x + y s.t. x - y = 1, x >= -3, y free, y <= 5  ->  x = -3, y = -4.
    LinearProgram lp;
    lp.num_vars = 2;
    lp.add(make_vector({1, -1}), Relation::equal, 1);
    lp.add(make_vector({1, 0}), Relation::greater_equal, -3);
    lp.add(make_vector({0, 1}), Relation::less_equal, 5);
    lp.objective = make_vector({1, 1});
    lp.sense = Sense::minimize;
    auto r = lp_solve(lp);
    ASSERT_EQ(r.status, LpStatus::optimal);
    EXPECT_EQ(*r.point, make_vector({-3, -4}));
    EXPECT_EQ(*r.objective, -7);
}

TEST(LpSolve, DegenerateVertexTerminates)
{
    // Many constraints through the same vertex (0,0).
    Matrix A{{1, 1}, {1, 2}, {2, 1}, {1, -1}, {-1, 1}, {-1, 0}, {0, -1}};
    Vector b = zeros(7);
    auto r = lp_solve(A, b, make_vector({1, 1}), Sense::maximize);
    ASSERT_EQ(r.status, LpStatus::optimal);
    EXPECT_EQ(*r.objective, 0);
}

TEST(LpSolve, DimensionMismatch)
{
    LinearProgram lp;
    lp.num_vars = 2;
    lp.add(make_vector({1}), Relation::less_equal, 1);
    EXPECT_THROW(lp_solve(lp), DimensionError);
}

TEST(LpSolve, MatchesVertexOracleOnRandomBoundedSystems)
{
    std::mt19937_64 rng(21);
    int optimal = 0;
    for (int trial = 0; trial < 300; ++trial) {
        const std::size_t n = 1 + trial % 3;
        Matrix A(0, n);
        Vector b;
        for (std::size_t j = 0; j < n; ++j) {
            Vector e = unit_vector(n, j);
            A.append_row(e);
            b.push_back(Rational(random_int(rng, 0, 4)));
            A.append_row(-e);
            b.push_back(Rational(random_int(rng, -1, 4)));
        }
        const long extra = static_cast<long>(random_int(rng, 0, 3).get_si());
        for (long r = 0; r < extra; ++r) {
            A.append_row(prox::testing::random_integer_vector(rng, n, 3));
            b.push_back(prox::testing::random_rational(rng, 4, 3));
        }
        Vector c(n);
        for (auto& x : c)
            x = prox::testing::random_rational(rng, 3, 2);
        Sense sense = trial % 2 ? Sense::maximize : Sense::minimize;

        auto expected = vertex_oracle(A, b, c, sense);
        auto r = lp_solve(A, b, c, sense);
        if (!expected) {
            EXPECT_EQ(r.status, LpStatus::infeasible) << "trial " << trial;
            continue;
        }
        ASSERT_EQ(r.status, LpStatus::optimal) << "trial " << trial;
        EXPECT_EQ(*r.objective, *expected) << "trial " << trial;
        EXPECT_EQ(dot(c, *r.point), *r.objective);
        for (std::size_t row = 0; row < A.rows(); ++row)
            EXPECT_LE(dot(A.row(row), *r.point), b[row]);
        ++optimal;
    }
    EXPECT_GT(optimal, 150);
}
