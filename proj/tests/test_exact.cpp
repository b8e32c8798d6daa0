#include "prox/errors.hpp"
#include "prox/exact.hpp"
#include "prox/families.hpp"
#include "prox/linalg.hpp"
#include "support.hpp"

#include <gtest/gtest.h>

using namespace prox;
using prox::testing::leibniz_det;
using prox::testing::random_integer_matrix;
using prox::testing::random_rational;

TEST(Rational, ParseAndPrintAreCanonical)
{
    EXPECT_EQ(to_string(parse_rational("6/8")), "3/4");
    EXPECT_EQ(to_string(parse_rational("-4/2")), "-2");
    EXPECT_EQ(to_string(parse_rational("0/5")), "0");
    EXPECT_EQ(parse_rational(" 17 "), Rational(17));
    EXPECT_EQ(make_rational(4, -6), Rational(-2, 3));
}

TEST(Rational, ParseRejectsGarbage)
{
    for (const char* bad : {"", "1.5", "1/0", "abc", "1/2/3", "--1", "1e3", "3/-4"})
        EXPECT_THROW(parse_rational(bad), DomainError) << bad;
}

TEST(Rational, FloorCeilAbs)
{
    EXPECT_EQ(prox::floor(Rational(-7, 2)), -4);
    EXPECT_EQ(prox::ceil(Rational(-7, 2)), -3);
    EXPECT_EQ(prox::floor(Rational(7, 2)), 3);
    EXPECT_EQ(prox::ceil(Rational(7, 2)), 4);
    EXPECT_EQ(prox::floor(Rational(5)), 5);
    EXPECT_EQ(prox::abs(Rational(-3, 4)), Rational(3, 4));
    EXPECT_TRUE(is_integer(make_rational(8, 4)));
    EXPECT_FALSE(is_integer(Rational(3, 4)));
}

TEST(Vectors, NormsAndArithmetic)
{
    Vector a = make_vector({1, Rational(-5, 2), 0});
    Vector b = make_vector({0, 1, Rational(1, 3)});
    EXPECT_EQ(inf_norm(a), Rational(5, 2));
    EXPECT_EQ(inf_distance(a, b), Rational(7, 2));
    EXPECT_EQ(dot(a, b), Rational(-5, 2));
    EXPECT_EQ(a + b - b, a);
    EXPECT_EQ(Rational(2) * a, make_vector({2, -5, 0}));
    EXPECT_TRUE(is_zero(zeros(3)));
    EXPECT_THROW(dot(a, zeros(2)), DimensionError);
}

TEST(Det, Examples)
{
    EXPECT_EQ(det(Matrix::identity(3)), 1);
    EXPECT_EQ(det(Matrix{{1, -3}, {0, 1}}), 1);
    EXPECT_EQ(det(Matrix{{1, -3}, {-1, 3}}), 0);
    EXPECT_EQ(det(Matrix{{Rational(1, 2), 1}, {1, Rational(1, 3)}}), Rational(-5, 6));
    EXPECT_THROW(det(Matrix(2, 3)), DimensionError);
}

TEST(Det, MatchesLeibnizOnRandomMatrices)
{
    std::mt19937_64 rng(11);
    for (int trial = 0; trial < 200; ++trial) {
        std::size_t n = 1 + trial % 4;
        Matrix m(n, n);
        for (std::size_t r = 0; r < n; ++r)
            for (std::size_t c = 0; c < n; ++c)
                m(r, c) = trial % 2 ? random_rational(rng, 3, 4) : Rational(prox::testing::random_int(rng, -3, 3));
        EXPECT_EQ(det(m), leibniz_det(m));
    }
}

TEST(Det, RowSwapNegates)
{
    std::mt19937_64 rng(12);
    for (int trial = 0; trial < 100; ++trial) {
        Matrix m(3, 3);
        for (std::size_t r = 0; r < 3; ++r)
            for (std::size_t c = 0; c < 3; ++c)
                m(r, c) = random_rational(rng, 4, 5);
        Matrix swapped = m;
        for (std::size_t c = 0; c < 3; ++c)
            std::swap(swapped(0, c), swapped(2, c));
        EXPECT_EQ(det(swapped), -det(m));
    }
}

TEST(SolveLinear, Examples)
{
    Vector v = make_vector({3, Rational(-1, 2), 7});
    EXPECT_EQ(*solve_linear(Matrix::identity(3), v), v);
    EXPECT_EQ(*solve_linear(Matrix{{2, 0}, {0, 4}}, make_vector({1, 1})), make_vector({Rational(1, 2), Rational(1, 4)}));
    EXPECT_EQ(*solve_linear(Matrix{{0, 1}, {1, -3}}, make_vector({1, 0})), make_vector({3, 1}));
    EXPECT_FALSE(solve_linear(Matrix{{1, -3}, {-1, 3}}, make_vector({1, 0})).has_value());
    EXPECT_THROW(solve_linear(Matrix::identity(2), make_vector({1})), DimensionError);
}

TEST(SolveLinear, SolutionSatisfiesSystemExactly)
{
    std::mt19937_64 rng(13);
    int solved = 0;
    for (int trial = 0; trial < 200; ++trial) {
        std::size_t n = 1 + trial % 4;
        Matrix m(n, n);
        Vector rhs(n);
        for (std::size_t r = 0; r < n; ++r) {
            rhs[r] = random_rational(rng, 5, 3);
            for (std::size_t c = 0; c < n; ++c)
                m(r, c) = random_rational(rng, 2, 2);
        }
        auto x = solve_linear(m, rhs);
        EXPECT_EQ(x.has_value(), det(m) != 0);
        if (x) {
            EXPECT_EQ(m * *x, rhs);
            ++solved;
        }
    }
    EXPECT_GT(solved, 100);
}

TEST(NullSpace, VectorsAreAnnihilatedAndRankNullityHolds)
{
    std::mt19937_64 rng(14);
    for (int trial = 0; trial < 100; ++trial) {
        Matrix m = random_integer_matrix(rng, 1 + trial % 3, 1 + trial % 4, 2);
        auto basis = null_space(m);
        EXPECT_EQ(basis.size() + rank(m), m.cols());
        for (const auto& v : basis) {
            EXPECT_FALSE(is_zero(v));
            EXPECT_TRUE(is_zero(m * v));
        }
    }
}

TEST(Subdeterminant, Examples)
{
    EXPECT_EQ(max_abs_subdeterminant(Matrix::identity(2)).value, 1);
    EXPECT_EQ(max_abs_subdeterminant(build_pbar({2, 3, 1, Rational(1, 2)}).A()).value, 3);
    EXPECT_EQ(max_abs_subdeterminant(Matrix{{1, -5, -5}}).value, 5);
    EXPECT_EQ(max_abs_subdeterminant(Matrix(2, 3)).value, 0);
    EXPECT_THROW(max_abs_subdeterminant(Matrix{{Rational(1, 2)}}), DomainError);
}

TEST(Subdeterminant, WitnessAttainsValueAndDominatesEntries)
{
    std::mt19937_64 rng(15);
    for (int trial = 0; trial < 100; ++trial) {
        Matrix m = random_integer_matrix(rng, 1 + trial % 4, 1 + (trial / 4) % 3, 2);
        auto w = max_abs_subdeterminant(m);
        if (w.value != 0) {
            EXPECT_EQ(prox::abs(det(m.select(w.rows, w.cols))), Rational(w.value));
        }
        for (std::size_t r = 0; r < m.rows(); ++r)
            for (std::size_t c = 0; c < m.cols(); ++c)
                EXPECT_GE(Rational(w.value), prox::abs(m(r, c)));
        Integer brute = 0;
        for (const auto& v : subdeterminant_values(m))
            brute = std::max<Integer>(brute, v < 0 ? Integer(-v) : v);
        EXPECT_EQ(brute, w.value);
    }
}
