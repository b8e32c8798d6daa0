#pragma once

#include "prox/exact.hpp"
#include "prox/instance.hpp"
#include "prox/polyhedron.hpp"

#include <algorithm>
#include <numeric>
#include <random>
#include <vector>

namespace prox::testing {

inline Integer random_int(std::mt19937_64& rng, long lo, long hi)
{
    return Integer(std::uniform_int_distribution<long>(lo, hi)(rng));
}

inline Rational random_rational(std::mt19937_64& rng, long bound, long max_den)
{
    return make_rational(random_int(rng, -bound * max_den, bound * max_den), random_int(rng, 1, max_den));
}

inline Matrix random_integer_matrix(std::mt19937_64& rng, std::size_t rows, std::size_t cols, long bound)
{
    Matrix m(rows, cols);
    for (std::size_t r = 0; r < rows; ++r)
        for (std::size_t c = 0; c < cols; ++c)
            m(r, c) = random_int(rng, -bound, bound);
    return m;
}

inline Vector random_integer_vector(std::mt19937_64& rng, std::size_t n, long bound)
{
    Vector v(n);
    for (auto& x : v)
        x = random_int(rng, -bound, bound);
    return v;
}

// Leibniz expansion; only for the tiny matrices used in tests.
inline Rational leibniz_det(const Matrix& m)
{
    const std::size_t n = m.rows();
    std::vector<std::size_t> perm(n);
    std::iota(perm.begin(), perm.end(), 0);
    Rational total = 0;
    do {
        int inversions = 0;
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = i + 1; j < n; ++j)
                if (perm[i] > perm[j])
                    ++inversions;
        Rational term = inversions % 2 ? -1 : 1;
        for (std::size_t i = 0; i < n; ++i)
            term *= m(i, perm[i]);
        total += term;
    } while (std::next_permutation(perm.begin(), perm.end()));
    return total;
}

// All integer points of the box [lo, hi]^n.
inline std::vector<Vector> integer_box(std::size_t n, long lo, long hi)
{
    std::vector<Vector> out;
    Vector x(n, Rational(lo));
    if (n == 0)
        return {Vector{}};
    while (true) {
        out.push_back(x);
        std::size_t i = 0;
        while (i < n && x[i] == hi) {
            x[i] = lo;
            ++i;
        }
        if (i == n)
            break;
        x[i] += 1;
    }
    return out;
}

// Points of P among the integers of [-range, range]^n, sorted.
inline std::vector<Vector> brute_lattice(const Polyhedron& P, long range)
{
    std::vector<Vector> out;
    for (auto& x : integer_box(P.dim(), -range, range))
        if (P.contains(x))
            out.push_back(std::move(x));
    std::sort(out.begin(), out.end(), LexLess{});
    return out;
}

inline Vector to_vector(std::initializer_list<long> values)
{
    Vector v;
    for (long x : values)
        v.emplace_back(x);
    return v;
}

} // namespace prox::testing
