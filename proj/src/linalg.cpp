#include "prox/linalg.hpp"

#include "prox/errors.hpp"

#include <utility>

namespace prox {

namespace {

using IntegerMatrix = std::vector<std::vector<Integer>>;

Integer bareiss_det(IntegerMatrix a)
{
    const std::size_t n = a.size();
    Integer sign = 1;
    Integer prev = 1;
    for (std::size_t k = 0; k < n; ++k) {
        if (a[k][k] == 0) {
            std::size_t swap_row = k + 1;
            while (swap_row < n && a[swap_row][k] == 0)
                ++swap_row;
            if (swap_row == n)
                return 0;
            std::swap(a[k], a[swap_row]);
            sign = -sign;
        }
        for (std::size_t i = k + 1; i < n; ++i) {
            for (std::size_t j = k + 1; j < n; ++j) {
                Integer t = a[i][j] * a[k][k] - a[i][k] * a[k][j];
                mpz_divexact(a[i][j].get_mpz_t(), t.get_mpz_t(), prev.get_mpz_t());
            }
        }
        prev = a[k][k];
    }
    return n == 0 ? Integer(1) : Integer(sign * a[n - 1][n - 1]);
}

Rational rational_det(Matrix a)
{
    const std::size_t n = a.rows();
    Rational result = 1;
    for (std::size_t k = 0; k < n; ++k) {
        std::size_t pivot = k;
        while (pivot < n && sgn(a(pivot, k)) == 0)
            ++pivot;
        if (pivot == n)
            return 0;
        if (pivot != k) {
            for (std::size_t j = 0; j < n; ++j)
                std::swap(a(k, j), a(pivot, j));
            result = -result;
        }
        result *= a(k, k);
        for (std::size_t i = k + 1; i < n; ++i) {
            if (sgn(a(i, k)) == 0)
                continue;
            Rational factor = a(i, k) / a(k, k);
            for (std::size_t j = k; j < n; ++j)
                a(i, j) -= factor * a(k, j);
        }
    }
    return result;
}

IntegerMatrix to_integer(const Matrix& m)
{
    IntegerMatrix out(m.rows(), std::vector<Integer>(m.cols()));
    for (std::size_t r = 0; r < m.rows(); ++r)
        for (std::size_t c = 0; c < m.cols(); ++c)
            out[r][c] = m(r, c).get_num();
    return out;
}

// Reduced row echelon form in place; returns the pivot columns.
std::vector<std::size_t> rref(Matrix& a)
{
    std::vector<std::size_t> pivots;
    std::size_t row = 0;
    for (std::size_t col = 0; col < a.cols() && row < a.rows(); ++col) {
        std::size_t p = row;
        while (p < a.rows() && sgn(a(p, col)) == 0)
            ++p;
        if (p == a.rows())
            continue;
        if (p != row)
            for (std::size_t j = 0; j < a.cols(); ++j)
                std::swap(a(row, j), a(p, j));
        Rational inv = 1 / a(row, col);
        for (std::size_t j = col; j < a.cols(); ++j)
            a(row, j) *= inv;
        for (std::size_t i = 0; i < a.rows(); ++i) {
            if (i == row || sgn(a(i, col)) == 0)
                continue;
            Rational factor = a(i, col);
            for (std::size_t j = col; j < a.cols(); ++j)
                a(i, j) -= factor * a(row, j);
        }
        pivots.push_back(col);
        ++row;
    }
    return pivots;
}

template <class Visit>
void for_each_square_submatrix(const Matrix& m, Visit&& visit)
{
    if (!m.is_integer())
        throw DomainError("subdeterminants require an integer matrix");
    const auto full = to_integer(m);
    const std::size_t limit = std::min(m.rows(), m.cols());
    for (std::size_t size = 1; size <= limit; ++size) {
        for_each_subset(m.rows(), size, [&](const std::vector<std::size_t>& rows) {
            for_each_subset(m.cols(), size, [&](const std::vector<std::size_t>& cols) {
                IntegerMatrix sub(size, std::vector<Integer>(size));
                for (std::size_t i = 0; i < size; ++i)
                    for (std::size_t j = 0; j < size; ++j)
                        sub[i][j] = full[rows[i]][cols[j]];
                visit(bareiss_det(std::move(sub)), rows, cols);
            });
        });
    }
}

} // namespace

Rational det(const Matrix& m)
{
    if (!m.square())
        throw DimensionError("determinant of a " + std::to_string(m.rows()) + "x" + std::to_string(m.cols()) +
                             " matrix");
    if (m.is_integer())
        return Rational(bareiss_det(to_integer(m)));
    return rational_det(m);
}

std::optional<Vector> solve_linear(const Matrix& m, std::span<const Rational> rhs)
{
    if (!m.square())
        throw DimensionError("solve_linear needs a square matrix");
    if (rhs.size() != m.rows())
        throw DimensionError("solve_linear: right-hand side length mismatch");
    const std::size_t n = m.rows();
    Matrix aug(n, n + 1);
    for (std::size_t r = 0; r < n; ++r) {
        for (std::size_t c = 0; c < n; ++c)
            aug(r, c) = m(r, c);
        aug(r, n) = rhs[r];
    }
    auto pivots = rref(aug);
    if (pivots.size() < n || (n > 0 && pivots.back() >= n))
        return std::nullopt;
    Vector x(n);
    for (std::size_t r = 0; r < n; ++r)
        x[r] = aug(r, n);
    return x;
}

std::size_t rank(const Matrix& m)
{
    Matrix a = m;
    return rref(a).size();
}

std::vector<Vector> null_space(const Matrix& m)
{
    Matrix a = m;
    auto pivots = rref(a);
    std::vector<bool> is_pivot(m.cols(), false);
    for (auto p : pivots)
        is_pivot[p] = true;
    std::vector<Vector> basis;
    for (std::size_t free = 0; free < m.cols(); ++free) {
        if (is_pivot[free])
            continue;
        Vector v = zeros(m.cols());
        v[free] = 1;
        for (std::size_t r = 0; r < pivots.size(); ++r)
            v[pivots[r]] = -a(r, free);
        basis.push_back(std::move(v));
    }
    return basis;
}

SubdeterminantWitness max_abs_subdeterminant(const Matrix& m)
{
    SubdeterminantWitness best;
    for_each_square_submatrix(m, [&](const Integer& d, const auto& rows, const auto& cols) {
        Integer a = ::abs(d);
        if (a > best.value) {
            best.value = a;
            best.rows = rows;
            best.cols = cols;
        }
    });
    return best;
}

std::set<Integer> subdeterminant_values(const Matrix& m)
{
    std::set<Integer> values;
    for_each_square_submatrix(m, [&](const Integer& d, const auto&, const auto&) { values.insert(d); });
    return values;
}

} // namespace prox
