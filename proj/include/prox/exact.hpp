#pragma once

// Exact scalar, vector and matrix types. Every quantity in the library is a
// GMP rational; there is no floating point anywhere on a decision path.

#include <gmpxx.h>

#include <cstddef>
#include <initializer_list>
#include <ostream>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace prox {

using Integer = mpz_class;
using Rational = mpq_class; // gmpxx keeps arithmetic results canonical
using Vector = std::vector<Rational>;

/// Builds num/den in lowest terms. Throws DomainError on a zero denominator.
Rational make_rational(const Integer& num, const Integer& den = 1);

/// Parses "p", "-p" or "p/q". Throws DomainError on anything else.
Rational parse_rational(std::string_view text);

/// "p" when the denominator is one, otherwise "p/q".
std::string to_string(const Rational& value);
std::string to_string(const Vector& v);

bool is_integer(const Rational& value);
bool is_integer(std::span<const Rational> v);

Integer floor(const Rational& value);
Integer ceil(const Rational& value);

Rational abs(const Rational& value);

Vector zeros(std::size_t n);
Vector unit_vector(std::size_t n, std::size_t i);
Vector make_vector(std::initializer_list<Rational> values);

Vector operator+(const Vector& a, const Vector& b);
Vector operator-(const Vector& a, const Vector& b);
Vector operator-(const Vector& a);
Vector operator*(const Rational& s, const Vector& v);

Rational dot(std::span<const Rational> a, std::span<const Rational> b);
Rational inf_norm(std::span<const Rational> v);
Rational inf_distance(std::span<const Rational> a, std::span<const Rational> b);
bool is_zero(std::span<const Rational> v);

/// Dense row-major matrix of rationals.
class Matrix
{
public:
    Matrix() = default;
    Matrix(std::size_t rows, std::size_t cols);
    Matrix(std::initializer_list<std::initializer_list<Rational>> rows);

    static Matrix identity(std::size_t n);
    static Matrix from_rows(const std::vector<Vector>& rows, std::size_t cols);

    std::size_t rows() const noexcept { return rows_; }
    std::size_t cols() const noexcept { return cols_; }
    bool square() const noexcept { return rows_ == cols_; }

    Rational& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
    const Rational& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

    std::span<const Rational> row(std::size_t r) const { return {data_.data() + r * cols_, cols_}; }
    std::span<Rational> row(std::size_t r) { return {data_.data() + r * cols_, cols_}; }
    Vector row_vector(std::size_t r) const;
    Vector column(std::size_t c) const;

    void append_row(std::span<const Rational> values);

    Matrix transpose() const;
    Matrix select(std::span<const std::size_t> row_ids, std::span<const std::size_t> col_ids) const;
    Matrix select_rows(std::span<const std::size_t> row_ids) const;

    bool is_integer() const;

    friend bool operator==(const Matrix&, const Matrix&) = default;

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<Rational> data_;
};

Vector operator*(const Matrix& m, std::span<const Rational> x);
Matrix operator*(const Matrix& a, const Matrix& b);

std::ostream& operator<<(std::ostream& os, const Vector& v);
std::ostream& operator<<(std::ostream& os, const Matrix& m);

/// Strict lexicographic order on equal-length vectors.
struct LexLess
{
    bool operator()(const Vector& a, const Vector& b) const;
};

} // namespace prox
