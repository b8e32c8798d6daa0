#include "prox/exact.hpp"

#include "prox/errors.hpp"

#include <algorithm>
#include <cctype>

namespace prox {

Rational make_rational(const Integer& num, const Integer& den)
{
    if (den == 0)
        throw DomainError("rational with zero denominator");
    Rational r(num, den);
    r.canonicalize();
    return r;
}

namespace {

bool parse_integer(std::string_view text, Integer& out)
{
    if (text.empty())
        return false;
    std::size_t start = (text[0] == '-' || text[0] == '+') ? 1 : 0;
    if (start == text.size())
        return false;
    for (std::size_t i = start; i < text.size(); ++i)
        if (!std::isdigit(static_cast<unsigned char>(text[i])))
            return false;
    std::string digits(text[0] == '+' ? text.substr(1) : text);
    return out.set_str(digits, 10) == 0;
}

} // namespace

Rational parse_rational(std::string_view text)
{
    auto trimmed = text;
    while (!trimmed.empty() && std::isspace(static_cast<unsigned char>(trimmed.front())))
        trimmed.remove_prefix(1);
    while (!trimmed.empty() && std::isspace(static_cast<unsigned char>(trimmed.back())))
        trimmed.remove_suffix(1);

    Integer num;
    Integer den = 1;
    auto slash = trimmed.find('/');
    if (slash == std::string_view::npos) {
        if (!parse_integer(trimmed, num))
            throw DomainError("not a rational: '" + std::string(text) + "'");
    } else {
        auto den_text = trimmed.substr(slash + 1);
        if (!parse_integer(trimmed.substr(0, slash), num) || den_text.empty() || den_text[0] == '-' ||
            den_text[0] == '+' || !parse_integer(den_text, den))
            throw DomainError("not a rational: '" + std::string(text) + "'");
    }
    return make_rational(num, den);
}

std::string to_string(const Rational& value)
{
    return value.get_str(10);
}

std::string to_string(const Vector& v)
{
    std::string out = "(";
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (i)
            out += ", ";
        out += to_string(v[i]);
    }
    return out + ")";
}

bool is_integer(const Rational& value)
{
    return value.get_den() == 1;
}

bool is_integer(std::span<const Rational> v)
{
    return std::all_of(v.begin(), v.end(), [](const Rational& x) { return is_integer(x); });
}

Integer floor(const Rational& value)
{
    Integer q;
    mpz_fdiv_q(q.get_mpz_t(), value.get_num_mpz_t(), value.get_den_mpz_t());
    return q;
}

Integer ceil(const Rational& value)
{
    Integer q;
    mpz_cdiv_q(q.get_mpz_t(), value.get_num_mpz_t(), value.get_den_mpz_t());
    return q;
}

Rational abs(const Rational& value)
{
    return value < 0 ? Rational(-value) : value;
}

Vector zeros(std::size_t n)
{
    return Vector(n, Rational(0));
}

Vector unit_vector(std::size_t n, std::size_t i)
{
    Vector v = zeros(n);
    v.at(i) = 1;
    return v;
}

Vector make_vector(std::initializer_list<Rational> values)
{
    return Vector(values);
}

namespace {

void require_same_size(std::size_t a, std::size_t b)
{
    if (a != b)
        throw DimensionError("vector length mismatch: " + std::to_string(a) + " vs " + std::to_string(b));
}

} // namespace

Vector operator+(const Vector& a, const Vector& b)
{
    require_same_size(a.size(), b.size());
    Vector out(a.size());
    for (std::size_t i = 0; i < a.size(); ++i)
        out[i] = a[i] + b[i];
    return out;
}

Vector operator-(const Vector& a, const Vector& b)
{
    require_same_size(a.size(), b.size());
    Vector out(a.size());
    for (std::size_t i = 0; i < a.size(); ++i)
        out[i] = a[i] - b[i];
    return out;
}

Vector operator-(const Vector& a)
{
    Vector out(a.size());
    for (std::size_t i = 0; i < a.size(); ++i)
        out[i] = -a[i];
    return out;
}

Vector operator*(const Rational& s, const Vector& v)
{
    Vector out(v.size());
    for (std::size_t i = 0; i < v.size(); ++i)
        out[i] = s * v[i];
    return out;
}

Rational dot(std::span<const Rational> a, std::span<const Rational> b)
{
    require_same_size(a.size(), b.size());
    Rational sum = 0;
    for (std::size_t i = 0; i < a.size(); ++i)
        if (sgn(a[i]) != 0 && sgn(b[i]) != 0)
            sum += a[i] * b[i];
    return sum;
}

Rational inf_norm(std::span<const Rational> v)
{
    Rational best = 0;
    for (const auto& x : v)
        if (abs(x) > best)
            best = abs(x);
    return best;
}

Rational inf_distance(std::span<const Rational> a, std::span<const Rational> b)
{
    require_same_size(a.size(), b.size());
    Rational best = 0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        Rational d = abs(Rational(a[i] - b[i]));
        if (d > best)
            best = d;
    }
    return best;
}

bool is_zero(std::span<const Rational> v)
{
    return std::all_of(v.begin(), v.end(), [](const Rational& x) { return sgn(x) == 0; });
}

Matrix::Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols, Rational(0)) {}

Matrix::Matrix(std::initializer_list<std::initializer_list<Rational>> rows)
{
    rows_ = rows.size();
    cols_ = rows_ ? rows.begin()->size() : 0;
    data_.reserve(rows_ * cols_);
    for (const auto& r : rows) {
        if (r.size() != cols_)
            throw DimensionError("ragged matrix literal");
        data_.insert(data_.end(), r.begin(), r.end());
    }
}

Matrix Matrix::identity(std::size_t n)
{
    Matrix m(n, n);
    for (std::size_t i = 0; i < n; ++i)
        m(i, i) = 1;
    return m;
}

Matrix Matrix::from_rows(const std::vector<Vector>& rows, std::size_t cols)
{
    Matrix m(0, cols);
    for (const auto& r : rows)
        m.append_row(r);
    return m;
}

Vector Matrix::row_vector(std::size_t r) const
{
    auto span = row(r);
    return Vector(span.begin(), span.end());
}

Vector Matrix::column(std::size_t c) const
{
    Vector out(rows_);
    for (std::size_t r = 0; r < rows_; ++r)
        out[r] = (*this)(r, c);
    return out;
}

void Matrix::append_row(std::span<const Rational> values)
{
    if (values.size() != cols_)
        throw DimensionError("appended row has " + std::to_string(values.size()) + " entries, expected " +
                             std::to_string(cols_));
    data_.insert(data_.end(), values.begin(), values.end());
    ++rows_;
}

Matrix Matrix::transpose() const
{
    Matrix t(cols_, rows_);
    for (std::size_t r = 0; r < rows_; ++r)
        for (std::size_t c = 0; c < cols_; ++c)
            t(c, r) = (*this)(r, c);
    return t;
}

Matrix Matrix::select(std::span<const std::size_t> row_ids, std::span<const std::size_t> col_ids) const
{
    Matrix out(row_ids.size(), col_ids.size());
    for (std::size_t i = 0; i < row_ids.size(); ++i)
        for (std::size_t j = 0; j < col_ids.size(); ++j)
            out(i, j) = (*this)(row_ids[i], col_ids[j]);
    return out;
}

Matrix Matrix::select_rows(std::span<const std::size_t> row_ids) const
{
    Matrix out(0, cols_);
    for (auto r : row_ids)
        out.append_row(row(r));
    return out;
}

bool Matrix::is_integer() const
{
    return prox::is_integer(std::span<const Rational>(data_));
}

Vector operator*(const Matrix& m, std::span<const Rational> x)
{
    if (x.size() != m.cols())
        throw DimensionError("matrix-vector product: " + std::to_string(m.cols()) + " columns vs vector of " +
                             std::to_string(x.size()));
    Vector out(m.rows());
    for (std::size_t r = 0; r < m.rows(); ++r)
        out[r] = dot(m.row(r), x);
    return out;
}

Matrix operator*(const Matrix& a, const Matrix& b)
{
    if (a.cols() != b.rows())
        throw DimensionError("matrix product shape mismatch");
    Matrix out(a.rows(), b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t k = 0; k < a.cols(); ++k) {
            if (sgn(a(i, k)) == 0)
                continue;
            for (std::size_t j = 0; j < b.cols(); ++j)
                out(i, j) += a(i, k) * b(k, j);
        }
    return out;
}

std::ostream& operator<<(std::ostream& os, const Vector& v)
{
    return os << to_string(v);
}

std::ostream& operator<<(std::ostream& os, const Matrix& m)
{
    os << '[';
    for (std::size_t r = 0; r < m.rows(); ++r) {
        if (r)
            os << ", ";
        os << to_string(m.row_vector(r));
    }
    return os << ']';
}

bool LexLess::operator()(const Vector& a, const Vector& b) const
{
    return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end());
}

} // namespace prox
