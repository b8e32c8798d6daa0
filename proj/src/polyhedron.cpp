#include "prox/polyhedron.hpp"

#include "prox/errors.hpp"
#include "prox/linalg.hpp"
#include "prox/lp.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <set>

namespace prox {

Polyhedron::Polyhedron(Matrix A, Vector b) : A_(std::move(A)), b_(std::move(b))
{
    if (A_.cols() == 0)
        throw DimensionError("polyhedron needs at least one variable");
    if (b_.size() != A_.rows())
        throw DimensionError("polyhedron: " + std::to_string(A_.rows()) + " rows but right-hand side of length " +
                             std::to_string(b_.size()));
    if (!A_.is_integer())
        throw DomainError("polyhedron constraint matrix must be integer");
}

bool Polyhedron::contains(std::span<const Rational> x) const
{
    if (x.size() != dim())
        throw DimensionError("contains: point of dimension " + std::to_string(x.size()) + " in R^" +
                             std::to_string(dim()));
    for (std::size_t r = 0; r < A_.rows(); ++r)
        if (dot(A_.row(r), x) > b_[r])
            return false;
    return true;
}

std::vector<std::size_t> Polyhedron::tight_rows(std::span<const Rational> x) const
{
    std::vector<std::size_t> tight;
    for (std::size_t r = 0; r < A_.rows(); ++r)
        if (dot(A_.row(r), x) == b_[r])
            tight.push_back(r);
    return tight;
}

Polyhedron Polyhedron::with_fixed_zero(std::span<const std::size_t> coords) const
{
    Matrix A = A_;
    Vector b = b_;
    for (auto i : coords) {
        Vector e = unit_vector(dim(), i);
        A.append_row(e);
        b.push_back(0);
        A.append_row(-e);
        b.push_back(0);
    }
    return Polyhedron(std::move(A), std::move(b));
}

bool contains(const Polyhedron& P, std::span<const Rational> x)
{
    return P.contains(x);
}

std::optional<BoundingBox> bounding_box(const Polyhedron& P)
{
    const std::size_t n = P.dim();
    BoundingBox box{Vector(n), Vector(n)};
    for (std::size_t i = 0; i < n; ++i) {
        Vector objective = unit_vector(n, i);
        for (Sense sense : {Sense::minimize, Sense::maximize}) {
            auto result = lp_solve(P.A(), P.b(), objective, sense);
            if (result.status == LpStatus::infeasible)
                return std::nullopt;
            if (result.status == LpStatus::unbounded)
                throw UnboundedError("polyhedron is unbounded in coordinate " + std::to_string(i + 1));
            (sense == Sense::minimize ? box.lower : box.upper)[i] = *result.objective;
        }
    }
    return box;
}

std::vector<Vertex> enumerate_vertices(const Polyhedron& P)
{
    if (!bounding_box(P))
        return {};
    const std::size_t n = P.dim();
    std::map<Vector, Vertex, LexLess> found;
    for_each_subset(P.num_rows(), n, [&](const std::vector<std::size_t>& rows) {
        Matrix sub = P.A().select_rows(rows);
        Vector rhs(n);
        for (std::size_t i = 0; i < n; ++i)
            rhs[i] = P.b()[rows[i]];
        auto point = solve_linear(sub, rhs);
        if (!point || !P.contains(*point) || found.count(*point))
            return;
        found.emplace(*point, Vertex{*point, P.tight_rows(*point)});
    });
    std::vector<Vertex> out;
    out.reserve(found.size());
    for (auto& [_, v] : found)
        out.push_back(std::move(v));
    return out;
}

namespace {

// Constraints on the trailing variables once the first `prefix.size()`
// coordinates are fixed.
std::pair<Matrix, Vector> restrict_prefix(const Polyhedron& P, const Vector& prefix)
{
    const std::size_t p = prefix.size();
    const std::size_t rest = P.dim() - p;
    Matrix A(P.num_rows(), rest);
    Vector b(P.num_rows());
    for (std::size_t r = 0; r < P.num_rows(); ++r) {
        Rational rhs = P.b()[r];
        for (std::size_t j = 0; j < p; ++j)
            if (sgn(P.A()(r, j)) != 0)
                rhs -= P.A()(r, j) * prefix[j];
        b[r] = rhs;
        for (std::size_t j = 0; j < rest; ++j)
            A(r, j) = P.A()(r, p + j);
    }
    return {std::move(A), std::move(b)};
}

// Integer range of the single remaining variable, or nullopt if empty.
std::optional<std::pair<Integer, Integer>> last_coordinate_range(const Matrix& A, const Vector& b)
{
    std::optional<Rational> lo, hi;
    for (std::size_t r = 0; r < A.rows(); ++r) {
        const Rational& a = A(r, 0);
        if (sgn(a) == 0) {
            if (b[r] < 0)
                return std::nullopt;
            continue;
        }
        Rational bound = b[r] / a;
        if (sgn(a) > 0) {
            if (!hi || bound < *hi)
                hi = bound;
        } else if (!lo || bound > *lo) {
            lo = bound;
        }
    }
    if (!lo || !hi)
        throw UnboundedError("lattice enumeration over an unbounded coordinate");
    Integer l = ceil(*lo), h = floor(*hi);
    if (l > h)
        return std::nullopt;
    return std::make_pair(l, h);
}

std::optional<std::pair<Integer, Integer>> coordinate_range(const Matrix& A, const Vector& b)
{
    if (A.cols() == 1)
        return last_coordinate_range(A, b);
    Vector objective = unit_vector(A.cols(), 0);
    auto lo = lp_solve(A, b, objective, Sense::minimize);
    if (lo.status == LpStatus::infeasible)
        return std::nullopt;
    auto hi = lp_solve(A, b, objective, Sense::maximize);
    if (lo.status == LpStatus::unbounded || hi.status == LpStatus::unbounded)
        throw UnboundedError("lattice enumeration over an unbounded coordinate");
    Integer l = ceil(*lo.objective), h = floor(*hi.objective);
    if (l > h)
        return std::nullopt;
    return std::make_pair(l, h);
}

void extend_lattice(const Polyhedron& P, Vector& prefix, std::vector<Vector>& out)
{
    if (prefix.size() == P.dim()) {
        if (P.contains(prefix))
            out.push_back(prefix);
        return;
    }
    auto [A, b] = restrict_prefix(P, prefix);
    auto range = coordinate_range(A, b);
    if (!range)
        return;
    for (Integer v = range->first; v <= range->second; ++v) {
        prefix.push_back(Rational(v));
        extend_lattice(P, prefix, out);
        prefix.pop_back();
    }
}

} // namespace

std::vector<Vector> enumerate_lattice_points(const Polyhedron& P)
{
    if (!bounding_box(P))
        return {};
    std::vector<Vector> out;
    Vector prefix;
    extend_lattice(P, prefix, out);
    return out;
}

std::vector<Face> enumerate_faces(const Polyhedron& P)
{
    auto vertices = enumerate_vertices(P);
    if (vertices.empty())
        return {};
    using RowSet = std::vector<bool>;
    const std::size_t m = P.num_rows();
    std::vector<RowSet> generators;
    for (const auto& v : vertices) {
        RowSet s(m, false);
        for (auto r : v.tight_rows)
            s[r] = true;
        generators.push_back(std::move(s));
    }

    // Every face's equality set is the intersection of its vertices' tight
    // sets, and every such intersection is a face's equality set.
    std::set<RowSet> closure(generators.begin(), generators.end());
    std::deque<RowSet> queue(generators.begin(), generators.end());
    while (!queue.empty()) {
        RowSet current = std::move(queue.front());
        queue.pop_front();
        for (const auto& g : generators) {
            RowSet meet(m);
            for (std::size_t r = 0; r < m; ++r)
                meet[r] = current[r] && g[r];
            if (closure.insert(meet).second)
                queue.push_back(std::move(meet));
        }
    }

    std::vector<Face> faces;
    for (const auto& s : closure) {
        Face f;
        for (std::size_t r = 0; r < m; ++r)
            if (s[r])
                f.equality_rows.push_back(r);
        f.dim = P.dim() - rank(P.A().select_rows(f.equality_rows));
        faces.push_back(std::move(f));
    }
    std::sort(faces.begin(), faces.end(), [](const Face& a, const Face& b) {
        if (a.dim != b.dim)
            return a.dim > b.dim;
        return a.equality_rows < b.equality_rows;
    });
    return faces;
}

Polyhedron intersect_with_box(const Polyhedron& P, std::span<const Rational> center, const Rational& radius)
{
    if (center.size() != P.dim())
        throw DimensionError("intersect_with_box: center dimension mismatch");
    if (radius < 0)
        throw DomainError("intersect_with_box: negative radius");
    Matrix A = P.A();
    Vector b = P.b();
    for (std::size_t i = 0; i < P.dim(); ++i) {
        Vector e = unit_vector(P.dim(), i);
        A.append_row(e);
        b.push_back(center[i] + radius);
        A.append_row(-e);
        b.push_back(radius - center[i]);
    }
    return Polyhedron(std::move(A), std::move(b));
}

} // namespace prox
