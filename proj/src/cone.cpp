#include "prox/cone.hpp"

#include "prox/errors.hpp"
#include "prox/linalg.hpp"
#include "prox/lp.hpp"

#include <set>

namespace prox {

bool ProximityCone::contains(std::span<const Rational> x) const
{
    if (x.size() != ambient_dim)
        throw DimensionError("cone membership: dimension mismatch");
    for (std::size_t r = 0; r < A1.rows(); ++r)
        if (dot(A1.row(r), x) > 0)
            return false;
    for (std::size_t r = 0; r < A2.rows(); ++r)
        if (dot(A2.row(r), x) < 0)
            return false;
    return true;
}

Vector ConicDecomposition::combine(std::size_t dim) const
{
    Vector sum = zeros(dim);
    for (std::size_t i = 0; i < generators.size(); ++i) {
        if (generators[i].size() != dim)
            throw DimensionError("conic combination: generator dimension mismatch");
        if (sgn(coefficients[i]) == 0)
            continue;
        for (std::size_t j = 0; j < dim; ++j)
            sum[j] += coefficients[i] * generators[i][j];
    }
    return sum;
}

ProximityCone build_cone(const Matrix& A, std::span<const Rational> xa, std::span<const Rational> xb)
{
    if (xa.size() != A.cols() || xb.size() != A.cols())
        throw DimensionError("build_cone: points must have one entry per column of A");
    ProximityCone cone{Matrix(0, A.cols()), Matrix(0, A.cols()), A.cols()};
    for (std::size_t r = 0; r < A.rows(); ++r) {
        Rational ua = dot(A.row(r), xa);
        Rational ub = dot(A.row(r), xb);
        if (ua <= ub)
            cone.A1.append_row(A.row(r));
        if (ua >= ub)
            cone.A2.append_row(A.row(r));
    }
    return cone;
}

namespace {

Vector primitive(const Vector& v)
{
    Integer g = 0;
    for (const auto& x : v)
        mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), x.get_num_mpz_t());
    if (g == 0 || g == 1)
        return v;
    Vector out(v.size());
    for (std::size_t i = 0; i < v.size(); ++i)
        out[i] = Rational(v[i].get_num() / g);
    return out;
}

// Direction of the line {x : D x = 0} for an (n-1) x n matrix D of rank
// n-1, via signed maximal minors. Zero when rank(D) < n-1.
Vector cofactor_direction(const std::vector<Vector>& rows, std::size_t n)
{
    Vector r(n);
    std::vector<std::size_t> all_rows(rows.size());
    for (std::size_t i = 0; i < rows.size(); ++i)
        all_rows[i] = i;
    Matrix D = Matrix::from_rows(rows, n);
    for (std::size_t j = 0; j < n; ++j) {
        std::vector<std::size_t> cols;
        for (std::size_t c = 0; c < n; ++c)
            if (c != j)
                cols.push_back(c);
        Rational minor = det(D.select(all_rows, cols));
        r[j] = (j % 2 == 0) ? minor : Rational(-minor);
    }
    return r;
}

bool satisfies_all(const std::vector<Vector>& rows, const Vector& x)
{
    for (const auto& g : rows)
        if (dot(g, x) > 0)
            return false;
    return true;
}

} // namespace

GeneratorSet enumerate_generators(const ProximityCone& cone, const Integer& delta)
{
    const std::size_t n = cone.ambient_dim;
    // The cone as g x <= 0 rows.
    std::vector<Vector> cone_rows;
    for (std::size_t r = 0; r < cone.A1.rows(); ++r)
        cone_rows.push_back(cone.A1.row_vector(r));
    for (std::size_t r = 0; r < cone.A2.rows(); ++r)
        cone_rows.push_back(-cone.A2.row_vector(r));

    const Integer bound = delta < 1 ? Integer(1) : delta;
    std::set<Vector, LexLess> generators;
    for (std::size_t orthant = 0; orthant < (std::size_t{1} << n); ++orthant) {
        std::vector<Vector> rows = cone_rows;
        for (std::size_t i = 0; i < n; ++i) {
            Vector e = zeros(n);
            e[i] = (orthant >> i & 1) ? 1 : -1; // bit set: x_i <= 0
            rows.push_back(std::move(e));
        }

        // Candidate tight hyperplanes, one per normal direction up to sign.
        std::set<Vector, LexLess> seen;
        std::vector<Vector> hyperplanes;
        for (const auto& g : rows) {
            if (is_zero(g))
                continue;
            Vector p = primitive(g);
            Vector q = -p;
            const Vector& key = LexLess{}(p, q) ? p : q;
            if (seen.insert(key).second)
                hyperplanes.push_back(key);
        }

        for_each_subset(hyperplanes.size(), n - 1, [&](const std::vector<std::size_t>& subset) {
            std::vector<Vector> D;
            for (auto idx : subset)
                D.push_back(hyperplanes[idx]);
            Vector r = cofactor_direction(D, n);
            if (is_zero(r))
                return;
            if (!satisfies_all(rows, r)) {
                r = -r;
                if (!satisfies_all(rows, r))
                    return;
            }
            r = primitive(r);
            if (inf_norm(r) > Rational(bound))
                throw InvariantViolation("generator-bound", "extreme ray " + to_string(r) + " exceeds Delta = " +
                                                                bound.get_str());
            generators.insert(std::move(r));
        });
    }
    return GeneratorSet(generators.begin(), generators.end());
}

namespace {

LinearProgram conic_feasibility(std::span<const Rational> target, const GeneratorSet& gens)
{
    const std::size_t n = target.size();
    LinearProgram lp;
    lp.num_vars = gens.size();
    lp.nonnegative.assign(gens.size(), true);
    for (const auto& g : gens)
        if (g.size() != n)
            throw DimensionError("generator dimension mismatch");
    for (std::size_t j = 0; j < n; ++j) {
        Vector row(gens.size());
        for (std::size_t i = 0; i < gens.size(); ++i)
            row[i] = gens[i][j];
        lp.add(std::move(row), Relation::equal, target[j]);
    }
    return lp;
}

} // namespace

bool in_conic_hull(std::span<const Rational> target, const GeneratorSet& gens)
{
    if (gens.empty())
        return is_zero(target);
    return lp_solve(conic_feasibility(target, gens)).status == LpStatus::optimal;
}

ConicDecomposition caratheodory_decompose(std::span<const Rational> target, const GeneratorSet& gens)
{
    const std::size_t n = target.size();
    if (is_zero(target))
        return {};
    if (gens.empty())
        throw NotInConeError("nonzero target " + to_string(Vector(target.begin(), target.end())) +
                             " with no generators");
    auto result = lp_solve(conic_feasibility(target, gens));
    if (result.status != LpStatus::optimal)
        throw NotInConeError("target " + to_string(Vector(target.begin(), target.end())) +
                             " is not in the cone of the generators");

    std::vector<std::size_t> support;
    Vector gamma;
    for (std::size_t i = 0; i < gens.size(); ++i)
        if (sgn((*result.point)[i]) > 0) {
            support.push_back(i);
            gamma.push_back((*result.point)[i]);
        }

    // Shift along null-space directions until the support is independent.
    while (true) {
        Matrix M(n, support.size());
        for (std::size_t c = 0; c < support.size(); ++c)
            for (std::size_t r = 0; r < n; ++r)
                M(r, c) = gens[support[c]][r];
        auto kernel = null_space(M);
        if (kernel.empty())
            break;
        Vector lambda = kernel.front();
        bool has_positive = false;
        for (const auto& x : lambda)
            has_positive = has_positive || sgn(x) > 0;
        if (!has_positive)
            lambda = -lambda;
        std::size_t hit = support.size();
        Rational theta;
        for (std::size_t i = 0; i < support.size(); ++i) {
            if (sgn(lambda[i]) <= 0)
                continue;
            Rational step = gamma[i] / lambda[i];
            if (hit == support.size() || step < theta) {
                hit = i;
                theta = step;
            }
        }
        std::vector<std::size_t> next_support;
        Vector next_gamma;
        for (std::size_t i = 0; i < support.size(); ++i) {
            Rational g = gamma[i] - theta * lambda[i];
            if (i == hit || sgn(g) == 0)
                continue;
            next_support.push_back(support[i]);
            next_gamma.push_back(g);
        }
        support = std::move(next_support);
        gamma = std::move(next_gamma);
    }

    ConicDecomposition out;
    for (std::size_t i = 0; i < support.size(); ++i) {
        out.generators.push_back(gens[support[i]]);
        out.coefficients.push_back(gamma[i]);
    }
    if (out.combine(n) != Vector(target.begin(), target.end()))
        throw InvariantViolation("caratheodory", "decomposition does not reproduce the target");
    return out;
}

bool check_two_representations(const Polyhedron& P, const ProximityCone& cone, std::span<const Rational> x1,
                               std::span<const Rational> x2, const ConicDecomposition& pos_combo,
                               const ConicDecomposition& neg_combo)
{
    const std::size_t n = P.dim();
    if (x1.size() != n || x2.size() != n || cone.ambient_dim != n)
        throw DimensionError("two-representation check: dimension mismatch");
    for (const auto* combo : {&pos_combo, &neg_combo})
        for (std::size_t i = 0; i < combo->size(); ++i) {
            if (sgn(combo->coefficients[i]) < 0)
                throw DomainError("two-representation check: negative coefficient");
            if (!cone.contains(combo->generators[i]))
                throw DomainError("two-representation check: generator " + to_string(combo->generators[i]) +
                                  " is not in the cone");
        }
    Vector first = Vector(x1.begin(), x1.end()) + pos_combo.combine(n);
    Vector second = Vector(x2.begin(), x2.end()) - neg_combo.combine(n);
    if (first != second)
        throw RepresentationMismatch("representations differ: " + to_string(first) + " vs " + to_string(second));
    return P.contains(first);
}

} // namespace prox
