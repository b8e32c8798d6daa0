#pragma once

#include "prox/exact.hpp"
#include "prox/polyhedron.hpp"

#include <vector>

namespace prox {

/// T(A, xa, xb) = {x : A1 x <= 0, A2 x >= 0}, where A1 collects the rows u
/// with u xa <= u xb and A2 those with u xa >= u xb. Rows with equality land
/// in both blocks.
struct ProximityCone
{
    Matrix A1;
    Matrix A2;
    std::size_t ambient_dim = 0;

    bool contains(std::span<const Rational> x) const;
};

using GeneratorSet = std::vector<Vector>;

/// Nonnegative combination sum_i coefficients[i] * generators[i].
/// Decompositions returned by caratheodory_decompose have strictly positive
/// coefficients on linearly independent generators.
struct ConicDecomposition
{
    std::vector<Vector> generators;
    std::vector<Rational> coefficients;

    std::size_t size() const noexcept { return generators.size(); }
    /// sum of coefficient * generator; `dim` is used for the empty combination.
    Vector combine(std::size_t dim) const;
};

ProximityCone build_cone(const Matrix& A, std::span<const Rational> xa, std::span<const Rational> xb);

/// Integer generators of the cone, each with infinity norm at most `delta`
/// (the largest absolute subdeterminant of the source matrix, taken as at
/// least one). Obtained orthant by orthant from the extreme rays of the
/// pointed cones T ∩ O, reduced by the gcd of their entries, deduplicated
/// and sorted lexicographically. Empty when the cone is {0}.
GeneratorSet enumerate_generators(const ProximityCone& cone, const Integer& delta);

/// Writes `target` as a positive combination of at most n linearly
/// independent generators. Throws NotInConeError when no nonnegative
/// combination exists.
ConicDecomposition caratheodory_decompose(std::span<const Rational> target, const GeneratorSet& gens);

/// True when target is a nonnegative combination of gens (LP feasibility).
bool in_conic_hull(std::span<const Rational> target, const GeneratorSet& gens);

/// Two-representation certificate: checks x1 + sum a_i v^i == x2 - sum b_i v^i
/// (RepresentationMismatch otherwise) with all v^i in the cone and returns
/// whether the common point lies in P.
bool check_two_representations(const Polyhedron& P, const ProximityCone& cone, std::span<const Rational> x1,
                               std::span<const Rational> x2, const ConicDecomposition& pos_combo,
                               const ConicDecomposition& neg_combo);

} // namespace prox
