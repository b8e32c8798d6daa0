#pragma once

#include "prox/exact.hpp"

#include <cstdint>
#include <optional>
#include <vector>

namespace prox {

/// {x in R^n : A x <= b} with an integer constraint matrix.
class Polyhedron
{
public:
    Polyhedron(Matrix A, Vector b);

    const Matrix& A() const noexcept { return A_; }
    const Vector& b() const noexcept { return b_; }
    std::size_t dim() const noexcept { return A_.cols(); }
    std::size_t num_rows() const noexcept { return A_.rows(); }

    bool contains(std::span<const Rational> x) const;
    /// Row indices with a_i x = b_i.
    std::vector<std::size_t> tight_rows(std::span<const Rational> x) const;

    /// Adds the rows e_i <= 0 and -e_i <= 0 for every listed coordinate.
    Polyhedron with_fixed_zero(std::span<const std::size_t> coords) const;

private:
    Matrix A_;
    Vector b_;
};

struct Vertex
{
    Vector point;
    std::vector<std::size_t> tight_rows;
};

struct Face
{
    std::vector<std::size_t> equality_rows;
    std::size_t dim = 0;
};

/// Per-coordinate [lower, upper] bounds of a nonempty bounded polyhedron.
struct BoundingBox
{
    Vector lower;
    Vector upper;
};

/// Exact bounding box via 2n LPs. nullopt when P is empty; throws
/// UnboundedError when some coordinate is unbounded.
std::optional<BoundingBox> bounding_box(const Polyhedron& P);

bool contains(const Polyhedron& P, std::span<const Rational> x);

/// All vertices, lexicographically sorted, each point once. Throws
/// UnboundedError if P is unbounded.
std::vector<Vertex> enumerate_vertices(const Polyhedron& P);

/// All integer points of a bounded P, lexicographically sorted.
std::vector<Vector> enumerate_lattice_points(const Polyhedron& P);

/// Every nonempty face, identified by the rows tight on the whole face.
/// Includes P itself and every vertex.
std::vector<Face> enumerate_faces(const Polyhedron& P);

/// P intersected with the infinity-norm ball of `radius` around `center`.
Polyhedron intersect_with_box(const Polyhedron& P, std::span<const Rational> center, const Rational& radius);

} // namespace prox
