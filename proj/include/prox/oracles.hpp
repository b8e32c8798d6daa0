#pragma once

#include "prox/exact.hpp"
#include "prox/instance.hpp"

#include <optional>
#include <vector>

namespace prox {

/// Exact brute-force ground truth over bounded instances.

struct OptimumReport
{
    Vector point;             // lexicographically smallest optimum
    Rational value;
    std::vector<Vector> ties; // every optimum found, sorted
};

struct MaximumReport
{
    Rational value;
    Vector argmax;
};

struct OracleReport
{
    OptimumReport int_opt;  // x^d
    OptimumReport cont_opt; // x^c (vertex optima)
    MaximumReport fmax_int;
    MaximumReport fmax_cont;
};

/// Minimiser over the lattice points of P. Throws InfeasibleError when there
/// are none, UnboundedError when P is unbounded.
OptimumReport solve_iqp(const Instance& inst);

/// Minimiser over P. Concave objectives attain their minimum at a vertex, so
/// this scans the vertex list; `ties` holds every optimal vertex.
OptimumReport solve_qp(const Instance& inst);

MaximumReport fmax_int(const Instance& inst);

/// Maximum of the concave objective over P. Every maximiser lies in the
/// relative interior of some face and is stationary on that face's affine
/// hull, so one LP per face over {gradient in row space of the face's
/// equality rows, point in the face} finds it.
MaximumReport fmax_cont(const Instance& inst);

OracleReport run_oracles(const Instance& inst);

enum class ApproxMode { integer, continuous };

struct ApproxVerdict
{
    bool is_approx = false;
    std::optional<Rational> ratio; // empty when f_max == f(x_opt)
    bool degenerate = false;
};

/// Evaluates f(x) - f_opt <= eps (f_max - f_opt) exactly.
ApproxVerdict approx_verdict(const Rational& fx, const Rational& f_opt, const Rational& f_max, const Rational& eps);

/// Verdict against freshly computed oracle values. Throws InputError when x
/// is infeasible (or not integer in integer mode).
ApproxVerdict verdict(const Instance& inst, std::span<const Rational> x, const Rational& eps, ApproxMode mode);
ApproxVerdict verdict(const Instance& inst, std::span<const Rational> x, const Rational& eps, ApproxMode mode,
                      const OracleReport& oracles);

struct DeltaStarReport
{
    Rational value;
    Vector xc;                        // continuous optimum attaining it
    Vector x;                         // epsilon-approximate lattice point attaining it
    std::vector<Vector> approx_points; // every epsilon-approximate lattice point
    /// Set when several vertex optima exist; the optimal set may then be a
    /// higher-dimensional face and `value` only bounds the true minimum from above.
    bool upper_bound_only = false;
};

/// min ||x^c - x||_inf over vertex optima x^c and epsilon-approximate lattice points x.
DeltaStarReport delta_star(const Instance& inst, const Rational& eps);

struct ContinuousCertificate
{
    bool certified = false;
    Rational threshold; // f(x^c) + eps (f^c_max - f(x^c))
    std::optional<Rational> box_min; // min f over P intersected with the box; empty if that set is empty
    Vector box_argmin;
};

/// Certifies that no epsilon-approximate point of the continuous problem lies
/// within `radius` of `center`: true iff min f over P ∩ box(center, radius)
/// exceeds the approximation threshold.
ContinuousCertificate certify_no_cont_approx_within(const Instance& inst, const Rational& eps,
                                                    std::span<const Rational> center, const Rational& radius);

} // namespace prox
