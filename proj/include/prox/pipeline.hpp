#pragma once

#include "prox/cone.hpp"
#include "prox/exact.hpp"
#include "prox/instance.hpp"
#include "prox/oracles.hpp"

#include <optional>
#include <string>
#include <vector>

namespace prox {

/// Thresholds chi_1..chi_k and accumulated distances psi_1..psi_k for a given
/// (n, Delta, k, eps), plus the closed-form bound n Delta (10 Delta / eps + 1)^k.
struct Schedule
{
    Rational eps;
    std::size_t n = 0;
    Integer delta;
    std::size_t k = 0;
    std::vector<Rational> chi;
    std::vector<Rational> psi;
    Rational theorem_bound;

    /// 1-based, as in the recurrence.
    const Rational& chi_at(std::size_t j) const;
    /// 1-based; psi_at(0) is zero.
    Rational psi_at(std::size_t j) const;
};

/// Throws DomainError unless eps is in (0, 1], n >= 1, delta >= 1 and k <= n.
Schedule compute_schedule(std::size_t n, const Integer& delta, std::size_t k, const Rational& eps);

/// The instance translated so that the integer anchor sits at the origin:
/// f'(y) = f(y + offset) - f(offset).
struct NormalizedInstance
{
    Instance instance;
    Vector offset;
    Rational value_at_offset; // f(offset) in the original instance
};

/// Throws InputError if xd is not an integer point of P.
NormalizedInstance normalize(const Instance& inst, std::span<const Rational> xd);

/// One application of the zeroing step.
struct StepRecord
{
    std::size_t j = 0;                  // index of the iterate this step starts from
    Vector x;                           // x^j
    std::vector<std::size_t> zero_set;  // Z^j, 0-based coordinates below k
    std::vector<std::size_t> support;   // N^j
    std::size_t s = 0;                  // coordinate driven to zero
    std::vector<Rational> lambda;       // one entry per generator of `decomposition`
    ConicDecomposition decomposition;   // x^j over the cone at x^j
};

struct OneStepResult
{
    Vector xb;
    StepRecord record;
};

/// Zeroes the smallest nonzero quadratic coordinate of xa while keeping the
/// existing zeros. `inst` must be normalized (anchor at the origin). Throws
/// DomainError when the step's precondition fails and InvariantViolation when
/// one of its guarantees does not hold.
OneStepResult one_step(const Instance& inst, std::span<const Rational> xa, const Integer& delta);

enum class Termination { all_large, small_norm };
const char* to_string(Termination t);

struct SequenceResult
{
    Vector x_ell;
    std::vector<StepRecord> trace;
    Termination termination = Termination::all_large;
    std::vector<std::size_t> zero_set; // Z^ell
    std::vector<std::size_t> support;  // N^ell
};

/// Runs the zeroing sequence from the (normalized) continuous anchor until
/// one of the two termination tests fires.
SequenceResult build_sequence(const Instance& inst, std::span<const Rational> xc, const Schedule& schedule);

enum class ProximityCase { c1, c2 };
const char* to_string(ProximityCase c);

struct Witnesses
{
    Vector x_tri; // (x^d + x^*) / 2
    Vector x_l;
    Vector x_r;
    Vector x_dia; // (x^c + x^star) / 2
};

/// Integer points x_l, x_r with midpoint x^* / 2 obtained by splitting the
/// floored coefficients; all vectors relative to an anchor at the origin.
Witnesses midpoint_witnesses(std::span<const Rational> x_star_int, const ConicDecomposition& decomposition,
                             std::span<const Rational> xc, std::span<const Rational> x_star_cont);

struct PipelineResult
{
    ProximityCase which = ProximityCase::c1;
    Termination termination = Termination::all_large;
    Schedule schedule;
    Vector xc;
    Vector xd;
    Vector x_ell;
    Vector x_star_int;
    Vector x_star_cont;
    std::vector<StepRecord> trace;
    std::vector<std::size_t> zero_set;
    std::vector<std::size_t> support;
    ConicDecomposition rounding; // gamma over the final cone; empty in case c1
    std::optional<Witnesses> witnesses;
    Rational distance_int;  // ||x^c - x^*||
    Rational distance_cont; // ||x^star - x^d||
    std::vector<std::string> checked_claims;
    std::optional<ApproxVerdict> int_verdict; // set by audited runs
    std::optional<ApproxVerdict> cont_verdict;
};

/// Builds x^*, x^star (and the midpoint witnesses in case c2) from the
/// sequence output. Works in normalized coordinates; every algebraic claim of
/// the construction is asserted and recorded in `checked_claims`.
PipelineResult construct_xstar_int(const Instance& inst, std::span<const Rational> xc, const SequenceResult& seq,
                                   const Schedule& schedule);

enum class PipelineMode {
    fast,    // anchors trusted
    checked, // anchors re-verified with the oracles, then every optimality-dependent claim audited
};

/// End-to-end run in original coordinates.
PipelineResult run_pipeline(const Instance& inst, const Rational& eps, std::span<const Rational> xc,
                            std::span<const Rational> xd, PipelineMode mode = PipelineMode::checked);

struct PipelineAudit
{
    ApproxVerdict int_verdict;
    ApproxVerdict cont_verdict;
    std::vector<std::string> checked_claims;
};

/// Claims that need the anchors to be optimal: the value bounds on both
/// outputs and the final approximation verdicts. Throws InvariantViolation
/// naming the first claim that fails.
PipelineAudit audit_pipeline(const Instance& inst, const PipelineResult& result, const OracleReport& oracles);

} // namespace prox
