#include "prox/pipeline.hpp"

#include "prox/errors.hpp"
#include "prox/linalg.hpp"

#include <algorithm>

namespace prox {

const Rational& Schedule::chi_at(std::size_t j) const
{
    if (j == 0 || j > chi.size())
        throw DomainError("chi index " + std::to_string(j) + " outside 1.." + std::to_string(chi.size()));
    return chi[j - 1];
}

Rational Schedule::psi_at(std::size_t j) const
{
    if (j == 0)
        return 0;
    if (j > psi.size())
        throw DomainError("psi index " + std::to_string(j) + " outside 0.." + std::to_string(psi.size()));
    return psi[j - 1];
}

Schedule compute_schedule(std::size_t n, const Integer& delta, std::size_t k, const Rational& eps)
{
    if (sgn(eps) <= 0 || eps > 1)
        throw DomainError("epsilon must lie in (0, 1], got " + to_string(eps));
    if (n == 0)
        throw DomainError("schedule needs n >= 1");
    if (delta < 1)
        throw DomainError("schedule needs Delta >= 1, got " + delta.get_str());
    if (k > n)
        throw DomainError("schedule needs k <= n");

    Schedule s;
    s.eps = eps;
    s.n = n;
    s.delta = delta;
    s.k = k;
    const Rational D(delta);
    const Rational nD = Rational(static_cast<unsigned long>(n)) * D;
    Rational acc = 0; // sum_{i<j} Delta chi_i
    for (std::size_t j = 1; j <= k; ++j) {
        Rational chi = j == 1 ? Rational(8 * nD / eps + 2 * nD) : Rational(2 * nD + 8 / eps * (acc + nD));
        acc += D * chi;
        s.chi.push_back(chi);
        s.psi.push_back(acc);
    }
    Rational base = 10 * D / eps + 1;
    s.theorem_bound = nD;
    for (std::size_t j = 0; j < k; ++j)
        s.theorem_bound *= base;
    return s;
}

NormalizedInstance normalize(const Instance& inst, std::span<const Rational> xd)
{
    inst.validate();
    if (xd.size() != inst.n())
        throw InputError("integer anchor has dimension " + std::to_string(xd.size()) + ", expected " +
                         std::to_string(inst.n()));
    if (!is_integer(xd))
        throw InputError("integer anchor " + to_string(Vector(xd.begin(), xd.end())) + " is not integer");
    if (!inst.polyhedron().contains(xd))
        throw InputError("integer anchor " + to_string(Vector(xd.begin(), xd.end())) + " is infeasible");

    NormalizedInstance out{inst, Vector(xd.begin(), xd.end()), eval_f(inst, xd)};
    out.instance.b = inst.b - inst.A * xd;
    for (std::size_t i = 0; i < inst.k; ++i)
        out.instance.h[i] = inst.h[i] - 2 * inst.q[i] * xd[i];
    return out;
}

namespace {

void require(bool condition, const char* claim, const std::string& detail)
{
    if (!condition)
        throw InvariantViolation(claim, detail);
}

struct Partition
{
    std::vector<std::size_t> zero_set;
    std::vector<std::size_t> support;
};

Partition partition(std::span<const Rational> x, std::size_t k)
{
    Partition p;
    for (std::size_t i = 0; i < k; ++i)
        (sgn(x[i]) == 0 ? p.zero_set : p.support).push_back(i);
    return p;
}

// Smallest |x_i| over the support, first index on ties.
std::size_t smallest_support_index(std::span<const Rational> x, const std::vector<std::size_t>& support)
{
    std::size_t s = support.front();
    for (auto i : support)
        if (abs(x[i]) < abs(x[s]))
            s = i;
    return s;
}

ConicDecomposition with_coefficients(const ConicDecomposition& base, std::vector<Rational> coefficients)
{
    return ConicDecomposition{base.generators, std::move(coefficients)};
}

// Certificate via two representations; wraps the check's own errors into the claim.
void certify(const char* claim, const Polyhedron& P, const ProximityCone& cone, std::span<const Rational> x1,
             std::span<const Rational> x2, const ConicDecomposition& pos, const ConicDecomposition& neg)
{
    bool inside = false;
    try {
        inside = check_two_representations(P, cone, x1, x2, pos, neg);
    } catch (const RepresentationMismatch& e) {
        throw InvariantViolation(claim, e.what());
    } catch (const DomainError& e) {
        throw InvariantViolation(claim, e.what());
    }
    require(inside, claim, "certified point lies outside the polyhedron");
}

Rational nDelta(std::size_t n, const Integer& delta)
{
    return Rational(static_cast<unsigned long>(n)) * Rational(delta);
}

} // namespace

OneStepResult one_step(const Instance& inst, std::span<const Rational> xa, const Integer& delta)
{
    const std::size_t n = inst.n();
    if (xa.size() != n)
        throw DimensionError("one_step: point has the wrong dimension");
    const Polyhedron P = inst.polyhedron();
    if (!P.contains(xa))
        throw DomainError("one_step: x^a is infeasible");
    auto [Z, N] = partition(xa, inst.k);
    if (N.empty())
        throw DomainError("one_step: every quadratic coordinate is already zero");
    const std::size_t s = smallest_support_index(xa, N);
    const Rational xs_abs = abs(xa[s]);
    if (inf_norm(xa) <= Rational(delta) * xs_abs)
        throw DomainError("one_step: ||x^a|| <= Delta |x^a_s|; the sequence should have stopped");

    const Polyhedron P_tilde = P.with_fixed_zero(Z);
    const Vector origin = zeros(n);
    const ProximityCone cone = build_cone(P_tilde.A(), xa, origin);
    const GeneratorSet gens = enumerate_generators(cone, delta);
    ConicDecomposition alpha;
    try {
        alpha = caratheodory_decompose(xa, gens);
    } catch (const NotInConeError& e) {
        throw InvariantViolation("onestep-decomposition", e.what());
    }

    // Greedy fill over generators whose s-th entry has the sign of x^a_s.
    const int sign = sgn(xa[s]);
    std::vector<Rational> lambda(alpha.size(), Rational(0));
    Rational residual = xs_abs;
    for (std::size_t i = 0; i < alpha.size() && sgn(residual) > 0; ++i) {
        const Rational& vs = alpha.generators[i][s];
        if (sgn(vs) != sign)
            continue;
        lambda[i] = std::min(alpha.coefficients[i], Rational(residual / abs(vs)));
        residual -= lambda[i] * abs(vs);
    }
    require(sgn(residual) == 0, "onestep-lambda", "selected generators cannot absorb x^a_s");

    const ConicDecomposition step = with_coefficients(alpha, lambda);
    Vector xb = Vector(xa.begin(), xa.end()) - step.combine(n);

    for (auto i : Z)
        require(sgn(xb[i]) == 0, "onestep-i", "coordinate " + std::to_string(i + 1) + " left the zero set");
    require(sgn(xb[s]) == 0, "onestep-i", "coordinate s = " + std::to_string(s + 1) + " was not zeroed");
    require(inf_distance(xa, xb) <= Rational(delta) * xs_abs, "onestep-ii",
            "step length " + to_string(inf_distance(xa, xb)) + " exceeds Delta |x^a_s|");

    std::vector<Rational> rest(alpha.size());
    for (std::size_t i = 0; i < alpha.size(); ++i)
        rest[i] = alpha.coefficients[i] - lambda[i];
    certify("onestep-iii", P_tilde, cone, origin, xa, with_coefficients(alpha, rest), step);
    require(P.contains(xb), "onestep-feasible", "x^b is infeasible");

    StepRecord record;
    record.x = Vector(xa.begin(), xa.end());
    record.zero_set = std::move(Z);
    record.support = std::move(N);
    record.s = s;
    record.lambda = std::move(lambda);
    record.decomposition = std::move(alpha);
    return {std::move(xb), std::move(record)};
}

const char* to_string(Termination t)
{
    return t == Termination::all_large ? "all-large" : "small-norm";
}

const char* to_string(ProximityCase c)
{
    return c == ProximityCase::c1 ? "c1" : "c2";
}

SequenceResult build_sequence(const Instance& inst, std::span<const Rational> xc, const Schedule& schedule)
{
    const std::size_t n = inst.n();
    const std::size_t k = inst.k;
    if (xc.size() != n)
        throw DimensionError("build_sequence: continuous anchor has the wrong dimension");
    if (schedule.k != k || schedule.n != n)
        throw DomainError("build_sequence: schedule was computed for a different (n, k)");
    const Polyhedron P = inst.polyhedron();
    const Vector x_c(xc.begin(), xc.end());
    const Rational D(schedule.delta);

    SequenceResult out;
    Vector x = x_c;
    for (std::size_t j = 0;; ++j) {
        auto [Z, N] = partition(x, k);
        if (j >= k && !N.empty())
            throw InvariantViolation("sequence-length", "more than k steps would be needed");

        bool all_large = true;
        for (auto i : N)
            all_large = all_large && abs(x[i]) > schedule.chi_at(j + 1);
        if (all_large) {
            out.termination = Termination::all_large;
        } else {
            const std::size_t s = smallest_support_index(x, N);
            if (inf_norm(x) <= D * abs(x[s]))
                out.termination = Termination::small_norm;
            else {
                auto [next, record] = one_step(inst, x, schedule.delta);
                record.j = j;
                const auto next_zero = partition(next, k).zero_set;
                require(next_zero.size() > Z.size(), "sequence-zeros", "zero set did not grow");
                require(inf_distance(x, next) <= D * schedule.chi_at(j + 1), "sequence-step",
                        "step " + std::to_string(j + 1) + " longer than Delta chi_" + std::to_string(j + 1));

                // x^c - x^{j+1} in P, certified from x^c - x^j in P.
                std::vector<Rational> rest(record.decomposition.size());
                for (std::size_t i = 0; i < rest.size(); ++i)
                    rest[i] = record.decomposition.coefficients[i] - record.lambda[i];
                const ProximityCone cone = build_cone(inst.A, x, zeros(n));
                certify("xell-a", P, cone, x_c - x, x_c, with_coefficients(record.decomposition, record.lambda),
                        with_coefficients(record.decomposition, rest));

                out.trace.push_back(std::move(record));
                x = std::move(next);
                continue;
            }
        }
        out.zero_set = std::move(Z);
        out.support = std::move(N);
        break;
    }
    out.x_ell = std::move(x);
    require(P.contains(x_c - out.x_ell), "xell-a", "x^c - x^ell is infeasible");
    require(inf_distance(x_c, out.x_ell) <= schedule.psi_at(out.trace.size()), "xell-b",
            "||x^c - x^ell|| = " + to_string(inf_distance(x_c, out.x_ell)) + " exceeds psi_ell");
    return out;
}

Witnesses midpoint_witnesses(std::span<const Rational> x_star_int, const ConicDecomposition& decomposition,
                             std::span<const Rational> xc, std::span<const Rational> x_star_cont)
{
    const std::size_t n = x_star_int.size();
    if (xc.size() != n || x_star_cont.size() != n)
        throw DimensionError("midpoint_witnesses: dimension mismatch");
    std::vector<Rational> left(decomposition.size());
    std::vector<Rational> right(decomposition.size());
    for (std::size_t i = 0; i < decomposition.size(); ++i) {
        Integer fl = floor(decomposition.coefficients[i]);
        Integer half = fl / 2; // fl >= 0, so this is the floor
        left[i] = Rational(half);
        right[i] = Rational(fl - half);
    }
    Witnesses w;
    w.x_tri = Rational(1, 2) * Vector(x_star_int.begin(), x_star_int.end());
    w.x_l = with_coefficients(decomposition, left).combine(n);
    w.x_r = with_coefficients(decomposition, right).combine(n);
    w.x_dia = Rational(1, 2) * (Vector(xc.begin(), xc.end()) + Vector(x_star_cont.begin(), x_star_cont.end()));
    return w;
}

PipelineResult construct_xstar_int(const Instance& inst, std::span<const Rational> xc, const SequenceResult& seq,
                                   const Schedule& schedule)
{
    const std::size_t n = inst.n();
    const Polyhedron P = inst.polyhedron();
    const Vector x_c(xc.begin(), xc.end());
    const Vector origin = zeros(n);
    const Rational D(schedule.delta);
    const Rational nD = nDelta(n, schedule.delta);
    const std::size_t ell = seq.trace.size();
    const Vector& x_ell = seq.x_ell;

    PipelineResult r;
    r.termination = seq.termination;
    r.schedule = schedule;
    r.xc = x_c;
    r.xd = origin;
    r.x_ell = x_ell;
    r.trace = seq.trace;
    r.zero_set = seq.zero_set;
    r.support = seq.support;
    r.checked_claims = {"xell-a", "xell-b"};

    if (seq.termination == Termination::small_norm) {
        r.which = ProximityCase::c1;
        require(ell + 1 <= inst.k, "xell-c1", "small-norm termination with ell = k");
        require(inf_norm(x_ell) <= D * schedule.chi_at(ell + 1), "xell-c1", "||x^ell|| exceeds Delta chi_{ell+1}");
        require(inf_norm(x_c) <= schedule.psi_at(ell + 1), "c1-distance",
                "||x^c - x^d|| = " + to_string(inf_norm(x_c)) + " exceeds psi_{ell+1}");
        r.x_star_int = origin;
        r.x_star_cont = x_c;
        r.checked_claims.insert(r.checked_claims.end(), {"xell-c1", "c1-distance"});
    } else {
        r.which = ProximityCase::c2;
        for (auto i : seq.support)
            require(abs(x_ell[i]) > schedule.chi_at(ell + 1), "xell-c2",
                    "coordinate " + std::to_string(i + 1) + " is not above chi_{ell+1}");

        const Polyhedron P_bar = P.with_fixed_zero(seq.zero_set);
        const ProximityCone cone_bar = build_cone(P_bar.A(), x_ell, origin);
        ConicDecomposition gamma;
        try {
            gamma = caratheodory_decompose(x_ell, enumerate_generators(cone_bar, schedule.delta));
        } catch (const NotInConeError& e) {
            throw InvariantViolation("xstar-decomposition", e.what());
        }
        std::vector<Rational> floors(gamma.size());
        std::vector<Rational> fractions(gamma.size());
        for (std::size_t i = 0; i < gamma.size(); ++i) {
            floors[i] = Rational(floor(gamma.coefficients[i]));
            fractions[i] = gamma.coefficients[i] - floors[i];
        }
        const ConicDecomposition rounded = with_coefficients(gamma, floors);
        const ConicDecomposition remainder = with_coefficients(gamma, fractions);
        const Vector x_star = rounded.combine(n);

        require(is_integer(x_star), "xstar-integer", "x^* is not integer");
        certify("observation", P_bar, cone_bar, origin, x_ell, rounded, remainder);
        require(inf_distance(x_ell, x_star) <= nD, "floor-residual",
                "||x^ell - x^*|| = " + to_string(inf_distance(x_ell, x_star)) + " exceeds n Delta");

        if (!seq.support.empty()) {
            const Rational lower = schedule.chi_at(ell + 1) - nD;
            for (auto i : seq.support)
                require(abs(x_star[i]) >= lower, "xstar-d",
                        "|x^*_" + std::to_string(i + 1) + "| below chi_{ell+1} - n Delta");
        }
        require(partition(x_star, inst.k).zero_set == seq.zero_set, "xstar-e", "zero set of x^* differs from Z^ell");
        require(inf_distance(x_c, x_star) <= schedule.psi_at(ell) + nD, "xstar-f",
                "||x^c - x^*|| exceeds psi_ell + n Delta");
        const ProximityCone cone = build_cone(inst.A, x_ell, origin);
        certify("xstar-g", P, cone, x_c - x_ell, x_c, remainder, rounded);

        r.x_star_int = x_star;
        r.x_star_cont = x_c - x_star;
        r.rounding = gamma;

        Witnesses w = midpoint_witnesses(r.x_star_int, gamma, x_c, r.x_star_cont);
        require(is_integer(w.x_l) && is_integer(w.x_r) && P_bar.contains(w.x_l) && P_bar.contains(w.x_r),
                "witness-membership", "x^l or x^r is not an integer point of the restricted polyhedron");
        require(Rational(1, 2) * (w.x_l + w.x_r) == w.x_tri, "witness-midpoint", "(x^l + x^r)/2 != x^*/2");
        require(inf_distance(w.x_l, w.x_r) <= nD, "witness-spread", "||x^r - x^l|| exceeds n Delta");
        require(P.contains(w.x_dia), "witness-dia", "(x^c + x^star)/2 is infeasible");
        Rational q_support = 0;
        for (auto i : seq.support)
            q_support += inst.q[i];
        const Rational best = std::max(eval_f(inst, w.x_l), eval_f(inst, w.x_r));
        require(best >= eval_f(inst, w.x_tri) - nD * nD / 4 * q_support, "claim-b",
                "neither midpoint witness is close enough to f(x^tri)");
        r.witnesses = std::move(w);
        r.checked_claims.insert(r.checked_claims.end(),
                                {"xell-c2", "xstar-integer", "observation", "floor-residual", "xstar-d", "xstar-e",
                                 "xstar-f", "xstar-g", "witness-membership", "witness-midpoint", "witness-spread",
                                 "witness-dia", "claim-b"});
    }

    require(is_integer(r.x_star_int) && P.contains(r.x_star_int), "output-feasible", "x^* is not a lattice point of P");
    require(P.contains(r.x_star_cont), "output-feasible", "x^star is infeasible");
    r.distance_int = inf_distance(x_c, r.x_star_int);
    r.distance_cont = inf_norm(r.x_star_cont);
    require(r.distance_int == r.distance_cont, "distance-symmetry", "||x^c - x^*|| != ||x^star - x^d||");
    require(r.distance_int <= schedule.theorem_bound, "theorem-bound",
            "distance " + to_string(r.distance_int) + " exceeds " + to_string(schedule.theorem_bound));
    r.checked_claims.insert(r.checked_claims.end(), {"output-feasible", "distance-symmetry", "theorem-bound"});
    return r;
}

namespace {

void shift(Vector& v, const Vector& offset)
{
    v = v + offset;
}

} // namespace

PipelineResult run_pipeline(const Instance& inst, const Rational& eps, std::span<const Rational> xc,
                            std::span<const Rational> xd, PipelineMode mode)
{
    inst.validate();
    if (xc.size() != inst.n())
        throw InputError("continuous anchor has dimension " + std::to_string(xc.size()) + ", expected " +
                         std::to_string(inst.n()));
    if (!inst.polyhedron().contains(xc))
        throw InputError("continuous anchor " + to_string(Vector(xc.begin(), xc.end())) + " is infeasible");
    const NormalizedInstance norm = normalize(inst, xd);

    std::optional<OracleReport> oracles;
    if (mode == PipelineMode::checked) {
        oracles = run_oracles(inst);
        if (eval_f(inst, xc) != oracles->cont_opt.value)
            throw InputError("continuous anchor is not optimal: f = " + to_string(eval_f(inst, xc)) +
                             ", optimum " + to_string(oracles->cont_opt.value));
        if (eval_f(inst, xd) != oracles->int_opt.value)
            throw InputError("integer anchor is not optimal: f = " + to_string(eval_f(inst, xd)) + ", optimum " +
                             to_string(oracles->int_opt.value));
    }

    const Integer delta = max_abs_subdeterminant(inst.A).value;
    const Schedule schedule = compute_schedule(inst.n(), delta, inst.k, eps);
    const Vector& offset = norm.offset;
    const Vector xc_norm = Vector(xc.begin(), xc.end()) - offset;
    const SequenceResult seq = build_sequence(norm.instance, xc_norm, schedule);
    PipelineResult r = construct_xstar_int(norm.instance, xc_norm, seq, schedule);

    r.xc = Vector(xc.begin(), xc.end());
    r.xd = offset;
    shift(r.x_ell, offset);
    shift(r.x_star_int, offset);
    shift(r.x_star_cont, offset);
    for (auto& step : r.trace)
        shift(step.x, offset);
    if (r.witnesses) {
        shift(r.witnesses->x_tri, offset);
        shift(r.witnesses->x_l, offset);
        shift(r.witnesses->x_r, offset);
        shift(r.witnesses->x_dia, offset);
    }

    if (oracles) {
        PipelineAudit audit = audit_pipeline(inst, r, *oracles);
        r.int_verdict = audit.int_verdict;
        r.cont_verdict = audit.cont_verdict;
        r.checked_claims.insert(r.checked_claims.end(), audit.checked_claims.begin(), audit.checked_claims.end());
    }
    return r;
}

PipelineAudit audit_pipeline(const Instance& inst, const PipelineResult& r, const OracleReport& oracles)
{
    PipelineAudit out;
    const Rational f_xd = eval_f(inst, r.xd);
    const Rational f_xc = eval_f(inst, r.xc);
    if (r.which == ProximityCase::c2) {
        const std::size_t n = inst.n();
        const Rational nD = nDelta(n, r.schedule.delta);
        const Vector x_star = r.x_star_int - r.xd; // anchor at the origin
        Rational weighted_abs = 0;
        Rational weighted_sq = 0;
        Rational weighted_gap = 0;
        for (auto i : r.support) {
            weighted_abs += inst.q[i] * abs(x_star[i]);
            weighted_sq += inst.q[i] * x_star[i] * x_star[i];
            weighted_gap += inst.q[i] * (x_star[i] * x_star[i] - nD * nD);
        }
        const Rational slack = 2 * (r.schedule.psi_at(r.trace.size()) + nD) * weighted_abs;

        require(eval_f(inst, r.x_star_int) - f_xd <= slack, "ratio-1", "f(x^*) - f(x^d) above its bound");
        const Vector x_tri = Rational(1, 2) * (r.xd + r.x_star_int);
        require(eval_f(inst, x_tri) - f_xd >= weighted_sq / 4, "claim-a", "f(x^tri) - f(x^d) below its bound");
        require(oracles.fmax_int.value - f_xd >= weighted_gap / 4, "ratio-2", "f^d_max - f(x^d) below its bound");
        require(eval_f(inst, r.x_star_cont) - f_xc <= slack, "rub", "f(x^star) - f(x^c) above its bound");
        require(oracles.fmax_cont.value - f_xc >= weighted_sq / 4, "rlb", "f^c_max - f(x^c) below its bound");
        out.checked_claims = {"ratio-1", "claim-a", "ratio-2", "rub", "rlb"};
    }
    const Rational& eps = r.schedule.eps;
    out.int_verdict = verdict(inst, r.x_star_int, eps, ApproxMode::integer, oracles);
    out.cont_verdict = verdict(inst, r.x_star_cont, eps, ApproxMode::continuous, oracles);
    require(out.int_verdict.is_approx, "solution", "x^* is not an epsilon-approximate integer solution");
    require(out.cont_verdict.is_approx, "rresult", "x^star is not an epsilon-approximate continuous solution");
    out.checked_claims.insert(out.checked_claims.end(), {"solution", "rresult"});
    return out;
}

} // namespace prox
