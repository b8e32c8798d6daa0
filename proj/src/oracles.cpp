#include "prox/oracles.hpp"

#include "prox/errors.hpp"
#include "prox/lp.hpp"

#include <algorithm>

namespace prox {

namespace {

std::vector<Vector> lattice_points_or_throw(const Instance& inst)
{
    const Polyhedron P = inst.polyhedron();
    if (!bounding_box(P))
        throw InfeasibleError("the polyhedron is empty");
    auto points = enumerate_lattice_points(P);
    if (points.empty())
        throw InfeasibleError("the polyhedron contains no integer point");
    return points;
}

OptimumReport minimise_over(const Instance& inst, const std::vector<Vector>& candidates)
{
    OptimumReport out;
    bool first = true;
    for (const auto& x : candidates) {
        Rational v = eval_f(inst, x);
        if (first || v < out.value) {
            out.value = v;
            out.ties.clear();
            first = false;
        }
        if (v == out.value)
            out.ties.push_back(x);
    }
    std::sort(out.ties.begin(), out.ties.end(), LexLess{});
    out.point = out.ties.front();
    return out;
}

} // namespace

OptimumReport solve_iqp(const Instance& inst)
{
    inst.validate();
    return minimise_over(inst, lattice_points_or_throw(inst));
}

OptimumReport solve_qp(const Instance& inst)
{
    inst.validate();
    const Polyhedron P = inst.polyhedron();
    if (!bounding_box(P))
        throw InfeasibleError("the polyhedron is empty");
    std::vector<Vector> points;
    for (auto& v : enumerate_vertices(P))
        points.push_back(std::move(v.point));
    if (points.empty())
        throw InvariantViolation("vertex-enumeration", "bounded nonempty polyhedron without vertices");
    return minimise_over(inst, points);
}

MaximumReport fmax_int(const Instance& inst)
{
    inst.validate();
    MaximumReport out;
    bool first = true;
    for (const auto& x : lattice_points_or_throw(inst)) {
        Rational v = eval_f(inst, x);
        if (first || v > out.value) {
            out.value = v;
            out.argmax = x;
            first = false;
        }
    }
    return out;
}

MaximumReport fmax_cont(const Instance& inst)
{
    inst.validate();
    const Polyhedron P = inst.polyhedron();
    if (!bounding_box(P))
        throw InfeasibleError("the polyhedron is empty");
    const std::size_t n = inst.n();

    MaximumReport out;
    bool first = true;
    for (const auto& face : enumerate_faces(P)) {
        const auto& I = face.equality_rows;
        // Variables: x (n entries), then one multiplier per equality row.
        LinearProgram lp;
        lp.num_vars = n + I.size();
        for (std::size_t j = 0; j < n; ++j) {
            Vector row = zeros(lp.num_vars);
            if (j < inst.k)
                row[j] = -2 * inst.q[j];
            for (std::size_t t = 0; t < I.size(); ++t)
                row[n + t] = -inst.A(I[t], j);
            lp.add(std::move(row), Relation::equal, -inst.h[j]);
        }
        for (std::size_t r = 0; r < inst.m(); ++r) {
            Vector row = zeros(lp.num_vars);
            for (std::size_t j = 0; j < n; ++j)
                row[j] = inst.A(r, j);
            bool tight = std::find(I.begin(), I.end(), r) != I.end();
            lp.add(std::move(row), tight ? Relation::equal : Relation::less_equal, inst.b[r]);
        }
        auto result = lp_solve(lp);
        if (result.status != LpStatus::optimal)
            continue;
        Vector x(result.point->begin(), result.point->begin() + static_cast<std::ptrdiff_t>(n));
        Rational v = eval_f(inst, x);
        if (first || v > out.value) {
            out.value = v;
            out.argmax = std::move(x);
            first = false;
        }
    }
    if (first)
        throw InvariantViolation("fmax-cont", "no face carries a stationary point");
    return out;
}

OracleReport run_oracles(const Instance& inst)
{
    return OracleReport{solve_iqp(inst), solve_qp(inst), fmax_int(inst), fmax_cont(inst)};
}

ApproxVerdict approx_verdict(const Rational& fx, const Rational& f_opt, const Rational& f_max, const Rational& eps)
{
    if (sgn(eps) < 0 || eps > 1)
        throw DomainError("epsilon must lie in [0, 1], got " + to_string(eps));
    if (f_max < f_opt)
        throw DomainError("f_max below f_opt");
    ApproxVerdict out;
    Rational gap = f_max - f_opt;
    if (sgn(gap) == 0) {
        out.degenerate = true;
        out.is_approx = fx <= f_opt;
        return out;
    }
    out.ratio = (fx - f_opt) / gap;
    out.is_approx = *out.ratio <= eps;
    return out;
}

namespace {

void check_candidate(const Instance& inst, std::span<const Rational> x, ApproxMode mode)
{
    if (x.size() != inst.n())
        throw DimensionError("verdict: point of dimension " + std::to_string(x.size()) + ", expected " +
                             std::to_string(inst.n()));
    if (mode == ApproxMode::integer && !is_integer(x))
        throw InputError("verdict: " + to_string(Vector(x.begin(), x.end())) + " is not an integer point");
    if (!inst.polyhedron().contains(x))
        throw InputError("verdict: " + to_string(Vector(x.begin(), x.end())) + " is not feasible");
}

} // namespace

ApproxVerdict verdict(const Instance& inst, std::span<const Rational> x, const Rational& eps, ApproxMode mode)
{
    inst.validate();
    check_candidate(inst, x, mode);
    if (mode == ApproxMode::integer)
        return approx_verdict(eval_f(inst, x), solve_iqp(inst).value, fmax_int(inst).value, eps);
    return approx_verdict(eval_f(inst, x), solve_qp(inst).value, fmax_cont(inst).value, eps);
}

ApproxVerdict verdict(const Instance& inst, std::span<const Rational> x, const Rational& eps, ApproxMode mode,
                      const OracleReport& oracles)
{
    check_candidate(inst, x, mode);
    if (mode == ApproxMode::integer)
        return approx_verdict(eval_f(inst, x), oracles.int_opt.value, oracles.fmax_int.value, eps);
    return approx_verdict(eval_f(inst, x), oracles.cont_opt.value, oracles.fmax_cont.value, eps);
}

DeltaStarReport delta_star(const Instance& inst, const Rational& eps)
{
    inst.validate();
    auto points = lattice_points_or_throw(inst);
    OptimumReport iopt = minimise_over(inst, points);
    Rational fmax = iopt.value;
    for (const auto& x : points)
        fmax = std::max(fmax, eval_f(inst, x));
    OptimumReport copt = solve_qp(inst);

    DeltaStarReport out;
    for (const auto& x : points)
        if (approx_verdict(eval_f(inst, x), iopt.value, fmax, eps).is_approx)
            out.approx_points.push_back(x);
    bool first = true;
    for (const auto& xc : copt.ties)
        for (const auto& x : out.approx_points) {
            Rational d = inf_distance(xc, x);
            if (first || d < out.value) {
                out.value = d;
                out.xc = xc;
                out.x = x;
                first = false;
            }
        }
    out.upper_bound_only = copt.ties.size() > 1;
    return out;
}

ContinuousCertificate certify_no_cont_approx_within(const Instance& inst, const Rational& eps,
                                                    std::span<const Rational> center, const Rational& radius)
{
    inst.validate();
    if (sgn(radius) < 0)
        throw DomainError("certificate radius must be nonnegative");
    if (center.size() != inst.n())
        throw DimensionError("certificate centre has the wrong dimension");
    OptimumReport copt = solve_qp(inst);
    MaximumReport cmax = fmax_cont(inst);
    if (sgn(eps) < 0 || eps > 1)
        throw DomainError("epsilon must lie in [0, 1], got " + to_string(eps));

    ContinuousCertificate out;
    out.threshold = copt.value + eps * (cmax.value - copt.value);
    const Polyhedron Q = intersect_with_box(inst.polyhedron(), center, radius);
    if (!bounding_box(Q)) {
        out.certified = true;
        return out;
    }
    bool first = true;
    for (const auto& v : enumerate_vertices(Q)) {
        Rational fv = eval_f(inst, v.point);
        if (first || fv < *out.box_min) {
            out.box_min = fv;
            out.box_argmin = v.point;
            first = false;
        }
    }
    out.certified = *out.box_min > out.threshold;
    return out;
}

} // namespace prox
