#include "prox/commands.hpp"

#include "prox/cone.hpp"
#include "prox/errors.hpp"
#include "prox/families.hpp"
#include "prox/linalg.hpp"
#include "prox/oracles.hpp"

#include <chrono>
#include <set>

namespace prox {

namespace {

Json optimum_json(const OptimumReport& r)
{
    return Json{{"point", to_json(r.point)}, {"value", to_json(r.value)}, {"ties", to_json(r.ties)}};
}

Json maximum_json(const MaximumReport& r)
{
    return Json{{"value", to_json(r.value)}, {"argmax", to_json(r.argmax)}};
}

Json verdict_json(const ApproxVerdict& v)
{
    return Json{{"is_approx", v.is_approx},
                {"ratio", v.ratio ? to_json(*v.ratio) : Json(nullptr)},
                {"degenerate", v.degenerate}};
}

Json indices_json(const std::vector<std::size_t>& ids)
{
    Json out = Json::array();
    for (auto i : ids)
        out.push_back(i);
    return out;
}

Json schedule_json(const Schedule& s)
{
    Json chi = Json::array();
    Json psi = Json::array();
    for (const auto& c : s.chi)
        chi.push_back(to_json(c));
    for (const auto& p : s.psi)
        psi.push_back(to_json(p));
    return Json{{"chi", chi}, {"psi", psi}, {"theorem_bound", to_json(s.theorem_bound)}};
}

Json matrix_rows_json(const Matrix& M)
{
    Json out = Json::array();
    for (std::size_t r = 0; r < M.rows(); ++r)
        out.push_back(to_json(M.row_vector(r)));
    return out;
}

void expect(bool condition, const char* claim, const std::string& detail)
{
    if (!condition)
        throw InvariantViolation(claim, detail);
}

Integer pipeline_delta(const Instance& inst)
{
    return max_abs_subdeterminant(inst.A).value;
}

// ---- family parameters ----

const std::string* find_param(const FamilyParams& params, const std::string& key)
{
    auto it = params.find(key);
    return it == params.end() ? nullptr : &it->second;
}

Rational rational_param(const FamilyParams& params, const std::string& key, std::optional<Rational> fallback = {})
{
    const std::string* text = find_param(params, key);
    if (!text) {
        if (fallback)
            return *fallback;
        throw InputError("missing parameter --" + key);
    }
    try {
        return parse_rational(*text);
    } catch (const DomainError& e) {
        throw InputError("--" + key + ": " + e.what());
    }
}

Integer integer_param(const FamilyParams& params, const std::string& key, std::optional<Integer> fallback = {})
{
    std::optional<Rational> fb;
    if (fallback)
        fb = Rational(*fallback);
    Rational v = rational_param(params, key, fb);
    if (!is_integer(v))
        throw InputError("--" + key + " must be an integer, got " + to_string(v));
    return v.get_num();
}

std::size_t size_param(const FamilyParams& params, const std::string& key)
{
    Integer v = integer_param(params, key);
    if (v < 1)
        throw InputError("--" + key + " must be positive");
    return v.get_ui();
}

void allow_only(const FamilyParams& params, std::set<std::string> allowed)
{
    for (const auto& [key, value] : params)
        if (!allowed.count(key))
            throw InputError("unexpected parameter --" + key);
}

FamilyInstance build_family(const std::string& family, const FamilyParams& params)
{
    try {
        if (family == "example11") {
            allow_only(params, {"t", "eps"});
            return build_example_1_1(integer_param(params, "t", Integer(3)));
        }
        if (family == "ilp") {
            allow_only(params, {"n", "delta", "beta", "t"});
            return build_ilp_tightness(size_param(params, "n"), integer_param(params, "delta"),
                                       rational_param(params, "beta", Rational(1, 2)),
                                       integer_param(params, "t", Integer(1)));
        }
        if (family == "prop45") {
            allow_only(params, {"n", "delta", "eps"});
            return build_prop45(size_param(params, "n"), integer_param(params, "delta"), rational_param(params, "eps"));
        }
        if (family == "prop44") {
            allow_only(params, {"n", "delta", "eps"});
            std::optional<std::size_t> n;
            if (find_param(params, "n"))
                n = size_param(params, "n");
            return build_prop44(rational_param(params, "eps"), integer_param(params, "delta", Integer(1)), n);
        }
        if (family == "prop46") {
            allow_only(params, {"n", "delta", "eps"});
            return build_prop46(size_param(params, "n"), integer_param(params, "delta"), rational_param(params, "eps"));
        }
        if (family == "pr_tight") {
            allow_only(params, {"n", "delta", "t", "a", "beta"});
            return build_pr_tight(size_param(params, "n"), integer_param(params, "delta"), integer_param(params, "t"),
                                  rational_param(params, "a"), rational_param(params, "beta"));
        }
    } catch (const DomainError& e) {
        throw InputError(e.what());
    }
    throw InputError("unknown family \"" + family + "\" (example11, ilp, prop44, prop45, prop46, pr_tight)");
}

Json family_header(const FamilyInstance& f)
{
    Json values = Json::object();
    for (const auto& [name, v] : f.values)
        values[name] = to_json(v);
    Json points = Json::object();
    for (const auto& [name, p] : f.points)
        points[name] = to_json(p);
    return Json{{"family", f.family},
                {"delta", max_abs_subdeterminant(f.instance.A).value.get_str()},
                {"objective_constant", to_json(f.objective_constant)},
                {"expected_values", values},
                {"expected_points", points}};
}

Rational min_distance(const std::vector<Vector>& as, const std::vector<Vector>& bs)
{
    bool first = true;
    Rational best;
    for (const auto& a : as)
        for (const auto& b : bs) {
            Rational d = inf_distance(a, b);
            if (first || d < best) {
                best = d;
                first = false;
            }
        }
    return best;
}

} // namespace

Json cmd_solve(const Instance& inst)
{
    const OracleReport r = run_oracles(inst);
    return Json{{"status", "optimal"},
                {"int_opt", optimum_json(r.int_opt)},
                {"cont_opt", optimum_json(r.cont_opt)},
                {"fmax_int", maximum_json(r.fmax_int)},
                {"fmax_cont", maximum_json(r.fmax_cont)}};
}

Json trace_to_json(const std::vector<StepRecord>& trace)
{
    Json out = Json::array();
    for (const auto& step : trace)
        out.push_back(Json{{"j", step.j},
                           {"x", to_json(step.x)},
                           {"zero_set", indices_json(step.zero_set)},
                           {"support", indices_json(step.support)},
                           {"s", step.s},
                           {"generators", to_json(step.decomposition.generators)},
                           {"alpha", to_json(step.decomposition.coefficients)},
                           {"lambda", to_json(step.lambda)}});
    return out;
}

Json cmd_proximity(const Instance& inst, const ProximityOptions& options)
{
    const auto start = std::chrono::steady_clock::now();
    if (sgn(options.eps) <= 0 || options.eps > 1)
        throw InputError("--eps must lie in (0, 1], got " + to_string(options.eps));
    const OracleReport oracles = run_oracles(inst);
    const Vector xc = options.xc.value_or(oracles.cont_opt.point);
    const Vector xd = options.xd.value_or(oracles.int_opt.point);
    if (options.checked) {
        if (xc.size() != inst.n() || !inst.polyhedron().contains(xc) || eval_f(inst, xc) != oracles.cont_opt.value)
            throw InputError("--xc " + to_string(xc) + " is not an optimal solution of the relaxation");
        if (xd.size() != inst.n() || !is_integer(xd) || !inst.polyhedron().contains(xd) ||
            eval_f(inst, xd) != oracles.int_opt.value)
            throw InputError("--xd " + to_string(xd) + " is not an optimal integer solution");
    }

    PipelineResult r = run_pipeline(inst, options.eps, xc, xd, PipelineMode::fast);
    PipelineAudit audit = audit_pipeline(inst, r, oracles);
    r.checked_claims.insert(r.checked_claims.end(), audit.checked_claims.begin(), audit.checked_claims.end());
    const auto elapsed =
        std::chrono::duration_cast<std::chrono::microseconds>(std::chrono::steady_clock::now() - start).count();

    Json witnesses = nullptr;
    if (r.witnesses)
        witnesses = Json{{"x_tri", to_json(r.witnesses->x_tri)},
                         {"x_l", to_json(r.witnesses->x_l)},
                         {"x_r", to_json(r.witnesses->x_r)},
                         {"x_dia", to_json(r.witnesses->x_dia)}};
    return Json{{"format", "prox-report/1"},
                {"status", "ok"},
                {"instance", instance_to_json(inst)},
                {"instance_digest", instance_digest(inst)},
                {"eps", to_json(options.eps)},
                {"delta", r.schedule.delta.get_str()},
                {"schedule", schedule_json(r.schedule)},
                {"case", to_string(r.which)},
                {"termination", to_string(r.termination)},
                {"xc", to_json(r.xc)},
                {"xd", to_json(r.xd)},
                {"x_ell", to_json(r.x_ell)},
                {"x_star_int", to_json(r.x_star_int)},
                {"x_star_cont", to_json(r.x_star_cont)},
                {"distance_int", to_json(r.distance_int)},
                {"distance_cont", to_json(r.distance_cont)},
                {"oracles",
                 Json{{"xd", to_json(oracles.int_opt.point)},
                      {"f_xd", to_json(oracles.int_opt.value)},
                      {"xc", to_json(oracles.cont_opt.point)},
                      {"f_xc", to_json(oracles.cont_opt.value)},
                      {"fmax_int", to_json(oracles.fmax_int.value)},
                      {"fmax_cont", to_json(oracles.fmax_cont.value)}}},
                {"verdicts", Json{{"int", verdict_json(audit.int_verdict)}, {"cont", verdict_json(audit.cont_verdict)}}},
                {"claims", r.checked_claims},
                {"zero_set", indices_json(r.zero_set)},
                {"support", indices_json(r.support)},
                {"rounding",
                 Json{{"generators", to_json(r.rounding.generators)}, {"gamma", to_json(r.rounding.coefficients)}}},
                {"witnesses", witnesses},
                {"trace", trace_to_json(r.trace)},
                {"timing_us", elapsed}};
}

Json cmd_verify_report(const Json& report)
{
    std::vector<std::string> checks;
    Instance inst;
    Rational eps;
    Vector xc, xd, x_int, x_cont;
    Rational distance_int, distance_cont;
    Json schedule_doc, oracle_doc, verdict_doc;
    std::string digest, delta_text;
    try {
        inst = instance_from_json(report.at("instance"));
        eps = rational_from_json(report.at("eps"));
        xc = vector_from_json(report.at("xc"));
        xd = vector_from_json(report.at("xd"));
        x_int = vector_from_json(report.at("x_star_int"));
        x_cont = vector_from_json(report.at("x_star_cont"));
        distance_int = rational_from_json(report.at("distance_int"));
        distance_cont = rational_from_json(report.at("distance_cont"));
        schedule_doc = report.at("schedule");
        oracle_doc = report.at("oracles");
        verdict_doc = report.at("verdicts");
        digest = report.at("instance_digest").get<std::string>();
        delta_text = report.at("delta").get<std::string>();
    } catch (const Json::exception& e) {
        throw InputError(std::string("report: ") + e.what());
    }
    const std::size_t n = inst.n();
    if (xc.size() != n || xd.size() != n || x_int.size() != n || x_cont.size() != n)
        throw InputError("report: point dimensions do not match the instance");

    expect(instance_digest(inst) == digest, "report-digest", "instance digest does not match its payload");
    checks.push_back("digest");

    const Integer delta = pipeline_delta(inst);
    expect(delta.get_str() == delta_text, "report-delta", "Delta recomputes to " + delta.get_str());
    const Schedule schedule = compute_schedule(n, delta, inst.k, eps);
    expect(schedule_json(schedule) == schedule_doc, "report-schedule", "schedule does not recompute");
    checks.push_back("schedule");

    const Polyhedron P = inst.polyhedron();
    expect(is_integer(x_int) && P.contains(x_int), "report-feasibility", "x_star_int is not a lattice point of P");
    expect(P.contains(x_cont), "report-feasibility", "x_star_cont is infeasible");
    checks.push_back("feasibility");

    expect(inf_distance(xc, x_int) == distance_int && inf_distance(x_cont, xd) == distance_cont, "report-distance",
           "distances do not recompute");
    expect(distance_int <= schedule.theorem_bound && distance_cont <= schedule.theorem_bound, "report-distance",
           "a distance exceeds the theorem bound");
    checks.push_back("distances");

    const OracleReport oracles = run_oracles(inst);
    const Json recomputed{{"xd", to_json(oracles.int_opt.point)},
                          {"f_xd", to_json(oracles.int_opt.value)},
                          {"xc", to_json(oracles.cont_opt.point)},
                          {"f_xc", to_json(oracles.cont_opt.value)},
                          {"fmax_int", to_json(oracles.fmax_int.value)},
                          {"fmax_cont", to_json(oracles.fmax_cont.value)}};
    expect(recomputed == oracle_doc, "report-oracles", "oracle values do not recompute");
    expect(eval_f(inst, xd) == oracles.int_opt.value && eval_f(inst, xc) == oracles.cont_opt.value,
           "report-anchors", "anchors are not optimal");
    checks.push_back("oracles");

    const ApproxVerdict vi = verdict(inst, x_int, eps, ApproxMode::integer, oracles);
    const ApproxVerdict vc = verdict(inst, x_cont, eps, ApproxMode::continuous, oracles);
    const Json verdicts{{"int", verdict_json(vi)}, {"cont", verdict_json(vc)}};
    expect(verdicts == verdict_doc, "report-verdict", "verdicts do not recompute");
    expect(vi.is_approx && vc.is_approx, "report-verdict", "an output is not epsilon-approximate");
    checks.push_back("verdicts");

    return Json{{"status", "verified"}, {"checks", checks}};
}

Json cmd_tightness(const std::string& family, const FamilyParams& params)
{
    FamilyParams build_params = params;
    if (family == "ilp" || family == "example11")
        build_params.erase("eps");
    const FamilyInstance f = build_family(family, build_params);
    Json out = family_header(f);
    const Instance& inst = f.instance;

    if (family == "example11") {
        const OracleReport r = run_oracles(inst);
        const Rational gap = inf_distance(r.int_opt.point, r.cont_opt.point);
        out["xd"] = to_json(r.int_opt.point);
        out["xc"] = to_json(r.cont_opt.point);
        out["gap"] = to_json(gap);
        expect(r.int_opt.point == f.point("xd") && r.cont_opt.point == f.point("xc") && gap == f.value("gap"),
               "family-expectation", "example optima differ from the construction");
        out["status"] = "REPRODUCED";
        if (find_param(params, "eps")) {
            const Rational eps = rational_param(params, "eps");
            Json verdicts = Json::array();
            for (const auto& x : enumerate_lattice_points(inst.polyhedron())) {
                ApproxVerdict v = verdict(inst, x, eps, ApproxMode::integer, r);
                verdicts.push_back(Json{{"x", to_json(x)}, {"verdict", verdict_json(v)}});
            }
            out["verdicts"] = verdicts;
        }
        return out;
    }
    if (family == "ilp") {
        const OptimumReport xd = solve_iqp(inst);
        const OptimumReport xc = solve_qp(inst);
        const Rational gap = min_distance(xc.ties, xd.ties);
        const Rational bound = f.value("gap");
        out["xd_ties"] = to_json(xd.ties);
        out["xc_ties"] = to_json(xc.ties);
        out["gap"] = to_json(gap);
        out["bound"] = to_json(bound);
        expect(gap == bound, "family-expectation", "ILP gap " + to_string(gap) + " differs from " + to_string(bound));
        out["status"] = "TIGHT";
        return out;
    }
    const Rational eps = rational_param(params, "eps");
    if (family == "prop45") {
        const DeltaStarReport ds = delta_star(inst, eps);
        const Rational bound = f.value("bound");
        out["delta_star"] = to_json(ds.value);
        out["delta_star_upper_bound_only"] = ds.upper_bound_only;
        out["approx_points"] = to_json(ds.approx_points);
        out["bound"] = to_json(bound);
        expect(ds.value >= bound, "family-bound", "delta* " + to_string(ds.value) + " below " + to_string(bound));
        out["status"] = ds.value == bound ? "TIGHT" : "ABOVE";
        return out;
    }
    if (family == "prop44") {
        const OracleReport r = run_oracles(inst);
        const Rational radius = f.value("radius");
        Json S = Json::array();
        std::optional<Rational> best_ratio;
        bool any_approx = false;
        for (const auto& x : enumerate_lattice_points(inst.polyhedron())) {
            if (inf_distance(r.cont_opt.point, x) > radius)
                continue;
            ApproxVerdict v = verdict(inst, x, eps, ApproxMode::integer, r);
            any_approx = any_approx || v.is_approx;
            if (v.ratio && (!best_ratio || *v.ratio < *best_ratio))
                best_ratio = v.ratio;
            S.push_back(Json{{"x", to_json(x)}, {"verdict", verdict_json(v)}});
        }
        out["xc"] = to_json(r.cont_opt.point);
        out["radius"] = to_json(radius);
        out["neighbourhood"] = S;
        out["min_ratio"] = best_ratio ? to_json(*best_ratio) : Json(nullptr);
        expect(!any_approx, "family-bound", "an epsilon-approximate point lies within n Delta of x^c");
        out["status"] = "NO_APPROX_IN_BOX";
        return out;
    }
    if (family == "prop46") {
        const OptimumReport xd = solve_iqp(inst);
        const Rational radius = f.value("radius");
        const Rational bound = f.value("bound");
        const ContinuousCertificate cert = certify_no_cont_approx_within(inst, eps, xd.point, radius);
        out["xd"] = to_json(xd.point);
        out["radius"] = to_json(radius);
        out["bound"] = to_json(bound);
        out["threshold"] = to_json(cert.threshold);
        out["box_min"] = cert.box_min ? to_json(*cert.box_min) : Json(nullptr);
        out["certified"] = cert.certified;
        expect(cert.certified && radius >= bound, "family-bound", "certificate failed at radius " + to_string(radius));
        out["status"] = "CERTIFIED";
        return out;
    }
    throw InputError("tightness is not defined for family \"" + family + "\"");
}

Json cmd_subdet(const Instance& inst)
{
    const SubdeterminantWitness w = max_abs_subdeterminant(inst.A);
    return Json{{"delta", w.value.get_str()}, {"rows", indices_json(w.rows)}, {"cols", indices_json(w.cols)}};
}

Json cmd_cone(const Instance& inst, const Vector& xa, const Vector& xb)
{
    if (xa.size() != inst.n() || xb.size() != inst.n())
        throw InputError("--xa and --xb need " + std::to_string(inst.n()) + " entries");
    const Integer delta = pipeline_delta(inst);
    const ProximityCone cone = build_cone(inst.A, xa, xb);
    const GeneratorSet gens = enumerate_generators(cone, delta);
    const Vector diff = xa - xb;
    const ConicDecomposition dec = caratheodory_decompose(diff, gens);
    return Json{{"delta", delta.get_str()},
                {"A1", matrix_rows_json(cone.A1)},
                {"A2", matrix_rows_json(cone.A2)},
                {"generators", to_json(gens)},
                {"difference", to_json(diff)},
                {"decomposition", Json{{"generators", to_json(dec.generators)}, {"coefficients", to_json(dec.coefficients)}}}};
}

Json cmd_family(const std::string& family, const FamilyParams& params)
{
    FamilyParams build_params = params;
    if (family == "ilp" || family == "example11")
        build_params.erase("eps");
    return instance_to_json(build_family(family, build_params).instance);
}

} // namespace prox
