// prox: command-line front end for the proximity library.

#include "prox/commands.hpp"
#include "prox/errors.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

namespace {

using prox::Json;

int fail(int code, const std::string& status, const std::string& message, const std::string& claim = {})
{
    Json out{{"status", status}, {"message", message}};
    if (!claim.empty())
        out["claim"] = claim;
    std::cout << out.dump(2) << '\n';
    std::cerr << "prox: " << message << '\n';
    return code;
}

Json read_json_file(const std::string& path)
{
    std::ifstream in(path);
    if (!in)
        throw prox::InputError("cannot open " + path);
    std::stringstream buffer;
    buffer << in.rdbuf();
    try {
        return Json::parse(buffer.str());
    } catch (const Json::parse_error& e) {
        throw prox::InputError(path + ": malformed JSON: " + e.what());
    }
}

void write_json_file(const std::string& path, const Json& doc)
{
    std::ofstream out(path);
    if (!out)
        throw prox::InputError("cannot write " + path);
    out << doc.dump(2) << '\n';
}

struct FamilyFlags
{
    std::string n, delta, eps, beta, t, a;

    prox::FamilyParams collect() const
    {
        prox::FamilyParams p;
        auto put = [&](const char* key, const std::string& v) {
            if (!v.empty())
                p[key] = v;
        };
        put("n", n);
        put("delta", delta);
        put("eps", eps);
        put("beta", beta);
        put("t", t);
        put("a", a);
        return p;
    }
};

void add_family_flags(CLI::App* cmd, FamilyFlags& f)
{
    cmd->add_option("--n", f.n, "dimension");
    cmd->add_option("--delta", f.delta, "subdeterminant parameter");
    cmd->add_option("--eps", f.eps, "epsilon as p/q");
    cmd->add_option("--beta", f.beta, "box height beta as p/q");
    cmd->add_option("--t", f.t, "strip half-width t");
    cmd->add_option("--a", f.a, "shift a as p/q");
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Exact proximity tools for separable concave integer quadratic programs"};
    app.require_subcommand(1);

    std::string instance_path;
    std::string eps_text, xc_text, xd_text, xa_text, xb_text, trace_path, report_path, family_name, out_path;
    bool checked = false;
    FamilyFlags tightness_flags, family_flags;

    auto* solve = app.add_subcommand("solve", "optimal points and objective extremes by enumeration");
    solve->add_option("instance", instance_path, "instance JSON")->required();

    auto* proximity = app.add_subcommand("proximity", "run the rounding pipeline and audit every claim");
    proximity->add_option("instance", instance_path, "instance JSON")->required();
    proximity->add_option("--eps", eps_text, "epsilon in (0, 1] as p/q")->required();
    proximity->add_option("--xc", xc_text, "optimal point of the relaxation, comma separated");
    proximity->add_option("--xd", xd_text, "optimal integer point, comma separated");
    proximity->add_flag("--checked", checked, "verify supplied anchors against the oracles");
    proximity->add_option("--trace", trace_path, "write the step trace to this file");

    auto* tightness = app.add_subcommand("tightness", "reproduce a lower-bound family");
    tightness->add_option("family", family_name, "example11, ilp, prop44, prop45, prop46")->required();
    add_family_flags(tightness, tightness_flags);

    auto* subdet = app.add_subcommand("subdet", "largest absolute subdeterminant with a witness");
    subdet->add_option("instance", instance_path, "instance JSON")->required();

    auto* cone = app.add_subcommand("cone", "generators of the proximity cone at (xa, xb)");
    cone->add_option("instance", instance_path, "instance JSON")->required();
    cone->add_option("--xa", xa_text, "first point, comma separated")->required();
    cone->add_option("--xb", xb_text, "second point, comma separated")->required();

    auto* verify = app.add_subcommand("verify-report", "re-check a proximity report from its payload");
    verify->add_option("report", report_path, "report JSON")->required();

    auto* family = app.add_subcommand("family", "emit a family instance in the instance format");
    family->add_option("name", family_name, "example11, ilp, prop44, prop45, prop46, pr_tight")->required();
    family->add_option("--out", out_path, "write to a file instead of standard output");
    add_family_flags(family, family_flags);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return prox::exit_input;
    }

    try {
        Json out;
        if (*solve) {
            out = prox::cmd_solve(prox::load_instance(instance_path));
        } else if (*proximity) {
            prox::ProximityOptions options;
            options.eps = prox::parse_rational(eps_text);
            if (!xc_text.empty())
                options.xc = prox::parse_vector_arg(xc_text);
            if (!xd_text.empty())
                options.xd = prox::parse_vector_arg(xd_text);
            options.checked = checked;
            out = prox::cmd_proximity(prox::load_instance(instance_path), options);
            if (!trace_path.empty())
                write_json_file(trace_path, Json{{"trace", out["trace"]}});
        } else if (*tightness) {
            out = prox::cmd_tightness(family_name, tightness_flags.collect());
        } else if (*subdet) {
            out = prox::cmd_subdet(prox::load_instance(instance_path));
        } else if (*cone) {
            out = prox::cmd_cone(prox::load_instance(instance_path), prox::parse_vector_arg(xa_text),
                                 prox::parse_vector_arg(xb_text));
        } else if (*verify) {
            out = prox::cmd_verify_report(read_json_file(report_path));
        } else if (*family) {
            out = prox::cmd_family(family_name, family_flags.collect());
            if (!out_path.empty()) {
                write_json_file(out_path, out);
                return prox::exit_ok;
            }
        }
        std::cout << out.dump(2) << '\n';
        return prox::exit_ok;
    } catch (const prox::InvariantViolation& e) {
        return fail(prox::exit_invariant, "invariant-violation", e.what(), e.claim());
    } catch (const prox::InfeasibleError& e) {
        return fail(prox::exit_infeasible, "infeasible", e.what());
    } catch (const prox::UnboundedError& e) {
        return fail(prox::exit_infeasible, "unbounded", e.what());
    } catch (const prox::InputError& e) {
        return fail(prox::exit_input, "input-error", e.what());
    } catch (const prox::DomainError& e) {
        return fail(prox::exit_input, "input-error", e.what());
    } catch (const prox::DimensionError& e) {
        return fail(prox::exit_input, "input-error", e.what());
    } catch (const prox::Error& e) {
        return fail(prox::exit_invariant, "invariant-violation", e.what());
    }
}
