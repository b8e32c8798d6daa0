#pragma once

#include "prox/io.hpp"
#include "prox/pipeline.hpp"

#include <map>
#include <optional>
#include <string>

namespace prox {

/// Machine-readable results of the CLI subcommands. Each returns the JSON
/// document printed on standard output and throws the library's errors,
/// which the front end maps to exit codes.

Json cmd_solve(const Instance& inst);

struct ProximityOptions
{
    Rational eps;
    std::optional<Vector> xc; // from the oracles when absent
    std::optional<Vector> xd;
    bool checked = false;     // re-verify supplied anchors against the oracles
};

/// Runs the pipeline, the oracles and every claim audit; the report embeds
/// the instance, schedule, outputs, verdicts and trace.
Json cmd_proximity(const Instance& inst, const ProximityOptions& options);

Json trace_to_json(const std::vector<StepRecord>& trace);

/// Re-checks a proximity report from its own payload. Throws
/// InvariantViolation naming the first mismatch.
Json cmd_verify_report(const Json& report);

/// Family name plus parameters as strings ("n", "delta", "eps", "beta", "t").
using FamilyParams = std::map<std::string, std::string>;

Json cmd_tightness(const std::string& family, const FamilyParams& params);
Json cmd_subdet(const Instance& inst);
Json cmd_cone(const Instance& inst, const Vector& xa, const Vector& xb);

/// Builds a family instance and returns it in the instance file format.
Json cmd_family(const std::string& family, const FamilyParams& params);

/// Exit codes of the front end.
enum ExitCode { exit_ok = 0, exit_input = 2, exit_infeasible = 3, exit_invariant = 4 };

} // namespace prox
