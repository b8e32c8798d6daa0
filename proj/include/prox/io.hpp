#pragma once

#include "prox/exact.hpp"
#include "prox/instance.hpp"

#include <json.hpp>

#include <string>
#include <string_view>

namespace prox {

using Json = nlohmann::json;

/// Rationals travel as strings ("3/4", "-2"); JSON integers are accepted on
/// input, floats never.
Json to_json(const Rational& value);
Json to_json(const Vector& v);
Json to_json(const std::vector<Vector>& vs);
Rational rational_from_json(const Json& j);
Vector vector_from_json(const Json& j);

/// {"n", "m", "k", "A", "b", "q", "h"}. A holds integers (JSON numbers or
/// integer strings); b, q, h hold rational strings.
Json instance_to_json(const Instance& inst);
/// Throws InputError on any structural or validation problem.
Instance instance_from_json(const Json& j);

std::string serialize_instance(const Instance& inst);
Instance parse_instance(std::string_view text);
Instance load_instance(const std::string& path);

/// FNV-1a 64 over the canonical serialization, as 16 hex digits.
std::string instance_digest(const Instance& inst);

/// Comma-separated rationals, e.g. "1,-2/3,0".
Vector parse_vector_arg(std::string_view text);

} // namespace prox
