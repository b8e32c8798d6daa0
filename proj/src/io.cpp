#include "prox/io.hpp"

#include "prox/errors.hpp"

#include <cstdint>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace prox {

Json to_json(const Rational& value)
{
    return to_string(value);
}

Json to_json(const Vector& v)
{
    Json out = Json::array();
    for (const auto& x : v)
        out.push_back(to_string(x));
    return out;
}

Json to_json(const std::vector<Vector>& vs)
{
    Json out = Json::array();
    for (const auto& v : vs)
        out.push_back(to_json(v));
    return out;
}

Rational rational_from_json(const Json& j)
{
    if (j.is_string()) {
        try {
            return parse_rational(j.get<std::string>());
        } catch (const DomainError& e) {
            throw InputError(e.what());
        }
    }
    if (j.is_number_integer()) {
        if (j.is_number_unsigned())
            return Rational(Integer(std::to_string(j.get<std::uint64_t>())));
        return Rational(Integer(std::to_string(j.get<std::int64_t>())));
    }
    if (j.is_number_float())
        throw InputError("floating-point value " + j.dump() + " is not exact; use a \"p/q\" string");
    throw InputError("expected a rational, got " + j.dump());
}

Vector vector_from_json(const Json& j)
{
    if (!j.is_array())
        throw InputError("expected an array, got " + j.dump());
    Vector out;
    for (const auto& x : j)
        out.push_back(rational_from_json(x));
    return out;
}

Json instance_to_json(const Instance& inst)
{
    Json A = Json::array();
    for (std::size_t r = 0; r < inst.m(); ++r) {
        Json row = Json::array();
        for (std::size_t c = 0; c < inst.n(); ++c)
            row.push_back(inst.A(r, c).get_num().get_str());
        A.push_back(std::move(row));
    }
    return Json{{"n", inst.n()},         {"m", inst.m()},         {"k", inst.k},          {"A", std::move(A)},
                {"b", to_json(inst.b)}, {"q", to_json(inst.q)}, {"h", to_json(inst.h)}};
}

namespace {

std::size_t size_field(const Json& j, const char* name)
{
    if (!j.contains(name))
        throw InputError(std::string("instance: missing field \"") + name + "\"");
    const Json& v = j.at(name);
    if (!v.is_number_integer() || v.get<std::int64_t>() < 0)
        throw InputError(std::string("instance: field \"") + name + "\" must be a nonnegative integer");
    return v.get<std::size_t>();
}

const Json& array_field(const Json& j, const char* name)
{
    if (!j.contains(name) || !j.at(name).is_array())
        throw InputError(std::string("instance: field \"") + name + "\" must be an array");
    return j.at(name);
}

} // namespace

Instance instance_from_json(const Json& j)
{
    if (!j.is_object())
        throw InputError("instance: expected a JSON object");
    const std::size_t n = size_field(j, "n");
    const std::size_t m = size_field(j, "m");
    const std::size_t k = size_field(j, "k");
    const Json& A = array_field(j, "A");
    if (A.size() != m)
        throw InputError("instance: A has " + std::to_string(A.size()) + " rows, m = " + std::to_string(m));

    Instance inst;
    inst.A = Matrix(m, n);
    for (std::size_t r = 0; r < m; ++r) {
        if (!A[r].is_array() || A[r].size() != n)
            throw InputError("instance: row " + std::to_string(r) + " of A must have n = " + std::to_string(n) +
                             " entries");
        for (std::size_t c = 0; c < n; ++c) {
            Rational v = rational_from_json(A[r][c]);
            if (!is_integer(v))
                throw InputError("instance: A[" + std::to_string(r) + "][" + std::to_string(c) + "] = " +
                                 to_string(v) + " is not an integer");
            inst.A(r, c) = v;
        }
    }
    inst.k = k;
    inst.b = vector_from_json(array_field(j, "b"));
    inst.q = vector_from_json(array_field(j, "q"));
    inst.h = vector_from_json(array_field(j, "h"));
    try {
        inst.validate();
    } catch (const DimensionError& e) {
        throw InputError(e.what());
    } catch (const DomainError& e) {
        throw InputError(e.what());
    }
    return inst;
}

std::string serialize_instance(const Instance& inst)
{
    return instance_to_json(inst).dump(2);
}

Instance parse_instance(std::string_view text)
{
    Json j;
    try {
        j = Json::parse(text);
    } catch (const Json::parse_error& e) {
        throw InputError(std::string("instance: malformed JSON: ") + e.what());
    }
    return instance_from_json(j);
}

Instance load_instance(const std::string& path)
{
    std::ifstream in(path);
    if (!in)
        throw InputError("cannot open " + path);
    std::stringstream buffer;
    buffer << in.rdbuf();
    return parse_instance(buffer.str());
}

std::string instance_digest(const Instance& inst)
{
    const std::string text = instance_to_json(inst).dump();
    std::uint64_t hash = 14695981039346656037ull;
    for (unsigned char c : text) {
        hash ^= c;
        hash *= 1099511628211ull;
    }
    char out[17];
    std::snprintf(out, sizeof out, "%016llx", static_cast<unsigned long long>(hash));
    return out;
}

Vector parse_vector_arg(std::string_view text)
{
    Vector out;
    std::size_t start = 0;
    while (true) {
        std::size_t comma = text.find(',', start);
        std::string_view piece = text.substr(start, comma == std::string_view::npos ? text.npos : comma - start);
        try {
            out.push_back(parse_rational(piece));
        } catch (const DomainError& e) {
            throw InputError(e.what());
        }
        if (comma == std::string_view::npos)
            break;
        start = comma + 1;
    }
    return out;
}

} // namespace prox
