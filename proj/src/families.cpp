#include "prox/families.hpp"

#include "prox/errors.hpp"

#include <random>

namespace prox {

const Vector& FamilyInstance::point(const std::string& name) const
{
    auto it = points.find(name);
    if (it == points.end())
        throw DomainError(family + ": no expected point named " + name);
    return it->second;
}

const Rational& FamilyInstance::value(const std::string& name) const
{
    auto it = values.find(name);
    if (it == values.end())
        throw DomainError(family + ": no expected value named " + name);
    return it->second;
}

Polyhedron build_pbar(const PbarParams& p)
{
    if (p.n < 1)
        throw DomainError("strip polytope needs n >= 1");
    if (p.delta < 1)
        throw DomainError("strip polytope needs Delta >= 1");
    if (p.t < 0)
        throw DomainError("strip polytope needs t >= 0");
    if (sgn(p.beta) <= 0 || p.beta >= 1)
        throw DomainError("strip polytope needs 0 < beta < 1, got " + to_string(p.beta));

    const std::size_t n = p.n;
    Matrix A(0, n);
    Vector b;
    Vector strip = zeros(n);
    strip[0] = 1;
    for (std::size_t i = 1; i < n; ++i)
        strip[i] = -Rational(p.delta);
    A.append_row(strip);
    b.push_back(Rational(p.t));
    A.append_row(-strip);
    b.push_back(Rational(p.t));
    for (std::size_t i = 1; i < n; ++i) {
        Vector e = unit_vector(n, i);
        A.append_row(e);
        b.push_back(p.beta);
        A.append_row(-e);
        b.push_back(0);
    }
    return Polyhedron(std::move(A), std::move(b));
}

namespace {

Vector point_u(std::size_t n, const Integer& t)
{
    Vector u = zeros(n);
    u[0] = Rational(t);
    return u;
}

Vector point_v(const PbarParams& p)
{
    Vector v(p.n, p.beta);
    v[0] = Rational(p.t) + Rational(static_cast<unsigned long>(p.n - 1)) * p.beta * Rational(p.delta);
    return v;
}

Instance on_polyhedron(const Polyhedron& P, std::size_t k, Vector q, Vector h)
{
    Instance inst{P.A(), P.b(), k, std::move(q), std::move(h)};
    inst.validate();
    return inst;
}

Rational as_rational(std::size_t n)
{
    return Rational(static_cast<unsigned long>(n));
}

// Exact square root of a nonnegative rational, if it is a perfect square.
std::optional<Rational> rational_sqrt(const Rational& x)
{
    if (sgn(x) < 0)
        return std::nullopt;
    const Integer& num = x.get_num();
    const Integer& den = x.get_den();
    if (!mpz_perfect_square_p(num.get_mpz_t()) || !mpz_perfect_square_p(den.get_mpz_t()))
        return std::nullopt;
    Integer rn, rd;
    mpz_sqrt(rn.get_mpz_t(), num.get_mpz_t());
    mpz_sqrt(rd.get_mpz_t(), den.get_mpz_t());
    return make_rational(rn, rd);
}

} // namespace

FamilyInstance build_example_1_1(const Integer& t)
{
    if (t < 0)
        throw DomainError("example family needs t >= 0");
    const Rational T(t);
    FamilyInstance out;
    out.family = "example11";
    out.instance = Instance{Matrix{{1}, {-1}}, make_vector({T + Rational(3, 4), T}), 1, make_vector({1}),
                            make_vector({Rational(1, 2)})};
    out.instance.validate();
    out.objective_constant = Rational(-1, 16);
    out.points["xd"] = make_vector({-T});
    out.points["xc"] = make_vector({T + Rational(3, 4)});
    out.values["t"] = T;
    out.values["gap"] = 2 * T + Rational(3, 4);
    return out;
}

FamilyInstance build_ilp_tightness(std::size_t n, const Integer& delta, const Rational& beta, const Integer& t)
{
    const PbarParams p{n, delta, t, beta};
    const Polyhedron P = build_pbar(p);
    Vector h = zeros(n);
    h[0] = -1;
    FamilyInstance out;
    out.family = "ilp";
    out.instance = on_polyhedron(P, 0, {}, std::move(h));
    out.points["u"] = point_u(n, t);
    out.points["v"] = point_v(p);
    out.values["n"] = as_rational(n);
    out.values["delta"] = Rational(delta);
    out.values["t"] = Rational(t);
    out.values["beta"] = beta;
    out.values["gap"] = as_rational(n - 1) * beta * Rational(delta);
    return out;
}

FamilyInstance build_pr_tight(std::size_t n, const Integer& delta, const Integer& t, const Rational& a,
                              const Rational& beta)
{
    const PbarParams p{n, delta, t, beta};
    const Polyhedron P = build_pbar(p);
    const Rational weight = (Rational(t) + as_rational(n) * Rational(delta)) *
                            (Rational(t) + as_rational(n) * Rational(delta)) / (beta * beta);
    Vector q(n, weight);
    q[0] = 1;
    Vector h = zeros(n);
    h[0] = 2 * a;
    FamilyInstance out;
    out.family = "pr_tight";
    out.instance = on_polyhedron(P, n, std::move(q), std::move(h));
    out.objective_constant = -a * a;
    const Vector u = point_u(n, t);
    out.points["u"] = u;
    out.points["v"] = point_v(p);
    if (sgn(a) > 0 && a < as_rational(n - 1) * beta * Rational(delta)) {
        out.points["xd"] = -u;
        out.points["xc"] = point_v(p);
    }
    out.values["n"] = as_rational(n);
    out.values["delta"] = Rational(delta);
    out.values["t"] = Rational(t);
    out.values["a"] = a;
    out.values["beta"] = beta;
    return out;
}

FamilyInstance build_prop45(std::size_t n, const Integer& delta, const Rational& eps)
{
    if (n < 2)
        throw DomainError("prop45 family needs n >= 2");
    if (sgn(eps) <= 0 || eps > 1)
        throw DomainError("prop45 family needs eps in (0, 1]");
    const Integer t = ceil(2 / eps - 1) - 1;
    const Rational beta(2, 3);
    FamilyInstance out = build_pr_tight(n, delta, t, Rational(1, 2), beta);
    out.family = "prop45";
    out.values["eps"] = eps;
    out.values["bound"] = 4 * (1 / eps - 1) + Rational(2, 3) * as_rational(n - 1) * Rational(delta);
    out.values["distance"] = 2 * Rational(t) + as_rational(n - 1) * beta * Rational(delta);
    out.values["fmax_int"] = Rational(-1, 4);
    return out;
}

FamilyInstance build_prop44(const Rational& eps, const Integer& delta, std::optional<std::size_t> n_given)
{
    if (sgn(eps) <= 0 || eps >= 1)
        throw DomainError("prop44 family needs eps in (0, 1)");
    if (delta < 1)
        throw DomainError("prop44 family needs Delta >= 1");
    std::size_t n = 0;
    if (n_given) {
        n = *n_given;
        if (n < 5)
            throw DomainError("prop44 family needs n >= 5");
        const Rational r = 1 - Rational(1) / as_rational(n - 3);
        if (r * r < eps)
            throw DomainError("prop44 family: (1 - 1/(n-3))^2 < eps for n = " + std::to_string(n));
    } else {
        auto root = rational_sqrt(eps);
        if (!root)
            throw DomainError("prop44 family: eps = " + to_string(eps) +
                              " has no rational square root; pass n explicitly");
        n = ceil((4 - 3 * *root) / (1 - *root)).get_ui();
    }
    const Rational N = as_rational(n);
    const Rational D(delta);
    const Rational beta = (N - 4) / (N - 3);
    const Rational a = (N - 3) * beta * D;
    const Rational t = (N + (N - 3) * beta) / 2 * D;
    if (!is_integer(a) || !is_integer(t))
        throw InvariantViolation("prop44-parameters", "a or t is not integer");

    FamilyInstance out = build_pr_tight(n, delta, t.get_num(), a, beta);
    out.family = "prop44";
    out.values["eps"] = eps;
    out.values["f_u"] = -4 * D * D;
    out.values["f_xd"] = -(2 * N - 6) * (2 * N - 6) * D * D;
    out.values["fmax_int"] = 0;
    out.values["ratio_u"] = (N - 4) * (N - 2) / ((N - 3) * (N - 3));
    out.values["radius"] = N * D;
    Vector u_prime = zeros(n);
    u_prime[0] = a;
    out.points["u_prime"] = std::move(u_prime);
    return out;
}

FamilyInstance build_prop46(std::size_t n, const Integer& delta, const Rational& eps)
{
    if (n < 2)
        throw DomainError("prop46 family needs n >= 2");
    if (delta < 2)
        throw DomainError("prop46 family needs Delta >= 2");
    if (sgn(eps) <= 0 || eps >= Rational(1, 2))
        throw DomainError("prop46 family needs eps in (0, 1/2)");
    const Rational beta(1, 2);
    const Rational D(delta);
    const Rational reach = as_rational(n - 1) * beta * D + beta - 1;
    const Integer t = floor(reach / eps);
    const PbarParams p{n, delta, t, beta};
    const Polyhedron P_bar = build_pbar(p);
    Matrix A = P_bar.A();
    Vector b = P_bar.b();
    A.append_row(A.row_vector(0));
    b.push_back(beta - 1 + Rational(t));

    Vector h = zeros(n);
    FamilyInstance out;
    out.family = "prop46";
    out.instance = on_polyhedron(Polyhedron(std::move(A), std::move(b)), 1, make_vector({1}), std::move(h));
    const Vector u = point_u(n, t);
    Vector w(n, beta);
    w[0] = reach + Rational(t);
    out.points["u"] = u;
    out.points["xd"] = -u;
    out.points["xc"] = w;
    out.points["w"] = w;
    out.values["n"] = as_rational(n);
    out.values["delta"] = D;
    out.values["t"] = Rational(t);
    out.values["beta"] = beta;
    out.values["eps"] = eps;
    out.values["bound"] = (as_rational(n - 1) * D - 1) / eps - 2;
    out.values["radius"] = 2 * Rational(t);
    return out;
}

Instance random_instance(std::uint64_t seed, const RandomInstanceParams& params)
{
    if (params.n_max < 1 || params.entry_bound < 1 || params.box_bound < 1 || params.extra_rows_max < 1)
        throw DomainError("random_instance: bounds must be positive");
    std::mt19937_64 rng(seed);
    auto uniform = [&](long lo, long hi) { return std::uniform_int_distribution<long>(lo, hi)(rng); };

    const std::size_t n = static_cast<std::size_t>(uniform(1, static_cast<long>(params.n_max)));
    const std::size_t k = static_cast<std::size_t>(uniform(0, static_cast<long>(std::min(params.k_max, n))));
    Vector x0(n);
    for (auto& x : x0)
        x = uniform(-params.box_bound, params.box_bound);

    Instance inst;
    inst.A = Matrix(0, n);
    inst.k = k;
    const std::size_t extra = static_cast<std::size_t>(uniform(1, static_cast<long>(params.extra_rows_max)));
    while (inst.A.rows() < extra) {
        Vector row(n);
        for (auto& a : row)
            a = uniform(-params.entry_bound, params.entry_bound);
        if (is_zero(row))
            continue;
        inst.A.append_row(row);
        inst.b.push_back(dot(row, x0) + make_rational(uniform(0, 4), 2));
    }
    for (std::size_t i = 0; i < n; ++i) {
        Vector e = unit_vector(n, i);
        inst.A.append_row(e);
        inst.b.push_back(params.box_bound);
        inst.A.append_row(-e);
        inst.b.push_back(params.box_bound);
    }
    for (std::size_t i = 0; i < k; ++i)
        inst.q.push_back(make_rational(uniform(1, 4), uniform(1, 2)));
    for (std::size_t i = 0; i < n; ++i)
        inst.h.push_back(make_rational(uniform(-6, 6), uniform(1, 2)));
    inst.validate();
    return inst;
}

} // namespace prox
