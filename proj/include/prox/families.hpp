#pragma once

#include "prox/exact.hpp"
#include "prox/instance.hpp"
#include "prox/polyhedron.hpp"

#include <cstdint>
#include <map>
#include <optional>
#include <string>

namespace prox {

/// -t <= x_1 - Delta (x_2 + ... + x_n) <= t,  0 <= x_i <= beta  (i >= 2).
struct PbarParams
{
    std::size_t n = 1;
    Integer delta = 1;
    Integer t = 0;
    Rational beta = Rational(1, 2);
};

/// Rows in order: the two strip rows, then x_i <= beta and -x_i <= 0 for each i >= 2.
/// Throws DomainError outside n >= 1, Delta >= 1, t >= 0, 0 < beta < 1.
Polyhedron build_pbar(const PbarParams& p);

/// A built instance with the quantities its construction predicts.
struct FamilyInstance
{
    std::string family;
    Instance instance;
    /// Constant dropped from the objective: the family's own objective equals
    /// eval_f(instance, x) + objective_constant.
    Rational objective_constant;
    std::map<std::string, Vector> points;
    std::map<std::string, Rational> values;

    const Vector& point(const std::string& name) const;
    const Rational& value(const std::string& name) const;
};

/// min -(x - 1/4)^2 over -t <= x <= t + 3/4.
FamilyInstance build_example_1_1(const Integer& t);

/// max x_1 over the strip polytope, written as min -x_1 (k = 0).
FamilyInstance build_ilp_tightness(std::size_t n, const Integer& delta, const Rational& beta, const Integer& t = 1);

/// min -(x_1 - a)^2 - ((t + n Delta)^2 / beta^2) sum_{i>=2} x_i^2 over the strip polytope.
FamilyInstance build_pr_tight(std::size_t n, const Integer& delta, const Integer& t, const Rational& a,
                              const Rational& beta);

/// pr_tight with a = 1/2, beta = 2/3, t = ceil(2/eps - 1) - 1.
FamilyInstance build_prop45(std::size_t n, const Integer& delta, const Rational& eps);

/// pr_tight with beta = (n-4)/(n-3), a = (n-4) Delta, t = (n-2) Delta. Without
/// an explicit n, eps must have a rational square root r and
/// n = ceil((4 - 3r)/(1 - r)); an explicit n must satisfy n >= 5 and
/// (1 - 1/(n-3))^2 >= eps.
FamilyInstance build_prop44(const Rational& eps, const Integer& delta, std::optional<std::size_t> n = std::nullopt);

/// min -x_1^2 over the strip polytope (beta = 1/2) cut by
/// x_1 - Delta sum x_i <= beta - 1 + t, with t = floor(((n-1) beta Delta + beta - 1)/eps).
FamilyInstance build_prop46(std::size_t n, const Integer& delta, const Rational& eps);

struct RandomInstanceParams
{
    std::size_t n_max = 3;
    std::size_t k_max = 2;
    int entry_bound = 2;
    int box_bound = 3;
    std::size_t extra_rows_max = 3;
};

/// Seeded random bounded instance: one to extra_rows_max integer rows with
/// entries in [-entry_bound, entry_bound], valid at a random lattice point of
/// the box, followed by the box rows +-x_i <= box_bound. Always has a lattice point.
Instance random_instance(std::uint64_t seed, const RandomInstanceParams& params = {});

} // namespace prox
