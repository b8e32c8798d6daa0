#include "checks.hpp"
#include "prox/errors.hpp"
#include "prox/families.hpp"
#include "prox/pipeline.hpp"
#include "prox/transform.hpp"
#include "support.hpp"

#include <gtest/gtest.h>

using namespace prox;
using prox::testing::to_vector;

namespace {

// chi and psi straight from the recurrence, kept apart from the library code.
struct RefSchedule
{
    std::vector<Rational> chi, psi;
};

RefSchedule reference_schedule(long n, long delta, std::size_t k, const Rational& eps)
{
    RefSchedule s;
    const Rational nD(n * delta);
    Rational acc = 0; // sum of Delta chi_i so far
    for (std::size_t j = 1; j <= k; ++j) {
        Rational chi = j == 1 ? Rational(8 * nD / eps + 2 * nD) : Rational(2 * nD + 8 / eps * (acc + nD));
        s.chi.push_back(chi);
        acc += Rational(delta) * chi;
        s.psi.push_back(acc);
    }
    return s;
}

Rational power(const Rational& base, std::size_t e)
{
    Rational r = 1;
    for (std::size_t i = 0; i < e; ++i)
        r *= base;
    return r;
}

Instance box_instance(std::size_t n, long radius, std::size_t k)
{
    Instance inst;
    inst.A = Matrix(0, n);
    for (std::size_t i = 0; i < n; ++i) {
        inst.A.append_row(unit_vector(n, i));
        inst.b.emplace_back(radius);
        inst.A.append_row(-unit_vector(n, i));
        inst.b.emplace_back(radius);
    }
    inst.k = k;
    inst.q.assign(k, Rational(1));
    inst.h = zeros(n);
    return inst;
}

} // namespace

TEST(Schedule, SmallestCaseIsTight)
{
    auto s = compute_schedule(1, 1, 1, 1);
    EXPECT_EQ(s.chi, to_vector({10}));
    EXPECT_EQ(s.psi, to_vector({10}));
    EXPECT_EQ(s.theorem_bound, 11);
    EXPECT_EQ(s.psi_at(1) + 1, s.theorem_bound);
    EXPECT_EQ(s.psi_at(0), 0);
}

TEST(Schedule, NoQuadraticCoordinates)
{
    auto s = compute_schedule(3, 2, 0, Rational(1, 2));
    EXPECT_TRUE(s.chi.empty());
    EXPECT_TRUE(s.psi.empty());
    EXPECT_EQ(s.theorem_bound, 6);
}

TEST(Schedule, TwoVariablesHalfEpsilon)
{
    auto s = compute_schedule(2, 1, 1, Rational(1, 2));
    EXPECT_EQ(s.chi_at(1), 36);
    EXPECT_EQ(s.psi_at(1), 36);
    EXPECT_EQ(s.theorem_bound, 42);
}

TEST(Schedule, RejectsOutOfRangeParameters)
{
    EXPECT_THROW(compute_schedule(2, 1, 1, 0), DomainError);
    EXPECT_THROW(compute_schedule(2, 1, 1, Rational(3, 2)), DomainError);
    EXPECT_THROW(compute_schedule(2, 1, 1, -1), DomainError);
    EXPECT_THROW(compute_schedule(0, 1, 0, 1), DomainError);
    EXPECT_THROW(compute_schedule(2, 0, 1, 1), DomainError);
    EXPECT_THROW(compute_schedule(2, 1, 3, 1), DomainError);
}

TEST(Schedule, GridMatchesRecurrenceAndBoundChain)
{
    for (long n = 1; n <= 5; ++n)
        for (long delta = 1; delta <= 4; ++delta)
            for (std::size_t k = 0; k <= static_cast<std::size_t>(n); ++k)
                for (Rational eps : {Rational(1, 10), Rational(1, 4), Rational(1, 2), Rational(1)}) {
                    auto s = compute_schedule(static_cast<std::size_t>(n), delta, k, eps);
                    auto ref = reference_schedule(n, delta, k, eps);
                    ASSERT_EQ(s.chi, ref.chi);
                    ASSERT_EQ(s.psi, ref.psi);
                    const Rational nD(n * delta);
                    EXPECT_EQ(s.theorem_bound, nD * power(10 * Rational(delta) / eps + 1, k));
                    EXPECT_LE(s.psi_at(k) + nD, s.theorem_bound);
                    for (std::size_t j = 2; j <= k; ++j) {
                        EXPECT_LE(s.psi_at(j) + nD, (9 * Rational(delta) / eps + 1) * (s.psi_at(j - 1) + nD));
                        EXPECT_LE(s.psi_at(j) + nD, power(9 * Rational(delta) / eps + 1, j - 1) * (s.psi_at(1) + nD));
                    }
                }
}

TEST(Normalize, ExampleOneOne)
{
    auto fam = build_example_1_1(3);
    auto norm = normalize(fam.instance, to_vector({-3}));
    EXPECT_EQ(norm.instance.h, make_vector({Rational(13, 2)}));
    EXPECT_EQ(norm.instance.b, make_vector({Rational(27, 4), 0}));
    EXPECT_EQ(norm.instance.A, fam.instance.A);
    EXPECT_EQ(norm.instance.q, fam.instance.q);
    EXPECT_EQ(norm.offset, to_vector({-3}));
    EXPECT_EQ(norm.value_at_offset, eval_f(fam.instance, to_vector({-3})));
    EXPECT_EQ(eval_f(norm.instance, to_vector({0})), 0);
    for (long y = 0; y <= 6; ++y)
        EXPECT_EQ(eval_f(norm.instance, to_vector({y})),
                  eval_f(fam.instance, to_vector({y - 3})) - norm.value_at_offset);
}

TEST(Normalize, OriginLeavesTheInstanceUnchanged)
{
    auto inst = build_example_1_1(2).instance;
    EXPECT_EQ(normalize(inst, to_vector({0})).instance, inst);
}

TEST(Normalize, RejectsBadAnchors)
{
    auto inst = build_example_1_1(3).instance;
    EXPECT_THROW(normalize(inst, make_vector({Rational(1, 2)})), InputError);
    EXPECT_THROW(normalize(inst, to_vector({4})), InputError);
}

TEST(OneStep, BoxTrace)
{
    Instance inst = box_instance(2, 2, 2);
    auto step = one_step(inst, to_vector({2, 1}), 1);
    EXPECT_EQ(step.xb, to_vector({2, 0}));
    EXPECT_EQ(step.record.s, 1u);
    EXPECT_EQ(inf_distance(to_vector({2, 1}), step.xb), 1);
    EXPECT_EQ(step.record.decomposition.combine(2), to_vector({2, 1}));
    Rational absorbed = 0;
    for (std::size_t i = 0; i < step.record.lambda.size(); ++i)
        absorbed += step.record.lambda[i] * step.record.decomposition.generators[i][1];
    EXPECT_EQ(absorbed, 1);
}

TEST(OneStep, ZeroesATinyCoordinateAndKeepsZeros)
{
    Instance inst = box_instance(3, 4, 3);
    Vector xa = make_vector({0, Rational(1, 3), 4});
    auto step = one_step(inst, xa, 1);
    EXPECT_EQ(step.xb[0], 0);
    EXPECT_EQ(step.xb[1], 0);
    EXPECT_LE(inf_distance(xa, step.xb), Rational(1, 3));
    EXPECT_EQ(step.record.zero_set, (std::vector<std::size_t>{0}));
}

TEST(OneStep, PreconditionFailureIsReported)
{
    Instance inst = box_instance(2, 2, 2);
    EXPECT_THROW(one_step(inst, to_vector({1, 1}), 1), DomainError);
    EXPECT_THROW(one_step(inst, to_vector({0, 0}), 1), DomainError);
}

TEST(Sequence, NoQuadraticCoordinates)
{
    Instance inst = box_instance(2, 2, 0);
    Vector xc = to_vector({2, -1});
    auto seq = build_sequence(inst, xc, compute_schedule(2, 1, 0, 1));
    EXPECT_TRUE(seq.trace.empty());
    EXPECT_EQ(seq.termination, Termination::all_large);
    EXPECT_EQ(seq.x_ell, xc);
}

TEST(Sequence, ExampleOneOneStopsAtOnce)
{
    auto fam = build_example_1_1(3);
    auto norm = normalize(fam.instance, to_vector({-3}));
    auto s = compute_schedule(1, 1, 1, Rational(1, 2));
    EXPECT_EQ(s.chi_at(1), 18);
    auto seq = build_sequence(norm.instance, make_vector({Rational(27, 4)}), s);
    EXPECT_TRUE(seq.trace.empty());
    EXPECT_EQ(seq.termination, Termination::small_norm);
    EXPECT_EQ(seq.x_ell, make_vector({Rational(27, 4)}));
}

TEST(Sequence, AllQuadraticCoordinatesZero)
{
    Instance inst = box_instance(2, 2, 2);
    auto seq = build_sequence(inst, to_vector({0, 0}), compute_schedule(2, 1, 2, 1));
    EXPECT_EQ(seq.termination, Termination::all_large);
    EXPECT_TRUE(seq.trace.empty());
    EXPECT_TRUE(seq.support.empty());
}

TEST(Sequence, ZeroSetGrowsAndStepsStayWithinSchedule)
{
    // x^c = (40, 1) relative to the origin: the small coordinate gets zeroed.
    Instance inst = box_instance(2, 40, 2);
    auto s = compute_schedule(2, 1, 2, 1);
    Vector xc = to_vector({40, 1});
    auto seq = build_sequence(inst, xc, s);
    ASSERT_EQ(seq.trace.size(), 1u);
    EXPECT_EQ(seq.x_ell, to_vector({40, 0}));
    // chi_2 = 180 exceeds |x_1| = 40, but ||x^1|| = Delta |x^1_1|.
    EXPECT_EQ(seq.termination, Termination::small_norm);
    EXPECT_EQ(seq.zero_set, (std::vector<std::size_t>{1}));
    EXPECT_LE(inf_distance(xc, seq.x_ell), s.psi_at(1));
    EXPECT_TRUE(inst.polyhedron().contains(xc - seq.x_ell));
}

TEST(Midpoint, AllOddFloors)
{
    ConicDecomposition d{{to_vector({1, 0}), to_vector({0, 1})}, {Rational(1), Rational(1)}};
    auto w = midpoint_witnesses(to_vector({1, 1}), d, to_vector({1, 1}), to_vector({0, 0}));
    EXPECT_EQ(w.x_l, to_vector({0, 0}));
    EXPECT_EQ(w.x_r, to_vector({1, 1}));
    EXPECT_EQ(w.x_tri, make_vector({Rational(1, 2), Rational(1, 2)}));
    EXPECT_EQ(w.x_dia, make_vector({Rational(1, 2), Rational(1, 2)}));
}

TEST(Midpoint, EvenFloorsCoincide)
{
    ConicDecomposition d{{to_vector({1, 0}), to_vector({1, 1})}, {Rational(5, 2), Rational(4)}};
    auto w = midpoint_witnesses(to_vector({6, 4}), d, make_vector({Rational(13, 2), 4}), make_vector({Rational(1, 2), 0}));
    EXPECT_EQ(w.x_l, w.x_r);
    EXPECT_EQ(w.x_l, w.x_tri);
    EXPECT_EQ(w.x_tri, to_vector({3, 2}));
}

TEST(RunPipeline, ExampleOneOne)
{
    auto fam = build_example_1_1(3);
    auto r = run_pipeline(fam.instance, Rational(1, 2), make_vector({Rational(15, 4)}), to_vector({-3}));
    EXPECT_EQ(r.which, ProximityCase::c1);
    EXPECT_EQ(r.termination, Termination::small_norm);
    EXPECT_EQ(r.x_star_int, to_vector({-3}));
    EXPECT_EQ(r.x_star_cont, make_vector({Rational(15, 4)}));
    EXPECT_EQ(r.distance_int, Rational(27, 4));
    EXPECT_EQ(r.distance_cont, Rational(27, 4));
    EXPECT_EQ(r.schedule.theorem_bound, 21);
    ASSERT_TRUE(r.int_verdict && r.cont_verdict);
    EXPECT_TRUE(r.int_verdict->is_approx);
    EXPECT_TRUE(r.cont_verdict->is_approx);
}

TEST(RunPipeline, CheckedModeRejectsSuboptimalAnchors)
{
    auto fam = build_example_1_1(3);
    EXPECT_THROW(run_pipeline(fam.instance, Rational(1, 2), make_vector({Rational(15, 4)}), to_vector({3})),
                 InputError);
    EXPECT_THROW(run_pipeline(fam.instance, Rational(1, 2), to_vector({0}), to_vector({-3})), InputError);
    EXPECT_NO_THROW(
        run_pipeline(fam.instance, Rational(1, 2), to_vector({0}), to_vector({-3}), PipelineMode::fast));
}

TEST(RunPipeline, WideVertexFamily)
{
    auto fam = build_prop45(2, 1, Rational(1, 2));
    auto check = prox::testing::check_pipeline_case(fam.instance, Rational(1, 2));
    ASSERT_EQ(check.failure, "");
    EXPECT_LE(check.result->distance_int, 882);
    EXPECT_EQ(check.result->schedule.theorem_bound, 882);
}

TEST(RunPipeline, PureIntegerProgramsStayWithinNDelta)
{
    RandomInstanceParams p;
    p.k_max = 0;
    for (std::uint64_t seed = 1; seed <= 30; ++seed) {
        Instance inst = random_instance(seed, p);
        auto check = prox::testing::check_pipeline_case(inst, 1);
        ASSERT_EQ(check.failure, "") << "seed " << seed;
        const Rational nD = Rational(static_cast<long>(inst.n())) * check.result->schedule.delta;
        EXPECT_LE(check.result->distance_int, nD) << "seed " << seed;
        EXPECT_EQ(check.result->which, ProximityCase::c2);
    }
}

TEST(RunPipeline, RandomInstancesSatisfyEveryClaim)
{
    int c2_runs = 0;
    for (std::uint64_t seed = 1; seed <= 25; ++seed) {
        Instance inst = random_instance(seed);
        for (Rational eps : {Rational(1, 10), Rational(1, 2), Rational(1)}) {
            auto check = prox::testing::check_pipeline_case(inst, eps);
            ASSERT_EQ(check.failure, "") << "seed " << seed << " eps " << eps;
            if (check.result->which == ProximityCase::c2) {
                ++c2_runs;
                EXPECT_EQ(check.result->distance_int, check.result->distance_cont);
            }
        }
    }
    EXPECT_GT(c2_runs, 0);
}

TEST(RunPipeline, FamilyInstancesReachEveryBranch)
{
    // Small random polytopes keep the anchors close, so the zeroing steps and
    // the rounding case with large coordinates are exercised here instead.
    struct Expect
    {
        const char* name;
        Instance inst;
        Rational eps;
        ProximityCase which;
        std::size_t steps;
    };
    const std::vector<Expect> cases = {
        {"wide vertex n=2", build_prop45(2, 1, Rational(1, 2)).instance, Rational(1, 2), ProximityCase::c1, 1},
        {"wide vertex n=3", build_prop45(3, 1, Rational(1, 2)).instance, Rational(1, 10), ProximityCase::c1, 2},
        {"bad neighbourhood", build_prop44(Rational(1, 4), 1).instance, Rational(1, 4), ProximityCase::c1, 4},
        {"weighted strip", build_pr_tight(3, 2, 4, Rational(1, 2), Rational(1, 2)).instance, 1, ProximityCase::c1, 2},
        {"long interval", build_example_1_1(30).instance, Rational(1, 2), ProximityCase::c2, 0},
    };
    for (const auto& c : cases) {
        auto check = prox::testing::check_pipeline_case(c.inst, c.eps);
        ASSERT_EQ(check.failure, "") << c.name;
        const auto& r = *check.result;
        EXPECT_EQ(r.which, c.which) << c.name;
        EXPECT_EQ(r.trace.size(), c.steps) << c.name;
        for (std::size_t j = 0; j < r.trace.size(); ++j) {
            const Vector next = j + 1 < r.trace.size() ? r.trace[j + 1].x : r.x_ell;
            EXPECT_LE(inf_distance(r.trace[j].x, next), r.schedule.delta * r.schedule.chi_at(j + 1)) << c.name;
            if (j + 1 < r.trace.size()) {
                EXPECT_GT(r.trace[j + 1].zero_set.size(), r.trace[j].zero_set.size()) << c.name;
            }
        }
        if (c.which == ProximityCase::c2) {
            EXPECT_FALSE(r.support.empty()) << c.name;
        }
    }
}

TEST(Unimodular, IdentityIsANoOp)
{
    auto inst = build_example_1_1(3).instance;
    auto tp = apply_unimodular(inst, Matrix::identity(1), to_vector({0}), 1, 0);
    ASSERT_TRUE(tp.separable_instance().has_value());
    EXPECT_EQ(*tp.separable_instance(), inst);
    EXPECT_EQ(tp.c0, 0);
}

TEST(Unimodular, TranslationReproducesNormalize)
{
    Instance inst = random_instance(7);
    auto xd = solve_iqp(inst).point;
    auto tp = apply_unimodular(inst, Matrix::identity(inst.n()), -xd, 1, -eval_f(inst, xd));
    ASSERT_TRUE(tp.separable_instance().has_value());
    EXPECT_EQ(*tp.separable_instance(), normalize(inst, xd).instance);
    EXPECT_EQ(tp.c0, 0);
}

TEST(Unimodular, CoordinateSwap)
{
    auto fam = build_ilp_tightness(2, 1, Rational(3, 4));
    Matrix swap{{0, 1}, {1, 0}};
    auto tp = apply_unimodular(fam.instance, swap, to_vector({0, 0}), 1, 0);
    for (std::size_t r = 0; r < fam.instance.m(); ++r) {
        EXPECT_EQ(tp.A(r, 0), fam.instance.A(r, 1));
        EXPECT_EQ(tp.A(r, 1), fam.instance.A(r, 0));
    }
    std::vector<Vector> mapped;
    for (const auto& x : enumerate_lattice_points(fam.instance.polyhedron()))
        mapped.push_back(tp.forward(x));
    std::sort(mapped.begin(), mapped.end(), LexLess{});
    EXPECT_EQ(mapped, enumerate_lattice_points(Polyhedron(tp.A, tp.b)));
}

TEST(Unimodular, RejectsBadMaps)
{
    auto inst = build_ilp_tightness(2, 1, Rational(1, 2)).instance;
    EXPECT_THROW(apply_unimodular(inst, Matrix{{2, 0}, {0, 1}}, to_vector({0, 0}), 1, 0), DomainError);
    EXPECT_THROW(apply_unimodular(inst, Matrix::identity(2), make_vector({Rational(1, 2), 0}), 1, 0), DomainError);
    EXPECT_THROW(apply_unimodular(inst, Matrix::identity(2), to_vector({0, 0}), 0, 0), DomainError);
    EXPECT_THROW(apply_unimodular(inst, Matrix::identity(3), to_vector({0, 0, 0}), 1, 0), DimensionError);
}

TEST(Unimodular, FeasibleSetsAndValuesCorrespond)
{
    std::mt19937_64 rng(41);
    const std::vector<Matrix> maps2 = {Matrix{{1, 1}, {0, 1}}, Matrix{{2, 1}, {1, 1}}, Matrix{{0, -1}, {1, 0}}};
    for (std::uint64_t seed = 1; seed <= 20; ++seed) {
        RandomInstanceParams p;
        p.n_max = 2;
        Instance inst = random_instance(seed, p);
        const std::size_t n = inst.n();
        Matrix M = n == 2 ? maps2[seed % maps2.size()] : Matrix{{-1}};
        Vector t = prox::testing::random_integer_vector(rng, n, 3);
        Rational alpha = make_rational(prox::testing::random_int(rng, 1, 5), prox::testing::random_int(rng, 1, 3));
        Rational beta = prox::testing::random_rational(rng, 4, 3);
        auto tp = apply_unimodular(inst, M, t, alpha, beta);

        const auto xs = enumerate_lattice_points(inst.polyhedron());
        std::vector<Vector> mapped;
        for (const auto& x : xs) {
            Vector y = tp.forward(x);
            EXPECT_EQ(tp.backward(y), x);
            EXPECT_EQ(tp.eval(y), alpha * eval_f(inst, x) + beta);
            mapped.push_back(std::move(y));
        }
        std::sort(mapped.begin(), mapped.end(), LexLess{});
        EXPECT_EQ(mapped, enumerate_lattice_points(Polyhedron(tp.A, tp.b))) << "seed " << seed;

        // Minimisers correspond under the bijection.
        Rational best_y = tp.eval(mapped.front());
        for (const auto& y : mapped)
            best_y = std::min(best_y, tp.eval(y));
        auto opt = solve_iqp(inst);
        EXPECT_EQ(best_y, alpha * opt.value + beta);
        for (const auto& x : opt.ties)
            EXPECT_EQ(tp.eval(tp.forward(x)), best_y);

        // Continuous vertices map to vertices.
        for (const auto& v : enumerate_vertices(inst.polyhedron()))
            EXPECT_TRUE(Polyhedron(tp.A, tp.b).contains(tp.forward(v.point)));
    }
}
