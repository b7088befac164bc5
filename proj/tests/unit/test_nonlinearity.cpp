#include "initrec/error.hpp"
#include "initrec/nonlinearity.hpp"

#include "generators.hpp"
#include "oracle.hpp"

#include <gtest/gtest.h>

#include <cmath>

using namespace initrec;

namespace {

// One mode, one physical point, identity synthesis.
SpectralOperator scalar_operator(double lambda = -1.0)
{
    return SpectralOperator(OperatorFamily::Dirichlet2, {lambda}, lambda, {1.0}, {1.0}, {1.0});
}

Trajectory constant_scalar(const TimeGrid& grid, double v)
{
    Trajectory u(grid, 1);
    for (std::size_t i = 0; i < grid.node_count(); ++i) u.at(i)[0] = v;
    return u;
}

Trajectory random_trajectory(gen::Source& g, const TimeGrid& grid, std::size_t modes, double scale)
{
    Trajectory u(grid, modes);
    for (std::size_t i = 0; i < grid.node_count(); ++i) {
        const auto c = g.smooth_state(modes, scale, 1.0);
        std::copy(c.begin(), c.end(), u.at(i).begin());
    }
    return u;
}

double trajectory_e0(const Trajectory& u)
{
    return sup_norm_e0(u);
}

}  // namespace

TEST(PowerLaw, PointwiseExamples)
{
    EXPECT_EQ(power_law_pointwise(1.0, 1.0, 2.0), 4.0);
    EXPECT_EQ(power_law_pointwise(0.5, 2.0, -1.0), -0.5);
    EXPECT_EQ(power_law_pointwise(3.0, 0.7, 0.0), 0.0);
}

TEST(PowerLaw, EvalLocalExamples)
{
    const auto op = scalar_operator();
    const auto grid = make_graded_grid(1.0, 4, 1.0);
    const auto four = eval_local(PowerLaw{1.0, 1.0}, constant_scalar(grid, 2.0), op);
    const auto neg = eval_local(PowerLaw{0.5, 2.0}, constant_scalar(grid, -1.0), op);
    for (std::size_t i = 0; i < grid.node_count(); ++i) {
        EXPECT_EQ(four.at(i)[0], 4.0);
        EXPECT_EQ(neg.at(i)[0], -0.5);
    }
}

TEST(PowerLaw, ZeroInputGivesZeroTrajectory)
{
    const auto op = build_second_order(12, 1.0, 0.0, BoundaryCondition::Dirichlet);
    const Trajectory zero(make_graded_grid(1.0, 8, 2.0), 12);
    for (const Nonlinearity& f :
         {Nonlinearity(PowerLaw{5.0, 1.5}), Nonlinearity(MemoryKernel{2.0, -0.3, 1.0}),
          Nonlinearity(ZeroNonlinearity{})}) {
        const auto out = evaluate(f, zero, op);
        EXPECT_TRUE(out.includes_t0());
        EXPECT_EQ(sup_norm_e0(out), 0.0) << describe(f);
    }
}

TEST(PowerLaw, NonFiniteValuesRaiseNumericFailure)
{
    const auto op = scalar_operator();
    const auto grid = make_graded_grid(1.0, 3, 1.0);
    auto u = constant_scalar(grid, 1.0);
    u.at(2)[0] = 1e200;
    try {
        eval_local(PowerLaw{1.0, 2.0}, u, op);
        FAIL() << "expected NumericFailure";
    } catch (const NumericFailure& e) {
        EXPECT_EQ(e.kind(), ErrorKind::NumericFailure);
    }
}

TEST(PowerLaw, OddSymmetryProperty)
{
    gen::Source g(31);
    for (int trial = 0; trial < 60; ++trial) {
        const std::size_t modes = g.index(1, 24);
        const auto op = g.coin() ? build_second_order(modes, g.uniform(0.1, 2.0), 0.0,
                                                      BoundaryCondition::Dirichlet)
                                 : build_fourth_order(modes, g.uniform(0.1, 2.0), 0.0);
        const auto grid = make_graded_grid(g.uniform(0.1, 2.0), g.index(2, 10), 1.0);
        const auto u = random_trajectory(g, grid, modes, g.log_uniform(1e-3, 10.0));
        Trajectory minus = u;
        minus *= -1.0;
        const PowerLaw f{g.uniform(-3.0, 3.0), g.uniform(0.1, 3.0)};
        auto sum = eval_local(f, u, op) + eval_local(f, minus, op);
        ASSERT_EQ(sup_norm_e0(sum), 0.0);
    }
}

TEST(Superlinear, VanishingAtZeroProperty)
{
    gen::Source g(32);
    for (int trial = 0; trial < 40; ++trial) {
        const std::size_t modes = g.index(1, 16);
        const auto op = build_second_order(modes, 1.0, 0.0, BoundaryCondition::Dirichlet);
        const auto grid = make_graded_grid(1.0, g.index(2, 12), g.uniform(1.0, 3.0));
        const auto u = random_trajectory(g, grid, modes, g.uniform(0.5, 2.0));
        const double ell = g.uniform(1.0, 3.0);
        const Nonlinearity fs[] = {PowerLaw{g.uniform(0.5, 2.0), ell},
                                   MemoryKernel{g.uniform(0.5, 2.0), g.uniform(-0.9, 1.0), ell}};
        for (const auto& f : fs) {
            Trajectory small = u;
            small *= 1e-4;
            const double big = trajectory_e0(evaluate(f, u, op));
            const double tiny = trajectory_e0(evaluate(f, small, op)) / 1e-4;
            ASSERT_GT(big, 0.0);
            ASSERT_LE(tiny, 1e-3 * big) << describe(f);
        }
    }
}

TEST(MemoryKernel, ConstantStateWithFlatKernel)
{
    const auto op = scalar_operator();
    for (double v0 : {1.0, -0.7, 2.5}) {
        const auto grid = make_graded_grid(1.5, 64, 2.0);
        const auto out = eval_memory_kernel(MemoryKernel{1.0, 0.0, 1.0}, constant_scalar(grid, v0), op);
        for (std::size_t i = 0; i < grid.node_count(); ++i)
            ASSERT_NEAR(out.at(i)[0], v0 * std::abs(v0) * grid[i], 1e-8);
    }
}

TEST(MemoryKernel, InverseSquareRootKernel)
{
    const auto op = scalar_operator();
    for (double r : {1.0, 2.0, 4.0}) {
        const auto grid = make_graded_grid(1.0, 50, r);
        const auto out = eval_memory_kernel(MemoryKernel{1.0, -0.5, 1.0}, constant_scalar(grid, 1.0), op);
        for (std::size_t i = 0; i < grid.node_count(); ++i)
            ASSERT_NEAR(out.at(i)[0], 2.0 * std::sqrt(grid[i]), 1e-8) << "i=" << i << " r=" << r;
    }
}

TEST(MemoryKernel, ExactForPiecewiseLinearIntegrand)
{
    // u = sqrt(t), ell = 1 gives q(s) = s, so the product rule is exact:
    // int_0^t c (t-s)^p s ds = c t^{p+2} / ((p+1)(p+2)).
    using oracle::hp;
    gen::Source g(33);
    const auto op = scalar_operator();
    for (int trial = 0; trial < 60; ++trial) {
        const double p = g.uniform(-0.95, 2.0);
        const double c = g.uniform(0.1, 3.0);
        const auto grid = make_graded_grid(g.uniform(0.2, 3.0), g.index(2, 40), g.uniform(1.0, 4.0));
        Trajectory u(grid, 1);
        for (std::size_t i = 0; i < grid.node_count(); ++i) u.at(i)[0] = std::sqrt(grid[i]);
        const auto out = eval_memory_kernel(MemoryKernel{c, p, 1.0}, u, op);
        for (std::size_t i = 1; i < grid.node_count(); ++i) {
            const hp t = grid[i];
            const hp want = hp(c) * pow(t, hp(p) + 2) / ((hp(p) + 1) * (hp(p) + 2));
            ASSERT_LE(oracle::rel_err(out.at(i)[0], want), 1e-12) << "p=" << p << " i=" << i;
        }
    }
}

TEST(MemoryKernel, RejectsNonIntegrableExponent)
{
    const auto op = scalar_operator();
    const auto u = constant_scalar(make_graded_grid(1.0, 4, 1.0), 1.0);
    for (double p : {-1.0, -1.5}) {
        try {
            eval_memory_kernel(MemoryKernel{1.0, p, 1.0}, u, op);
            FAIL();
        } catch (const Error& e) {
            EXPECT_EQ(e.kind(), ErrorKind::InvalidParameter);
        }
    }
    EXPECT_THROW(validate(Nonlinearity(PowerLaw{1.0, 0.0})), Error);
    EXPECT_THROW(validate(Nonlinearity(MemoryKernel{1.0, 0.0, -1.0})), Error);
}

TEST(GrowthCheck, Examples)
{
    const auto op = scalar_operator(-1.0);
    const FractionalNormSpec spec{0.0, 0.0};
    const auto zero = check_growth_condition(ZeroNonlinearity{}, op, 200, 1e-4, 1.0, spec, 1);
    EXPECT_EQ(zero.c_hat, 0.0);
    EXPECT_TRUE(zero.pass);

    const auto one = check_growth_condition(PowerLaw{1.0, 1.0}, op, 2000, 1e-4, 1.0, spec, 2);
    EXPECT_TRUE(one.pass);
    EXPECT_LE(one.c_hat, 1.0 + 1e-9);
    EXPECT_GT(one.c_hat, 0.0);

    const auto two = check_growth_condition(PowerLaw{2.0, 1.0}, op, 2000, 1e-4, 1.0, spec, 2);
    EXPECT_LE(two.c_hat, 2.0 + 1e-9);
    EXPECT_NEAR(two.c_hat, 2.0 * one.c_hat, 1e-12);
}

TEST(GrowthCheck, RejectsTooFewSamples)
{
    const auto op = scalar_operator();
    try {
        check_growth_condition(PowerLaw{}, op, 99, 1e-4, 1.0, FractionalNormSpec{0.0, 0.0});
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.kind(), ErrorKind::InvalidParameter);
    }
}

TEST(GrowthCheck, DeterministicInSeedAndBoundedForScalarPowers)
{
    gen::Source g(34);
    for (int trial = 0; trial < 20; ++trial) {
        const double kappa = g.uniform(0.1, 4.0);
        const double ell = g.uniform(0.2, 3.0);
        const auto op = scalar_operator();
        const FractionalNormSpec spec{0.0, 0.0};
        const auto seed = static_cast<std::uint64_t>(g.index(0, 1000));
        const auto a = check_growth_condition(PowerLaw{kappa, ell}, op, 300, 1e-3, 1.0, spec, seed);
        const auto b = check_growth_condition(PowerLaw{kappa, ell}, op, 300, 1e-3, 1.0, spec, seed);
        ASSERT_EQ(a.c_hat, b.c_hat);
        // ||v|^l v - |w|^l w| <= (l+1) max(|v|,|w|)^l |v-w| <= (l+1)(|v|^l+|w|^l)|v-w|.
        ASSERT_LE(a.c_hat, kappa * (ell + 1.0) * (1 + 1e-12));
    }
}

TEST(KernelAdmissibility, Examples)
{
    EXPECT_TRUE(check_kernel_admissibility(0.0, 0.2, 1.0, 0.5).pass);

    const auto edge = check_kernel_admissibility(-1.0, 0.2, 1.0, 0.5);
    EXPECT_FALSE(edge.pass);
    ASSERT_FALSE(edge.violated.empty());
    EXPECT_EQ(edge.violated.front(), kKernelIntegrable);

    const auto super = check_kernel_admissibility(0.0, 0.6, 1.0, 0.0);
    EXPECT_FALSE(super.pass);
    // 1 + nu + lambda = 1 < 1.2 as well, so the weight inequality is listed too.
    EXPECT_EQ(super.violated, (std::vector<std::string>{kKernelSubcritical, kKernelWeight}));

    const auto weight = check_kernel_admissibility(-0.9, 0.3, 1.0, 0.0);
    EXPECT_EQ(weight.violated, std::vector<std::string>{kKernelWeight});
}

TEST(KernelAdmissibility, MatchesDirectEvaluation)
{
    gen::Source g(35);
    for (int trial = 0; trial < 1000; ++trial) {
        const double p = g.uniform(-1.5, 1.0), th = g.uniform(0.0, 1.0);
        const double ell = g.uniform(0.1, 3.0), nu = g.uniform(0.0, 1.0);
        const bool want = p > -1.0 && th * (ell + 1) < 1.0 && 1 + nu + p > th * (ell + 1);
        ASSERT_EQ(check_kernel_admissibility(p, th, ell, nu).pass, want);
    }
}

TEST(DeclaredExponents, PowerLawWeightIsThetaTimesEllPlusOne)
{
    gen::Source g(36);
    for (int trial = 0; trial < 200; ++trial) {
        const double th = g.uniform(0.0, 1.0), ell = g.uniform(0.1, 4.0);
        const auto e = declared_exponents(PowerLaw{g.uniform(-2.0, 2.0), ell}, th);
        ASSERT_EQ(e.nu, th * (ell + 1.0));
        ASSERT_EQ(e.theta, th);
        ASSERT_EQ(e.ell, ell);
    }
}

TEST(DeclaredExponents, MemoryKernelDerivedWeightIsAdmissible)
{
    gen::Source g(37);
    for (int trial = 0; trial < 200; ++trial) {
        const double p = g.uniform(-0.99, 1.0);
        const double ell = g.uniform(0.1, 2.0);
        const double th = g.uniform(0.0, 0.99 / (ell + 1.0));
        const auto e = declared_exponents(MemoryKernel{1.0, p, ell}, th);
        ASSERT_TRUE(check_kernel_admissibility(p, th, ell, e.nu).pass);
        ASSERT_GE(e.nu, 0.0);
        ASSERT_LT(e.nu, 1.0);
    }
    EXPECT_EQ(declared_exponents(MemoryKernel{1.0, 0.0, 1.0, 0.3}, 0.2).nu, 0.3);
}

TEST(EvaluateState, MatchesTrajectoryEvaluation)
{
    gen::Source g(38);
    const auto op = build_second_order(10, 1.0, 0.0, BoundaryCondition::Dirichlet);
    const auto c = g.smooth_state(10, 1.0, 1.0);
    Trajectory u(make_graded_grid(1.0, 2, 1.0), 10);
    std::copy(c.begin(), c.end(), u.at(1).begin());
    const PowerLaw f{1.5, 2.0};
    const auto traj = eval_local(f, u, op);
    const auto state = evaluate_state(f, c, op);
    for (std::size_t j = 0; j < 10; ++j) EXPECT_EQ(traj.at(1)[j], state[j]);
    EXPECT_TRUE(vanishes_at_zero(f, op));
    EXPECT_FALSE(vanishes_at_zero(PointwiseNonlinearity{[](double v) { return 1.0 + v; }}, op));
}
