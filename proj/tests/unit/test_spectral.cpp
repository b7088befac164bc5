#include "initrec/error.hpp"
#include "initrec/spectral.hpp"

#include "generators.hpp"
#include "oracle.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

using namespace initrec;

namespace {

SpectralOperator dirichlet(std::size_t n, double d = 1.0, double c0 = 0.0)
{
    return build_second_order(n, d, c0, BoundaryCondition::Dirichlet);
}

template <class F>
ErrorKind kind_of(F&& f)
{
    try {
        f();
    } catch (const Error& e) {
        return e.kind();
    }
    ADD_FAILURE() << "no initrec::Error thrown";
    return ErrorKind::ConfigError;
}

}  // namespace

TEST(BuildSecondOrder, DirichletLaplacianEigenvalues)
{
    const auto op = dirichlet(3);
    EXPECT_EQ(op.eigenvalue(0), -1.0);
    EXPECT_EQ(op.eigenvalue(1), -4.0);
    EXPECT_EQ(op.eigenvalue(2), -9.0);
    EXPECT_EQ(op.upper_bound(), -1.0);
    EXPECT_EQ(op.family(), OperatorFamily::Dirichlet2);
}

TEST(BuildSecondOrder, DirichletWithReaction)
{
    const auto op = dirichlet(2, 2.0, 0.5);
    EXPECT_EQ(op.eigenvalue(0), -2.5);
    EXPECT_EQ(op.eigenvalue(1), -8.5);
}

TEST(BuildSecondOrder, NeumannShiftedIndex)
{
    const auto op = build_second_order(2, 1.0, 1.0, BoundaryCondition::Neumann);
    EXPECT_EQ(op.eigenvalue(0), -1.0);
    EXPECT_EQ(op.eigenvalue(1), -2.0);
    EXPECT_EQ(op.family(), OperatorFamily::Neumann2);
}

TEST(BuildSecondOrder, NeumannConstantModeIsConstant)
{
    const auto op = build_second_order(5, 1.0, 1.0, BoundaryCondition::Neumann);
    const double expected = 1.0 / std::sqrt(std::numbers::pi);
    for (std::size_t i = 0; i < op.grid_size(); ++i)
        EXPECT_NEAR(op.basis(i, 0), expected, 1e-14);
}

TEST(BuildSecondOrder, DirichletBasisIsScaledSine)
{
    const auto op = dirichlet(4);
    const double s = std::sqrt(2.0 / std::numbers::pi);
    const auto x = op.grid_points();
    for (std::size_t i = 0; i < op.grid_size(); ++i)
        for (std::size_t j = 0; j < 4; ++j)
            EXPECT_NEAR(op.basis(i, j), s * std::sin(static_cast<double>(j + 1) * x[i]), 1e-14);
}

TEST(BuildSecondOrder, RejectsNonpositiveDiffusivity)
{
    EXPECT_EQ(kind_of([] { dirichlet(3, 0.0); }), ErrorKind::InvalidParameter);
    EXPECT_EQ(kind_of([] { dirichlet(3, -1.0); }), ErrorKind::InvalidParameter);
}

TEST(BuildSecondOrder, NeumannZeroReactionNeedsOverride)
{
    EXPECT_EQ(kind_of([] { build_second_order(3, 1.0, 0.0, BoundaryCondition::Neumann); }),
              ErrorKind::AdmissibilityViolation);
    const auto op = build_second_order(3, 1.0, 0.0, BoundaryCondition::Neumann, 0, true);
    EXPECT_EQ(op.eigenvalue(0), 0.0);
    EXPECT_EQ(op.eigenvalue(2), -4.0);
}

TEST(BuildFourthOrder, PinnedEigenvalues)
{
    const auto a = build_fourth_order(2, 1.0, 0.0);
    EXPECT_EQ(a.eigenvalue(0), -1.0);
    EXPECT_EQ(a.eigenvalue(1), -16.0);
    const auto b = build_fourth_order(2, 1.0, 1.0);
    EXPECT_EQ(b.eigenvalue(0), -2.0);
    EXPECT_EQ(b.eigenvalue(1), -20.0);
    const auto c = build_fourth_order(1, 3.0, 2.0);
    EXPECT_EQ(c.eigenvalue(0), -5.0);
    EXPECT_EQ(c.family(), OperatorFamily::Pinned4);
}

TEST(BuildFourthOrder, RejectsNonpositiveD1)
{
    EXPECT_EQ(kind_of([] { build_fourth_order(2, 0.0, 1.0); }), ErrorKind::InvalidParameter);
}

TEST(SpectralOperator, RejectsIncreasingEigenvalues)
{
    EXPECT_EQ(kind_of([] {
                  SpectralOperator(OperatorFamily::Dirichlet2, {-2.0, -1.0}, 0.0, {1.0}, {1.0},
                                   {1.0, 0.0});
              }),
              ErrorKind::InvalidInput);
}

TEST(SpectralOperator, FamilyTagsRoundTrip)
{
    for (auto f : {OperatorFamily::Dirichlet2, OperatorFamily::Neumann2, OperatorFamily::Pinned4})
        EXPECT_EQ(parse_family(family_tag(f)), f);
    EXPECT_THROW(parse_family("biharmonic"), Error);
}

TEST(SpectralOperator, OrthonormalityAcrossSizes)
{
    gen::Source g(11);
    for (int trial = 0; trial < 20; ++trial) {
        const std::size_t n = g.index(1, 64);
        const std::size_t grid = g.coin() ? 0 : n + 1 + g.index(0, 3 * n);
        EXPECT_LE(build_second_order(n, 1.0, 0.0, BoundaryCondition::Dirichlet, grid)
                      .orthonormality_defect(),
                  1e-10);
        EXPECT_LE(build_second_order(n, 1.0, 1.0, BoundaryCondition::Neumann, grid ? grid + 1 : 0)
                      .orthonormality_defect(),
                  1e-10);
        EXPECT_LE(build_fourth_order(n, 1.0, 0.5, grid).orthonormality_defect(), 1e-10);
    }
}

TEST(SemigroupApply, Examples)
{
    const auto op1 = dirichlet(1);
    const std::vector<double> c{3.5};
    EXPECT_EQ(semigroup_apply(op1, 0.0, c)[0], 3.5);
    const std::vector<double> one{1.0};
    EXPECT_LE(oracle::rel_err(semigroup_apply(op1, 1.0, one)[0], oracle::exp(oracle::hp(-1))),
              1e-15);

    const auto op2 = build_second_order(2, 2.0, 0.0, BoundaryCondition::Neumann, 0, true);
    const auto out = semigroup_apply(op2, 0.5, std::vector<double>{1.0, 1.0});
    EXPECT_EQ(out[0], 1.0);
    EXPECT_LE(oracle::rel_err(out[1], oracle::exp(oracle::hp(-1))), 1e-15);
}

TEST(SemigroupApply, NegativeTimeRejected)
{
    const auto op = dirichlet(2);
    EXPECT_EQ(kind_of([&] { semigroup_apply(op, -0.1, std::vector<double>{1.0, 1.0}); }),
              ErrorKind::InvalidParameter);
    EXPECT_EQ(kind_of([&] { semigroup_apply(op, 0.1, std::vector<double>{1.0}); }),
              ErrorKind::InvalidInput);
}

TEST(SemigroupApply, SemigroupLawWithinFourUlp)
{
    gen::Source g(7);
    const auto op = dirichlet(12, 0.25);
    for (int trial = 0; trial < 500; ++trial) {
        const double t = g.dyadic(0.0, 2.0);
        const double s = g.dyadic(0.0, 2.0);
        const auto c = g.vector(12, -1.0, 1.0);
        const auto once = semigroup_apply(op, t + s, c);
        const auto twice = semigroup_apply(op, t, semigroup_apply(op, s, c));
        for (std::size_t j = 0; j < c.size(); ++j)
            ASSERT_LE(oracle::ulps(once[j], twice[j]), 4.0) << "t=" << t << " s=" << s;
    }
}

TEST(SemigroupApply, ContractiveForDissipativeOperators)
{
    gen::Source g(8);
    for (int trial = 0; trial < 200; ++trial) {
        const auto op = g.coin() ? dirichlet(g.index(1, 20), g.uniform(0.1, 3.0))
                                 : build_fourth_order(g.index(1, 10), g.uniform(0.1, 2.0), 0.0);
        const auto c = g.vector(op.mode_count(), -2.0, 2.0);
        const double t = g.log_uniform(1e-6, 10.0);
        EXPECT_LE(euclidean_norm(semigroup_apply(op, t, c)), euclidean_norm(c));
    }
}

TEST(SemigroupApply, SmoothingBound)
{
    gen::Source g(9);
    for (int trial = 0; trial < 300; ++trial) {
        const auto op = dirichlet(g.index(1, 32), g.uniform(0.1, 5.0));
        const double theta = g.uniform(0.0, 1.0);
        const FractionalNormSpec spec{theta, 0.0};
        const auto c = g.vector(op.mode_count(), -1.0, 1.0);
        const double t = g.log_uniform(1e-4, 5.0);
        const double lhs = std::pow(t, theta) * fractional_norm(op, semigroup_apply(op, t, c), spec);
        const double bound = (theta == 0.0 ? 1.0 : std::pow(theta / std::exp(1.0), theta)) *
                             euclidean_norm(c);
        EXPECT_LE(lhs, bound * (1.0 + 1e-12));
    }
}

TEST(FractionalNorm, Examples)
{
    const auto op2 = dirichlet(2);
    EXPECT_EQ(fractional_norm(op2, std::vector<double>{1.0, 0.0}, {0.0, 0.0}), 1.0);
    EXPECT_EQ(fractional_norm(op2, std::vector<double>{1.0, 0.0}, {0.0, 7.0}), 1.0);

    const auto op1 = dirichlet(1);
    EXPECT_DOUBLE_EQ(fractional_norm(op1, std::vector<double>{2.0}, {0.5, 0.0}), 2.0);

    const auto op3 = dirichlet(1, 3.0);
    EXPECT_DOUBLE_EQ(fractional_norm(op3, std::vector<double>{1.0}, {0.5, 1.0}), 2.0);
}

TEST(FractionalNorm, InvalidShift)
{
    const auto op = build_second_order(2, 1.0, 0.0, BoundaryCondition::Neumann, 0, true);
    EXPECT_EQ(kind_of([&] { fractional_norm(op, std::vector<double>{1.0, 1.0}, {0.5, 0.0}); }),
              ErrorKind::InvalidSpec);
    EXPECT_EQ(kind_of([&] { fractional_norm(op, std::vector<double>{1.0, 1.0}, {1.5, 2.0}); }),
              ErrorKind::InvalidSpec);
}

TEST(FractionalNorm, DefaultShift)
{
    EXPECT_EQ(default_norm_spec(dirichlet(3), 0.5).delta0, 0.0);
    const auto zero_mode = build_second_order(3, 1.0, 0.0, BoundaryCondition::Neumann, 0, true);
    EXPECT_EQ(default_norm_spec(zero_mode, 0.5).delta0, 1.0);
    EXPECT_NO_THROW(default_norm_spec(zero_mode, 0.5).validate(zero_mode));
}

TEST(FractionalNorm, MonotoneInThetaWhenShiftedSpectrumAtLeastOne)
{
    gen::Source g(10);
    for (int trial = 0; trial < 300; ++trial) {
        const auto op = dirichlet(g.index(1, 24), g.uniform(1.0, 4.0));
        const auto c = g.vector(op.mode_count(), -1.0, 1.0);
        const double a = g.uniform(0.0, 1.0), b = g.uniform(0.0, 1.0);
        const double lo = std::min(a, b), hi = std::max(a, b);
        EXPECT_LE(fractional_norm(op, c, {lo, 0.0}), fractional_norm(op, c, {hi, 0.0}) * (1 + 1e-15));
    }
}

TEST(TimeGrid, Examples)
{
    const auto a = make_graded_grid(1.0, 2, 1.0);
    EXPECT_EQ(std::vector<double>(a.nodes().begin(), a.nodes().end()),
              (std::vector<double>{0.0, 0.5, 1.0}));
    const auto b = make_graded_grid(1.0, 2, 2.0);
    EXPECT_EQ(std::vector<double>(b.nodes().begin(), b.nodes().end()),
              (std::vector<double>{0.0, 0.25, 1.0}));
    const auto c = make_graded_grid(2.0, 4, 1.0);
    EXPECT_EQ(std::vector<double>(c.nodes().begin(), c.nodes().end()),
              (std::vector<double>{0.0, 0.5, 1.0, 1.5, 2.0}));
}

TEST(TimeGrid, InvariantsOverRandomParameters)
{
    gen::Source g(12);
    for (int trial = 0; trial < 200; ++trial) {
        const double T = g.log_uniform(1e-3, 1e3);
        const auto grid = make_graded_grid(T, g.index(2, 500), g.uniform(1.0, 4.0));
        EXPECT_EQ(grid[0], 0.0);
        EXPECT_EQ(grid[grid.intervals()], T);
        for (std::size_t i = 0; i < grid.intervals(); ++i) ASSERT_LT(grid[i], grid[i + 1]);
    }
}

TEST(TimeGrid, RejectsBadParameters)
{
    EXPECT_EQ(kind_of([] { make_graded_grid(0.0, 4, 1.0); }), ErrorKind::InvalidParameter);
    EXPECT_EQ(kind_of([] { make_graded_grid(1.0, 1, 1.0); }), ErrorKind::InvalidParameter);
    EXPECT_EQ(kind_of([] { make_graded_grid(1.0, 4, 0.5); }), ErrorKind::InvalidParameter);
}

TEST(TimeGrid, DefaultGrading)
{
    EXPECT_EQ(default_grading(1.0), 1.0);
    EXPECT_EQ(default_grading(0.5), 2.0);
    EXPECT_EQ(default_grading(0.1), 4.0);
    EXPECT_EQ(default_grading(2.0), 1.0);
}

TEST(WeightedSupNorm, Examples)
{
    const auto op = dirichlet(1);
    const auto grid = make_graded_grid(1.0, 8, 1.0);
    Trajectory constant(grid, 1, true);
    for (std::size_t i = 0; i < grid.node_count(); ++i) constant.at(i)[0] = 1.0;
    EXPECT_EQ(weighted_sup_norm(op, constant, 0.0, {0.0, 0.0}), 1.0);

    Trajectory inverse(grid, 1, false);
    for (std::size_t i = 1; i < grid.node_count(); ++i) inverse.at(i)[0] = 1.0 / grid[i];
    EXPECT_DOUBLE_EQ(weighted_sup_norm(op, inverse, 1.0, {0.0, 0.0}), 1.0);

    const Trajectory zero(grid, 1, true);
    EXPECT_EQ(weighted_sup_norm(op, zero, 0.7, {0.3, 0.0}), 0.0);
}

TEST(WeightedSupNorm, IgnoresInitialSlotForPositiveWeight)
{
    const auto op = dirichlet(1);
    Trajectory u(make_graded_grid(1.0, 4, 1.0), 1, true);
    u.at(0)[0] = 100.0;
    u.at(4)[0] = 1.0;
    EXPECT_EQ(weighted_sup_norm(op, u, 0.5, {0.0, 0.0}), 1.0);
    EXPECT_EQ(weighted_sup_norm(op, u, 0.0, {0.0, 0.0}), 100.0);
    EXPECT_EQ(sup_norm_e0(u), 100.0);
}

TEST(Transforms, Examples)
{
    const auto op = dirichlet(1);
    const auto v0 = synthesize(op, std::vector<double>{0.0});
    for (double x : v0) EXPECT_EQ(x, 0.0);
    EXPECT_EQ(analyze(op, v0)[0], 0.0);

    const auto v = synthesize(op, std::vector<double>{1.0});
    const auto x = op.grid_points();
    for (std::size_t i = 0; i < v.size(); ++i)
        EXPECT_NEAR(v[i], std::sqrt(2.0 / std::numbers::pi) * std::sin(x[i]), 1e-15);
    EXPECT_NEAR(analyze(op, v)[0], 1.0, 1e-10);

    const auto op2 = dirichlet(2);
    const auto c = analyze(op2, synthesize(op2, std::vector<double>{1.0, 1.0}));
    EXPECT_NEAR(c[0], 1.0, 1e-10);
    EXPECT_NEAR(c[1], 1.0, 1e-10);
}

TEST(Transforms, DimensionMismatch)
{
    const auto op = dirichlet(3);
    EXPECT_EQ(kind_of([&] { synthesize(op, std::vector<double>{1.0}); }), ErrorKind::InvalidInput);
    EXPECT_EQ(kind_of([&] { analyze(op, std::vector<double>{1.0}); }), ErrorKind::InvalidInput);
}

TEST(Transforms, RoundTripProperty)
{
    gen::Source g(13);
    for (int trial = 0; trial < 100; ++trial) {
        const std::size_t n = g.index(1, 48);
        const SpectralOperator op =
            trial % 3 == 0   ? dirichlet(n)
            : trial % 3 == 1 ? build_second_order(n, 1.0, 0.5, BoundaryCondition::Neumann)
                             : build_fourth_order(n, 1.0, 0.0);
        const auto c = g.vector(n, -3.0, 3.0);
        const auto back = analyze(op, synthesize(op, c));
        for (std::size_t j = 0; j < n; ++j) ASSERT_NEAR(back[j], c[j], 1e-10);
    }
}

TEST(Trajectory, ArithmeticAndFiniteness)
{
    const auto grid = make_graded_grid(1.0, 3, 1.0);
    Trajectory a(grid, 2), b(grid, 2);
    a.at(1)[0] = 1.0;
    b.at(1)[0] = 2.0;
    const auto c = a + b;
    EXPECT_EQ(c.at(1)[0], 3.0);
    EXPECT_EQ((c - b).at(1)[0], 1.0);
    EXPECT_TRUE(c.all_finite());
    a.at(2)[1] = std::nan("");
    EXPECT_FALSE(a.all_finite());
    Trajectory other(make_graded_grid(2.0, 3, 1.0), 2);
    EXPECT_EQ(kind_of([&] { a += other; }), ErrorKind::InvalidInput);
}
