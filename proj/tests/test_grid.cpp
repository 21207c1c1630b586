#include <gtest/gtest.h>

#include "support.hpp"

using namespace sg;
using sgtest::cc_grid;
using sgtest::random_field;
using sgtest::regular_grid;

TEST(Grid, CellCenteredCoordinates) {
    const Grid g = Grid::make(Layout::CellCentered, -1.0, 0.0, 1.0, 4.0, 4, 8);
    EXPECT_EQ(g.points_x(), 4);
    EXPECT_EQ(g.points_y(), 8);
    EXPECT_DOUBLE_EQ(g.hx, 0.5);
    EXPECT_DOUBLE_EQ(g.x(0), -0.75);
    EXPECT_DOUBLE_EQ(g.y(7), 3.75);
}

TEST(Grid, RegularCoordinates) {
    const Grid g = Grid::make(Layout::Regular, -1.0, 0.0, 1.0, 4.0, 4, 8);
    EXPECT_EQ(g.points_x(), 5);
    EXPECT_EQ(g.points_y(), 9);
    EXPECT_DOUBLE_EQ(g.x(0), -1.0);
    EXPECT_DOUBLE_EQ(g.x(4), 1.0);
    EXPECT_DOUBLE_EQ(g.y(8), 4.0);
}

TEST(Grid, WithSpacingRejectsNonMultiple) {
    EXPECT_THROW(Grid::with_spacing(Layout::Regular, 0, 0, 1, 1, 0.3), ConfigError);
    EXPECT_EQ(Grid::with_spacing(Layout::Regular, -7, -7, 7, 7, 0.25).nx, 56);
}

TEST(Grid, InvalidExtents) {
    EXPECT_THROW(Grid::make(Layout::Regular, 0, 0, 0, 1, 4, 4), ConfigError);
    EXPECT_THROW(Grid::make(Layout::Regular, 0, 0, 1, 1, 0, 4), ConfigError);
}

TEST(TimeGrid, StepCountTimesTauIsFinalTime) {
    const TimeGrid tg = TimeGrid::make(0.01, 50.0);
    EXPECT_EQ(tg.n_steps, 5000);
    EXPECT_NEAR(tg.n_steps * tg.tau, 50.0, 1e-12);
    EXPECT_EQ(TimeGrid::make(0.1, 0.0).n_steps, 0);
    EXPECT_THROW(TimeGrid::make(0.3, 1.0), ConfigError);
    EXPECT_THROW(TimeGrid::make(0.0, 1.0), ConfigError);
}

TEST(InnerH, ConstantFieldGivesArea) {
    const Grid g = Grid::make(Layout::CellCentered, 0, 0, 2, 2, 2, 2);
    const GridFunction one(g, 1.0);
    EXPECT_DOUBLE_EQ(inner_h(one, one), 4.0);
}

TEST(InnerH, ZeroAnnihilates) {
    const Grid g = cc_grid(3, 3);
    EXPECT_EQ(inner_h(GridFunction(g), random_field(g, 1)), 0.0);
}

TEST(InnerH, HandSum) {
    const Grid g = Grid::make(Layout::CellCentered, 0, 0, 1, 1, 2, 2);
    GridFunction u(g);
    u(0, 0) = 1;
    u(0, 1) = 2;
    u(1, 0) = 3;
    u(1, 1) = 4;
    EXPECT_DOUBLE_EQ(inner_h(u, GridFunction(g, 1.0)), 2.5);
}

TEST(InnerH, MismatchedGrids) {
    EXPECT_THROW(inner_h(GridFunction(cc_grid(2, 2)), GridFunction(cc_grid(3, 3))), DimensionError);
}

TEST(InnerLambda, IdentityWeightsMatchInnerHBitwise) {
    const Grid g = regular_grid(6, 5);
    const GridFunction u = random_field(g, 2), v = random_field(g, 3);
    const std::vector<double> lx(g.points_x(), 1.0), ly(g.points_y(), 1.0);
    EXPECT_EQ(inner_lambda(u, v, lx, ly), inner_h(u, v));
}

TEST(InnerLambda, TrapezoidMass) {
    const Grid g = Grid::make(Layout::Regular, 0, 0, 2, 1, 2, 1);
    const GridFunction one(g, 1.0);
    const std::vector<double> lx = {0.5, 1.0, 0.5}, ly = {0.5, 0.5};
    // hy = 1 and the y-weights sum to one, so this is the 1D trapezoid mass sum(w) * hx.
    EXPECT_DOUBLE_EQ(inner_lambda(one, one, lx, ly), 2.0);
}

TEST(InnerLambda, Sbp2WeightsAreCompositeTrapezoid) {
    const Grid g = Grid::make(Layout::Regular, 0, 0, 1, 1, 4, 4);
    const OperatorSet ops = build_sbp2(g);
    auto p = [](double x, double y) { return 1.0 + 2.0 * x - x * x * x + 0.5 * x * y + y * y; };
    const GridFunction u = GridFunction::sample(g, p);
    double trap = 0.0;
    const int n = 4;
    for (int j = 0; j <= n; ++j)
        for (int k = 0; k <= n; ++k) {
            const double wj = (j == 0 || j == n) ? 0.5 : 1.0;
            const double wk = (k == 0 || k == n) ? 0.5 : 1.0;
            trap += wj * wk * p(j / 4.0, k / 4.0);
        }
    trap *= 0.25 * 0.25;
    EXPECT_NEAR(inner_lambda(u, GridFunction(g, 1.0), ops.lx, ops.ly), trap, 1e-14);
}

TEST(InnerLambda, Errors) {
    const Grid g = regular_grid(3, 3);
    const GridFunction u(g, 1.0);
    const std::vector<double> good(4, 1.0), short_w(3, 1.0), bad = {1.0, 0.0, 1.0, 1.0};
    EXPECT_THROW(inner_lambda(u, u, short_w, good), DimensionError);
    EXPECT_THROW(inner_lambda(u, u, good, bad), DimensionError);
}

TEST(InnerProducts, SymmetricAndPositiveDefinite) {
    for (OperatorKind kind : {OperatorKind::CC, OperatorKind::SBP2, OperatorKind::SBP4}) {
        const OperatorSet ops = sgtest::ops_for(kind, 12);
        for (std::uint32_t seed = 0; seed < 20; ++seed) {
            const GridFunction u = random_field(ops.grid, seed), v = random_field(ops.grid, seed + 100);
            EXPECT_NEAR(inner(ops, u, v), inner(ops, v, u), 1e-14);
            EXPECT_GT(inner(ops, u, u), 0.0);
            GridFunction w = u;
            w.axpy(2.5, v);
            EXPECT_NEAR(inner(ops, w, v), inner(ops, u, v) + 2.5 * inner(ops, v, v), 1e-12);
        }
    }
}

TEST(GradNormSq, NonNegativeAndZeroOnConstants) {
    for (OperatorKind kind : {OperatorKind::CC, OperatorKind::SBP2, OperatorKind::SBP4}) {
        const OperatorSet ops = sgtest::ops_for(kind, 10);
        std::mt19937 rng(7);
        std::uniform_real_distribution<double> dist(-100.0, 100.0);
        for (int i = 0; i < 10; ++i) {
            EXPECT_GT(grad_norm_sq(random_field(ops.grid, i), ops), 0.0);
            EXPECT_NEAR(grad_norm_sq(GridFunction(ops.grid, dist(rng)), ops), 0.0, 1e-13 * 1e4);
        }
    }
}

TEST(GradNormSq, LinearInXOnCellCenteredGrid) {
    const Grid g = Grid::make(Layout::CellCentered, 0, 0, 2, 1, 8, 4);
    const OperatorSet ops = build_cc(g);
    const GridFunction u = GridFunction::sample(g, [](double x, double) { return x; });
    // Unit slope over nx - 1 interior faces: (x1 - x0 - hx) * (y1 - y0).
    EXPECT_NEAR(grad_norm_sq(u, ops), (2.0 - g.hx) * 1.0, 1e-14);
    EXPECT_NEAR(grad_norm_sq(u, ops), -inner_h(apply_laplacian(ops, u), u), 1e-13);
}

TEST(GridFunction, Arithmetic) {
    const Grid g = cc_grid(2, 3);
    GridFunction a(g, 1.0), b(g, 2.0);
    const GridFunction c = a + 3.0 * b;
    EXPECT_EQ(c(1, 2), 7.0);
    EXPECT_EQ((c - a)(0, 0), 6.0);
    a.axpy(-0.5, b);
    EXPECT_EQ(a.max_abs(), 0.0);
    EXPECT_TRUE(a.all_finite());
    a(0, 0) = std::nan("");
    EXPECT_FALSE(a.all_finite());
    EXPECT_THROW(a += GridFunction(cc_grid(3, 3)), DimensionError);
}
