#pragma once

#include <array>
#include <functional>
#include <string>
#include <vector>

#include "sg/banded.hpp"
#include "sg/errors.hpp"
#include "sg/grid.hpp"

namespace sg {

/// Spatial scheme: cell-centered central differences, or regular-grid SBP of order 2 or 4.
enum class OperatorKind { CC, SBP2, SBP4 };

inline const char* to_string(OperatorKind kind) {
    switch (kind) {
        case OperatorKind::CC: return "cc";
        case OperatorKind::SBP2: return "sbp2";
        case OperatorKind::SBP4: return "sbp4";
    }
    return "?";
}

inline OperatorKind parse_operator_kind(const std::string& s) {
    if (s == "cc") return OperatorKind::CC;
    if (s == "sbp2") return OperatorKind::SBP2;
    if (s == "sbp4") return OperatorKind::SBP4;
    throw ConfigError("unknown operator kind '" + s + "' (expected cc|sbp2|sbp4)");
}

inline Layout layout_for(OperatorKind kind) {
    return kind == OperatorKind::CC ? Layout::CellCentered : Layout::Regular;
}

/// One spatial discretization of the Laplacian: Lap u = Lx^{-1} D2x u + u D2y^T Ly^{-1}.
///
/// D2x, D2y are symmetric negative semidefinite; Lx, Ly are the diagonal quadrature weights
/// (all ones for CC). The weighted inner product (u, v)_L = (Lx u Ly, v)_h makes the Laplacian
/// self-adjoint.
struct OperatorSet {
    OperatorKind kind = OperatorKind::CC;
    Grid grid;
    BandedMatrix d2x, d2y;
    std::vector<double> lx, ly;
    int order = 2;
};

namespace detail {

// Stencil (-1, 1 | 1, -2, 1 | 1, -1) / h^2 on n points, shared by CC and SBP2.
inline BandedMatrix second_difference_neumann(int n, double h) {
    const double s = 1.0 / (h * h);
    BandedMatrix d(n, 1);
    if (n == 1) return d;
    for (int i = 0; i < n; ++i) {
        const bool edge = (i == 0 || i == n - 1);
        d.set(i, i, (edge ? -1.0 : -2.0) * s);
        if (i > 0) d.set(i, i - 1, s);
        if (i < n - 1) d.set(i, i + 1, s);
    }
    return d;
}

inline std::vector<double> sbp2_weights(int n) {
    std::vector<double> w(n, 1.0);
    w.front() = 0.5;
    w.back() = 0.5;
    return w;
}

// Upper-left closure of the fourth-order operator, sign-flipped so that D2 is negative
// semidefinite (the tabulated block is the positive semidefinite -D2).
inline constexpr std::array<std::array<double, 6>, 4> kSbp4Closure = {{
    {9.0 / 8.0, -59.0 / 48.0, 1.0 / 12.0, 1.0 / 48.0, 0.0, 0.0},
    {-59.0 / 48.0, 59.0 / 24.0, -59.0 / 48.0, 0.0, 0.0, 0.0},
    {1.0 / 12.0, -59.0 / 48.0, 55.0 / 24.0, -59.0 / 48.0, 1.0 / 12.0, 0.0},
    {1.0 / 48.0, 0.0, -59.0 / 48.0, 59.0 / 24.0, -4.0 / 3.0, 1.0 / 12.0},
}};
inline constexpr std::array<double, 5> kSbp4Interior = {1.0 / 12.0, -4.0 / 3.0, 5.0 / 2.0, -4.0 / 3.0, 1.0 / 12.0};
inline constexpr std::array<double, 4> kSbp4Weights = {17.0 / 48.0, 59.0 / 48.0, 43.0 / 48.0, 49.0 / 48.0};

inline BandedMatrix sbp4_second_difference(int n, double h) {
    const double s = 1.0 / (h * h);
    BandedMatrix d(n, 3);
    const int last = n - 1;
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 6; ++j) {
            const double c = kSbp4Closure[i][j];
            if (c == 0.0) continue;
            d.set(i, j, -c * s);
            d.set(last - i, last - j, -c * s);
        }
    for (int i = 4; i <= last - 4; ++i)
        for (int o = 0; o < 5; ++o) d.set(i, i - 2 + o, -kSbp4Interior[o] * s);
    return d;
}

inline std::vector<double> sbp4_weights(int n) {
    std::vector<double> w(n, 1.0);
    for (int i = 0; i < 4; ++i) {
        w[i] = kSbp4Weights[i];
        w[n - 1 - i] = kSbp4Weights[i];
    }
    return w;
}

}  // namespace detail

inline OperatorSet build_cc(const Grid& grid) {
    if (grid.layout != Layout::CellCentered) throw DimensionError("build_cc: requires a cell-centered grid");
    OperatorSet ops;
    ops.kind = OperatorKind::CC;
    ops.grid = grid;
    ops.order = 2;
    ops.d2x = detail::second_difference_neumann(grid.points_x(), grid.hx);
    ops.d2y = detail::second_difference_neumann(grid.points_y(), grid.hy);
    ops.lx.assign(grid.points_x(), 1.0);
    ops.ly.assign(grid.points_y(), 1.0);
    return ops;
}

inline OperatorSet build_sbp2(const Grid& grid) {
    if (grid.layout != Layout::Regular) throw DimensionError("build_sbp2: requires a regular grid");
    OperatorSet ops;
    ops.kind = OperatorKind::SBP2;
    ops.grid = grid;
    ops.order = 2;
    ops.d2x = detail::second_difference_neumann(grid.points_x(), grid.hx);
    ops.d2y = detail::second_difference_neumann(grid.points_y(), grid.hy);
    ops.lx = detail::sbp2_weights(grid.points_x());
    ops.ly = detail::sbp2_weights(grid.points_y());
    return ops;
}

inline OperatorSet build_sbp4(const Grid& grid) {
    if (grid.layout != Layout::Regular) throw DimensionError("build_sbp4: requires a regular grid");
    if (grid.nx < 9 || grid.ny < 9)
        throw ConfigError("build_sbp4: need at least 9 cells per direction so boundary closures do not overlap");
    OperatorSet ops;
    ops.kind = OperatorKind::SBP4;
    ops.grid = grid;
    ops.order = 4;
    ops.d2x = detail::sbp4_second_difference(grid.points_x(), grid.hx);
    ops.d2y = detail::sbp4_second_difference(grid.points_y(), grid.hy);
    ops.lx = detail::sbp4_weights(grid.points_x());
    ops.ly = detail::sbp4_weights(grid.points_y());
    return ops;
}

inline OperatorSet build_operators(OperatorKind kind, const Grid& grid) {
    switch (kind) {
        case OperatorKind::CC: return build_cc(grid);
        case OperatorKind::SBP2: return build_sbp2(grid);
        case OperatorKind::SBP4: return build_sbp4(grid);
    }
    throw ConfigError("unknown operator kind");
}

inline void require_on_grid(const OperatorSet& ops, const GridFunction& u) {
    if (!(u.grid() == ops.grid)) throw DimensionError("grid function does not live on the operator grid");
}

/// Scheme-native inner product: plain (.,.)_h for CC, weighted (.,.)_L for SBP.
inline double inner(const OperatorSet& ops, const GridFunction& u, const GridFunction& v) {
    require_on_grid(ops, u);
    if (ops.kind == OperatorKind::CC) return inner_h(u, v);
    return inner_lambda(u, v, ops.lx, ops.ly);
}

inline double norm(const OperatorSet& ops, const GridFunction& u) { return std::sqrt(inner(ops, u, u)); }

/// out = Lx^{-1} D2x u + u D2y^T Ly^{-1}, as two banded products on the 2D array.
inline void apply_laplacian(const OperatorSet& ops, const GridFunction& u, GridFunction& out) {
    require_on_grid(ops, u);
    require_on_grid(ops, out);
    const int nr = u.rows();
    const int nc = u.cols();
    std::vector<double> tmp(nc);
    for (int j = 0; j < nr; ++j) {
        auto o = out.row(j);
        std::fill(tmp.begin(), tmp.end(), 0.0);
        for (int i = ops.d2x.first_col(j); i <= ops.d2x.last_col(j); ++i) {
            const double a = ops.d2x(j, i);
            const auto ui = u.row(i);
            for (int k = 0; k < nc; ++k) tmp[k] += a * ui[k];
        }
        const auto uj = u.row(j);
        const double wx = ops.lx[j];
        for (int k = 0; k < nc; ++k) {
            double s = 0.0;
            for (int l = ops.d2y.first_col(k); l <= ops.d2y.last_col(k); ++l) s += ops.d2y(k, l) * uj[l];
            o[k] = tmp[k] / wx + s / ops.ly[k];
        }
    }
}

inline GridFunction apply_laplacian(const OperatorSet& ops, const GridFunction& u) {
    GridFunction out(ops.grid);
    apply_laplacian(ops, u, out);
    return out;
}

/// Squared discrete gradient norm in the scheme-native inner product.
///
/// CC and SBP2 use forward differences (weighted by the transverse quadrature weights for
/// SBP2); SBP4 has no first-difference factorization and uses the quadratic form -(Lap u, u)_L.
inline double grad_norm_sq(const GridFunction& u, const OperatorSet& ops) {
    require_on_grid(ops, u);
    const Grid& g = ops.grid;
    const int nr = u.rows();
    const int nc = u.cols();
    double s = 0.0;
    if (ops.kind == OperatorKind::SBP4) {
        for (int j = 0; j < nr; ++j) {
            for (int k = 0; k < nc; ++k) {
                double ax = 0.0;
                for (int i = ops.d2x.first_col(j); i <= ops.d2x.last_col(j); ++i) ax += ops.d2x(j, i) * u(i, k);
                double ay = 0.0;
                for (int l = ops.d2y.first_col(k); l <= ops.d2y.last_col(k); ++l) ay += ops.d2y(k, l) * u(j, l);
                s -= (ax * ops.ly[k] + ops.lx[j] * ay) * u(j, k);
            }
        }
        return s * g.hx * g.hy;
    }
    for (int j = 0; j + 1 < nr; ++j)
        for (int k = 0; k < nc; ++k) {
            const double d = (u(j + 1, k) - u(j, k)) / g.hx;
            s += ops.ly[k] * d * d;
        }
    for (int j = 0; j < nr; ++j)
        for (int k = 0; k + 1 < nc; ++k) {
            const double d = (u(j, k + 1) - u(j, k)) / g.hy;
            s += ops.lx[j] * d * d;
        }
    return s * g.hx * g.hy;
}

/// Neumann data: du/dx = g1 on the x-faces, du/dy = g2 on the y-faces.
struct BoundaryData {
    std::function<double(double, double, double)> g1;
    std::function<double(double, double, double)> g2;
    bool homogeneous = true;

    static BoundaryData homogeneous_neumann() {
        BoundaryData bd;
        bd.g1 = [](double, double, double) { return 0.0; };
        bd.g2 = [](double, double, double) { return 0.0; };
        bd.homogeneous = true;
        return bd;
    }

    static BoundaryData neumann(std::function<double(double, double, double)> g1,
                                std::function<double(double, double, double)> g2) {
        BoundaryData bd;
        bd.g1 = std::move(g1);
        bd.g2 = std::move(g2);
        bd.homogeneous = false;
        return bd;
    }
};

/// Neumann data sampled along the four faces at the grid's boundary points.
struct BoundarySamples {
    std::vector<double> west, east;    // g1(x0, y_k, t), g1(x1, y_k, t)
    std::vector<double> south, north;  // g2(x_j, y0, t), g2(x_j, y1, t)
};

inline BoundarySamples sample_boundary(const OperatorSet& ops, const BoundaryData& bd, double t) {
    const Grid& g = ops.grid;
    BoundarySamples s;
    const int nr = g.points_x();
    const int nc = g.points_y();
    s.west.resize(nc);
    s.east.resize(nc);
    s.south.resize(nr);
    s.north.resize(nr);
    for (int k = 0; k < nc; ++k) {
        s.west[k] = bd.g1(g.x0, g.y(k), t);
        s.east[k] = bd.g1(g.x1, g.y(k), t);
    }
    for (int j = 0; j < nr; ++j) {
        s.south[j] = bd.g2(g.x(j), g.y0, t);
        s.north[j] = bd.g2(g.x(j), g.y1, t);
    }
    return s;
}

/// Boundary forcing added to the semi-discrete right-hand side.
///
/// The first/last x-row receive -g1/(hx Lx_0) and +g1/(hx Lx_N); likewise the first/last
/// column in y. Corner points accumulate both. For SBP this is the collapsed SAT term with
/// penalties (1, -1, 1, -1); for CC it is the ghost-cell closure u_ghost = u_edge -/+ h g.
inline void boundary_forcing(const OperatorSet& ops, const BoundaryData& bd, double t, GridFunction& out) {
    require_on_grid(ops, out);
    out.fill(0.0);
    if (bd.homogeneous) return;
    const Grid& g = ops.grid;
    const BoundarySamples s = sample_boundary(ops, bd, t);
    const int lr = out.rows() - 1;
    const int lc = out.cols() - 1;
    const double wx0 = g.hx * ops.lx.front();
    const double wx1 = g.hx * ops.lx.back();
    const double wy0 = g.hy * ops.ly.front();
    const double wy1 = g.hy * ops.ly.back();
    for (int k = 0; k <= lc; ++k) {
        out(0, k) += -s.west[k] / wx0;
        out(lr, k) += s.east[k] / wx1;
    }
    for (int j = 0; j <= lr; ++j) {
        out(j, 0) += -s.south[j] / wy0;
        out(j, lc) += s.north[j] / wy1;
    }
}

inline GridFunction boundary_forcing(const OperatorSet& ops, const BoundaryData& bd, double t) {
    GridFunction out(ops.grid);
    boundary_forcing(ops, bd, t, out);
    return out;
}

}  // namespace sg
