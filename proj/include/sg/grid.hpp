#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <functional>
#include <span>
#include <string>
#include <vector>

#include "sg/errors.hpp"

namespace sg {

/// Where unknowns live on a uniformly partitioned rectangle.
///
/// CellCentered: nx*ny unknowns at cell midpoints, x_j = x0 + (j + 1/2) hx, j = 0..nx-1.
/// Regular:      (nx+1)*(ny+1) unknowns at cell corners, x_j = x0 + j hx, j = 0..nx.
enum class Layout { CellCentered, Regular };

inline const char* to_string(Layout layout) {
    return layout == Layout::CellCentered ? "cell-centered" : "regular";
}

struct Grid {
    Layout layout = Layout::CellCentered;
    double x0 = 0.0, y0 = 0.0, x1 = 1.0, y1 = 1.0;
    int nx = 1, ny = 1;
    double hx = 1.0, hy = 1.0;

    static Grid make(Layout layout, double x0, double y0, double x1, double y1, int nx, int ny) {
        if (nx <= 0 || ny <= 0) throw ConfigError("grid: cell counts must be positive");
        if (!(x1 > x0) || !(y1 > y0)) throw ConfigError("grid: domain must have positive extent");
        Grid g;
        g.layout = layout;
        g.x0 = x0;
        g.y0 = y0;
        g.x1 = x1;
        g.y1 = y1;
        g.nx = nx;
        g.ny = ny;
        g.hx = (x1 - x0) / nx;
        g.hy = (y1 - y0) / ny;
        return g;
    }

    /// Grid with spacing closest to h on [x0,x1]x[y0,y1]; the extents must be integer multiples of h.
    static Grid with_spacing(Layout layout, double x0, double y0, double x1, double y1, double h) {
        auto cells = [h](double len) {
            const double n = len / h;
            const double r = std::round(n);
            if (r < 1.0 || std::abs(n - r) > 1e-9 * std::max(1.0, n))
                throw ConfigError("grid: extent " + std::to_string(len) +
                                  " is not a multiple of h=" + std::to_string(h));
            return static_cast<int>(r);
        };
        return make(layout, x0, y0, x1, y1, cells(x1 - x0), cells(y1 - y0));
    }

    int points_x() const { return layout == Layout::Regular ? nx + 1 : nx; }
    int points_y() const { return layout == Layout::Regular ? ny + 1 : ny; }
    std::size_t size() const {
        return static_cast<std::size_t>(points_x()) * static_cast<std::size_t>(points_y());
    }

    double x(int j) const { return layout == Layout::Regular ? x0 + j * hx : x0 + (j + 0.5) * hx; }
    double y(int k) const { return layout == Layout::Regular ? y0 + k * hy : y0 + (k + 0.5) * hy; }
    double area() const { return (x1 - x0) * (y1 - y0); }

    friend bool operator==(const Grid&, const Grid&) = default;
};

/// Real field sampled on a Grid, stored row-major with x along rows: value(j, k) ~ u(x_j, y_k).
class GridFunction {
public:
    GridFunction() = default;
    explicit GridFunction(const Grid& grid, double fill = 0.0)
        : grid_(grid), rows_(grid.points_x()), cols_(grid.points_y()), values_(grid.size(), fill) {}

    static GridFunction sample(const Grid& grid, const std::function<double(double, double)>& f) {
        GridFunction u(grid);
        for (int j = 0; j < u.rows_; ++j)
            for (int k = 0; k < u.cols_; ++k) u(j, k) = f(grid.x(j), grid.y(k));
        return u;
    }

    const Grid& grid() const { return grid_; }
    int rows() const { return rows_; }
    int cols() const { return cols_; }
    std::size_t size() const { return values_.size(); }

    double& operator()(int j, int k) { return values_[index(j, k)]; }
    double operator()(int j, int k) const { return values_[index(j, k)]; }

    std::span<double> row(int j) { return {values_.data() + index(j, 0), static_cast<std::size_t>(cols_)}; }
    std::span<const double> row(int j) const {
        return {values_.data() + index(j, 0), static_cast<std::size_t>(cols_)};
    }

    std::span<double> values() { return values_; }
    std::span<const double> values() const { return values_; }
    double* data() { return values_.data(); }
    const double* data() const { return values_.data(); }

    void fill(double v) { std::fill(values_.begin(), values_.end(), v); }

    GridFunction& operator+=(const GridFunction& o) {
        require_same_grid(*this, o);
        for (std::size_t i = 0; i < values_.size(); ++i) values_[i] += o.values_[i];
        return *this;
    }
    GridFunction& operator-=(const GridFunction& o) {
        require_same_grid(*this, o);
        for (std::size_t i = 0; i < values_.size(); ++i) values_[i] -= o.values_[i];
        return *this;
    }
    GridFunction& operator*=(double a) {
        for (double& v : values_) v *= a;
        return *this;
    }
    /// this += a * x
    GridFunction& axpy(double a, const GridFunction& x) {
        require_same_grid(*this, x);
        for (std::size_t i = 0; i < values_.size(); ++i) values_[i] += a * x.values_[i];
        return *this;
    }

    friend GridFunction operator+(GridFunction a, const GridFunction& b) { return a += b; }
    friend GridFunction operator-(GridFunction a, const GridFunction& b) { return a -= b; }
    friend GridFunction operator*(double s, GridFunction a) { return a *= s; }

    bool all_finite() const {
        for (double v : values_)
            if (!std::isfinite(v)) return false;
        return true;
    }

    double max_abs() const {
        double m = 0.0;
        for (double v : values_) m = std::max(m, std::abs(v));
        return m;
    }

    static void require_same_grid(const GridFunction& a, const GridFunction& b) {
        if (!(a.grid_ == b.grid_) || a.values_.size() != b.values_.size())
            throw DimensionError("grid functions live on different grids");
    }

private:
    std::size_t index(int j, int k) const {
        return static_cast<std::size_t>(j) * static_cast<std::size_t>(cols_) + static_cast<std::size_t>(k);
    }

    Grid grid_;
    int rows_ = 0;
    int cols_ = 0;
    std::vector<double> values_;
};

struct TimeGrid {
    double tau = 0.0;
    double t_final = 0.0;
    int n_steps = 0;

    /// Rounds t_final / tau to the nearest step count and then sets tau = t_final / n_steps,
    /// so n_steps * tau reproduces t_final up to round-off.
    static TimeGrid make(double tau, double t_final) {
        if (!(tau > 0.0)) throw ConfigError("time grid: tau must be positive");
        if (!(t_final >= 0.0)) throw ConfigError("time grid: t_final must be non-negative");
        const double n = t_final / tau;
        const double r = std::round(n);
        if (std::abs(n - r) > 1e-9 * std::max(1.0, n))
            throw ConfigError("time grid: t_final is not a multiple of tau");
        TimeGrid tg;
        tg.n_steps = static_cast<int>(r);
        tg.t_final = t_final;
        tg.tau = tg.n_steps > 0 ? t_final / tg.n_steps : tau;
        return tg;
    }
};

/// Discrete L2 inner product sum_{j,k} u_jk v_jk hx hy (row-major summation order).
inline double inner_h(const GridFunction& u, const GridFunction& v) {
    GridFunction::require_same_grid(u, v);
    const auto a = u.values();
    const auto b = v.values();
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s * u.grid().hx * u.grid().hy;
}

/// Weighted inner product (Lx u Ly, v)_h with diagonal weights Lx (rows) and Ly (columns).
inline double inner_lambda(const GridFunction& u, const GridFunction& v, std::span<const double> lx,
                           std::span<const double> ly) {
    GridFunction::require_same_grid(u, v);
    if (lx.size() != static_cast<std::size_t>(u.rows()) || ly.size() != static_cast<std::size_t>(u.cols()))
        throw DimensionError("inner_lambda: weight sizes do not match the grid");
    for (double w : lx)
        if (!(w > 0.0)) throw DimensionError("inner_lambda: weights must be positive");
    for (double w : ly)
        if (!(w > 0.0)) throw DimensionError("inner_lambda: weights must be positive");
    double s = 0.0;
    for (int j = 0; j < u.rows(); ++j) {
        const auto ur = u.row(j);
        const auto vr = v.row(j);
        for (int k = 0; k < u.cols(); ++k) s += lx[j] * ur[k] * ly[k] * vr[k];
    }
    return s * u.grid().hx * u.grid().hy;
}

}  // namespace sg
