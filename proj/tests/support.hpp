#pragma once

// Dense reference forms of the banded operators, used as oracles in the tests.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <random>

#include <Eigen/Dense>

#include "sg/sg.hpp"

namespace sgtest {

inline Eigen::MatrixXd dense(const sg::BandedMatrix& a) {
    const int n = a.size();
    Eigen::MatrixXd d = Eigen::MatrixXd::Zero(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = a.first_col(i); j <= a.last_col(i); ++j) d(i, j) = a(i, j);
    return d;
}

inline Eigen::VectorXd diag_vec(const std::vector<double>& w) {
    return Eigen::Map<const Eigen::VectorXd>(w.data(), static_cast<Eigen::Index>(w.size()));
}

/// Row-major flattening: entry (j, k) goes to j * cols + k.
inline Eigen::VectorXd flat(const sg::GridFunction& u) {
    Eigen::VectorXd v(static_cast<Eigen::Index>(u.size()));
    for (std::size_t i = 0; i < u.size(); ++i) v[static_cast<Eigen::Index>(i)] = u.data()[i];
    return v;
}

inline sg::GridFunction unflat(const sg::Grid& g, const Eigen::VectorXd& v) {
    sg::GridFunction u(g);
    for (std::size_t i = 0; i < u.size(); ++i) u.data()[i] = v[static_cast<Eigen::Index>(i)];
    return u;
}

inline Eigen::MatrixXd kron(const Eigen::MatrixXd& a, const Eigen::MatrixXd& b) {
    Eigen::MatrixXd k(a.rows() * b.rows(), a.cols() * b.cols());
    for (Eigen::Index i = 0; i < a.rows(); ++i)
        for (Eigen::Index j = 0; j < a.cols(); ++j) k.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    return k;
}

/// Lap = (Lx^-1 D2x) (x) I + I (x) (Ly^-1 D2y) acting on the row-major flattening.
inline Eigen::MatrixXd dense_laplacian(const sg::OperatorSet& ops) {
    const Eigen::MatrixXd ax = diag_vec(ops.lx).cwiseInverse().asDiagonal() * dense(ops.d2x);
    const Eigen::MatrixXd ay = diag_vec(ops.ly).cwiseInverse().asDiagonal() * dense(ops.d2y);
    return kron(ax, Eigen::MatrixXd::Identity(ay.rows(), ay.cols())) +
           kron(Eigen::MatrixXd::Identity(ax.rows(), ax.cols()), ay);
}

/// Diagonal of the native inner product: hx hy Lx_j Ly_k.
inline Eigen::VectorXd dense_mass(const sg::OperatorSet& ops) {
    return kron(diag_vec(ops.lx), diag_vec(ops.ly)).col(0) * (ops.grid.hx * ops.grid.hy);
}

inline sg::GridFunction random_field(const sg::Grid& g, std::uint32_t seed, double lo = -1.0, double hi = 1.0) {
    std::mt19937 rng(seed);
    std::uniform_real_distribution<double> dist(lo, hi);
    sg::GridFunction u(g);
    for (double& v : u.values()) v = dist(rng);
    return u;
}

inline sg::Grid cc_grid(int nx, int ny, double len = 1.0) {
    return sg::Grid::make(sg::Layout::CellCentered, 0.0, 0.0, len, len * ny / nx, nx, ny);
}

inline sg::Grid regular_grid(int nx, int ny, double len = 1.0) {
    return sg::Grid::make(sg::Layout::Regular, 0.0, 0.0, len, len * ny / nx, nx, ny);
}

inline sg::OperatorSet ops_for(sg::OperatorKind kind, int n) {
    return sg::build_operators(kind, kind == sg::OperatorKind::CC ? cc_grid(n, n) : regular_grid(n, n));
}

// Forward and backward differences of the cell-centered scheme with mirrored ghost values.
inline Eigen::MatrixXd forward_difference(int n, double h) {
    Eigen::MatrixXd d = Eigen::MatrixXd::Zero(n, n);
    for (int i = 0; i + 1 < n; ++i) {
        d(i, i) = -1.0 / h;
        d(i, i + 1) = 1.0 / h;
    }
    return d;
}

inline Eigen::MatrixXd backward_difference(int n, double h) {
    Eigen::MatrixXd d = Eigen::MatrixXd::Zero(n, n);
    for (int i = 1; i < n; ++i) {
        d(i, i - 1) = -1.0 / h;
        d(i, i) = 1.0 / h;
    }
    return d;
}

struct Poly2D {
    int px, py;
    double operator()(double x, double y) const { return std::pow(x, px) * std::pow(y, py); }
    double dx(double x, double y) const { return px == 0 ? 0.0 : px * std::pow(x, px - 1) * std::pow(y, py); }
    double dy(double x, double y) const { return py == 0 ? 0.0 : py * std::pow(x, px) * std::pow(y, py - 1); }
    double lap(double x, double y) const {
        const double a = px < 2 ? 0.0 : px * (px - 1) * std::pow(x, px - 2) * std::pow(y, py);
        const double b = py < 2 ? 0.0 : py * (py - 1) * std::pow(x, px) * std::pow(y, py - 2);
        return a + b;
    }
};

// max |Lap u + F - lap p| over the nodes selected by keep, relative to max|p| / h^2.
template <class Keep>
inline double polynomial_defect(const sg::OperatorSet& ops, const Poly2D& p, Keep keep) {
    const sg::Grid& g = ops.grid;
    const sg::GridFunction u = sg::GridFunction::sample(g, p);
    const sg::BoundaryData bd = sg::BoundaryData::neumann([p](double x, double y, double) { return p.dx(x, y); },
                                                          [p](double x, double y, double) { return p.dy(x, y); });
    sg::GridFunction r = sg::apply_laplacian(ops, u);
    r += sg::boundary_forcing(ops, bd, 0.0);
    double worst = 0.0;
    for (int j = 0; j < r.rows(); ++j)
        for (int k = 0; k < r.cols(); ++k)
            if (keep(j, k)) worst = std::max(worst, std::abs(r(j, k) - p.lap(g.x(j), g.y(k))));
    return worst / (std::max(1.0, u.max_abs()) / (g.hx * g.hx));
}

}  // namespace sgtest
