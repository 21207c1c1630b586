#pragma once

#include <algorithm>
#include <cmath>
#include <vector>

#include "sg/errors.hpp"
#include "sg/grid.hpp"
#include "sg/ops.hpp"

namespace sg {

struct SolverOptions {
    double tol = 1e-13;  // relative residual
    int max_iter = 0;    // 0: 10 * (nx + ny), at least 50
};

struct SolveStats {
    int iterations = 0;
    double residual = 0.0;  // relative
};

/// Constant-coefficient operator I - (tau^2/4) Lap for one OperatorSet and step size.
///
/// Solves go through the symmetrized SPD form
///     A = M - (tau^2/4) (Ly (x) D2x + D2y (x) Lx),   M = Ly (x) Lx,
/// with Jacobi-preconditioned conjugate gradients. The Kronecker products are applied as
/// banded row/column sweeps on the 2D array and never assembled.
class HelmholtzOp {
public:
    HelmholtzOp(OperatorSet ops, double tau, SolverOptions opt = {})
        : ops_(std::move(ops)), tau_(tau), coef_(0.25 * tau * tau), opt_(opt), diag_(ops_.grid) {
        if (opt_.max_iter <= 0) opt_.max_iter = std::max(50, 10 * (ops_.grid.nx + ops_.grid.ny));
        for (int j = 0; j < diag_.rows(); ++j)
            for (int k = 0; k < diag_.cols(); ++k)
                diag_(j, k) = mass(j, k) - coef_ * (ops_.ly[k] * ops_.d2x.diagonal(j) + ops_.lx[j] * ops_.d2y.diagonal(k));
    }

    const OperatorSet& ops() const { return ops_; }
    const Grid& grid() const { return ops_.grid; }
    double tau() const { return tau_; }
    const SolverOptions& options() const { return opt_; }

    double mass(int j, int k) const { return ops_.lx[j] * ops_.ly[k]; }

    /// y = (A + M diag(shift)) x.
    void apply_symmetric(const GridFunction& x, GridFunction& y, const GridFunction* shift = nullptr) const {
        const int nr = x.rows();
        const int nc = x.cols();
        for (int j = 0; j < nr; ++j) {
            auto yr = y.row(j);
            const auto xr = x.row(j);
            const double wx = ops_.lx[j];
            for (int k = 0; k < nc; ++k) {
                double ay = 0.0;
                for (int l = ops_.d2y.first_col(k); l <= ops_.d2y.last_col(k); ++l) ay += ops_.d2y(k, l) * xr[l];
                yr[k] = wx * ops_.ly[k] * xr[k] - coef_ * wx * ay;
            }
            for (int i = ops_.d2x.first_col(j); i <= ops_.d2x.last_col(j); ++i) {
                const double a = coef_ * ops_.d2x(j, i);
                const auto xi = x.row(i);
                for (int k = 0; k < nc; ++k) yr[k] -= a * ops_.ly[k] * xi[k];
            }
            if (shift) {
                const auto sr = shift->row(j);
                for (int k = 0; k < nc; ++k) yr[k] += wx * ops_.ly[k] * sr[k] * xr[k];
            }
        }
    }

    /// (M c)_jk = Lx_j c_jk Ly_k
    GridFunction weighted(const GridFunction& c) const {
        GridFunction b(c.grid());
        for (int j = 0; j < c.rows(); ++j)
            for (int k = 0; k < c.cols(); ++k) b(j, k) = mass(j, k) * c(j, k);
        return b;
    }

    /// Solves (I - (tau^2/4) Lap + diag(shift)) x = c. The shift must keep the system positive
    /// definite; callers pass it only when tau^2 |shift| is small.
    GridFunction solve(const GridFunction& c, const GridFunction* guess = nullptr, const GridFunction* shift = nullptr,
                       SolveStats* stats = nullptr) const {
        require_on_grid(ops_, c);
        if (coef_ == 0.0 && shift == nullptr) {
            if (stats) *stats = {};
            return c;
        }
        const GridFunction b = weighted(c);
        const double bnorm = std::sqrt(dot(b, b));
        GridFunction x = guess ? *guess : GridFunction(c.grid());
        if (bnorm == 0.0) {
            if (stats) *stats = {};
            return GridFunction(c.grid());
        }

        GridFunction r(c.grid()), z(c.grid()), p(c.grid()), ap(c.grid());
        apply_symmetric(x, ap, shift);
        for (std::size_t i = 0; i < r.size(); ++i) r.data()[i] = b.data()[i] - ap.data()[i];

        auto precondition = [&](const GridFunction& in, GridFunction& out) {
            for (int j = 0; j < in.rows(); ++j)
                for (int k = 0; k < in.cols(); ++k) {
                    double d = diag_(j, k);
                    if (shift) d += mass(j, k) * (*shift)(j, k);
                    out(j, k) = in(j, k) / d;
                }
        };

        double rel = std::sqrt(dot(r, r)) / bnorm;
        int it = 0;
        if (rel > opt_.tol) {
            precondition(r, z);
            p = z;
            double rz = dot(r, z);
            for (it = 1; it <= opt_.max_iter; ++it) {
                apply_symmetric(p, ap, shift);
                const double pap = dot(p, ap);
                if (!(pap > 0.0)) throw SolverError("helmholtz_solve: operator is not positive definite", it, rel);
                const double alpha = rz / pap;
                x.axpy(alpha, p);
                r.axpy(-alpha, ap);
                rel = std::sqrt(dot(r, r)) / bnorm;
                if (rel <= opt_.tol) break;
                precondition(r, z);
                const double rz_next = dot(r, z);
                const double beta = rz_next / rz;
                rz = rz_next;
                for (std::size_t i = 0; i < p.size(); ++i) p.data()[i] = z.data()[i] + beta * p.data()[i];
            }
            if (rel > opt_.tol) throw SolverError("helmholtz_solve: no convergence", opt_.max_iter, rel);
        }
        if (stats) *stats = {it, rel};
        return x;
    }

private:
    static double dot(const GridFunction& a, const GridFunction& b) {
        double s = 0.0;
        const auto x = a.values();
        const auto y = b.values();
        for (std::size_t i = 0; i < x.size(); ++i) s += x[i] * y[i];
        return s;
    }

    OperatorSet ops_;
    double tau_;
    double coef_;
    SolverOptions opt_;
    GridFunction diag_;
};

inline GridFunction helmholtz_solve(const HelmholtzOp& h, const GridFunction& c, SolveStats* stats = nullptr) {
    return h.solve(c, nullptr, nullptr, stats);
}

struct RankOneResult {
    GridFunction u_next;
    double bu_inner = 0.0;  // (Bbar, u_next) in the native inner product
    double gamma = 0.0;     // (Bbar, (I - tau^2/4 Lap)^{-1} Bbar)
    int iterations = 0;     // total CG iterations over both solves
};

/// Solves (I - (tau^2/4) Lap) u + (tau^2/8) Bbar (Bbar, u) = c with two constant-coefficient
/// solves and the Sherman-Morrison scalar update. Inner products are scheme-native.
inline RankOneResult sav_rank_one_solve(const HelmholtzOp& h, const GridFunction& bbar, const GridFunction& c,
                                        const GridFunction* guess = nullptr) {
    const OperatorSet& ops = h.ops();
    const double k8 = h.tau() * h.tau() / 8.0;
    SolveStats sw, sz;
    RankOneResult res;
    GridFunction w = h.solve(c, guess, nullptr, &sw);
    GridFunction z = h.solve(bbar, nullptr, nullptr, &sz);
    res.gamma = inner(ops, bbar, z);
    res.bu_inner = inner(ops, bbar, w) / (1.0 + k8 * res.gamma);
    w.axpy(-k8 * res.bu_inner, z);
    res.u_next = std::move(w);
    res.iterations = sw.iterations + sz.iterations;
    return res;
}

}  // namespace sg
