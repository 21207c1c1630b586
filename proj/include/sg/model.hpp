#pragma once

#include <cmath>
#include <functional>
#include <string>

#include "sg/errors.hpp"
#include "sg/grid.hpp"
#include "sg/ops.hpp"

namespace sg {

/// Domain rectangle [x0, x1] x [y0, y1].
struct Domain {
    double x0 = 0.0, y0 = 0.0, x1 = 1.0, y1 = 1.0;
    double area() const { return (x1 - x0) * (y1 - y0); }
};

/// Sine-Gordon instance: u_tt = Lap u - phi(x, y) sin u with Neumann data and initial data (f1, f2).
struct Problem {
    Domain domain;
    std::function<double(double, double)> phi;
    std::function<double(double, double)> f1;
    std::function<double(double, double)> f2;
    BoundaryData boundary = BoundaryData::homogeneous_neumann();
    /// Offset added to H1 in the SAV variable r = sqrt(H1 + c0). Zero reproduces H1 exactly.
    double c0 = 0.0;

    static double default_c0(const Domain& d) { return 1e-14 * d.area(); }
};

struct SampledProblem {
    GridFunction phi;
    GridFunction u0;
    GridFunction v0;
};

inline SampledProblem sample_problem(const Problem& p, const Grid& grid) {
    constexpr double slack = 1e-12;
    if (grid.x0 < p.domain.x0 - slack || grid.x1 > p.domain.x1 + slack || grid.y0 < p.domain.y0 - slack ||
        grid.y1 > p.domain.y1 + slack)
        throw ConfigError("sample_problem: grid extends outside the problem domain");
    SampledProblem s{GridFunction::sample(grid, p.phi), GridFunction::sample(grid, p.f1),
                     GridFunction::sample(grid, p.f2)};
    for (double v : s.phi.values())
        if (!(v > 0.0)) throw ConfigError("sample_problem: phi must be strictly positive on the grid");
    return s;
}

/// Phi . sin(U), elementwise.
inline void nonlinear_force(const GridFunction& phi, const GridFunction& u, GridFunction& out) {
    GridFunction::require_same_grid(phi, u);
    GridFunction::require_same_grid(phi, out);
    const auto p = phi.values();
    const auto a = u.values();
    auto o = out.values();
    for (std::size_t i = 0; i < a.size(); ++i) o[i] = p[i] * std::sin(a[i]);
}

inline GridFunction nonlinear_force(const GridFunction& phi, const GridFunction& u) {
    GridFunction out(u.grid());
    nonlinear_force(phi, u, out);
    return out;
}

/// H1(U) + c0 with H1 = (Phi . (1 - cos U), 1) in the scheme-native inner product.
inline double h1_potential(const GridFunction& phi, const GridFunction& u, const OperatorSet& ops, double c0) {
    GridFunction::require_same_grid(phi, u);
    GridFunction w(u.grid());
    const auto p = phi.values();
    const auto a = u.values();
    auto o = w.values();
    for (std::size_t i = 0; i < a.size(); ++i) o[i] = p[i] * (1.0 - std::cos(a[i]));
    const double h1 = inner(ops, w, GridFunction(u.grid(), 1.0)) + c0;
    if (h1 < 0.0) throw DegenerateStateError("h1_potential: negative potential (phi must be positive)");
    return h1;
}

/// b(U) = Phi . sin(U) / sqrt(H1(U) + c0).
inline GridFunction sav_b(const GridFunction& phi, const GridFunction& u, const OperatorSet& ops, double c0) {
    const double h1 = h1_potential(phi, u, ops, c0);
    if (!(h1 > 0.0))
        throw DegenerateStateError("sav_b: H1(u) + c0 vanishes; use a positive regularization c0");
    GridFunction b = nonlinear_force(phi, u);
    b *= 1.0 / std::sqrt(h1);
    return b;
}

/// Solution state at t = step * tau. r is the SAV scalar and is left untouched by SIM.
struct State {
    GridFunction u;
    GridFunction v;
    double r = 0.0;
    double t = 0.0;
    int step = 0;
};

struct EnergySample {
    int step = 0;
    double t = 0.0;
    double energy = 0.0;
    double deviation = 0.0;
};

inline double relative_deviation(double e, double e0) {
    return std::abs(e - e0) / std::max(1.0, std::abs(e0));
}

enum class EnergyFlavor { Native, SAV };

/// Native: 1/2 (|V|^2 + |grad U|^2) + (Phi (1 - cos U), 1).  SAV: 1/2 (|V|^2 + |grad U|^2) + R^2.
inline double energy(const State& s, const OperatorSet& ops, const GridFunction& phi, EnergyFlavor flavor) {
    const double kinetic = 0.5 * (inner(ops, s.v, s.v) + grad_norm_sq(s.u, ops));
    if (flavor == EnergyFlavor::SAV) return kinetic + s.r * s.r;
    return kinetic + h1_potential(phi, s.u, ops, 0.0);
}

}  // namespace sg
