#pragma once

#include <cmath>
#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "sg/integrate.hpp"
#include "sg/presets.hpp"

namespace sg {

/// halve_both: h and tau halve together (second-order schemes).
/// tau_quarter: h halves while tau shrinks by four (isolates fourth-order spatial accuracy).
enum class Protocol { HalveBoth, TauQuarter };

inline Protocol parse_protocol(const std::string& s) {
    if (s == "halve-both" || s == "halve_both") return Protocol::HalveBoth;
    if (s == "tau-quarter" || s == "tau_quarter") return Protocol::TauQuarter;
    throw ConfigError("unknown protocol '" + s + "' (expected halve-both|tau-quarter)");
}

inline const char* to_string(Protocol p) { return p == Protocol::HalveBoth ? "halve-both" : "tau-quarter"; }

/// The (h, tau) pairs of the accuracy study, coarsest first.
inline std::vector<std::pair<double, double>> protocol_steps(Protocol p, int rows = 4) {
    std::vector<std::pair<double, double>> out;
    double h = 0.25;
    double tau = 0.01;
    for (int i = 0; i < rows; ++i) {
        out.emplace_back(h, tau);
        h /= 2.0;
        tau /= (p == Protocol::HalveBoth ? 2.0 : 4.0);
    }
    return out;
}

struct ErrorNorms {
    double linf = 0.0;       // max nodal error
    double l2 = 0.0;         // root-mean-square nodal error, sqrt(sum e^2 / #points)
    double l2_native = 0.0;  // scheme-native discrete L2 norm (|.|_h or |.|_L)
};

inline ErrorNorms solution_error(const OperatorSet& ops, const GridFunction& u,
                                 const std::function<double(double, double)>& exact_u) {
    GridFunction e = GridFunction::sample(ops.grid, exact_u);
    e -= u;
    double sq = 0.0;
    for (double v : e.values()) sq += v * v;
    return {e.max_abs(), std::sqrt(sq / static_cast<double>(e.size())), norm(ops, e)};
}

struct ConvergenceRow {
    double h = 0.0;
    double tau = 0.0;
    double linf_err = 0.0;
    double l2_err = 0.0;
    std::optional<double> linf_order;
    std::optional<double> l2_order;
};

/// Solves the accuracy preset to t = 1 at one (h, tau) and measures the error against the
/// exact kink.
inline ConvergenceRow accuracy_run(Scheme scheme, OperatorKind kind, double h, double tau,
                                   SolverOptions solver = {}) {
    const Preset& p = find_preset("accuracy");
    const Domain& d = p.problem.domain;
    const Grid grid = Grid::with_spacing(layout_for(kind), d.x0, d.y0, d.x1, d.y1, h);
    const OperatorSet ops = build_operators(kind, grid);
    StepperConfig cfg;
    cfg.scheme = scheme;
    cfg.solver = solver;
    const double t_final = 1.0;
    const TimeGrid tg = TimeGrid::make(tau, t_final);
    const State s = run(p.problem, ops, tg, cfg);
    const ErrorNorms e = solution_error(ops, s.u, [t = s.t](double x, double y) { return exact::kink(x, y, t); });
    ConvergenceRow row;
    row.h = h;
    row.tau = tau;
    row.linf_err = e.linf;
    row.l2_err = e.l2;
    return row;
}

/// Fills in observed orders log(e_prev / e_cur) / log(h_prev / h_cur).
inline void compute_orders(std::vector<ConvergenceRow>& rows) {
    for (std::size_t i = 1; i < rows.size(); ++i) {
        const double hr = std::log(rows[i - 1].h / rows[i].h);
        rows[i].linf_order = std::log(rows[i - 1].linf_err / rows[i].linf_err) / hr;
        rows[i].l2_order = std::log(rows[i - 1].l2_err / rows[i].l2_err) / hr;
    }
}

inline std::vector<ConvergenceRow> run_convergence(Scheme scheme, OperatorKind kind, Protocol protocol, int rows = 4,
                                                   SolverOptions solver = {}) {
    std::vector<ConvergenceRow> out;
    for (const auto& [h, tau] : protocol_steps(protocol, rows)) out.push_back(accuracy_run(scheme, kind, h, tau, solver));
    compute_orders(out);
    return out;
}

}  // namespace sg
