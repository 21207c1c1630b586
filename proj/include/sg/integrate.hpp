#pragma once

#include <cmath>
#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "sg/errors.hpp"
#include "sg/model.hpp"
#include "sg/ops.hpp"
#include "sg/solver.hpp"

namespace sg {

/// SIM: symplectic implicit midpoint. SAV: linearly implicit Crank-Nicolson scheme on the
/// scalar-auxiliary-variable reformulation.
enum class Scheme { SIM, SAV };

inline const char* to_string(Scheme s) { return s == Scheme::SIM ? "sim" : "sav"; }

inline Scheme parse_scheme(const std::string& s) {
    if (s == "sim") return Scheme::SIM;
    if (s == "sav") return Scheme::SAV;
    throw ConfigError("unknown scheme '" + s + "' (expected sim|sav)");
}

struct StepperConfig {
    Scheme scheme = Scheme::SAV;
    double tau = 0.01;
    double newton_tol = 1e-12;
    int newton_max_iter = 50;
    SolverOptions solver;

    void validate() const {
        if (!(tau > 0.0)) throw ConfigError("stepper: tau must be positive");
        if (!(newton_tol > 0.0) || newton_max_iter <= 0 || !(solver.tol > 0.0))
            throw ConfigError("stepper: tolerances and iteration caps must be positive");
    }
};

/// U^{n-1} for the extrapolation (3 U^n - U^{n-1}) / 2.
struct SAVHistory {
    GridFunction u_prev;
    bool initialized = false;
};

struct StepStats {
    int newton_iterations = 0;
    int linear_iterations = 0;
};

/// Writes the boundary forcing at time t into out. An empty function means no forcing.
using ForcingFn = std::function<void(double, GridFunction&)>;

inline ForcingFn make_forcing(const OperatorSet& ops, const BoundaryData& bd) {
    if (bd.homogeneous) return {};
    return [ops, bd](double t, GridFunction& out) { boundary_forcing(ops, bd, t, out); };
}

/// One implicit midpoint step.
///
/// With W = (U^n + U^{n+1})/2 the midpoint equations reduce to
///     (I - k Lap) W + k Phi sin W = U^n + (tau/2) V^n + k F(t + tau/2),   k = tau^2/4,
/// solved by Newton with the constant operator plus the diagonal k Phi cos W.
inline State sim_step(const State& s, const HelmholtzOp& h, const GridFunction& phi, const ForcingFn& forcing,
                      const StepperConfig& cfg, StepStats* stats = nullptr) {
    const OperatorSet& ops = h.ops();
    const double tau = cfg.tau;
    const double k = 0.25 * tau * tau;

    GridFunction rhs = s.u;
    rhs.axpy(0.5 * tau, s.v);
    if (forcing) {
        GridFunction f(ops.grid);
        forcing(s.t + 0.5 * tau, f);
        rhs.axpy(k, f);
    }

    // The diagonal correction keeps the Jacobian SPD only while k |Phi| stays well below one.
    const bool use_jacobian = k * phi.max_abs() < 0.5;

    GridFunction w = s.u;
    w.axpy(0.5 * tau, s.v);
    GridFunction lap(ops.grid), res(ops.grid), shift(ops.grid);
    StepStats local;
    double dnorm = 0.0;
    int it = 0;
    for (it = 1; it <= cfg.newton_max_iter; ++it) {
        apply_laplacian(ops, w, lap);
        for (std::size_t i = 0; i < res.size(); ++i) {
            const double wi = w.data()[i];
            const double pi = phi.data()[i];
            res.data()[i] = rhs.data()[i] - (wi - k * lap.data()[i] + k * pi * std::sin(wi));
            shift.data()[i] = use_jacobian ? k * pi * std::cos(wi) : 0.0;
        }
        SolveStats ls;
        const GridFunction delta = h.solve(res, nullptr, use_jacobian ? &shift : nullptr, &ls);
        local.linear_iterations += ls.iterations;
        w += delta;
        dnorm = norm(ops, delta);
        if (dnorm <= cfg.newton_tol * std::max(1.0, norm(ops, w))) break;
    }
    local.newton_iterations = std::min(it, cfg.newton_max_iter);
    if (it > cfg.newton_max_iter) throw SolverError("sim_step: Newton did not converge", cfg.newton_max_iter, dnorm);
    if (stats) *stats = local;

    State next;
    next.u = 2.0 * w;
    next.u -= s.u;
    next.v = next.u - s.u;
    next.v *= 2.0 / tau;
    next.v -= s.v;
    next.r = s.r;
    next.step = s.step + 1;
    next.t = next.step * tau;
    return next;
}

/// One linearly implicit SAV step. Returns the new state and the updated extrapolation history.
///
/// The first step has no U^{-1}; it extrapolates with U^0 + (tau/2) V^0 instead.
inline std::pair<State, SAVHistory> sav_step(const State& s, const SAVHistory& hist, const HelmholtzOp& h,
                                             const GridFunction& phi, const ForcingFn& forcing,
                                             const StepperConfig& cfg, double c0, StepStats* stats = nullptr) {
    const OperatorSet& ops = h.ops();
    const double tau = cfg.tau;
    const double k4 = 0.25 * tau * tau;
    const double k8 = 0.125 * tau * tau;

    GridFunction ubar(ops.grid);
    if (hist.initialized) {
        ubar = 1.5 * s.u;
        ubar.axpy(-0.5, hist.u_prev);
    } else {
        ubar = s.u;
        ubar.axpy(0.5 * tau, s.v);
    }
    const GridFunction b = sav_b(phi, ubar, ops, c0);

    // C^n = (I + k4 Lap) U + k8 B (B, U) - (tau^2/2) B R + tau V + (tau^2/2) F(t + tau/2)
    GridFunction c = apply_laplacian(ops, s.u);
    c *= k4;
    c += s.u;
    const double bu = inner(ops, b, s.u);
    c.axpy(k8 * bu - 0.5 * tau * tau * s.r, b);
    c.axpy(tau, s.v);
    if (forcing) {
        GridFunction f(ops.grid);
        forcing(s.t + 0.5 * tau, f);
        c.axpy(0.5 * tau * tau, f);
    }

    RankOneResult sol = sav_rank_one_solve(h, b, c, &s.u);
    if (stats) *stats = {0, sol.iterations};

    State next;
    next.u = std::move(sol.u_next);
    const GridFunction du = next.u - s.u;
    next.v = (2.0 / tau) * du;
    next.v -= s.v;
    next.r = s.r + 0.5 * inner(ops, b, du);
    next.step = s.step + 1;
    next.t = next.step * tau;

    SAVHistory nh;
    nh.u_prev = s.u;
    nh.initialized = true;
    return {std::move(next), std::move(nh)};
}

/// What observers see after every step (and once before the first step).
struct StepInfo {
    const State& state;
    const OperatorSet& ops;
    const GridFunction& phi;
    const StepStats& stats;
    double c0;
    Scheme scheme;
};

struct Observer {
    int every = 1;  // invoked when step % every == 0
    std::function<void(const StepInfo&)> on_step;
};

/// Owns everything a simulation needs between steps: the solver, sampled coefficients,
/// forcing and the SAV history.
class Integrator {
public:
    Integrator(const Problem& problem, OperatorSet ops, const StepperConfig& cfg)
        : cfg_(cfg), helm_(std::move(ops), cfg.tau, cfg.solver), c0_(problem.c0) {
        cfg_.validate();
        SampledProblem sp = sample_problem(problem, helm_.grid());
        phi_ = std::move(sp.phi);
        forcing_ = make_forcing(helm_.ops(), problem.boundary);
        state_.u = std::move(sp.u0);
        state_.v = std::move(sp.v0);
        state_.r = std::sqrt(h1_potential(phi_, state_.u, helm_.ops(), c0_));
    }

    void step() {
        if (cfg_.scheme == Scheme::SIM) {
            state_ = sim_step(state_, helm_, phi_, forcing_, cfg_, &last_);
        } else {
            auto [s, h] = sav_step(state_, hist_, helm_, phi_, forcing_, cfg_, c0_, &last_);
            state_ = std::move(s);
            hist_ = std::move(h);
        }
    }

    const State& state() const { return state_; }
    const OperatorSet& ops() const { return helm_.ops(); }
    const GridFunction& phi() const { return phi_; }
    const StepStats& last_stats() const { return last_; }
    const StepperConfig& config() const { return cfg_; }
    double c0() const { return c0_; }

    void notify(const std::vector<Observer>& observers) const {
        const StepInfo info{state_, helm_.ops(), phi_, last_, c0_, cfg_.scheme};
        for (const Observer& o : observers)
            if (o.on_step && state_.step % std::max(1, o.every) == 0) o.on_step(info);
    }

private:
    StepperConfig cfg_;
    HelmholtzOp helm_;
    double c0_;
    GridFunction phi_;
    ForcingFn forcing_;
    State state_;
    SAVHistory hist_;
    StepStats last_;
};

/// Integrates n_steps steps from the sampled initial data, notifying observers at step 0 and
/// at their cadence afterwards. Deterministic for identical inputs.
inline State run(const Problem& problem, const OperatorSet& ops, const TimeGrid& tg, StepperConfig cfg,
                 const std::vector<Observer>& observers = {}) {
    cfg.tau = tg.tau;
    Integrator integ(problem, ops, cfg);
    integ.notify(observers);
    for (int n = 0; n < tg.n_steps; ++n) {
        integ.step();
        integ.notify(observers);
    }
    return integ.state();
}

}  // namespace sg
