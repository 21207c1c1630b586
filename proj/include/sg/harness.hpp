#pragma once

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <limits>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "sg/convergence.hpp"
#include "sg/integrate.hpp"
#include "sg/io.hpp"
#include "sg/presets.hpp"

namespace sg {

inline constexpr const char* kVersion = "sg-0.1.0";

struct RunOptions {
    std::string preset = "two-line";
    Scheme scheme = Scheme::SAV;
    OperatorKind kind = OperatorKind::CC;
    std::optional<double> h, tau, t_final, c0, solver_tol;
    std::optional<std::vector<double>> snapshots;
    int energy_every = 1;
    std::filesystem::path out_dir = "out";
    bool csv_snapshots = false;
    bool write_files = true;
};

struct RunSummary {
    int steps = 0;
    double t_final = 0.0;
    double max_deviation = 0.0;
    double wall_seconds = 0.0;
    double median_newton = 0.0;
    double median_linear = 0.0;
    std::vector<EnergySample> energy;  // deviation of the scheme's own conserved quantity
};

namespace detail {

inline double median(std::vector<int> v) {
    if (v.empty()) return 0.0;
    std::sort(v.begin(), v.end());
    const std::size_t m = v.size() / 2;
    return v.size() % 2 ? v[m] : 0.5 * (v[m - 1] + v[m]);
}

inline std::string time_tag(double t) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%g", t);
    return buf;
}

}  // namespace detail

/// Runs one preset, writing energy.csv, snapshots of U and sin(U/2), and run.json into out_dir.
inline RunSummary run_preset(const RunOptions& opt) {
    const Preset& preset = find_preset(opt.preset);
    Problem problem = preset.problem;
    if (opt.c0) problem.c0 = *opt.c0;
    if (problem.c0 < 0.0) throw ConfigError("c0 must be non-negative");
    if (opt.energy_every <= 0) throw ConfigError("--energy-every must be positive");

    const double h = opt.h.value_or(preset.h);
    const double tau = opt.tau.value_or(preset.tau);
    const double t_final = opt.t_final.value_or(preset.t_final);
    std::vector<double> snaps = opt.snapshots.value_or(preset.snapshots);
    std::erase_if(snaps, [&](double t) { return !opt.snapshots && t > t_final; });

    const Domain& d = problem.domain;
    const Grid grid = Grid::with_spacing(layout_for(opt.kind), d.x0, d.y0, d.x1, d.y1, h);
    const OperatorSet ops = build_operators(opt.kind, grid);
    const TimeGrid tg = TimeGrid::make(tau, t_final);

    std::map<int, double> snap_steps;
    for (double t : snaps) {
        if (t < 0.0 || t > t_final + 1e-12) throw ConfigError("snapshot time " + detail::time_tag(t) + " outside [0, T]");
        snap_steps[static_cast<int>(std::llround(t / tg.tau))] = t;
    }

    StepperConfig cfg;
    cfg.scheme = opt.scheme;
    cfg.tau = tg.tau;
    if (opt.solver_tol) cfg.solver.tol = *opt.solver_tol;

    std::optional<io::EnergyCsv> csv;
    if (opt.write_files) {
        std::filesystem::create_directories(opt.out_dir);
        csv.emplace(opt.out_dir / "energy.csv");
    }

    RunSummary summary;
    std::vector<int> newton, linear;
    nlohmann::json snap_meta = nlohmann::json::array();
    double e0 = 0.0;

    Observer energy_obs{opt.energy_every, [&](const StepInfo& info) {
        const double native = energy(info.state, info.ops, info.phi, EnergyFlavor::Native);
        double sav;
        if (info.scheme == Scheme::SAV) {
            sav = energy(info.state, info.ops, info.phi, EnergyFlavor::SAV);
        } else {
            // SIM carries no auxiliary scalar; report the value sqrt(H1 + c0) would take.
            sav = native + info.c0;
        }
        const double own = info.scheme == Scheme::SAV ? sav : native;
        if (info.state.step == 0) e0 = own;
        const double dev = relative_deviation(own, e0);
        summary.max_deviation = std::max(summary.max_deviation, dev);
        summary.energy.push_back({info.state.step, info.state.t, own, dev});
        if (csv) csv->write(info.state.step, info.state.t, native, sav, dev);
    }};

    Observer stats_obs{1, [&](const StepInfo& info) {
        if (info.state.step == 0) return;
        if (info.scheme == Scheme::SIM) newton.push_back(info.stats.newton_iterations);
        linear.push_back(info.stats.linear_iterations);
    }};

    Observer snap_obs{1, [&](const StepInfo& info) {
        if (!opt.write_files) return;
        const auto it = snap_steps.find(info.state.step);
        if (it == snap_steps.end()) return;
        const std::string tag = detail::time_tag(it->second);
        const std::string ext = opt.csv_snapshots ? ".csv" : ".sg";
        GridFunction half(info.state.u.grid());
        for (std::size_t i = 0; i < half.size(); ++i) half.data()[i] = std::sin(0.5 * info.state.u.data()[i]);
        const auto u_path = opt.out_dir / ("u_t" + tag + ext);
        const auto s_path = opt.out_dir / ("sinhalf_t" + tag + ext);
        if (opt.csv_snapshots) {
            io::write_snapshot_csv(u_path, info.state.u, info.state.t);
            io::write_snapshot_csv(s_path, half, info.state.t);
        } else {
            io::write_snapshot(u_path, info.state.u, info.state.t);
            io::write_snapshot(s_path, half, info.state.t);
        }
        snap_meta.push_back({{"t", info.state.t},
                             {"step", info.state.step},
                             {"u", u_path.filename().string()},
                             {"sin_half_u", s_path.filename().string()}});
    }};

    const auto start = std::chrono::steady_clock::now();
    run(problem, ops, tg, cfg, {energy_obs, stats_obs, snap_obs});
    summary.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    summary.steps = tg.n_steps;
    summary.t_final = tg.n_steps * tg.tau;
    summary.median_newton = detail::median(newton);
    summary.median_linear = detail::median(linear);

    if (opt.write_files) {
        nlohmann::json meta = {
            {"version", kVersion},
            {"preset", preset.name},
            {"scheme", to_string(opt.scheme)},
            {"kind", to_string(opt.kind)},
            {"layout", to_string(grid.layout)},
            {"domain", {d.x0, d.y0, d.x1, d.y1}},
            {"nx", grid.nx},
            {"ny", grid.ny},
            {"hx", grid.hx},
            {"hy", grid.hy},
            {"h", h},
            {"tau", tg.tau},
            {"t_final", t_final},
            {"n_steps", tg.n_steps},
            {"c0", problem.c0},
            {"solver_tol", cfg.solver.tol},
            {"energy_every", opt.energy_every},
            {"snapshots", snap_meta},
            {"max_deviation", summary.max_deviation},
            {"median_newton_iterations", summary.median_newton},
            {"median_linear_iterations", summary.median_linear},
            {"wall_seconds", summary.wall_seconds},
        };
        auto f = io::detail::open_out(opt.out_dir / "run.json");
        f << meta.dump(2) << '\n';
    }
    return summary;
}

inline void write_convergence_csv(const std::filesystem::path& path, const std::vector<ConvergenceRow>& rows) {
    auto f = io::detail::open_out(path);
    f << "h,tau,linf_err,linf_order,l2_err,l2_order\n";
    for (const ConvergenceRow& r : rows) {
        f << io::fmt(r.h) << ',' << io::fmt(r.tau) << ',' << io::fmt(r.linf_err) << ','
          << (r.linf_order ? io::fmt(*r.linf_order) : "") << ',' << io::fmt(r.l2_err) << ','
          << (r.l2_order ? io::fmt(*r.l2_order) : "") << '\n';
    }
}

struct TimingRow {
    std::string preset;
    Scheme scheme = Scheme::SAV;
    OperatorKind kind = OperatorKind::CC;
    double h = 0.0, tau = 0.0, t_final = 0.0;
    int steps = 0;
    double wall_seconds = 0.0;
    double median_newton = 0.0;
    double median_linear = 0.0;
};

/// Wall-clock comparison of schemes at identical (h, tau); no files besides the report.
inline std::vector<TimingRow> timing_report(const std::vector<std::string>& preset_names,
                                            const std::vector<Scheme>& schemes,
                                            const std::vector<OperatorKind>& kinds, const std::vector<double>& hs,
                                            std::optional<double> tau, std::optional<double> t_final) {
    std::vector<TimingRow> rows;
    for (const std::string& name : preset_names)
        for (double h : hs)
            for (OperatorKind kind : kinds)
                for (Scheme scheme : schemes) {
                    RunOptions o;
                    o.preset = name;
                    o.scheme = scheme;
                    o.kind = kind;
                    o.h = h;
                    o.tau = tau;
                    o.t_final = t_final;
                    o.write_files = false;
                    o.energy_every = std::numeric_limits<int>::max();
                    const RunSummary s = run_preset(o);
                    const Preset& p = find_preset(name);
                    rows.push_back({name, scheme, kind, h, tau.value_or(p.tau), s.t_final, s.steps, s.wall_seconds,
                                    s.median_newton, s.median_linear});
                }
    return rows;
}

inline void write_timing_csv(const std::filesystem::path& path, const std::vector<TimingRow>& rows) {
    auto f = io::detail::open_out(path);
    f << "preset,scheme,kind,h,tau,t_final,steps,wall_seconds,steps_per_second,median_newton_iterations,"
         "median_linear_iterations\n";
    for (const TimingRow& r : rows) {
        const double sps = r.wall_seconds > 0.0 ? r.steps / r.wall_seconds : 0.0;
        f << r.preset << ',' << to_string(r.scheme) << ',' << to_string(r.kind) << ',' << io::fmt(r.h) << ','
          << io::fmt(r.tau) << ',' << io::fmt(r.t_final) << ',' << r.steps << ',' << io::fmt(r.wall_seconds) << ','
          << io::fmt(sps) << ',' << io::fmt(r.median_newton) << ',' << io::fmt(r.median_linear) << '\n';
    }
}

}  // namespace sg
