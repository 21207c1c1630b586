// sg: command-line driver for the sine-Gordon solvers.
//
//   sg run --preset ring --scheme sav --kind cc --out out/ring
//   sg converge --scheme sav --kind sbp4 --protocol tau-quarter --out out/conv
//   sg presets
//   sg timing --preset two-line --h 0.5,0.25 --t-final 7

#include <cstdio>
#include <exception>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "sg/sg.hpp"

namespace {

constexpr int kExitConfig = 2;
constexpr int kExitSolver = 3;

std::vector<double> parse_list(const std::string& s) {
    std::vector<double> out;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ',')) {
        if (item.empty()) continue;
        try {
            std::size_t pos = 0;
            out.push_back(std::stod(item, &pos));
            if (pos != item.size()) throw std::invalid_argument(item);
        } catch (const std::exception&) {
            throw sg::ConfigError("not a number: '" + item + "'");
        }
    }
    return out;
}

void print_rows(const std::vector<sg::ConvergenceRow>& rows) {
    std::printf("%-10s %-12s %-12s %-7s %-12s %-7s\n", "h", "tau", "Linf-error", "order", "L2-error", "order");
    for (const auto& r : rows) {
        char lo[16] = "-", l2o[16] = "-";
        if (r.linf_order) std::snprintf(lo, sizeof lo, "%.2f", *r.linf_order);
        if (r.l2_order) std::snprintf(l2o, sizeof l2o, "%.2f", *r.l2_order);
        std::printf("%-10g %-12g %-12.4e %-7s %-12.4e %-7s\n", r.h, r.tau, r.linf_err, lo, r.l2_err, l2o);
    }
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Structure-preserving solvers for the 2D sine-Gordon equation with Neumann boundaries"};
    app.set_help_flag("--help", "print help and exit");
    app.require_subcommand(1);

    // run
    auto* run_cmd = app.add_subcommand("run", "run one preset and write energy.csv, snapshots and run.json");
    std::string preset, scheme = "sav", kind = "cc", snapshots, out = "out";
    double h = 0, tau = 0, t_final = 0, c0 = 0, solver_tol = 0;
    int energy_every = 1;
    bool csv = false;
    run_cmd->add_option("--preset", preset, "preset name (see `sg presets`)")->required();
    run_cmd->add_option("--scheme", scheme, "sim | sav");
    run_cmd->add_option("--kind", kind, "cc | sbp2 | sbp4");
    auto* h_opt = run_cmd->add_option("--h", h, "spatial step");
    auto* tau_opt = run_cmd->add_option("--tau", tau, "time step");
    auto* t_opt = run_cmd->add_option("--t-final", t_final, "final time");
    auto* snap_opt = run_cmd->add_option("--snapshots", snapshots, "comma-separated snapshot times");
    run_cmd->add_option("--energy-every", energy_every, "energy sampling cadence in steps");
    run_cmd->add_option("--out", out, "output directory");
    auto* c0_opt = run_cmd->add_option("--c0", c0, "SAV regularization offset");
    auto* tol_opt = run_cmd->add_option("--solver-tol", solver_tol, "relative linear-solver tolerance");
    run_cmd->add_flag("--csv", csv, "write snapshots as CSV instead of binary");

    // converge
    auto* conv_cmd = app.add_subcommand("converge", "accuracy study against the exact kink solution");
    std::string conv_scheme = "sav", conv_kind = "sbp2", protocol = "halve-both", conv_out = "out";
    int rows = 4;
    conv_cmd->add_option("--scheme", conv_scheme, "sim | sav");
    conv_cmd->add_option("--kind", conv_kind, "cc | sbp2 | sbp4");
    conv_cmd->add_option("--protocol", protocol, "halve-both | tau-quarter");
    conv_cmd->add_option("--rows", rows, "number of refinement levels (1-4)")->check(CLI::Range(1, 4));
    conv_cmd->add_option("--out", conv_out, "output directory for convergence.csv");

    // presets
    auto* presets_cmd = app.add_subcommand("presets", "list presets with domains and defaults");

    // timing
    auto* timing_cmd = app.add_subcommand("timing", "wall-clock comparison of SIM and SAV at identical (h, tau)");
    std::string timing_presets = "two-line", timing_hs = "0.5", timing_kinds = "cc,sbp2", timing_out = "out";
    double timing_tau = 0, timing_t = 0;
    timing_cmd->add_option("--preset", timing_presets, "comma-separated preset names");
    timing_cmd->add_option("--h", timing_hs, "comma-separated spatial steps");
    timing_cmd->add_option("--kind", timing_kinds, "comma-separated operator kinds");
    auto* ttau_opt = timing_cmd->add_option("--tau", timing_tau, "time step");
    auto* tt_opt = timing_cmd->add_option("--t-final", timing_t, "final time");
    timing_cmd->add_option("--out", timing_out, "output directory for timing.csv");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : kExitConfig;
    }

    try {
        if (*run_cmd) {
            sg::RunOptions o;
            o.preset = preset;
            o.scheme = sg::parse_scheme(scheme);
            o.kind = sg::parse_operator_kind(kind);
            if (*h_opt) o.h = h;
            if (*tau_opt) o.tau = tau;
            if (*t_opt) o.t_final = t_final;
            if (*snap_opt) o.snapshots = parse_list(snapshots);
            if (*c0_opt) o.c0 = c0;
            if (*tol_opt) o.solver_tol = solver_tol;
            o.energy_every = energy_every;
            o.out_dir = out;
            o.csv_snapshots = csv;
            const sg::RunSummary s = sg::run_preset(o);
            std::printf("%s %s/%s: %d steps to t=%g in %.3f s, max energy deviation %.3e\n", preset.c_str(),
                        scheme.c_str(), kind.c_str(), s.steps, s.t_final, s.wall_seconds, s.max_deviation);
        } else if (*conv_cmd) {
            const auto rs = sg::run_convergence(sg::parse_scheme(conv_scheme), sg::parse_operator_kind(conv_kind),
                                                sg::parse_protocol(protocol), rows);
            print_rows(rs);
            sg::write_convergence_csv(std::filesystem::path(conv_out) / "convergence.csv", rs);
        } else if (*presets_cmd) {
            for (const sg::Preset& p : sg::presets()) {
                const auto& d = p.problem.domain;
                std::printf("%-15s [%g, %g] x [%g, %g]  h=%g tau=%g T=%g  %s\n", p.name.c_str(), d.x0, d.x1, d.y0,
                            d.y1, p.h, p.tau, p.t_final, p.description.c_str());
            }
        } else if (*timing_cmd) {
            std::vector<std::string> names;
            {
                std::stringstream ss(timing_presets);
                std::string item;
                while (std::getline(ss, item, ','))
                    if (!item.empty()) names.push_back(item);
            }
            std::vector<sg::OperatorKind> kinds;
            {
                std::stringstream ss(timing_kinds);
                std::string item;
                while (std::getline(ss, item, ','))
                    if (!item.empty()) kinds.push_back(sg::parse_operator_kind(item));
            }
            const auto rs = sg::timing_report(names, {sg::Scheme::SIM, sg::Scheme::SAV}, kinds, parse_list(timing_hs),
                                              *ttau_opt ? std::optional<double>(timing_tau) : std::nullopt,
                                              *tt_opt ? std::optional<double>(timing_t) : std::nullopt);
            const auto path = std::filesystem::path(timing_out) / "timing.csv";
            sg::write_timing_csv(path, rs);
            for (const auto& r : rs)
                std::printf("%s %s/%s h=%g: %d steps %.3f s (newton %.1f, linear %.1f)\n", r.preset.c_str(),
                            sg::to_string(r.scheme), sg::to_string(r.kind), r.h, r.steps, r.wall_seconds,
                            r.median_newton, r.median_linear);
        }
    } catch (const sg::SolverError& e) {
        std::fprintf(stderr, "solver failure: %s\n", e.what());
        return kExitSolver;
    } catch (const sg::DegenerateStateError& e) {
        std::fprintf(stderr, "solver failure: %s\n", e.what());
        return kExitSolver;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "configuration error: %s\n", e.what());
        return kExitConfig;
    }
    return 0;
}
