#pragma once

#include <cmath>
#include <string>
#include <vector>

#include "sg/errors.hpp"
#include "sg/model.hpp"

namespace sg {

struct Preset {
    std::string name;
    std::string description;
    Problem problem;
    double h = 0.5;
    double tau = 0.01;
    double t_final = 50.0;
    std::vector<double> snapshots;
};

namespace exact {

/// Travelling kink 4 atan(exp(x + y - t)), the reference solution of the accuracy preset.
inline double kink(double x, double y, double t) { return 4.0 * std::atan(std::exp(x + y - t)); }

inline double kink_velocity(double x, double y) {
    const double e = std::exp(x + y);
    return -4.0 * e / (1.0 + std::exp(2.0 * x + 2.0 * y));
}

/// Normal derivative data of the kink on both x- and y-faces.
inline double kink_flux(double x, double y, double t) {
    return 4.0 * std::exp(x + y + t) / (std::exp(2.0 * t) + std::exp(2.0 * x + 2.0 * y));
}

}  // namespace exact

namespace detail {

inline double sech(double s) { return 1.0 / std::cosh(s); }

inline Problem unit_phi_problem(Domain d) {
    Problem p;
    p.domain = d;
    p.phi = [](double, double) { return 1.0; };
    p.f2 = [](double, double) { return 0.0; };
    p.c0 = Problem::default_c0(d);
    return p;
}

inline std::vector<Preset> make_presets() {
    std::vector<Preset> out;

    {
        Preset s;
        s.name = "accuracy";
        s.description = "kink 4 atan(exp(x+y-t)) with its exact Neumann data; reference for convergence studies";
        s.problem = unit_phi_problem({-7, -7, 7, 7});
        s.problem.f1 = [](double x, double y) { return exact::kink(x, y, 0.0); };
        s.problem.f2 = exact::kink_velocity;
        s.problem.boundary = BoundaryData::neumann(exact::kink_flux, exact::kink_flux);
        s.h = 0.25;
        s.tau = 0.01;
        s.t_final = 1.0;
        s.snapshots = {0.0, 1.0};
        out.push_back(std::move(s));
    }
    {
        Preset s;
        s.name = "two-line";
        s.description = "superposition of two orthogonal line solitons";
        s.problem = unit_phi_problem({-6, -6, 6, 6});
        s.problem.f1 = [](double x, double y) { return 4.0 * std::atan(std::exp(x)) + 4.0 * std::atan(std::exp(y)); };
        s.snapshots = {0.0, 2.0, 4.0, 7.0};
        out.push_back(std::move(s));
    }
    {
        Preset s;
        s.name = "perturbed-line";
        s.description = "static line soliton perturbed by two symmetric dents";
        s.problem = unit_phi_problem({-7, -7, 7, 7});
        s.problem.f1 = [](double x, double y) {
            return 4.0 * std::atan(std::exp(x + 1.0 - 2.0 * sech(y + 7.0) - 2.0 * sech(y - 7.0)));
        };
        s.snapshots = {0.0, 3.0, 5.0, 7.0, 9.0, 11.0};
        out.push_back(std::move(s));
    }
    {
        Preset s;
        s.name = "inhomogeneous";
        s.description = "line soliton crossing the inhomogeneity phi = 1 + sech^2(r)";
        s.problem = unit_phi_problem({-7, -7, 7, 7});
        s.problem.phi = [](double x, double y) {
            const double q = sech(std::sqrt(x * x + y * y));
            return 1.0 + q * q;
        };
        s.problem.f1 = [](double x, double) { return 4.0 * std::atan(std::exp((x - 3.5) / 0.954)); };
        s.problem.f2 = [](double x, double) { return 0.629 * sech((x - 3.5) / 0.954); };
        s.snapshots = {0.0, 6.0, 12.0, 18.0};
        out.push_back(std::move(s));
    }
    {
        Preset s;
        s.name = "ring";
        s.description = "circular ring soliton";
        s.problem = unit_phi_problem({-7, -7, 7, 7});
        s.problem.f1 = [](double x, double y) { return 4.0 * std::atan(std::exp(3.0 - std::sqrt(x * x + y * y))); };
        s.snapshots = {0.0, 2.8, 5.6, 8.4, 11.2, 12.6};
        out.push_back(std::move(s));
    }
    {
        // Only the stated sub-domain is simulated; the mirror images across x = -10 and
        // y = -7 are a presentation step.
        Preset s;
        s.name = "collide2";
        s.description = "collision of two expanding circular ring solitons (mirror across x=-10, y=-7)";
        s.problem = unit_phi_problem({-30, -21, 10, 7});
        s.problem.f1 = [](double x, double y) {
            const double q = (4.0 - std::sqrt((x + 3.0) * (x + 3.0) + (y + 7.0) * (y + 7.0))) / 0.436;
            return 4.0 * std::atan(std::exp(q));
        };
        s.problem.f2 = [](double x, double y) {
            const double q = (4.0 - std::sqrt((x + 3.0) * (x + 3.0) + (y + 7.0) * (y + 7.0))) / 0.436;
            return 4.13 * sech(q);
        };
        s.snapshots = {0.0, 2.0, 4.0, 6.0, 8.0};
        out.push_back(std::move(s));
    }
    {
        // "atan^-1" in the original description of this case is read as atan.
        Preset s;
        s.name = "collide4";
        s.description = "collision of four expanding circular ring solitons (mirror across x=-10, y=-10)";
        s.problem = unit_phi_problem({-30, -30, 10, 10});
        s.problem.f1 = [](double x, double y) {
            const double q = (4.0 - std::sqrt((x + 3.0) * (x + 3.0) + (y + 3.0) * (y + 3.0))) / 0.436;
            return 4.0 * std::atan(std::exp(q));
        };
        s.problem.f2 = [](double x, double y) {
            const double q = (4.0 - std::sqrt((x + 3.0) * (x + 3.0) + (y + 3.0) * (y + 3.0))) / 0.436;
            return 4.13 * sech(q);
        };
        s.snapshots = {0.0, 2.5, 5.0, 7.5, 10.0};
        out.push_back(std::move(s));
    }
    return out;
}

}  // namespace detail

inline const std::vector<Preset>& presets() {
    static const std::vector<Preset> all = detail::make_presets();
    return all;
}

inline const Preset& find_preset(const std::string& name) {
    for (const Preset& p : presets())
        if (p.name == name) return p;
    throw ConfigError("unknown preset '" + name + "'");
}

}  // namespace sg
