#pragma once

#include <stdexcept>
#include <string>

namespace sg {

/// Grid functions or weights whose shapes do not agree.
class DimensionError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Invalid user-facing configuration (bad preset, unsupported combination, bad step sizes).
class ConfigError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// An iterative solve (linear or nonlinear) that did not reach its tolerance.
class SolverError : public std::runtime_error {
public:
    SolverError(const std::string& what, int iterations, double residual)
        : std::runtime_error(what + " (iterations=" + std::to_string(iterations) +
                             ", residual=" + std::to_string(residual) + ")"),
          iterations_(iterations), residual_(residual) {}

    int iterations() const noexcept { return iterations_; }
    double residual() const noexcept { return residual_; }

private:
    int iterations_;
    double residual_;
};

/// The SAV coefficient b(u) is undefined because H1(u) + c0 vanishes.
class DegenerateStateError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

}  // namespace sg
