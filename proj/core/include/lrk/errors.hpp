#pragma once

#include <stdexcept>
#include <string>

namespace lrk {

// Invalid argument or violated precondition. CLI maps this to exit code 1.
struct domain_error : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

// Problem size beyond a hard resource cap (e.g. dense many-body N > 14).
struct resource_error : domain_error {
    using domain_error::domain_error;
};

// A momentum mode where the dispersion vanishes and a mode derivative has no
// finite limit. Carries the offending momentum.
struct singular_mode_error : domain_error {
    double k;
    singular_mode_error(double k_, const std::string& msg)
        : domain_error(msg), k(k_) {}
};

// Unreadable or unwritable file. CLI maps this to exit code 2.
struct io_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Nonlinear fit failed to converge from every seed. Carries the best residual
// reached. CLI maps this to exit code 3.
struct fit_error : std::runtime_error {
    double best_residual;
    fit_error(double best_residual_, const std::string& msg)
        : std::runtime_error(msg), best_residual(best_residual_) {}
};

// Internal numerical failure (quadrature non-convergence, eigensolver
// failure, failed cross-validation between two computation routes).
struct numeric_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

} // namespace lrk
