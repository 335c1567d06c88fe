#pragma once

#include <functional>

namespace lrk {

struct QuadResult {
    double value = 0.0;
    double abs_error = 0.0;  // accumulated error estimate
    long evaluations = 0;    // integrand evaluations spent
};

// Single 15-point Gauss-Kronrod rule on [a, b]. The error estimate is the
// difference between the embedded 7-point Gauss value and the Kronrod value.
QuadResult gauss_kronrod_15(const std::function<double(double)>& f,
                            double a, double b);

// Globally adaptive Gauss-Kronrod integration: repeatedly bisects the
// interval with the largest error estimate until the total estimate drops
// below abs_tol. Endpoint singularities and kinks are handled by the graded
// bisection this produces. Throws numeric_error when max_intervals intervals
// are in flight and the tolerance still is not met.
QuadResult integrate_adaptive(const std::function<double(double)>& f,
                              double a, double b, double abs_tol,
                              int max_intervals = 1 << 18);

// Adaptive integration that starts from n_panels equal panels instead of one.
// Use for oscillatory integrands whose features are much narrower than the
// full interval; the initial panelling keeps the rule from stepping over
// whole oscillations.
QuadResult integrate_panelled(const std::function<double(double)>& f,
                              double a, double b, int n_panels,
                              double abs_tol, int max_intervals = 1 << 18);

} // namespace lrk
