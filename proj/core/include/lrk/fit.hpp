#pragma once

#include <span>
#include <utility>

namespace lrk {

// Result of a scaling-law fit.
struct ScalingFit {
    enum class Model { PowerLaw, PolyLog };
    Model model = Model::PowerLaw;

    // PowerLaw: y = amplitude * x^exponent
    double exponent = 0.0;
    double amplitude = 0.0;

    // PolyLog: y = A (ln x)^c + B
    double A = 0.0;
    double c = 0.0;
    double B = 0.0;

    double residual = 0.0;  // RMS residual in fit space
    int n_points = 0;
};

// Least-squares line on (ln x, ln y). Requires >= 3 points with distinct
// positive x and positive y; the residual is the RMS misfit in log space.
ScalingFit fit_power(std::span<const std::pair<double, double>> points);

// Nonlinear least squares of y = A (ln x)^c + B. The exponent c is seeded on
// {0.5, 1.0, 1.5, 2.0} with (A, B) solved linearly per seed, then the best
// seed is refined by damped Gauss-Newton until the gradient infinity-norm
// drops below 1e-10 (at most 200 iterations). Requires >= 4 points with
// x >= 3. Deterministic for a fixed input order. Throws fit_error (carrying
// the best residual) when no seed converges or the converged parameters
// violate A > 0, c > 0.
ScalingFit fit_polylog(std::span<const std::pair<double, double>> points);

} // namespace lrk
