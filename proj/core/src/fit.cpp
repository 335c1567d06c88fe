#include "lrk/fit.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <string>
#include <vector>

#include "lrk/errors.hpp"

namespace lrk {

namespace {

// Solves a 3x3 system by Gaussian elimination with partial pivoting.
// Returns false when the matrix is numerically singular.
bool solve3(std::array<std::array<double, 3>, 3> m, std::array<double, 3> rhs,
            std::array<double, 3>& x) {
    for (int col = 0; col < 3; ++col) {
        int pivot = col;
        for (int row = col + 1; row < 3; ++row)
            if (std::abs(m[row][col]) > std::abs(m[pivot][col])) pivot = row;
        if (std::abs(m[pivot][col]) < 1e-300) return false;
        std::swap(m[col], m[pivot]);
        std::swap(rhs[col], rhs[pivot]);
        for (int row = col + 1; row < 3; ++row) {
            const double factor = m[row][col] / m[col][col];
            for (int j = col; j < 3; ++j) m[row][j] -= factor * m[col][j];
            rhs[row] -= factor * rhs[col];
        }
    }
    for (int row = 2; row >= 0; --row) {
        double s = rhs[row];
        for (int j = row + 1; j < 3; ++j) s -= m[row][j] * x[j];
        x[row] = s / m[row][row];
    }
    return x[0] == x[0] && x[1] == x[1] && x[2] == x[2];
}

double clamp_c(double c) { return std::clamp(c, 1e-3, 20.0); }

} // namespace

ScalingFit fit_power(std::span<const std::pair<double, double>> points) {
    const std::size_t n = points.size();
    if (n < 3)
        throw domain_error("fit_power: at least 3 points required (got " +
                           std::to_string(n) + ")");
    std::vector<double> lx(n), ly(n);
    for (std::size_t i = 0; i < n; ++i) {
        if (!(points[i].first > 0.0) || !(points[i].second > 0.0))
            throw domain_error(
                "fit_power: points must have positive x and positive y");
        lx[i] = std::log(points[i].first);
        ly[i] = std::log(points[i].second);
    }
    std::vector<double> sorted_x(lx);
    std::sort(sorted_x.begin(), sorted_x.end());
    if (std::adjacent_find(sorted_x.begin(), sorted_x.end()) !=
        sorted_x.end())
        throw domain_error("fit_power: abscissae must be distinct");

    double mx = 0.0, my = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        mx += lx[i];
        my += ly[i];
    }
    mx /= double(n);
    my /= double(n);
    double sxx = 0.0, sxy = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        sxx += (lx[i] - mx) * (lx[i] - mx);
        sxy += (lx[i] - mx) * (ly[i] - my);
    }
    const double slope = sxy / sxx;
    const double intercept = my - slope * mx;

    double ssr = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double r = ly[i] - (slope * lx[i] + intercept);
        ssr += r * r;
    }

    ScalingFit fit;
    fit.model = ScalingFit::Model::PowerLaw;
    fit.exponent = slope;
    fit.amplitude = std::exp(intercept);
    fit.residual = std::sqrt(ssr / double(n));
    fit.n_points = static_cast<int>(n);
    return fit;
}

ScalingFit fit_polylog(std::span<const std::pair<double, double>> points) {
    const std::size_t n = points.size();
    if (n < 4)
        throw domain_error("fit_polylog: at least 4 points required (got " +
                           std::to_string(n) + ")");
    std::vector<double> u(n), y(n);
    for (std::size_t i = 0; i < n; ++i) {
        if (!(points[i].first >= 3.0))
            throw domain_error(
                "fit_polylog: abscissae must be >= 3 (ln x > 1 region)");
        u[i] = std::log(points[i].first);
        y[i] = points[i].second;
    }

    // Linear (A, B) solve for a fixed exponent c.
    auto solve_linear = [&](double c, double& A, double& B) {
        double sff = 0.0, sf = 0.0, sfy = 0.0, sy = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            const double phi = std::pow(u[i], c);
            sff += phi * phi;
            sf += phi;
            sfy += phi * y[i];
            sy += y[i];
        }
        const double det = sff * double(n) - sf * sf;
        if (std::abs(det) < 1e-300) {
            A = 0.0;
            B = sy / double(n);
            return;
        }
        A = (sfy * double(n) - sf * sy) / det;
        B = (sff * sy - sf * sfy) / det;
    };

    auto ssr_of = [&](double A, double c, double B) {
        double ssr = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            const double r = A * std::pow(u[i], c) + B - y[i];
            ssr += r * r;
        }
        return ssr;
    };

    constexpr double seeds[4] = {0.5, 1.0, 1.5, 2.0};
    constexpr double grad_tol = 1e-10;
    constexpr int max_iterations = 200;

    bool have_converged = false;
    double best_A = 0.0, best_c = 0.0, best_B = 0.0;
    double best_ssr = std::numeric_limits<double>::infinity();
    double best_ssr_any = std::numeric_limits<double>::infinity();

    for (double seed : seeds) {
        double A, B;
        double c = seed;
        solve_linear(c, A, B);
        double ssr = ssr_of(A, c, B);
        double lambda = 1e-3;
        bool converged = false;

        for (int iter = 0; iter < max_iterations; ++iter) {
            // Residuals, gradient, and normal matrix at the current point.
            double gA = 0.0, gc = 0.0, gB = 0.0;
            std::array<std::array<double, 3>, 3> jtj{};
            for (std::size_t i = 0; i < n; ++i) {
                const double phi = std::pow(u[i], c);
                const double lu = std::log(u[i]);
                const double r = A * phi + B - y[i];
                const double jc = A * phi * lu;
                gA += phi * r;
                gc += jc * r;
                gB += r;
                jtj[0][0] += phi * phi;
                jtj[0][1] += phi * jc;
                jtj[0][2] += phi;
                jtj[1][1] += jc * jc;
                jtj[1][2] += jc;
            }
            jtj[1][0] = jtj[0][1];
            jtj[2][0] = jtj[0][2];
            jtj[2][1] = jtj[1][2];
            jtj[2][2] = double(n);

            const double grad_inf =
                std::max({std::abs(gA), std::abs(gc), std::abs(gB)});
            if (grad_inf < grad_tol) {
                converged = true;
                break;
            }

            // Levenberg damping: inflate the diagonal until a step improves.
            bool stepped = false;
            for (int attempt = 0; attempt < 25; ++attempt) {
                std::array<std::array<double, 3>, 3> m = jtj;
                for (int d = 0; d < 3; ++d)
                    m[d][d] += lambda * std::max(jtj[d][d], 1e-12);
                std::array<double, 3> delta{};
                if (solve3(m, {-gA, -gc, -gB}, delta)) {
                    const double A2 = A + delta[0];
                    const double c2 = clamp_c(c + delta[1]);
                    const double B2 = B + delta[2];
                    const double ssr2 = ssr_of(A2, c2, B2);
                    if (std::isfinite(ssr2) && ssr2 <= ssr) {
                        A = A2;
                        c = c2;
                        B = B2;
                        ssr = ssr2;
                        lambda = std::max(lambda / 3.0, 1e-12);
                        stepped = true;
                        break;
                    }
                }
                lambda *= 10.0;
            }
            if (!stepped) break;  // stalled; convergence decided by gradient
        }

        best_ssr_any = std::min(best_ssr_any, ssr);
        if (converged && ssr < best_ssr) {
            have_converged = true;
            best_ssr = ssr;
            best_A = A;
            best_c = c;
            best_B = B;
        }
    }

    if (!have_converged)
        throw fit_error(std::sqrt(best_ssr_any / double(n)),
                        "fit_polylog: no seed converged");
    if (!(best_A > 0.0) || !(best_c > 0.0))
        throw fit_error(std::sqrt(best_ssr / double(n)),
                        "fit_polylog: converged parameters violate A > 0, "
                        "c > 0 (A=" + std::to_string(best_A) +
                            ", c=" + std::to_string(best_c) + ")");

    ScalingFit fit;
    fit.model = ScalingFit::Model::PolyLog;
    fit.A = best_A;
    fit.c = best_c;
    fit.B = best_B;
    fit.residual = std::sqrt(best_ssr / double(n));
    fit.n_points = static_cast<int>(n);
    return fit;
}

} // namespace lrk
