#include "lrk/asymptotics.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>
#include <utility>
#include <vector>

#include "lrk/chain.hpp"
#include "lrk/errors.hpp"
#include "lrk/fit.hpp"
#include "lrk/qfi.hpp"
#include "lrk/quadrature.hpp"
#include "lrk/summation.hpp"

namespace lrk {

namespace {

// b_2 .. b_20. Enough for correction order M <= 10, i.e. exactness on
// polynomials up to degree 21.
constexpr double kBernoulliEven[10] = {
    1.0 / 6.0,       -1.0 / 30.0,     1.0 / 42.0,      -1.0 / 30.0,
    5.0 / 66.0,      -691.0 / 2730.0, 7.0 / 6.0,       -3617.0 / 510.0,
    43867.0 / 798.0, -174611.0 / 330.0};

double factorial(int n) {
    double r = 1.0;
    for (int i = 2; i <= n; ++i) r *= double(i);
    return r;
}

// Full Bernoulli sequence b_j (b_1 = -1/2 convention, odd b_j = 0 for j >= 3).
double bernoulli_number(int j) {
    if (j == 0) return 1.0;
    if (j == 1) return -0.5;
    if (j % 2 == 1) return 0.0;
    return kBernoulliEven[j / 2 - 1];
}

// Bernoulli polynomial B_n(x) = sum_j C(n, j) b_j x^{n-j}.
double bernoulli_poly(int n, double x) {
    std::vector<double> binom(static_cast<std::size_t>(n) + 1, 0.0);
    binom[0] = 1.0;
    for (int row = 1; row <= n; ++row)
        for (int j = row; j > 0; --j) binom[j] += binom[j - 1];
    NeumaierSum s;
    double xpow = 1.0; // x^{n-j} built from j = n downward
    for (int j = n; j >= 0; --j) {
        s.add(binom[static_cast<std::size_t>(j)] * bernoulli_number(j) * xpow);
        xpow *= x;
    }
    return s.value();
}

// sup_{x in [0,1]} |B_n(x)|, by dense sampling (B_n is a degree-n polynomial;
// 4000 samples resolve its few extrema to far better than the use here needs).
double bernoulli_poly_sup(int n) {
    double sup = 0.0;
    constexpr int samples = 4000;
    for (int i = 0; i <= samples; ++i)
        sup = std::max(sup, std::abs(bernoulli_poly(n, double(i) / samples)));
    return sup;
}

} // namespace

double bernoulli_even(int m) {
    if (m < 1 || m > 10)
        throw domain_error("bernoulli_even: m must be in [1, 10] (got " +
                           std::to_string(m) + ")");
    return kBernoulliEven[m - 1];
}

EmResult euler_maclaurin_sum(const SmoothFn& g, int a, int b,
                             const EmConfig& cfg) {
    if (a > b)
        throw domain_error("euler_maclaurin_sum: requires a <= b");
    if (cfg.order < 0 || cfg.order > 10)
        throw domain_error(
            "euler_maclaurin_sum: correction order must be in [0, 10]");
    const int M = cfg.order;

    auto eval = [&g](double x, int order) {
        const double v = g(x, order);
        if (!std::isfinite(v))
            throw domain_error(
                "euler_maclaurin_sum: summand derivative of order " +
                std::to_string(order) + " is non-finite at x = " +
                std::to_string(x));
        return v;
    };

    NeumaierSum approx;
    if (b > a) {
        auto g0 = [&eval](double x) { return eval(x, 0); };
        const int panels = std::min(b - a, 64);
        approx.add(integrate_panelled(g0, double(a), double(b), panels,
                                      cfg.quad_abs_tol)
                       .value);
    }
    approx.add(0.5 * (eval(double(a), 0) + eval(double(b), 0)));
    for (int m = 1; m <= M; ++m)
        approx.add(kBernoulliEven[m - 1] / factorial(2 * m) *
                   (eval(double(b), 2 * m - 1) - eval(double(a), 2 * m - 1)));

    double remainder = 0.0;
    if (b > a) {
        auto gtop = [&eval, M](double x) { return std::abs(eval(x, 2 * M + 1)); };
        const int panels = std::min(b - a, 64);
        const double abs_integral =
            integrate_panelled(gtop, double(a), double(b), panels,
                               std::max(cfg.quad_abs_tol, 1e-12))
                .value;
        remainder =
            bernoulli_poly_sup(2 * M + 1) * abs_integral / factorial(2 * M + 1);
    }
    return EmResult{approx.value(), remainder};
}

RemainderProbeReport remainder_scaling_probe(const DecayKernel& kernel,
                                             std::span<const int> N_list) {
    if (N_list.size() < 3)
        throw domain_error(
            "remainder_scaling_probe: at least 3 sizes required");
    for (std::size_t i = 0; i < N_list.size(); ++i) {
        if (N_list[i] < 4 || N_list[i] % 2 != 0)
            throw domain_error(
                "remainder_scaling_probe: sizes must be even and >= 4");
        if (i > 0 && N_list[i] <= N_list[i - 1])
            throw domain_error(
                "remainder_scaling_probe: sizes must be strictly increasing");
    }

    RemainderProbeReport report;
    report.entries.reserve(N_list.size());
    const double pi = std::numbers::pi;

    for (int N : N_list) {
        RemainderProbeEntry entry;
        entry.N = N;
        entry.gamma = gamma(N, kernel);

        auto integrand = [&](double k) {
            return std::abs(continuum_structure_factor(k, N, kernel));
        };
        const double lo = pi / N;
        const double hi = 2.0 * pi - pi / N;

        // Tolerance scaled to the integrand magnitude, probed coarsely.
        double scale = 0.0;
        for (int i = 0; i < 64; ++i)
            scale = std::max(scale,
                             integrand(lo + (hi - lo) * (i + 0.5) / 64.0));
        const double abs_tol = std::max(1e-8 * scale, 1e-10);

        // One initial panel per oscillation of the truncated structure
        // factor; adaptive refinement then grades into the endpoint peaks.
        QuadResult quad;
        try {
            quad = integrate_panelled(integrand, lo, hi, 2 * N, abs_tol);
        } catch (const numeric_error& e) {
            throw numeric_error(
                "remainder_scaling_probe: quadrature failed at N = " +
                std::to_string(N) + ": " + e.what());
        }
        entry.main_integral = double(N) / (2.0 * pi) * quad.value;
        entry.remainder = entry.gamma - entry.main_integral;
        report.entries.push_back(entry);
    }

    std::vector<std::pair<double, double>> rem_pts, main_pts;
    for (const auto& e : report.entries) {
        rem_pts.emplace_back(double(e.N),
                             std::max(std::abs(e.remainder), 1e-30));
        main_pts.emplace_back(double(e.N), e.main_integral);
    }
    report.remainder_exponent = fit_power(rem_pts).exponent;
    report.main_exponent = fit_power(main_pts).exponent;
    report.pass = report.remainder_exponent <= 1.0 &&
                  report.remainder_exponent < report.main_exponent;
    return report;
}

double sine_power_integral(double alpha) {
    if (!(alpha > 1e-3) || !(alpha <= 1.0))
        throw domain_error(
            "sine_power_integral: alpha must lie in (1e-3, 1]");
    const double pi = std::numbers::pi;

    // Gamma(1 - alpha) cos(pi alpha / 2) rewritten by the reflection formula
    // as pi / (2 sin(pi alpha / 2) Gamma(alpha)); this form has no pole at
    // alpha = 1 and evaluates to pi/2 there exactly.
    const double closed =
        pi / (2.0 * std::sin(pi * alpha / 2.0) * std::tgamma(alpha));

    // Direct oscillatory quadrature: partial integrals at half-period
    // endpoints S_m = integral_0^{m pi}, accelerated by repeated averaging
    // of the alternating tail.
    constexpr int half_periods = 40;
    auto integrand = [alpha](double s) {
        if (s <= 0.0) return alpha == 1.0 ? 1.0 : 0.0;
        return std::sin(s) * std::pow(s, -alpha);
    };
    std::vector<double> partial(half_periods);
    NeumaierSum running;
    for (int m = 0; m < half_periods; ++m) {
        running.add(
            integrate_adaptive(integrand, m * pi, (m + 1) * pi, 1e-12).value);
        partial[m] = running.value();
    }
    for (int level = 1; level < half_periods; ++level)
        for (int i = 0; i + level < half_periods; ++i)
            partial[i] = 0.5 * (partial[i] + partial[i + 1]);
    const double quadrature = partial[0];

    if (std::abs(quadrature - closed) > 1e-6)
        throw numeric_error(
            "sine_power_integral: quadrature " + std::to_string(quadrature) +
            " disagrees with closed form " + std::to_string(closed) +
            " at alpha = " + std::to_string(alpha));
    return closed;
}

double predict_delta_scaling(const DecayKernel& kernel, int N) {
    if (N < 2)
        throw domain_error("predict_delta_scaling: N must be >= 2");
    const double logN = std::log(double(N));
    double integral = 0.0;
    switch (kernel.kind) {
        case KernelKind::PowerLaw:
            integral = kernel.alpha == 0.0
                           ? logN
                           : (1.0 - std::pow(double(N), -kernel.alpha)) /
                                 kernel.alpha;
            break;
        case KernelKind::LogLaw:
            integral = kernel.alpha == 1.0
                           ? std::log(1.0 + logN)
                           : (std::pow(1.0 + logN, 1.0 - kernel.alpha) - 1.0) /
                                 (1.0 - kernel.alpha);
            break;
        case KernelKind::CustomTable: {
            // kappa(x): piecewise-linear through the table at integer x,
            // constant beyond the last entry.
            const auto& t = kernel.table;
            const int L = static_cast<int>(t.size());
            auto kappa = [&](double x) {
                if (x >= double(L)) return t.back();
                const int l = std::max(1, static_cast<int>(std::floor(x)));
                const double w = x - double(l);
                return (1.0 - w) * t[l - 1] + w * t[l];
            };
            auto f = [&](double x) { return kappa(x) / x; };
            NeumaierSum s;
            for (int l = 1; l < std::min(L, N); ++l)
                s.add(gauss_kronrod_15(f, double(l), double(l + 1.0)).value);
            if (N > L)
                s.add(integrate_adaptive(f, double(std::max(L, 1)), double(N),
                                         1e-12)
                          .value);
            integral = s.value();
            break;
        }
    }
    return double(N) * double(N) * integral * integral;
}

double attenuation_factor(double a) {
    if (a < 0.0)
        throw domain_error("attenuation_factor: argument must be >= 0");
    if (a < 1e-4) {
        // (1 - e^{-a})/a = 1 - a/2 + a^2/6 - a^3/24 + O(a^4)
        return 1.0 - a / 2.0 + a * a / 6.0 - a * a * a / 24.0;
    }
    return (1.0 - std::exp(-a)) / a;
}

FiniteSizeWindow finite_size_window(double epsilon, int N,
                                    PerturbationFamily family) {
    if (!(epsilon > 0.0))
        throw domain_error("finite_size_window: epsilon must be > 0");
    const int min_N = family == PerturbationFamily::LogPerturbed ? 3 : 2;
    if (N < min_N)
        throw domain_error(
            "finite_size_window: N must be >= " + std::to_string(min_N) +
            " for this perturbation family");
    const double a = family == PerturbationFamily::PowerPerturbed
                         ? epsilon * std::log(double(N))
                         : epsilon * std::log(std::log(double(N)));
    FiniteSizeWindow w;
    w.epsilon = epsilon;
    w.N = N;
    w.s_factor = attenuation_factor(a);
    w.super_hs_effective = w.s_factor >= 0.95;
    return w;
}

} // namespace lrk
