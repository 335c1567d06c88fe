#pragma once

#include <functional>
#include <span>
#include <vector>

#include "lrk/kernel.hpp"

namespace lrk {

// ---------------------------------------------------------------------------
// Euler-Maclaurin summation
// ---------------------------------------------------------------------------

// Summand with derivatives: g(x, order) returns d^order g / dx^order at x
// (order 0 is the value itself). Orders up to 2M+1 are requested.
using SmoothFn = std::function<double(double x, int order)>;

struct EmConfig {
    int order = 1;               // M >= 0: number of Bernoulli correction terms
    double quad_abs_tol = 1e-12; // tolerance for the integral of g
};

struct EmResult {
    double approximation = 0.0;      // integral + endpoint + correction terms
    double remainder_estimate = 0.0; // bound on |sum_{n=a}^{b} g(n) - approximation|
};

// Approximates sum_{n=a}^{b} g(n) by
//   integral_a^b g + (g(a) + g(b))/2
//     + sum_{m=1}^{M} b_{2m}/(2m)! [g^(2m-1)(b) - g^(2m-1)(a)],
// with remainder_estimate = sup|P_{2M+1}| * integral_a^b |g^(2M+1)| / (2M+1)!
// where P_n is the periodized Bernoulli polynomial. Exact (up to quadrature
// rounding) for polynomials of degree <= 2M+1.
//
// Requires a <= b and cfg.order in [0, 10] (the Bernoulli table reaches
// b_20); a non-finite value from g raises domain_error.
EmResult euler_maclaurin_sum(const SmoothFn& g, int a, int b,
                             const EmConfig& cfg);

// Bernoulli number b_{2m} for m = 1..10 (b_2 = 1/6, b_4 = -1/30, ...).
double bernoulli_even(int m);

// ---------------------------------------------------------------------------
// Remainder-scaling probe
// ---------------------------------------------------------------------------

struct RemainderProbeEntry {
    int N = 0;
    double gamma = 0.0;         // direct grid sum of |f|
    double main_integral = 0.0; // (N/2pi) integral_{pi/N}^{2pi-pi/N} |f_cont|
    double remainder = 0.0;     // gamma - main_integral
};

struct RemainderProbeReport {
    std::vector<RemainderProbeEntry> entries;
    double remainder_exponent = 0.0; // power-law fit of |remainder| vs N
    double main_exponent = 0.0;      // power-law fit of main_integral vs N
    bool pass = false; // remainder_exponent <= 1 and < main_exponent
};

// Splits gamma(N) into the continuum main integral plus a remainder and fits
// both against N. The continuum integrand is the structure-factor partial sum
// truncated at N/2 - 1 terms; the integral is taken over [pi/N, 2pi - pi/N]
// with panels graded toward the endpoint singularity.
//
// Requires at least 3 strictly increasing even N. Quadrature failure raises
// numeric_error with the offending N in the message.
RemainderProbeReport remainder_scaling_probe(const DecayKernel& kernel,
                                             std::span<const int> N_list);

// ---------------------------------------------------------------------------
// Singular integral identity
// ---------------------------------------------------------------------------

// integral_0^inf sin(s) / s^alpha ds = Gamma(1 - alpha) cos(pi alpha / 2)
// for alpha in (1e-3, 1]. The closed form is cross-checked against direct
// oscillatory quadrature (half-period partial integrals accelerated by
// repeated averaging); disagreement beyond 1e-6 raises numeric_error, and
// alpha outside the domain raises domain_error.
double sine_power_integral(double alpha);

// ---------------------------------------------------------------------------
// Scaling predictor and finite-size window
// ---------------------------------------------------------------------------

// Scaling surrogate N^2 [ integral_1^N kappa(x)/x dx ]^2 for the optimal
// pairing-channel QFI. Closed forms: power-law alpha = 0 -> N^2 (ln N)^2,
// power-law alpha > 0 -> N^2 [(1 - N^-alpha)/alpha]^2, log-law alpha = 1 ->
// N^2 [ln(1 + ln N)]^2, log-law otherwise ->
// N^2 [((1 + ln N)^{1-alpha} - 1)/(1 - alpha)]^2. Custom tables integrate a
// piecewise-linear interpolant numerically. Requires N >= 2.
double predict_delta_scaling(const DecayKernel& kernel, int N);

enum class PerturbationFamily { PowerPerturbed, LogPerturbed };

struct FiniteSizeWindow {
    double epsilon = 0.0;
    int N = 0;
    double s_factor = 0.0;          // attenuation S(a), in (0, 1]
    bool super_hs_effective = false; // s_factor >= 0.95
};

// Attenuation S(a) = (1 - e^{-a})/a (S(0) = 1), a >= 0.
double attenuation_factor(double a);

// Finite-size attenuation of the logarithmic enhancement for a kernel whose
// decay exponent sits epsilon away from the marginal point: a = epsilon ln N
// for PowerPerturbed, a = epsilon ln ln N for LogPerturbed. Requires
// epsilon > 0 and N >= 2 (N >= 3 for LogPerturbed, so that ln ln N >= 0).
FiniteSizeWindow finite_size_window(double epsilon, int N,
                                    PerturbationFamily family);

} // namespace lrk
