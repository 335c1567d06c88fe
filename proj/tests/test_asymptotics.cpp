#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <vector>

#include "lrk/asymptotics.hpp"
#include "lrk/errors.hpp"
#include "lrk/kernel.hpp"

namespace {

// Polynomial summand with derivatives, for exactness checks.
lrk::SmoothFn cubic() {
    return [](double x, int order) {
        switch (order) {
            case 0: return x * x * x - 2.0 * x * x + x;
            case 1: return 3.0 * x * x - 4.0 * x + 1.0;
            case 2: return 6.0 * x - 4.0;
            case 3: return 6.0;
            default: return 0.0;
        }
    };
}

}  // namespace

TEST_CASE("euler_maclaurin on g(x) = x reproduces 55") {
    const lrk::SmoothFn g = [](double x, int order) {
        if (order == 0) return x;
        if (order == 1) return 1.0;
        return 0.0;
    };
    lrk::EmConfig cfg;
    cfg.order = 0;
    auto r = lrk::euler_maclaurin_sum(g, 1, 10, cfg);
    CHECK(r.approximation == doctest::Approx(55.0).epsilon(1e-13));
    // M=0 remainder bound: sup|B_1(x)| * int |g'| = (1/2) * 9.
    CHECK(r.remainder_estimate == doctest::Approx(4.5).epsilon(1e-10));

    cfg.order = 1;
    r = lrk::euler_maclaurin_sum(g, 1, 10, cfg);
    CHECK(r.approximation == doctest::Approx(55.0).epsilon(1e-13));
    CHECK(r.remainder_estimate <= 1e-12);
}

TEST_CASE("euler_maclaurin on g(x) = x^2 reproduces 385 exactly at M=1") {
    const lrk::SmoothFn g = [](double x, int order) {
        if (order == 0) return x * x;
        if (order == 1) return 2.0 * x;
        if (order == 2) return 2.0;
        return 0.0;
    };
    lrk::EmConfig cfg;
    cfg.order = 1;
    const auto r = lrk::euler_maclaurin_sum(g, 1, 10, cfg);
    CHECK(r.approximation == doctest::Approx(385.0).epsilon(1e-13));
    CHECK(r.remainder_estimate <= 1e-12);
}

TEST_CASE("euler_maclaurin counts a constant summand as n + 1") {
    const lrk::SmoothFn g = [](double, int order) {
        return order == 0 ? 1.0 : 0.0;
    };
    lrk::EmConfig cfg;
    cfg.order = 0;
    const auto r = lrk::euler_maclaurin_sum(g, 0, 7, cfg);
    CHECK(r.approximation == doctest::Approx(8.0).epsilon(1e-14));
    CHECK(r.remainder_estimate <= 1e-14);
}

TEST_CASE("euler_maclaurin is exact on cubics at M = 1") {
    lrk::EmConfig cfg;
    cfg.order = 1;
    const auto r = lrk::euler_maclaurin_sum(cubic(), 0, 6, cfg);
    double exact = 0.0;
    for (int n = 0; n <= 6; ++n)
        exact += cubic()(static_cast<double>(n), 0);
    // Remainder involves g''' (a constant); the bound is nonzero but the
    // correction through B_2 leaves only the B_4 term, which vanishes for
    // degree <= 3 at M = 2.
    cfg.order = 2;
    const auto r2 = lrk::euler_maclaurin_sum(cubic(), 0, 6, cfg);
    CHECK(r2.approximation == doctest::Approx(exact).epsilon(1e-10));
    CHECK(r2.remainder_estimate <= 1e-10);
    CHECK(r.approximation == doctest::Approx(exact).epsilon(1e-10));
}

TEST_CASE("euler_maclaurin bound covers the true error on a smooth function")
{
    const lrk::SmoothFn g = [](double x, int order) {
        // g = 1/(1+x); derivatives: (-1)^m m! (1+x)^-(m+1)
        double fac = 1.0;
        for (int i = 2; i <= order; ++i) fac *= i;
        const double sign = (order % 2 == 0) ? 1.0 : -1.0;
        return sign * fac * std::pow(1.0 + x, -(order + 1));
    };
    double exact = 0.0;
    for (int n = 0; n <= 50; ++n) exact += 1.0 / (1.0 + n);
    for (int order : {0, 1, 2, 3}) {
        lrk::EmConfig cfg;
        cfg.order = order;
        const auto r = lrk::euler_maclaurin_sum(g, 0, 50, cfg);
        CAPTURE(order);
        CHECK(std::abs(r.approximation - exact) <=
              r.remainder_estimate + 1e-12);
    }
}

TEST_CASE("euler_maclaurin input validation") {
    const lrk::SmoothFn g = [](double, int) { return 1.0; };
    lrk::EmConfig cfg;
    cfg.order = 11;
    CHECK_THROWS_AS((void)lrk::euler_maclaurin_sum(g, 0, 5, cfg),
                    lrk::domain_error);
    cfg.order = -1;
    CHECK_THROWS_AS((void)lrk::euler_maclaurin_sum(g, 0, 5, cfg),
                    lrk::domain_error);
    cfg.order = 1;
    CHECK_THROWS_AS((void)lrk::euler_maclaurin_sum(g, 5, 2, cfg),
                    lrk::domain_error);

    const lrk::SmoothFn bad = [](double x, int order) {
        return order == 0 ? 1.0 / x : 0.0;  // infinite at x = 0
    };
    CHECK_THROWS_AS((void)lrk::euler_maclaurin_sum(bad, 0, 5, cfg),
                    lrk::domain_error);
}

TEST_CASE("even Bernoulli numbers") {
    CHECK(lrk::bernoulli_even(1) == doctest::Approx(1.0 / 6.0));
    CHECK(lrk::bernoulli_even(2) == doctest::Approx(-1.0 / 30.0));
    CHECK(lrk::bernoulli_even(5) == doctest::Approx(5.0 / 66.0));
    CHECK_THROWS_AS((void)lrk::bernoulli_even(0), lrk::domain_error);
    CHECK_THROWS_AS((void)lrk::bernoulli_even(11), lrk::domain_error);
}

TEST_CASE("sine power integral closed values") {
    // alpha = 1: integral of sin(u)/u = pi/2.
    CHECK(lrk::sine_power_integral(1.0) ==
          doctest::Approx(M_PI / 2.0).epsilon(1e-12));
    // alpha = 1/2: pi / (2 sin(pi/4) Gamma(1/2)) = sqrt(pi/2).
    CHECK(lrk::sine_power_integral(0.5) ==
          doctest::Approx(std::sqrt(M_PI / 2.0)).epsilon(1e-10));
}

TEST_CASE("sine power integral grows from 1 toward pi/2") {
    double prev = 1.0;
    for (double alpha : {0.25, 0.5, 0.75, 1.0}) {
        const double v = lrk::sine_power_integral(alpha);
        CHECK(v > prev);
        CHECK(v <= M_PI / 2.0 + 1e-12);
        prev = v;
    }
}

TEST_CASE("sine power integral domain") {
    CHECK_THROWS_AS((void)lrk::sine_power_integral(1e-3), lrk::domain_error);
    CHECK_THROWS_AS((void)lrk::sine_power_integral(0.0), lrk::domain_error);
    CHECK_THROWS_AS((void)lrk::sine_power_integral(1.2), lrk::domain_error);
}

TEST_CASE("scaling surrogate closed forms") {
    // Power alpha = 0: N^2 (ln N)^2.
    {
        const int N = 1000;
        const double lnN = std::log(1000.0);
        CHECK(lrk::predict_delta_scaling(lrk::DecayKernel::power_law(0.0), N)
              == doctest::Approx(1e6 * lnN * lnN).epsilon(1e-12));
    }
    // Power alpha = 2: prediction -> N^2 / 4.
    {
        const int N = 1000000;
        const double v =
            lrk::predict_delta_scaling(lrk::DecayKernel::power_law(2.0), N);
        CHECK(4.0 * v / (double(N) * double(N)) ==
              doctest::Approx(1.0).epsilon(1e-9));
    }
    // Log alpha = 1: N^2 [ln(1 + ln N)]^2.
    {
        const int N = 10000;
        const double inner = std::log(1.0 + std::log(10000.0));
        CHECK(lrk::predict_delta_scaling(lrk::DecayKernel::log_law(1.0), N) ==
              doctest::Approx(1e8 * inner * inner).epsilon(1e-12));
    }
}

TEST_CASE("scaling surrogate is increasing in N") {
    const auto k = lrk::DecayKernel::power_law(0.5);
    double prev = 0.0;
    for (int N : {10, 100, 1000, 10000}) {
        const double v = lrk::predict_delta_scaling(k, N);
        CHECK(v > prev);
        prev = v;
    }
    CHECK_THROWS_AS(
        (void)lrk::predict_delta_scaling(k, 1), lrk::domain_error);
}

TEST_CASE("tabulated kernel surrogate matches its closed-form integral") {
    // The table route interpolates kappa linearly between integer l, so the
    // weight integral has segments of the form int (a + b x)/x dx
    // = a ln x + b x, summable in closed form.
    std::vector<double> table;
    for (int l = 1; l <= 99; ++l) table.push_back(1.0 / l);
    const auto custom = lrk::DecayKernel::custom_table(table, 1);
    const int N = 50;

    double weight = 0.0;
    for (int l = 1; l < N; ++l) {
        const double k0 = table[l - 1], k1 = table[l];
        const double b = k1 - k0;           // slope over [l, l+1]
        const double a = k0 - b * l;        // intercept
        weight += a * std::log((l + 1.0) / l) + b;
    }
    const double expected = double(N) * double(N) * weight * weight;
    CHECK(lrk::predict_delta_scaling(custom, N) ==
          doctest::Approx(expected).epsilon(1e-9));

    // Loose agreement with the analytic alpha = 1 law; the convexity of 1/l
    // biases the chord interpolant high by a few percent.
    const double analytic =
        lrk::predict_delta_scaling(lrk::DecayKernel::power_law(1.0), N);
    CHECK(lrk::predict_delta_scaling(custom, N) ==
          doctest::Approx(analytic).epsilon(0.15));
}

TEST_CASE("attenuation factor") {
    CHECK(lrk::attenuation_factor(0.0) == 1.0);
    CHECK(lrk::attenuation_factor(1.0) ==
          doctest::Approx(1.0 - std::exp(-1.0)).epsilon(1e-12));
    // Series/closed-form seam is continuous.
    CHECK(lrk::attenuation_factor(0.99e-4) ==
          doctest::Approx(lrk::attenuation_factor(1.01e-4)).epsilon(1e-7));
    double prev = 2.0;
    for (double a : {0.0, 0.5, 1.0, 2.0, 5.0}) {
        const double s = lrk::attenuation_factor(a);
        CHECK(s < prev);
        prev = s;
    }
    CHECK_THROWS_AS((void)lrk::attenuation_factor(-0.1), lrk::domain_error);
}

TEST_CASE("finite-size window examples") {
    const auto w = lrk::finite_size_window(
        0.01, 100, lrk::PerturbationFamily::PowerPerturbed);
    CHECK(w.s_factor == doctest::Approx(0.97726).epsilon(1e-3));
    CHECK(w.super_hs_effective);

    const auto strong = lrk::finite_size_window(
        0.5, 100, lrk::PerturbationFamily::PowerPerturbed);
    CHECK(strong.s_factor < 0.5);
    CHECK_FALSE(strong.super_hs_effective);

    const auto log_weak = lrk::finite_size_window(
        0.01, 10000, lrk::PerturbationFamily::LogPerturbed);
    CHECK(log_weak.super_hs_effective);

    CHECK_THROWS_AS((void)lrk::finite_size_window(
                        0.0, 100, lrk::PerturbationFamily::PowerPerturbed),
                    lrk::domain_error);
    CHECK_THROWS_AS((void)lrk::finite_size_window(
                        0.1, 2, lrk::PerturbationFamily::LogPerturbed),
                    lrk::domain_error);
    CHECK_THROWS_AS((void)lrk::finite_size_window(
                        0.1, 1, lrk::PerturbationFamily::PowerPerturbed),
                    lrk::domain_error);
}

TEST_CASE("remainder probe: flat kernel keeps the remainder subleading") {
    const std::vector<int> sizes = {256, 512, 1024, 2048};
    const auto rep = lrk::remainder_scaling_probe(
        lrk::DecayKernel::power_law(0.0), sizes);
    REQUIRE(rep.entries.size() == sizes.size());
    for (std::size_t i = 0; i < sizes.size(); ++i) {
        CHECK(rep.entries[i].N == sizes[i]);
        CHECK(rep.entries[i].gamma > 0.0);
        CHECK(rep.entries[i].main_integral > 0.0);
    }
    CHECK(rep.remainder_exponent <= 1.0);
    CHECK(rep.remainder_exponent < rep.main_exponent);
    CHECK(rep.pass);
}

TEST_CASE("remainder probe: short-range kernel main term is linear") {
    const auto rep = lrk::remainder_scaling_probe(
        lrk::DecayKernel::power_law(2.0), std::vector<int>{256, 512, 1024});
    CHECK(rep.main_exponent == doctest::Approx(1.0).epsilon(0.05));
    CHECK(rep.pass);
}

TEST_CASE("remainder probe input validation") {
    const auto k = lrk::DecayKernel::power_law(0.0);
    CHECK_THROWS_AS(
        (void)lrk::remainder_scaling_probe(k, std::vector<int>{64, 128}),
        lrk::domain_error);
    CHECK_THROWS_AS(
        (void)lrk::remainder_scaling_probe(k,
                                           std::vector<int>{128, 64, 256}),
        lrk::domain_error);
    CHECK_THROWS_AS(
        (void)lrk::remainder_scaling_probe(k,
                                           std::vector<int>{63, 128, 256}),
        lrk::domain_error);
}
