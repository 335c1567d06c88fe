#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <vector>

#include "lrk/chain.hpp"
#include "lrk/errors.hpp"
#include "lrk/kernel.hpp"

namespace {

// Reference cot(k/2) at the grid momentum k = (2n+1) pi / N, evaluated in
// long double with the argument folded to the first quadrant as an exact
// rational multiple of pi. Trustworthy to ~1e-18 relative.
double cot_ref(int n, int N) {
    const long double pi = 3.14159265358979323846264338327950288L;
    // k/2 = (2n+1) pi / (2N); x in units of pi, 0 < x < 1
    long double x = static_cast<long double>(2 * n + 1) / (2.0L * N);
    long double sign = 1.0L;
    if (x > 0.5L) {  // cot(pi - t) = -cot(t)
        x = 1.0L - x;
        sign = -1.0L;
    }
    const long double t = pi * x;
    return static_cast<double>(sign * std::cos(t) / std::sin(t));
}

}  // namespace

TEST_CASE("grid momenta are antiperiodic") {
    const auto grid = lrk::make_grid(6);
    REQUIRE(grid.momenta.size() == 6);
    for (int n = 0; n < 6; ++n)
        CHECK(grid.momenta[n] ==
              doctest::Approx((2.0 * n + 1.0) * M_PI / 6.0).epsilon(1e-15));
    CHECK_THROWS_AS((void)lrk::make_grid(3), lrk::domain_error);
    CHECK_THROWS_AS((void)lrk::make_grid(0), lrk::domain_error);
}

TEST_CASE("grid_index inverts the grid and rejects off-grid momenta") {
    const int N = 64;
    const auto grid = lrk::make_grid(N);
    for (int n = 0; n < N; ++n) CHECK(lrk::grid_index(grid.momenta[n], N) == n);
    CHECK_THROWS_AS((void)lrk::grid_index(1.0, N), lrk::domain_error);
}

TEST_CASE("flat-kernel structure factor is cot(k/2) on the grid") {
    const auto kernel = lrk::DecayKernel::power_law(0.0);
    for (int N : {4, 8, 64, 1024}) {
        const auto f = lrk::structure_factor_grid(N, kernel);
        double worst = 0.0;
        for (int n = 0; n < N; ++n)
            worst = std::max(worst, std::abs(f[n] - cot_ref(n, N)));
        CAPTURE(N);
        CHECK(worst <= 1e-12);
    }
}

TEST_CASE("structure factor is odd under k -> 2 pi - k") {
    const int N = 32;
    const auto f = lrk::structure_factor_grid(
        N, lrk::DecayKernel::power_law(0.9));
    for (int n = 0; n < N; ++n)
        CHECK(f[N - 1 - n] == doctest::Approx(-f[n]).epsilon(1e-13));
}

TEST_CASE("FFT grid path matches the direct sum") {
    for (double alpha : {0.0, 0.5, 2.0}) {
        const auto kernel = lrk::DecayKernel::power_law(alpha);
        const int N = 4096;  // above the FFT switchover
        const auto grid = lrk::make_grid(N);
        const auto f = lrk::structure_factor_grid(N, kernel);
        double worst = 0.0;
        for (int n = 0; n < N; n += 37)  // subsample; direct sums are O(N)
            worst = std::max(
                worst,
                std::abs(f[n] - lrk::structure_factor(grid.momenta[n], N,
                                                      kernel)));
        CAPTURE(alpha);
        CHECK(worst <= 1e-10);
    }
}

TEST_CASE("small-momentum growth follows the long-range exponent") {
    // For kappa_l = l^(-alpha), alpha < 1, f at the smallest grid momentum
    // grows like N^(1-alpha).
    const double alpha = 0.5;
    const auto kernel = lrk::DecayKernel::power_law(alpha);
    std::vector<double> lx, ly;
    for (int p = 10; p <= 14; ++p) {
        const int N = 1 << p;
        const double k0 = M_PI / N;
        lx.push_back(std::log(static_cast<double>(N)));
        ly.push_back(std::log(lrk::structure_factor(k0, N, kernel)));
    }
    const double slope = (ly.back() - ly.front()) / (lx.back() - lx.front());
    CHECK(slope == doctest::Approx(1.0 - alpha).epsilon(0.05));
}

TEST_CASE("continuum structure factor truncates the infinite sum") {
    const auto kernel = lrk::DecayKernel::power_law(1.3);
    const int N = 16;
    for (double k : {0.3, 1.1, 2.9, 4.0}) {
        double expected = 0.0;
        for (int l = 1; l <= N / 2 - 1; ++l)
            expected += 2.0 * lrk::kernel_value(kernel, l) * std::sin(k * l);
        CHECK(lrk::continuum_structure_factor(k, N, kernel) ==
              doctest::Approx(expected).epsilon(1e-14));
    }
}

TEST_CASE("dispersion and derivatives agree with finite differences") {
    lrk::ChainParams p;
    p.J = 1.1;
    p.mu = 0.7;
    p.delta = 0.9;
    p.N = 64;
    p.kernel = lrk::DecayKernel::power_law(0.7);
    const auto grid = lrk::make_grid(p.N);
    const double T = 1.0;
    const double h = 1e-6;

    for (lrk::Channel ch :
         {lrk::Channel::J, lrk::Channel::Mu, lrk::Channel::Delta}) {
        for (int n = 0; n < p.N; n += 3) {
            const double k = grid.momenta[n];
            const auto m = lrk::mode_quantities(k, p, ch, T);

            lrk::ChainParams plus = p, minus = p;
            double* fplus = nullptr;
            double* fminus = nullptr;
            switch (ch) {
                case lrk::Channel::J:
                    fplus = &plus.J;
                    fminus = &minus.J;
                    break;
                case lrk::Channel::Mu:
                    fplus = &plus.mu;
                    fminus = &minus.mu;
                    break;
                case lrk::Channel::Delta:
                    fplus = &plus.delta;
                    fminus = &minus.delta;
                    break;
            }
            *fplus += h;
            *fminus -= h;

            // d(eps)/d(theta) by central difference.
            const double fd_deps =
                (lrk::dispersion(k, plus) - lrk::dispersion(k, minus)) /
                (2.0 * h);
            if (std::abs(m.deps) > 1e-3)
                CHECK(fd_deps == doctest::Approx(m.deps).epsilon(1e-6));

            // xi = -d(phi)/d(theta) with phi the Bogoliubov angle.
            const auto angle = [&](const lrk::ChainParams& q) {
                return std::atan2(0.5 * q.delta * m.f,
                                  q.J * std::cos(k) + q.mu);
            };
            const double fd_xi = -(angle(plus) - angle(minus)) / (2.0 * h);
            if (std::abs(m.xi) > 1e-3)
                CHECK(fd_xi == doctest::Approx(m.xi).epsilon(1e-6));

            // script_e is assembled from the same fields.
            CHECK(m.script_e ==
                  doctest::Approx(std::hypot(T * m.deps,
                                             m.xi * std::sin(m.eps * T)))
                      .epsilon(1e-14));
        }
    }
}

TEST_CASE("vanishing dispersion: removable for J and mu, singular for delta") {
    // delta = 0 and mu = -J cos k makes eps = 0 at k = pi/4 while f != 0.
    lrk::ChainParams p;
    p.J = 1.0;
    p.mu = -std::cos(M_PI / 4.0);
    p.delta = 0.0;
    p.N = 4;
    p.kernel = lrk::DecayKernel::power_law(0.0);
    const double k = M_PI / 4.0;

    const auto mj = lrk::mode_quantities(k, p, lrk::Channel::J, 1.0);
    CHECK(mj.deps == doctest::Approx(std::cos(k)));
    CHECK(mj.xi == 0.0);
    const auto mm = lrk::mode_quantities(k, p, lrk::Channel::Mu, 1.0);
    CHECK(mm.deps == 1.0);
    CHECK(mm.xi == 0.0);

    CHECK_THROWS_AS(
        (void)lrk::mode_quantities(k, p, lrk::Channel::Delta, 1.0),
        lrk::singular_mode_error);
    try {
        (void)lrk::mode_quantities(k, p, lrk::Channel::Delta, 1.0);
    } catch (const lrk::singular_mode_error& e) {
        CHECK(e.k == doctest::Approx(k));
    }
}
