#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <string>
#include <utility>
#include <vector>

#include "lrk/errors.hpp"
#include "lrk/fit.hpp"

namespace {
using Points = std::vector<std::pair<double, double>>;
}

TEST_CASE("power fit recovers an exact power law") {
    Points pts;
    for (double x : {4.0, 8.0, 16.0, 32.0, 64.0})
        pts.emplace_back(x, 3.5 * std::pow(x, 2.25));
    const auto fit = lrk::fit_power(pts);
    CHECK(fit.model == lrk::ScalingFit::Model::PowerLaw);
    CHECK(fit.exponent == doctest::Approx(2.25).epsilon(1e-12));
    CHECK(fit.amplitude == doctest::Approx(3.5).epsilon(1e-12));
    CHECK(fit.residual <= 1e-13);
    CHECK(fit.n_points == 5);
}

TEST_CASE("power fit input validation") {
    CHECK_THROWS_AS((void)lrk::fit_power(Points{{1, 1}, {2, 4}}),
                    lrk::domain_error);
    CHECK_THROWS_AS(
        (void)lrk::fit_power(Points{{2, 4}, {2, 5}, {3, 9}}),
        lrk::domain_error);
    CHECK_THROWS_AS(
        (void)lrk::fit_power(Points{{1, 1}, {2, -4}, {3, 9}}),
        lrk::domain_error);
    CHECK_THROWS_AS(
        (void)lrk::fit_power(Points{{0, 1}, {2, 4}, {3, 9}}),
        lrk::domain_error);
}

TEST_CASE("polylog fit round-trips exact data") {
    Points pts;
    for (double x = 8.0; x <= 4200.0; x *= 2.0) {
        const double u = std::log(x);
        pts.emplace_back(x, u * u);  // A=1, c=2, B=0
    }
    const auto fit = lrk::fit_polylog(pts);
    CHECK(fit.model == lrk::ScalingFit::Model::PolyLog);
    CHECK(fit.A == doctest::Approx(1.0).epsilon(1e-6));
    CHECK(fit.c == doctest::Approx(2.0).epsilon(1e-6));
    CHECK(std::abs(fit.B) <= 1e-6);
    CHECK(fit.residual <= 1e-8);
}

TEST_CASE("polylog fit recovers amplitude, exponent, and offset") {
    Points pts;
    for (int i = 0; i < 12; ++i) {
        const double x = 8.0 * std::pow(10.0 / 3.0, i * 0.4);
        const double u = std::log(x);
        pts.emplace_back(x, 0.7 * std::pow(u, 1.3) + 0.4);
    }
    const auto fit = lrk::fit_polylog(pts);
    CHECK(fit.A == doctest::Approx(0.7).epsilon(1e-5));
    CHECK(fit.c == doctest::Approx(1.3).epsilon(1e-5));
    CHECK(fit.B == doctest::Approx(0.4).epsilon(1e-4));
}

TEST_CASE("polylog fit tolerates small deterministic perturbations") {
    Points pts;
    for (int i = 0; i < 14; ++i) {
        const double x = 10.0 * std::pow(2.0, i);
        const double u = std::log(x);
        const double wiggle = 1.0 + 0.003 * std::sin(7.0 * i + 1.0);
        pts.emplace_back(x, std::pow(u, 0.8) * wiggle);
    }
    const auto fit = lrk::fit_polylog(pts);
    CHECK(fit.c == doctest::Approx(0.8).epsilon(0.125));
    CHECK(fit.residual <= 0.05);
}

TEST_CASE("polylog fit input validation") {
    Points three = {{8, 1}, {16, 2}, {32, 3}};
    CHECK_THROWS_AS((void)lrk::fit_polylog(three), lrk::domain_error);
    Points low_x = {{2, 1}, {8, 2}, {16, 3}, {32, 4}};
    CHECK_THROWS_AS((void)lrk::fit_polylog(low_x), lrk::domain_error);
}

TEST_CASE("polylog fit rejects a negative-amplitude optimum") {
    Points pts;
    for (double x = 8.0; x <= 2100.0; x *= 2.0)
        pts.emplace_back(x, -2.0 * std::log(x));
    CHECK_THROWS_AS((void)lrk::fit_polylog(pts), lrk::fit_error);
    try {
        (void)lrk::fit_polylog(pts);
    } catch (const lrk::fit_error& e) {
        CHECK(e.best_residual >= 0.0);
        CHECK(std::string(e.what()).find("A > 0") != std::string::npos);
    }
}
