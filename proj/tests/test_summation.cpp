#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <cstdint>
#include <vector>

#include "lrk/summation.hpp"

TEST_CASE("neumaier recovers a term swallowed by a large partial sum") {
    lrk::NeumaierSum acc;
    acc.add(1e16);
    acc.add(1.0);
    acc.add(-1e16);
    CHECK(acc.value() == 1.0);  // naive summation returns 0 here
}

TEST_CASE("neumaier error stays near eps regardless of term count") {
    lrk::NeumaierSum acc;
    for (int i = 0; i < 1000000; ++i) acc.add(0.1);
    // 0.1 is not representable; the exact sum of 1e6 copies of the double
    // nearest 0.1 is 1e5 + 1e6 * (0.1 - fl(0.1)) with fl(0.1) - 0.1 =
    // 5.55e-18, so the true value is within 6e-12 of 1e5.
    CHECK(std::abs(acc.value() - 1e5) < 1e-9);
}

TEST_CASE("interleaved cancellation sums to exactly zero") {
    lrk::NeumaierSum acc;
    for (int i = 1; i <= 1000; ++i) {
        const double x = std::sqrt(static_cast<double>(i));
        acc.add(x);
        acc.add(-x);
    }
    CHECK(acc.value() == 0.0);
}

TEST_CASE("compensated_sum matches the accumulator") {
    std::vector<double> xs;
    for (int i = 1; i <= 257; ++i) xs.push_back(1.0 / i);
    lrk::NeumaierSum acc;
    for (double x : xs) acc.add(x);
    CHECK(lrk::compensated_sum(xs) == acc.value());
}

TEST_CASE("pairwise_sum equals the plain loop for short inputs") {
    std::vector<double> xs = {1.5, -2.25, 3.0, 0.125};
    double plain = 0.0;
    for (double x : xs) plain += x;
    CHECK(lrk::pairwise_sum(xs) == plain);
}

TEST_CASE("pairwise_sum agrees with the compensated sum on long inputs") {
    // Deterministic pseudo-random terms via a fixed LCG.
    std::vector<double> xs(1 << 20);
    std::uint64_t state = 0x9e3779b97f4a7c15ull;
    for (double& x : xs) {
        state = state * 6364136223846793005ull + 1442695040888963407ull;
        x = static_cast<double>(state >> 11) * 0x1.0p-53 - 0.5;
    }
    const double reference = lrk::compensated_sum(xs);
    CHECK(std::abs(lrk::pairwise_sum(xs) - reference) <
          1e-9 * (1.0 + std::abs(reference)));
}
