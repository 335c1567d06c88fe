#pragma once

#include <cmath>
#include <cstddef>
#include <span>

namespace lrk {

// Neumaier-compensated accumulator. The running compensation keeps the final
// error near eps*|sum| independent of the number of terms, which matters for
// the structure-factor sums that feed 1e-12-level identity checks.
class NeumaierSum {
  public:
    void add(double x) {
        const double t = sum_ + x;
        if (std::abs(sum_) >= std::abs(x))
            comp_ += (sum_ - t) + x;
        else
            comp_ += (x - t) + sum_;
        sum_ = t;
    }
    double value() const { return sum_ + comp_; }

  private:
    double sum_ = 0.0;
    double comp_ = 0.0;
};

// Compensated sum of a range (wrapper over NeumaierSum).
inline double compensated_sum(std::span<const double> xs) {
    NeumaierSum acc;
    for (double x : xs) acc.add(x);
    return acc.value();
}

// Pairwise (fixed binary tree) reduction. Deterministic for a given input
// order regardless of worker count, with error growing like log2(n).
inline double pairwise_sum(std::span<const double> xs) {
    const std::size_t n = xs.size();
    if (n <= 32) {
        double s = 0.0;
        for (double x : xs) s += x;
        return s;
    }
    const std::size_t half = n / 2;
    return pairwise_sum(xs.first(half)) + pairwise_sum(xs.subspan(half));
}

} // namespace lrk
