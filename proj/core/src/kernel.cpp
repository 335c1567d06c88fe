#include "lrk/kernel.hpp"

#include <algorithm>
#include <cmath>
#include <iostream>
#include <string>

#include "lrk/errors.hpp"

namespace lrk {

DecayKernel DecayKernel::power_law(double alpha, int regularity_order) {
    if (!(alpha >= 0.0))
        throw domain_error("DecayKernel: alpha must be >= 0");
    if (regularity_order < 0)
        throw domain_error("DecayKernel: regularity_order must be >= 0");
    DecayKernel k;
    k.kind = KernelKind::PowerLaw;
    k.alpha = alpha;
    k.regularity_order = regularity_order;
    return k;
}

DecayKernel DecayKernel::log_law(double alpha, int regularity_order) {
    if (!(alpha >= 0.0))
        throw domain_error("DecayKernel: alpha must be >= 0");
    if (regularity_order < 0)
        throw domain_error("DecayKernel: regularity_order must be >= 0");
    DecayKernel k;
    k.kind = KernelKind::LogLaw;
    k.alpha = alpha;
    k.regularity_order = regularity_order;
    return k;
}

DecayKernel DecayKernel::custom_table(std::vector<double> values,
                                      int regularity_order) {
    if (values.empty())
        throw domain_error("DecayKernel: custom table must be non-empty");
    if (regularity_order < 0)
        throw domain_error("DecayKernel: regularity_order must be >= 0");
    for (double v : values)
        if (!(v > 0.0))
            throw domain_error(
                "DecayKernel: custom table entries must be positive");
    if (values.front() != 1.0) {
        const double scale = values.front();
        for (double& v : values) v /= scale;
        std::clog << "lrk: custom kernel table rescaled by 1/" << scale
                  << " so that the first entry equals 1\n";
    }
    DecayKernel k;
    k.kind = KernelKind::CustomTable;
    k.alpha = 0.0;
    k.regularity_order = regularity_order;
    k.table = std::move(values);
    return k;
}

std::string_view DecayKernel::label() const {
    switch (kind) {
        case KernelKind::PowerLaw: return "power";
        case KernelKind::LogLaw: return "log";
        case KernelKind::CustomTable: return "table";
    }
    return "?";
}

double kernel_value(const DecayKernel& kernel, long l) {
    if (l < 1)
        throw domain_error("kernel_value: l must be >= 1 (got " +
                           std::to_string(l) + ")");
    switch (kernel.kind) {
        case KernelKind::PowerLaw:
            return std::pow(double(l), -kernel.alpha);
        case KernelKind::LogLaw:
            return std::pow(1.0 + std::log(double(l)), -kernel.alpha);
        case KernelKind::CustomTable:
            if (static_cast<std::size_t>(l) > kernel.table.size())
                throw domain_error(
                    "kernel_value: table overrun (l=" + std::to_string(l) +
                    ", table length " + std::to_string(kernel.table.size()) +
                    ")");
            return kernel.table[static_cast<std::size_t>(l - 1)];
    }
    throw domain_error("kernel_value: unknown kernel kind");
}

double wrapped_kernel_value(const DecayKernel& kernel, long l, int N) {
    if (l < 1 || l > N - 1)
        throw domain_error("wrapped_kernel_value: l must be in [1, N-1]");
    return kernel_value(kernel, std::min(l, long(N) - l));
}

KernelConditionReport validate_kernel(const DecayKernel& kernel, int N) {
    if (N < 2)
        throw domain_error("validate_kernel: N must be >= 2");

    // Values kappa_1..kappa_L; custom tables are scanned as far as they reach.
    long L = N;
    if (kernel.kind == KernelKind::CustomTable)
        L = std::min<long>(L, kernel.table.size());

    std::vector<double> values(static_cast<std::size_t>(L));
    for (long l = 1; l <= L; ++l)
        values[static_cast<std::size_t>(l - 1)] = kernel_value(kernel, l);

    KernelConditionReport report;
    const int q_max = 2 * kernel.regularity_order;
    report.orders_checked = q_max;

    // (i) boundedness of forward differences up to order 2Q: compare the
    // largest |diff^q| over the second half of the range against the first
    // half; decaying or flat kernels never grow towards large l.
    std::vector<double> diff = values;
    for (int q = 0; q <= q_max; ++q) {
        const std::size_t len = diff.size();
        if (len < 2) break;
        const std::size_t half = len / 2;
        double max_first = 0.0, max_second = 0.0;
        std::size_t argmax_second = half;
        for (std::size_t i = 0; i < len; ++i) {
            const double a = std::abs(diff[i]);
            if (i < half) {
                max_first = std::max(max_first, a);
            } else if (a > max_second) {
                max_second = a;
                argmax_second = i;
            }
        }
        if (max_second > 1.01 * max_first + 1e-12) {
            report.derivatives_bounded = false;
            report.failing_order = q;
            // diff[i] approximates the difference at l = i + 1
            report.witness_l = static_cast<long>(argmax_second) + 1;
            break;
        }
        // next difference order
        for (std::size_t i = 0; i + 1 < len; ++i)
            diff[i] = diff[i + 1] - diff[i];
        diff.pop_back();
    }

    // (ii) Cauchy proxy for sum |diff^(2Q+1) kappa|: the second half of the
    // partial sum must contribute at most 1% of the total.
    std::vector<double> d = values;
    for (int q = 0; q < q_max + 1; ++q) {
        if (d.size() < 2) break;
        for (std::size_t i = 0; i + 1 < d.size(); ++i) d[i] = d[i + 1] - d[i];
        d.pop_back();
    }
    double total = 0.0, first_half = 0.0;
    for (std::size_t i = 0; i < d.size(); ++i) {
        total += std::abs(d[i]);
        if (i < d.size() / 2) first_half += std::abs(d[i]);
    }
    if (total > 1e-300) {
        report.tail_fraction = (total - first_half) / total;
        report.tail_summable = report.tail_fraction <= 0.01;
    }
    return report;
}

} // namespace lrk
