#pragma once

#include <string_view>
#include <vector>

namespace lrk {

enum class KernelKind { PowerLaw, LogLaw, CustomTable };

// Decay law kappa_l weighting the pairing term between sites l apart.
// kappa_1 = 1 always (custom tables are rescaled on construction).
struct DecayKernel {
    KernelKind kind = KernelKind::PowerLaw;
    double alpha = 0.0;         // decay exponent, >= 0
    int regularity_order = 1;   // Q: smoothness order declared for validation
    std::vector<double> table;  // CustomTable only; table[l-1] = kappa_l

    // kappa_l = l^(-alpha)
    static DecayKernel power_law(double alpha, int regularity_order = 1);
    // kappa_l = (1 + ln l)^(-alpha)
    static DecayKernel log_law(double alpha, int regularity_order = 1);
    // Explicit table of kappa_1..kappa_len. Entries are rescaled so the first
    // equals 1; the rescale is reported on std::clog when it changes values.
    static DecayKernel custom_table(std::vector<double> values,
                                    int regularity_order);

    // Short label for records and CSV: "power" / "log" / "table".
    std::string_view label() const;
};

// kappa_l for l >= 1. Throws domain_error for l < 1 or a table overrun.
double kernel_value(const DecayKernel& kernel, long l);

// kappa~_l = kappa_{min(l, N-l)}: the N-periodic symmetrization entering the
// structure factor and the wrapped pairing Hamiltonian. Requires 1 <= l <= N-1.
double wrapped_kernel_value(const DecayKernel& kernel, long l, int N);

// Numerical regularity check of a kernel on [1, N].
struct KernelConditionReport {
    // (i) boundedness of forward finite differences of kappa up to order 2Q:
    // the maximum of |diff^q kappa| over the second half of [1, N] must not
    // exceed the first-half maximum (no growth towards large l).
    bool derivatives_bounded = true;
    int failing_order = -1;  // first unbounded difference order, -1 if none
    long witness_l = -1;     // argmax of the failing difference, -1 if none
    // (ii) Cauchy-convergence proxy for sum |diff^(2Q+1) kappa|: the second
    // half of the partial sum must contribute at most 1% of the total.
    bool tail_summable = true;
    double tail_fraction = 0.0;
    int orders_checked = 0;  // = 2Q

    bool pass() const { return derivatives_bounded && tail_summable; }
};

// Checks the two regularity conditions for the declared order Q on [1, N].
// Never throws for kernel-shape reasons; the report carries the verdicts.
KernelConditionReport validate_kernel(const DecayKernel& kernel, int N);

} // namespace lrk
