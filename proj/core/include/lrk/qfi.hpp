#pragma once

#include <optional>

#include "lrk/chain.hpp"

namespace lrk {

// What is being estimated and for how long the probe evolves.
struct ProbeSpec {
    Channel theta = Channel::Delta;
    double T = 1.0;  // probe time, >= 0
};

struct QfiResult {
    double value = 0.0;      // QFI, units 1/theta^2
    bool controlled = false; // true when the optimal-control bound is used
    ChainParams params;
    ProbeSpec probe;
    // Collective pairing amplitude sum_k |f(k)|; populated for the Delta
    // channel only.
    std::optional<double> gamma;
};

// QFI of the freely evolving probe: [sum_k script_e(k)]^2 with the per-mode
// generator norms of mode_quantities. Propagates singular_mode_error with
// the offending momentum.
QfiResult qfi_uncontrolled(const ChainParams& p, const ProbeSpec& probe);

// QFI under optimal control: the spread of d_theta H squared times T^2.
//   J:     (sum_k |cos k|)^2 T^2   (exact finite-N sum)
//   Mu:    N^2 T^2
//   Delta: (gamma/2)^2 T^2
QfiResult qfi_optimal(const ChainParams& p, const ProbeSpec& probe);

// gamma(N) = sum over all N grid momenta of |f(k)|. Strictly positive.
double gamma(int N, const DecayKernel& kernel);

} // namespace lrk
