#include "lrk/qfi.hpp"

#include <cmath>

#include "lrk/errors.hpp"
#include "lrk/summation.hpp"

namespace lrk {

namespace {

void require_probe(const ProbeSpec& probe) {
    if (!(probe.T >= 0.0))
        throw domain_error("ProbeSpec: probe time T must be >= 0");
}

} // namespace

double gamma(int N, const DecayKernel& kernel) {
    const std::vector<double> f = structure_factor_grid(N, kernel);
    NeumaierSum acc;
    for (double v : f) acc.add(std::abs(v));
    return acc.value();
}

QfiResult qfi_uncontrolled(const ChainParams& p, const ProbeSpec& probe) {
    require_probe(probe);
    const MomentumGrid grid = make_grid(p.N);
    const std::vector<double> f = structure_factor_grid(p.N, p.kernel);

    NeumaierSum mode_sum;
    for (int n = 0; n < p.N; ++n) {
        const ModeQuantities mq = mode_quantities_from_f(
            grid.momenta[static_cast<std::size_t>(n)],
            f[static_cast<std::size_t>(n)], p, probe.theta, probe.T);
        mode_sum.add(mq.script_e);
    }
    const double total = mode_sum.value();

    QfiResult r;
    r.value = total * total;
    r.controlled = false;
    r.params = p;
    r.probe = probe;
    if (probe.theta == Channel::Delta) {
        NeumaierSum abs_sum;
        for (double v : f) abs_sum.add(std::abs(v));
        r.gamma = abs_sum.value();
    }
    return r;
}

QfiResult qfi_optimal(const ChainParams& p, const ProbeSpec& probe) {
    require_probe(probe);
    if (p.N < 2 || p.N % 2 != 0)
        throw domain_error("qfi_optimal: N must be even and >= 2 (got " +
                           std::to_string(p.N) + ")");
    QfiResult r;
    r.controlled = true;
    r.params = p;
    r.probe = probe;
    const double T = probe.T;

    switch (probe.theta) {
        case Channel::J: {
            const MomentumGrid grid = make_grid(p.N);
            NeumaierSum acc;
            for (double k : grid.momenta) acc.add(std::abs(std::cos(k)));
            const double spread = acc.value();
            r.value = spread * spread * T * T;
            break;
        }
        case Channel::Mu: {
            r.value = double(p.N) * double(p.N) * T * T;
            break;
        }
        case Channel::Delta: {
            const double g = gamma(p.N, p.kernel);
            const double half = 0.5 * g;
            r.value = half * half * T * T;
            r.gamma = g;
            break;
        }
    }
    return r;
}

} // namespace lrk
