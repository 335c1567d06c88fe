#pragma once

#include <vector>

#include "lrk/kernel.hpp"

namespace lrk {

// Estimation channel: which Hamiltonian parameter is being probed.
enum class Channel { J, Mu, Delta };

std::string_view channel_label(Channel c);        // "J" / "mu" / "delta"
Channel parse_channel(std::string_view s);        // inverse of channel_label

// One chain instance: couplings plus lattice size and decay kernel.
struct ChainParams {
    double J = 1.0;      // tunneling rate
    double mu = 1.0;     // chemical potential
    double delta = 1.0;  // p-wave pairing strength
    int N = 2;           // lattice sites, even
    DecayKernel kernel;
};

// Antiperiodic momentum grid k_n = (2n+1) pi / N, n = 0..N-1.
struct MomentumGrid {
    std::vector<double> momenta;
};

// Builds the antiperiodic grid. Throws domain_error unless N is even and >= 2.
MomentumGrid make_grid(int N);

// Index n of a grid momentum: |k - (2n+1) pi/N| <= 1e-10 must hold, otherwise
// domain_error (off-grid momenta have no symmetric-sum reduction).
int grid_index(double k, int N);

// Per-mode bundle at momentum k for one channel and probe time T.
struct ModeQuantities {
    double k = 0.0;         // momentum
    double f = 0.0;         // structure factor
    double eps = 0.0;       // dispersion
    double deps = 0.0;      // d(eps)/d(theta)
    double xi = 0.0;        // eigenvector-rotation rate
    double script_e = 0.0;  // per-mode generator norm
};

// Structure factor f(k) = sum_{l=1}^{N-1} kappa~_l sin(kl) at a grid
// momentum, evaluated by a compensated direct sum with exact integer-angle
// reduction (each term's sine argument is folded to [0, pi/2]).
double structure_factor(double k, int N, const DecayKernel& kernel);

// f at every grid momentum, in grid order. Uses the direct sum for small N
// and a length-N FFT of kappa~_l e^{i pi l/N} for N >= 2048; the two paths
// agree to ~1e-12 absolute.
std::vector<double> structure_factor_grid(int N, const DecayKernel& kernel);

// Truncation of the infinite-chain structure factor to N/2 - 1 terms:
// 2 sum_{l=1}^{N/2-1} kappa_l sin(kl). Defined for any real k; this is the
// integrand of the remainder-scaling probe.
double continuum_structure_factor(double k, int N, const DecayKernel& kernel);

// Dispersion eps(k) = sqrt([delta f(k)/2]^2 + (J cos k + mu)^2), k on grid.
double dispersion(double k, const ChainParams& p);

// All per-mode quantities for one channel at probe time T >= 0.
//
// Vanishing dispersion (both J cos k + mu = 0 and delta f = 0) is removable
// for the J and Mu channels (deps -> cos k resp. 1, xi -> 0) and for the
// Delta channel when f = 0 as well; with f != 0 the Delta-channel xi has no
// finite limit and singular_mode_error is thrown carrying k.
ModeQuantities mode_quantities(double k, const ChainParams& p, Channel theta,
                               double T);

// Same, with the structure factor already known (saves the O(N) sum when the
// caller has the full grid).
ModeQuantities mode_quantities_from_f(double k, double f,
                                      const ChainParams& p, Channel theta,
                                      double T);

} // namespace lrk
