#pragma once

#include <Eigen/Dense>
#include <vector>

#include "lrk/chain.hpp"
#include "lrk/qfi.hpp"

namespace lrk {

// Basis in which the many-body operators are assembled. FermionFock builds
// ladder operators with Jordan-Wigner sign strings directly in the
// occupation-number basis; SpinJW builds the equivalent spin chain with
// literal Pauli strings and mod-N site indices. The two agree spectrum-wise
// in the even-fermion-parity sector (the spin chain's wrap terms carry no
// boundary parity operator, so odd-sector spectra may differ).
enum class Representation { FermionFock, SpinJW };

// Pairing sum layout. Wrapped is the translation-invariant form
// (delta/4) sum_{j=1}^{N} sum_{l=1}^{N-1} kappa~_l (a_j a_{j+l} + h.c.)
// with the antiperiodic wrap a_{j+N} = -a_j; this is the form the momentum
// formulas diagonalize and the default everywhere. OpenChain is the
// unwrapped sum (delta/2) sum_j sum_{l <= N-j} kappa_l (a_j a_{j+l} + h.c.),
// exposed for boundary-effect studies only.
enum class PairingForm { Wrapped, OpenChain };

// Fermion-parity block of the Fock space, by occupation-count parity.
enum class ParitySector { Even, Odd, Full };

// Dense many-body operator on the 2^N Fock space (or one parity block).
struct ManyBodyOperator {
    int sites = 0; // N of the chain the operator was built for
    Eigen::MatrixXcd matrix;

    Eigen::Index dimension() const { return matrix.rows(); }
    // max_ij |M - M^dagger|; builders produce exactly 0.
    double hermiticity_defect() const;
};

// Full 2^N Hamiltonian: tunneling -(J/2) sum_j (a+_j a_{j+1} + h.c.) and
// chemical potential -mu sum_j (n_j - 1/2), both with the antiperiodic wrap,
// plus the pairing block selected by `form`. Requires N even with
// 2 <= N <= 14 (dimension cap 16384); larger N raises resource_error.
ManyBodyOperator build_hamiltonian(const ChainParams& p, Representation rep,
                                   PairingForm form = PairingForm::Wrapped);

// Term-wise derivative of build_hamiltonian with respect to one coupling:
// J -> tunneling block with coefficient -1/2, Mu -> -(n_j - 1/2) block,
// Delta -> pairing block with its delta-independent coefficients. The Delta
// derivative is the literal one with spectrum [-gamma/4, +gamma/4]; adding
// (gamma/4) Id gives the quasiparticle-number form with spectrum
// [0, gamma/2] (the spread is the same either way).
ManyBodyOperator build_dtheta_h(const ChainParams& p, Channel theta,
                                Representation rep,
                                PairingForm form = PairingForm::Wrapped);

// Generator of parameter sensitivity over the evolution window [0, T].
struct GeneratorResult {
    ManyBodyOperator matrix;      // G, Hermitian
    double lambda_max = 0.0;      // extremal eigenvalues of G
    double lambda_min = 0.0;
    double qfi = 0.0;             // (lambda_max - lambda_min)^2
    Eigen::VectorXcd state_max;   // corresponding eigenvectors; the optimal
    Eigen::VectorXcd state_min;   // probe state is their equal superposition
};

// G = integral_0^T e^{iHt} dH e^{-iHt} dt, evaluated in the eigenbasis of H:
// G_mn = dH_mn tau(E_m - E_n) with tau(w) = (e^{iwT} - 1)/(iw), and tau = T
// for |w| <= 1e-12 max|E| (degenerate-gap limit). The result is symmetrized
// to Hermitian before the eigenvalue spread is taken; the spread is
// invariant under H -> H + c Id. Requires matching dimensions, Hermitian
// inputs (defect <= 1e-12 of the max entry), and T >= 0; eigensolver failure
// raises numeric_error.
GeneratorResult exact_generator(const ManyBodyOperator& H,
                                const ManyBodyOperator& dH, double T);

// Restriction of an operator to one fermion-parity block (basis states with
// even/odd occupation count, in increasing index order). Full is identity.
ManyBodyOperator project_to_sector(const ManyBodyOperator& op,
                                   ParitySector sector);

// Sorted (ascending) spectrum of one parity block.
std::vector<double> sector_spectrum(const ManyBodyOperator& op,
                                    ParitySector sector);

// Ground-truth QFI: build_hamiltonian(FermionFock) + build_dtheta_h +
// exact_generator, restricted to one parity sector (Even by default; the
// momentum-space formulas describe the even sector, which also carries the
// extremal generator eigenvalues for these models).
GeneratorResult exact_qfi(const ChainParams& p, const ProbeSpec& probe,
                          ParitySector sector = ParitySector::Even);

// Checks of the closed-form extremal states of the three dH operators.
struct ExtremalStateReport {
    double gs_norm = 0.0;       // <GS|GS>
    double fo_norm = 0.0;       // <FO|FO>
    double gs_residual = 0.0;   // || D_b |GS> ||
    double fo_residual = 0.0;   // || D_b |FO> - (gamma/2)|FO> ||
    double fo_expectation = 0.0; // <FO| D_b |FO>
    double gamma_half = 0.0;     // gamma/2 reference value
    double j_eigenvalue = 0.0;   // (1/2) sum_k |cos k| reference
    double j_residual = 0.0;     // worst eigen-residual of the two dJ states
    double mu_residual = 0.0;    // worst eigen-residual of |0>, |1...1>
    bool pass = false; // norms within 1e-10 of 1, residuals within 1e-8
};

// Builds the BCS ground state |GS> = prod_{k in (0,pi)} [u - v_k a+(k)a+(-k)]|0>
// and its fully occupied counterpart |FO> (u = 1/sqrt 2, v_k = -+ i/sqrt 2 by
// the sign of f(k)) via momentum-space ladder operators applied directly to
// Fock vectors, then verifies that they are the extremal eigenstates of the
// quasiparticle form D_b = dH_Delta + (gamma/4) Id, that |1/2-filled>
// states are the extremal dH_J eigenstates at +-(1/2) sum|cos k|, and that
// |0>, |1...1> are the extremal dH_Mu eigenstates. Requires N <= 10.
ExtremalStateReport verify_extremal_states(const ChainParams& p);

} // namespace lrk
