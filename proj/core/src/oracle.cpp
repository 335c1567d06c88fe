#include "lrk/oracle.hpp"

#include <bit>
#include <cmath>
#include <complex>
#include <numbers>
#include <string>
#include <vector>

#include <Eigen/Eigenvalues>

#include "lrk/errors.hpp"
#include "lrk/summation.hpp"

namespace lrk {

namespace {

using cd = std::complex<double>;

constexpr int kMaxSites = 14;      // dimension cap 16384
constexpr int kMaxVerifySites = 10;

void require_buildable(const ChainParams& p, int max_sites) {
    if (p.N > max_sites)
        throw resource_error("exact oracle: N = " + std::to_string(p.N) +
                             " exceeds the dense-Fock cap of " +
                             std::to_string(max_sites) + " sites");
    if (p.N < 2 || p.N % 2 != 0)
        throw domain_error("exact oracle: N must be even and >= 2 (got " +
                           std::to_string(p.N) + ")");
    if (p.kernel.kind == KernelKind::CustomTable &&
        static_cast<int>(p.kernel.table.size()) < p.N - 1)
        throw domain_error(
            "exact oracle: custom kernel table must cover separations up to "
            "N - 1");
}

// Parity of the occupied sites below bit j: the Jordan-Wigner sign picked up
// by a_j / a+_j acting on |b>.
double jw_sign(unsigned b, int j) {
    return (std::popcount(b & ((1u << j) - 1u)) & 1u) ? -1.0 : 1.0;
}

// coeff * a+_to a_from summed over the Fock basis (to != from).
void add_hop(Eigen::MatrixXcd& m, int to, int from, double coeff) {
    const unsigned dim = static_cast<unsigned>(m.rows());
    const unsigned bit_from = 1u << from;
    const unsigned bit_to = 1u << to;
    for (unsigned b = 0; b < dim; ++b) {
        if (!(b & bit_from) || (b & bit_to)) continue;
        const double s1 = jw_sign(b, from);
        const unsigned b1 = b ^ bit_from;
        const double s2 = jw_sign(b1, to);
        m(b1 | bit_to, b) += coeff * s1 * s2;
    }
}

// coeff * (a_j a_jl + a+_jl a+_j) summed over the Fock basis (j != jl).
void add_pair(Eigen::MatrixXcd& m, int j, int jl, double coeff) {
    const unsigned dim = static_cast<unsigned>(m.rows());
    const unsigned bit_j = 1u << j;
    const unsigned bit_jl = 1u << jl;
    for (unsigned b = 0; b < dim; ++b) {
        const bool occ_j = b & bit_j;
        const bool occ_jl = b & bit_jl;
        if (occ_j && occ_jl) {
            const double s1 = jw_sign(b, jl);      // a_jl acts first
            const unsigned b1 = b ^ bit_jl;
            const double s2 = jw_sign(b1, j);
            m(b1 ^ bit_j, b) += coeff * s1 * s2;
        } else if (!occ_j && !occ_jl) {
            const double s1 = jw_sign(b, j);       // a+_j acts first
            const unsigned b1 = b | bit_j;
            const double s2 = jw_sign(b1, jl);
            m(b1 | bit_jl, b) += coeff * s1 * s2;
        }
    }
}

void add_number_diagonal(Eigen::MatrixXcd& m, int N, double coeff) {
    const unsigned dim = static_cast<unsigned>(m.rows());
    for (unsigned b = 0; b < dim; ++b)
        m(b, b) += coeff * (std::popcount(b) - 0.5 * N);
}

// Fermionic blocks in the occupation basis -------------------------------

void add_fermion_tunneling(Eigen::MatrixXcd& m, int N, double strength) {
    // -(strength/2) sum_j (a+_j a_{j+1} + h.c.) with a_{j+N} = -a_j.
    for (int j = 0; j < N; ++j) {
        const int jp = (j + 1) % N;
        const double coeff = -0.5 * strength * (j == N - 1 ? -1.0 : 1.0);
        add_hop(m, j, jp, coeff);
        add_hop(m, jp, j, coeff);
    }
}

void add_fermion_pairing(Eigen::MatrixXcd& m, int N, double strength,
                         const DecayKernel& kernel, PairingForm form) {
    if (form == PairingForm::Wrapped) {
        // (strength/4) sum_{j} sum_{l=1}^{N-1} kappa~_l (a_j a_{j+l} + h.c.)
        // with the antiperiodic wrap supplying a -1 on terms crossing j = N.
        for (int l = 1; l < N; ++l) {
            const double kt = wrapped_kernel_value(kernel, l, N);
            for (int j = 0; j < N; ++j) {
                int jl = j + l;
                double sign = 1.0;
                if (jl >= N) {
                    jl -= N;
                    sign = -1.0;
                }
                add_pair(m, j, jl, 0.25 * strength * kt * sign);
            }
        }
    } else {
        // (strength/2) sum_j sum_{l=1}^{N-1-j} kappa_l (a_j a_{j+l} + h.c.)
        for (int j = 0; j < N; ++j)
            for (int l = 1; j + l < N; ++l)
                add_pair(m, j, j + l,
                         0.5 * strength * kernel_value(kernel, l));
    }
}

// Spin blocks: the literal Pauli-string chain with mod-N site indices ------

// coeff * (sigma+_j sigma-_jp + sigma-_j sigma+_jp), i.e. the flip-flop part
// of (coeff/2)(XX + YY), with no string.
void add_spin_flipflop(Eigen::MatrixXcd& m, int j, int jp, double coeff) {
    const unsigned dim = static_cast<unsigned>(m.rows());
    const unsigned bj = 1u << j;
    const unsigned bjp = 1u << jp;
    for (unsigned b = 0; b < dim; ++b) {
        const bool oj = b & bj;
        const bool ojp = b & bjp;
        if (oj != ojp) m(b ^ bj ^ bjp, b) += coeff;
    }
}

// coeff * (sigma+_j sigma+_jl + sigma-_j sigma-_jl) x prod of sigma_z over
// the arc j+1 .. j+l-1 (mod N); the flip-flip part of (coeff/2)(XX - YY)
// with its interior z-string.
void add_spin_pair_string(Eigen::MatrixXcd& m, int N, int j, int l,
                          double coeff) {
    const unsigned dim = static_cast<unsigned>(m.rows());
    const int jl = (j + l) % N;
    const unsigned bj = 1u << j;
    const unsigned bjl = 1u << jl;
    unsigned string_mask = 0;
    for (int i = 1; i < l; ++i) string_mask |= 1u << ((j + i) % N);
    for (unsigned b = 0; b < dim; ++b) {
        const bool oj = b & bj;
        const bool ojl = b & bjl;
        if (oj != ojl) continue;
        // sigma_z eigenvalue product: +1 per occupied string site, -1 per
        // empty one.
        const int empties =
            std::popcount(string_mask) - std::popcount(b & string_mask);
        const double zs = (empties & 1) ? -1.0 : 1.0;
        m(b ^ bj ^ bjl, b) += coeff * zs;
    }
}

void add_spin_tunneling(Eigen::MatrixXcd& m, int N, double strength) {
    // -(strength/4) sum_j (X_j X_{j+1} + Y_j Y_{j+1}), all N bonds.
    for (int j = 0; j < N; ++j)
        add_spin_flipflop(m, j, (j + 1) % N, -0.5 * strength);
}

void add_spin_pairing(Eigen::MatrixXcd& m, int N, double strength,
                      const DecayKernel& kernel, PairingForm form) {
    if (form == PairingForm::Wrapped) {
        // (strength/8) sum_j sum_l (-1)^l kappa~_l (X..X - Y..Y) strings.
        for (int l = 1; l < N; ++l) {
            const double kt = wrapped_kernel_value(kernel, l, N);
            const double parity = (l % 2 == 0) ? 1.0 : -1.0;
            for (int j = 0; j < N; ++j)
                add_spin_pair_string(m, N, j, l,
                                     0.25 * strength * parity * kt);
        }
    } else {
        for (int j = 0; j < N; ++j)
            for (int l = 1; j + l < N; ++l) {
                const double parity = (l % 2 == 0) ? 1.0 : -1.0;
                add_spin_pair_string(
                    m, N, j, l,
                    0.5 * strength * parity * kernel_value(kernel, l));
            }
    }
}

std::vector<int> sector_indices(int dim, ParitySector sector) {
    std::vector<int> idx;
    idx.reserve(static_cast<std::size_t>(dim));
    for (int b = 0; b < dim; ++b) {
        const bool even = (std::popcount(static_cast<unsigned>(b)) & 1) == 0;
        if (sector == ParitySector::Full ||
            (sector == ParitySector::Even) == even)
            idx.push_back(b);
    }
    return idx;
}

// Momentum-mode ladder operators applied to Fock vectors: a(k) =
// (1/sqrt N) sum_j e^{-ikj} a_j and its adjoint, built from per-site
// applications with Jordan-Wigner signs.
Eigen::VectorXcd apply_momentum_op(const Eigen::VectorXcd& v, int N, double k,
                                   bool create) {
    const unsigned dim = static_cast<unsigned>(v.size());
    Eigen::VectorXcd w = Eigen::VectorXcd::Zero(v.size());
    const double norm = 1.0 / std::sqrt(double(N));
    for (int j = 0; j < N; ++j) {
        const double phase = (create ? 1.0 : -1.0) * k * j;
        const cd c = norm * cd(std::cos(phase), std::sin(phase));
        const unsigned bit = 1u << j;
        for (unsigned b = 0; b < dim; ++b) {
            if (create) {
                if (b & bit) continue;
                w(b | bit) += c * jw_sign(b, j) * v(b);
            } else {
                if (!(b & bit)) continue;
                w(b ^ bit) += c * jw_sign(b, j) * v(b);
            }
        }
    }
    return w;
}

} // namespace

double ManyBodyOperator::hermiticity_defect() const {
    return (matrix - matrix.adjoint()).cwiseAbs().maxCoeff();
}

ManyBodyOperator build_hamiltonian(const ChainParams& p, Representation rep,
                                   PairingForm form) {
    require_buildable(p, kMaxSites);
    const int dim = 1 << p.N;
    ManyBodyOperator op;
    op.sites = p.N;
    op.matrix = Eigen::MatrixXcd::Zero(dim, dim);
    add_number_diagonal(op.matrix, p.N, -p.mu);
    if (rep == Representation::FermionFock) {
        add_fermion_tunneling(op.matrix, p.N, p.J);
        add_fermion_pairing(op.matrix, p.N, p.delta, p.kernel, form);
    } else {
        add_spin_tunneling(op.matrix, p.N, p.J);
        add_spin_pairing(op.matrix, p.N, p.delta, p.kernel, form);
    }
    return op;
}

ManyBodyOperator build_dtheta_h(const ChainParams& p, Channel theta,
                                Representation rep, PairingForm form) {
    require_buildable(p, kMaxSites);
    const int dim = 1 << p.N;
    ManyBodyOperator op;
    op.sites = p.N;
    op.matrix = Eigen::MatrixXcd::Zero(dim, dim);
    switch (theta) {
        case Channel::J:
            if (rep == Representation::FermionFock)
                add_fermion_tunneling(op.matrix, p.N, 1.0);
            else
                add_spin_tunneling(op.matrix, p.N, 1.0);
            break;
        case Channel::Mu:
            add_number_diagonal(op.matrix, p.N, -1.0);
            break;
        case Channel::Delta:
            if (rep == Representation::FermionFock)
                add_fermion_pairing(op.matrix, p.N, 1.0, p.kernel, form);
            else
                add_spin_pairing(op.matrix, p.N, 1.0, p.kernel, form);
            break;
    }
    return op;
}

GeneratorResult exact_generator(const ManyBodyOperator& H,
                                const ManyBodyOperator& dH, double T) {
    if (H.matrix.rows() != dH.matrix.rows())
        throw domain_error("exact_generator: dimension mismatch between H (" +
                           std::to_string(H.matrix.rows()) + ") and dH (" +
                           std::to_string(dH.matrix.rows()) + ")");
    if (!(T >= 0.0))
        throw domain_error("exact_generator: T must be >= 0");
    const double scale = std::max(1.0, H.matrix.cwiseAbs().maxCoeff());
    if (H.hermiticity_defect() > 1e-12 * scale)
        throw domain_error("exact_generator: H is not Hermitian");

    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(H.matrix);
    if (es.info() != Eigen::Success)
        throw numeric_error(
            "exact_generator: eigendecomposition of H failed");
    const Eigen::VectorXd& E = es.eigenvalues();
    const Eigen::MatrixXcd& V = es.eigenvectors();
    const Eigen::Index dim = E.size();

    const double hnorm = std::max(std::abs(E(0)), std::abs(E(dim - 1)));
    const double gap_floor = 1e-12 * hnorm;

    Eigen::MatrixXcd W = V.adjoint() * dH.matrix * V;
    for (Eigen::Index m = 0; m < dim; ++m) {
        for (Eigen::Index n = 0; n < dim; ++n) {
            const double om = E(m) - E(n);
            const cd tau = std::abs(om) > gap_floor
                               ? (std::exp(cd(0.0, om * T)) - 1.0) /
                                     cd(0.0, om)
                               : cd(T, 0.0);
            W(m, n) *= tau;
        }
    }
    Eigen::MatrixXcd G = V * W * V.adjoint();
    G = (0.5 * (G + G.adjoint())).eval();

    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> eg(G);
    if (eg.info() != Eigen::Success)
        throw numeric_error(
            "exact_generator: eigendecomposition of G failed");

    GeneratorResult result;
    result.matrix = ManyBodyOperator{H.sites, std::move(G)};
    result.lambda_min = eg.eigenvalues()(0);
    result.lambda_max = eg.eigenvalues()(dim - 1);
    const double spread = result.lambda_max - result.lambda_min;
    result.qfi = spread * spread;
    result.state_max = eg.eigenvectors().col(dim - 1);
    result.state_min = eg.eigenvectors().col(0);
    return result;
}

ManyBodyOperator project_to_sector(const ManyBodyOperator& op,
                                   ParitySector sector) {
    if (sector == ParitySector::Full) return op;
    const auto idx =
        sector_indices(static_cast<int>(op.dimension()), sector);
    const Eigen::Index n = static_cast<Eigen::Index>(idx.size());
    Eigen::MatrixXcd sub(n, n);
    for (Eigen::Index i = 0; i < n; ++i)
        for (Eigen::Index j = 0; j < n; ++j)
            sub(i, j) = op.matrix(idx[static_cast<std::size_t>(i)],
                                  idx[static_cast<std::size_t>(j)]);
    return ManyBodyOperator{op.sites, std::move(sub)};
}

std::vector<double> sector_spectrum(const ManyBodyOperator& op,
                                    ParitySector sector) {
    const ManyBodyOperator block = project_to_sector(op, sector);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(
        block.matrix, Eigen::EigenvaluesOnly);
    if (es.info() != Eigen::Success)
        throw numeric_error("sector_spectrum: eigendecomposition failed");
    return std::vector<double>(es.eigenvalues().data(),
                               es.eigenvalues().data() + es.eigenvalues().size());
}

GeneratorResult exact_qfi(const ChainParams& p, const ProbeSpec& probe,
                          ParitySector sector) {
    const ManyBodyOperator H =
        build_hamiltonian(p, Representation::FermionFock);
    const ManyBodyOperator dH =
        build_dtheta_h(p, probe.theta, Representation::FermionFock);
    return exact_generator(project_to_sector(H, sector),
                           project_to_sector(dH, sector), probe.T);
}

ExtremalStateReport verify_extremal_states(const ChainParams& p) {
    require_buildable(p, kMaxVerifySites);
    const int N = p.N;
    const int dim = 1 << N;
    const double u = 1.0 / std::sqrt(2.0);

    const MomentumGrid grid = make_grid(N);
    const std::vector<double> f = structure_factor_grid(N, p.kernel);
    const double gam = gamma(N, p.kernel);

    const Eigen::MatrixXcd D_lit =
        build_dtheta_h(p, Channel::Delta, Representation::FermionFock).matrix;
    const Eigen::MatrixXcd D_b =
        D_lit + 0.25 * gam * Eigen::MatrixXcd::Identity(dim, dim);

    // |GS> = prod_{k in (0, pi)} [u - v_k a+(k) a+(-k)] |vacuum> and
    // |FO> = prod [u - v_k* a(k) a(-k)] |full>, with v_k = -i sgn(f)/sqrt 2.
    // Grid index N-1-n carries -k_n.
    Eigen::VectorXcd gs = Eigen::VectorXcd::Zero(dim);
    gs(0) = 1.0;
    Eigen::VectorXcd fo = Eigen::VectorXcd::Zero(dim);
    fo(dim - 1) = 1.0;
    for (int n = 0; n < N / 2; ++n) {
        const double k = grid.momenta[static_cast<std::size_t>(n)];
        const double kneg =
            grid.momenta[static_cast<std::size_t>(N - 1 - n)];
        const cd v = cd(0.0, f[static_cast<std::size_t>(n)] >= 0.0 ? -u : u);
        const Eigen::VectorXcd gs_pair = apply_momentum_op(
            apply_momentum_op(gs, N, kneg, true), N, k, true);
        gs = u * gs - v * gs_pair;
        const Eigen::VectorXcd fo_pair = apply_momentum_op(
            apply_momentum_op(fo, N, kneg, false), N, k, false);
        fo = u * fo - std::conj(v) * fo_pair;
    }

    ExtremalStateReport report;
    report.gamma_half = 0.5 * gam;
    report.gs_norm = gs.squaredNorm();
    report.fo_norm = fo.squaredNorm();
    report.gs_residual = (D_b * gs).norm();
    report.fo_residual = (D_b * fo - report.gamma_half * fo).norm();
    report.fo_expectation = fo.dot(D_b * fo).real();

    // dH_J = -sum_k cos k (n(k) - 1/2): occupying every cos k < 0 (> 0) mode
    // gives the top (bottom) eigenstate at +-(1/2) sum |cos k|.
    const Eigen::MatrixXcd dJ =
        build_dtheta_h(p, Channel::J, Representation::FermionFock).matrix;
    NeumaierSum abscos;
    for (double k : grid.momenta) abscos.add(std::abs(std::cos(k)));
    report.j_eigenvalue = 0.5 * abscos.value();
    Eigen::VectorXcd top = Eigen::VectorXcd::Zero(dim);
    top(0) = 1.0;
    Eigen::VectorXcd bottom = top;
    for (double k : grid.momenta) {
        if (std::cos(k) < 0.0)
            top = apply_momentum_op(top, N, k, true);
        else if (std::cos(k) > 0.0)
            bottom = apply_momentum_op(bottom, N, k, true);
    }
    report.j_residual =
        std::max((dJ * top - report.j_eigenvalue * top).norm(),
                 (dJ * bottom + report.j_eigenvalue * bottom).norm());

    // dH_Mu = -sum_j (n_j - 1/2): extremes +N/2 at |vacuum>, -N/2 at |full>.
    const Eigen::MatrixXcd dMu =
        build_dtheta_h(p, Channel::Mu, Representation::FermionFock).matrix;
    Eigen::VectorXcd vac = Eigen::VectorXcd::Zero(dim);
    vac(0) = 1.0;
    Eigen::VectorXcd full = Eigen::VectorXcd::Zero(dim);
    full(dim - 1) = 1.0;
    report.mu_residual = std::max((dMu * vac - 0.5 * N * vac).norm(),
                                  (dMu * full + 0.5 * N * full).norm());

    constexpr double norm_tol = 1e-10;
    constexpr double residual_tol = 1e-8;
    report.pass = std::abs(report.gs_norm - 1.0) <= norm_tol &&
                  std::abs(report.fo_norm - 1.0) <= norm_tol &&
                  report.gs_residual <= residual_tol &&
                  report.fo_residual <= residual_tol &&
                  std::abs(report.fo_expectation - report.gamma_half) <=
                      residual_tol &&
                  report.j_residual <= residual_tol &&
                  report.mu_residual <= residual_tol;
    return report;
}

} // namespace lrk
