#include "lrk/chain.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <complex>
#include <mutex>
#include <numbers>
#include <string>

#include <fftw3.h>

#include "lrk/errors.hpp"
#include "lrk/summation.hpp"

namespace lrk {

namespace {

constexpr double pi = std::numbers::pi;

// Smallest N for which the grid evaluation switches to the FFT path. The
// direct path is kept below so the tightest identity checks (N <= 1024) run
// on exact integer-angle sums.
constexpr int fft_threshold = 2048;

void require_even_size(int N, const char* who) {
    if (N < 2 || N % 2 != 0)
        throw domain_error(std::string(who) +
                           ": N must be even and >= 2 (got " +
                           std::to_string(N) + ")");
}

// A custom table must reach kappa_{N-1} so every kernel access a chain of
// size N can make (wrapped sums and open-chain pairing alike) is in range.
void require_kernel_covers(const DecayKernel& kernel, int N,
                           const char* who) {
    if (kernel.kind == KernelKind::CustomTable &&
        kernel.table.size() < static_cast<std::size_t>(N - 1))
        throw domain_error(std::string(who) + ": custom kernel table has " +
                           std::to_string(kernel.table.size()) +
                           " entries, needs >= " + std::to_string(N - 1));
}

// sin(pi r / N) for integer 0 <= r < 2N, folded so the std::sin argument
// never exceeds pi/2. Each term is then exact to rounding, which the
// 1e-12-level cotangent identity checks rely on.
double grid_sine(long r, long N) {
    double sign = 1.0;
    if (r >= N) {  // sin(pi + x) = -sin(x)
        r -= N;
        sign = -1.0;
    }
    if (2 * r > N) r = N - r;  // sin(pi - x) = sin(x)
    return sign * std::sin(pi * double(r) / double(N));
}

// Direct compensated sum for mode n out of N.
double structure_factor_direct(int n, int N,
                               const std::vector<double>& wrapped) {
    const long two_np1 = 2L * n + 1;
    const long period = 2L * N;
    NeumaierSum acc;
    for (long l = 1; l < N; ++l)
        acc.add(wrapped[static_cast<std::size_t>(l - 1)] *
                grid_sine((two_np1 * l) % period, N));
    return acc.value();
}

std::vector<double> wrapped_kernel_table(int N, const DecayKernel& kernel) {
    std::vector<double> wrapped(static_cast<std::size_t>(N - 1));
    for (long l = 1; l < N; ++l)
        wrapped[static_cast<std::size_t>(l - 1)] =
            wrapped_kernel_value(kernel, l, N);
    return wrapped;
}

// FFTW's planner is not thread-safe; plan creation and destruction are
// serialized. fftw_execute on distinct plans is safe concurrently.
std::mutex& fftw_planner_mutex() {
    static std::mutex m;
    return m;
}

// f(k_n) = Im sum_{l=1}^{N-1} kappa~_l e^{i pi l / N} e^{+2 pi i n l / N},
// one unnormalized backward DFT of z_l = kappa~_l e^{i pi l / N}.
std::vector<double> structure_factor_grid_fft(
    int N, const std::vector<double>& wrapped) {
    std::vector<std::complex<double>> in(static_cast<std::size_t>(N));
    std::vector<std::complex<double>> out(static_cast<std::size_t>(N));
    in[0] = 0.0;
    for (long l = 1; l < N; ++l) {
        const double phase = pi * double(l) / double(N);
        in[static_cast<std::size_t>(l)] =
            wrapped[static_cast<std::size_t>(l - 1)] *
            std::complex<double>(std::cos(phase), std::sin(phase));
    }

    fftw_plan plan;
    {
        std::lock_guard<std::mutex> lock(fftw_planner_mutex());
        // FFTW_UNALIGNED keeps the plan (and thus the rounding pattern)
        // independent of where the vectors happen to be allocated, so
        // results are bit-reproducible across runs and thread counts.
        plan = fftw_plan_dft_1d(N,
                                reinterpret_cast<fftw_complex*>(in.data()),
                                reinterpret_cast<fftw_complex*>(out.data()),
                                FFTW_BACKWARD,
                                FFTW_ESTIMATE | FFTW_UNALIGNED);
    }
    if (plan == nullptr)
        throw numeric_error("structure_factor_grid: FFTW plan failed");
    fftw_execute(plan);
    {
        std::lock_guard<std::mutex> lock(fftw_planner_mutex());
        fftw_destroy_plan(plan);
    }

    std::vector<double> f(static_cast<std::size_t>(N));
    for (int n = 0; n < N; ++n)
        f[static_cast<std::size_t>(n)] = out[static_cast<std::size_t>(n)].imag();
    return f;
}

} // namespace

std::string_view channel_label(Channel c) {
    switch (c) {
        case Channel::J: return "J";
        case Channel::Mu: return "mu";
        case Channel::Delta: return "delta";
    }
    return "?";
}

Channel parse_channel(std::string_view s) {
    std::string lower(s);
    std::transform(lower.begin(), lower.end(), lower.begin(),
                   [](unsigned char c) { return std::tolower(c); });
    if (lower == "j") return Channel::J;
    if (lower == "mu") return Channel::Mu;
    if (lower == "delta") return Channel::Delta;
    throw domain_error("parse_channel: unknown channel '" + std::string(s) +
                       "' (expected J, mu, or delta)");
}

MomentumGrid make_grid(int N) {
    require_even_size(N, "make_grid");
    MomentumGrid grid;
    grid.momenta.resize(static_cast<std::size_t>(N));
    for (int n = 0; n < N; ++n)
        grid.momenta[static_cast<std::size_t>(n)] =
            (2.0 * n + 1.0) * pi / double(N);
    return grid;
}

int grid_index(double k, int N) {
    require_even_size(N, "grid_index");
    const double n_real = (k * double(N) / pi - 1.0) / 2.0;
    const long n = std::lround(n_real);
    if (n < 0 || n >= N ||
        std::abs(k - (2.0 * double(n) + 1.0) * pi / double(N)) > 1e-10)
        throw domain_error("grid momentum expected: k=" + std::to_string(k) +
                           " is not of the form (2n+1)pi/" +
                           std::to_string(N));
    return static_cast<int>(n);
}

double structure_factor(double k, int N, const DecayKernel& kernel) {
    require_even_size(N, "structure_factor");
    require_kernel_covers(kernel, N, "structure_factor");
    const int n = grid_index(k, N);
    return structure_factor_direct(n, N, wrapped_kernel_table(N, kernel));
}

std::vector<double> structure_factor_grid(int N, const DecayKernel& kernel) {
    require_even_size(N, "structure_factor_grid");
    require_kernel_covers(kernel, N, "structure_factor_grid");
    const std::vector<double> wrapped = wrapped_kernel_table(N, kernel);
    if (N >= fft_threshold) return structure_factor_grid_fft(N, wrapped);
    std::vector<double> f(static_cast<std::size_t>(N));
    for (int n = 0; n < N; ++n)
        f[static_cast<std::size_t>(n)] = structure_factor_direct(n, N, wrapped);
    return f;
}

double continuum_structure_factor(double k, int N,
                                  const DecayKernel& kernel) {
    require_even_size(N, "continuum_structure_factor");
    NeumaierSum acc;
    for (long l = 1; l <= N / 2 - 1; ++l)
        acc.add(2.0 * kernel_value(kernel, l) * std::sin(k * double(l)));
    return acc.value();
}

double dispersion(double k, const ChainParams& p) {
    const double f = structure_factor(k, p.N, p.kernel);
    const double m = p.J * std::cos(k) + p.mu;
    return std::hypot(0.5 * p.delta * f, m);
}

ModeQuantities mode_quantities_from_f(double k, double f,
                                      const ChainParams& p, Channel theta,
                                      double T) {
    if (!(T >= 0.0))
        throw domain_error("mode_quantities: probe time T must be >= 0");
    const double cos_k = std::cos(k);
    const double m = p.J * cos_k + p.mu;
    const double eps = std::hypot(0.5 * p.delta * f, m);

    ModeQuantities mq;
    mq.k = k;
    mq.f = f;
    mq.eps = eps;

    if (eps == 0.0) {
        // Both J cos k + mu and delta*f vanish. The J and Mu channels have
        // finite limits; Delta does too when f itself vanishes, and diverges
        // otherwise (xi -> -f/(2m) as m -> 0 with delta = 0).
        switch (theta) {
            case Channel::J:
                mq.deps = cos_k;
                mq.xi = 0.0;
                break;
            case Channel::Mu:
                mq.deps = 1.0;
                mq.xi = 0.0;
                break;
            case Channel::Delta:
                if (f != 0.0)
                    throw singular_mode_error(
                        k, "mode_quantities: dispersion vanishes at k=" +
                               std::to_string(k) +
                               " with nonzero structure factor; the "
                               "Delta-channel generator has no finite limit");
                mq.deps = 0.0;
                mq.xi = 0.0;
                break;
        }
    } else {
        const double eps2 = eps * eps;
        switch (theta) {
            case Channel::J:
                mq.deps = cos_k * m / eps;
                mq.xi = p.delta * f * cos_k / (2.0 * eps2);
                break;
            case Channel::Mu:
                mq.deps = m / eps;
                mq.xi = p.delta * f / (2.0 * eps2);
                break;
            case Channel::Delta:
                mq.deps = p.delta * f * f / (4.0 * eps);
                mq.xi = -m * f / (2.0 * eps2);
                break;
        }
    }

    // Generator mode norm; equals
    // sqrt(T^2 deps^2 + xi^2 [sin^2(2 eps T) + (1 - cos 2 eps T)^2] / 4)
    // through the identity sin^2(2x)/4 + (1-cos 2x)^2/4 = sin^2(x).
    mq.script_e = std::hypot(T * mq.deps, mq.xi * std::sin(eps * T));
    return mq;
}

ModeQuantities mode_quantities(double k, const ChainParams& p, Channel theta,
                               double T) {
    return mode_quantities_from_f(k, structure_factor(k, p.N, p.kernel), p,
                                  theta, T);
}

} // namespace lrk
