#include "lrk/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <queue>
#include <vector>

#include "lrk/errors.hpp"
#include "lrk/summation.hpp"

namespace lrk {

namespace {

// 15-point Kronrod nodes on [0, 1] (positive half; the rule is symmetric).
// Even indices are Kronrod-only points, odd indices are the embedded 7-point
// Gauss nodes, index 7 is the center.
constexpr double xgk[8] = {
    0.991455371120813, 0.949107912342759, 0.864864423359769,
    0.741531185599394, 0.586087235467691, 0.405845151377397,
    0.207784955007898, 0.000000000000000};

constexpr double wgk[8] = {
    0.022935322010529, 0.063092092629979, 0.104790010322250,
    0.140653259715525, 0.169004726639267, 0.190350578064785,
    0.204432940075298, 0.209482141084728};

// Weights of the embedded 7-point Gauss rule, matching nodes 1, 3, 5, 7.
constexpr double wg[4] = {
    0.129484966168870, 0.279705391489277, 0.381830050505119,
    0.417959183673469};

struct Interval {
    double a, b;
    double value;
    double error;
};

struct ByError {
    bool operator()(const Interval& p, const Interval& q) const {
        return p.error < q.error;
    }
};

} // namespace

QuadResult gauss_kronrod_15(const std::function<double(double)>& f,
                            double a, double b) {
    const double c = 0.5 * (a + b);
    const double h = 0.5 * (b - a);

    const double fc = f(c);
    double resg = wg[3] * fc;
    double resk = wgk[7] * fc;
    double resabs = std::abs(resk);

    double fv1[7], fv2[7];
    for (int j = 0; j < 7; ++j) {
        fv1[j] = f(c - h * xgk[j]);
        fv2[j] = f(c + h * xgk[j]);
        resk += wgk[j] * (fv1[j] + fv2[j]);
        resabs += wgk[j] * (std::abs(fv1[j]) + std::abs(fv2[j]));
    }
    for (int j = 1; j <= 5; j += 2)
        resg += wg[(j - 1) / 2] * (fv1[j] + fv2[j]);

    // QUADPACK-style error estimate: scale |K - G| by the deviation integral
    // so kinks and near-discontinuities are not underestimated.
    const double reskh = resk * 0.5;
    double resasc = wgk[7] * std::abs(fc - reskh);
    for (int j = 0; j < 7; ++j)
        resasc += wgk[j] *
                  (std::abs(fv1[j] - reskh) + std::abs(fv2[j] - reskh));

    QuadResult r;
    r.value = resk * h;
    r.evaluations = 15;
    resabs *= std::abs(h);
    resasc *= std::abs(h);
    double err = std::abs((resk - resg) * h);
    if (resasc != 0.0 && err != 0.0)
        err = resasc * std::min(1.0, std::pow(200.0 * err / resasc, 1.5));
    const double eps = std::numeric_limits<double>::epsilon();
    if (resabs > std::numeric_limits<double>::min() / (50.0 * eps))
        err = std::max(err, 50.0 * eps * resabs);
    r.abs_error = err;

    if (std::isnan(r.value))
        throw numeric_error("gauss_kronrod_15: integrand returned NaN");
    return r;
}

QuadResult integrate_panelled(const std::function<double(double)>& f,
                              double a, double b, int n_panels,
                              double abs_tol, int max_intervals) {
    if (n_panels < 1)
        throw domain_error("integrate_panelled: n_panels must be >= 1");
    if (!(abs_tol > 0.0))
        throw domain_error("integrate_panelled: abs_tol must be positive");
    if (a == b) return {0.0, 0.0, 0};

    std::priority_queue<Interval, std::vector<Interval>, ByError> queue;
    long evals = 0;
    double total_error = 0.0;
    double dead_error = 0.0;  // intervals too narrow to split further
    long n_intervals = 0;

    auto push_panel = [&](double lo, double hi) {
        QuadResult g = gauss_kronrod_15(f, lo, hi);
        evals += g.evaluations;
        queue.push({lo, hi, g.value, g.abs_error});
        total_error += g.abs_error;
        ++n_intervals;
    };

    const double width = (b - a) / n_panels;
    for (int p = 0; p < n_panels; ++p) {
        const double lo = a + p * width;
        const double hi = (p == n_panels - 1) ? b : a + (p + 1) * width;
        push_panel(lo, hi);
    }

    const double min_width =
        1e-15 * (std::abs(a) + std::abs(b) + 1.0);

    while (total_error + dead_error > abs_tol && !queue.empty()) {
        if (n_intervals >= max_intervals)
            throw numeric_error(
                "integrate_panelled: interval budget exhausted (error "
                "estimate " + std::to_string(total_error + dead_error) +
                ", tolerance " + std::to_string(abs_tol) + ")");
        Interval worst = queue.top();
        queue.pop();
        total_error -= worst.error;
        if (worst.b - worst.a < min_width) {
            // Roundoff-limited: stop refining, keep its error on the books.
            dead_error += worst.error;
            if (dead_error > abs_tol)
                throw numeric_error(
                    "integrate_panelled: roundoff-limited intervals exceed "
                    "the tolerance");
            continue;
        }
        const double mid = 0.5 * (worst.a + worst.b);
        push_panel(worst.a, mid);
        push_panel(mid, worst.b);
    }

    // Drain the queue and accumulate with compensation; the queue's internal
    // order is deterministic for identical inputs.
    NeumaierSum value;
    double err_sum = dead_error;
    while (!queue.empty()) {
        value.add(queue.top().value);
        err_sum += queue.top().error;
        queue.pop();
    }
    return {value.value(), err_sum, evals};
}

QuadResult integrate_adaptive(const std::function<double(double)>& f,
                              double a, double b, double abs_tol,
                              int max_intervals) {
    return integrate_panelled(f, a, b, 1, abs_tol, max_intervals);
}

} // namespace lrk
