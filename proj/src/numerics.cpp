#include "heatreach/numerics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <queue>

namespace heatreach {

double erf(double x) { return std::erf(x); }
double erfc(double x) { return std::erfc(x); }

// ---------------------------------------------------------------------------
// Grid
// ---------------------------------------------------------------------------

Grid::Grid(std::vector<double> points, Domain domain, double a, double b)
    : points_(std::move(points)), domain_(domain), a_(a), b_(b) {
    if (points_.empty()) throw std::invalid_argument("Grid: no points");
    for (std::size_t i = 0; i < points_.size(); ++i) {
        if (!std::isfinite(points_[i])) throw std::invalid_argument("Grid: non-finite point");
        if (i > 0 && !(points_[i] > points_[i - 1]))
            throw std::invalid_argument("Grid: points must be strictly increasing");
    }
    switch (domain_) {
        case Domain::half_line:
            if (points_.front() < 0.0)
                throw std::invalid_argument("Grid: half-line points must be >= 0");
            break;
        case Domain::full_line:
            break;
        case Domain::interval:
            if (!(a_ < b_)) throw std::invalid_argument("Grid: empty interval");
            if (points_.front() < a_ || points_.back() > b_)
                throw std::invalid_argument("Grid: points outside interval");
            break;
    }
}

Grid Grid::uniform(double a, double b, int count, Domain domain) {
    if (count < 2 || !(a < b)) throw std::invalid_argument("Grid::uniform: bad range");
    std::vector<double> pts(static_cast<std::size_t>(count));
    for (int i = 0; i < count; ++i)
        pts[static_cast<std::size_t>(i)] = a + (b - a) * i / (count - 1);
    double lo = (domain == Domain::interval) ? a : 0.0;
    double hi = (domain == Domain::interval) ? b : 0.0;
    return Grid(std::move(pts), domain, lo, hi);
}

// ---------------------------------------------------------------------------
// QuadratureSpec
// ---------------------------------------------------------------------------

void QuadratureSpec::validate() const {
    if (!(abs_tol >= 0.0) || !(rel_tol >= 0.0))
        throw std::invalid_argument("QuadratureSpec: negative tolerance");
    if (abs_tol == 0.0 && rel_tol == 0.0)
        throw std::invalid_argument("QuadratureSpec: at least one tolerance must be positive");
    if (max_refinement_depth < 1)
        throw std::invalid_argument("QuadratureSpec: max_refinement_depth < 1");
}

namespace {

double tolerance_for(const QuadratureSpec& spec, double value) {
    return std::max(spec.abs_tol, spec.rel_tol * std::abs(value));
}

// ---------------------------------------------------------------------------
// tanh-sinh rule: x = c + d tanh((pi/2) sinh t). Points are generated from
// the endpoint offset 2 d q / (1 + q), q = exp(-pi |sinh t|), which stays
// accurate arbitrarily close to the endpoints.
// ---------------------------------------------------------------------------

IntegrationResult tanh_sinh(const RealFn& f, double a, double b,
                            const QuadratureSpec& spec) {
    const double c = 0.5 * (a + b);
    const double d = 0.5 * (b - a);
    if (d == 0.0) return {0.0, 0.0};

    // Weights underflow beyond |t| ~ 6.1 (q ~ 1e-304 there).
    const double t_max = 6.1;

    double abs_sum = 0.0; // running sum of |w f| for the roundoff floor

    // Contribution of the symmetric node pair at +-t, t > 0. Nodes are placed
    // by their offset from the endpoints so the map stays accurate near a, b;
    // non-finite products (singular endpoint * underflowed weight) are dropped.
    auto term_pair = [&](double t) {
        const double u = 0.5 * M_PI * std::sinh(t);
        const double q = std::exp(-2.0 * u);
        const double offset = 2.0 * d * q / (1.0 + q);
        const double w = d * 0.5 * M_PI * std::cosh(t) * 4.0 * q / ((1.0 + q) * (1.0 + q));
        if (w == 0.0 || offset == 0.0) return 0.0;
        double total = 0.0;
        if (b - offset < b) { // node distinguishable from the endpoint
            const double hi = w * f(b - offset);
            if (std::isfinite(hi)) { total += hi; abs_sum += std::abs(hi); }
        }
        if (a + offset > a) {
            const double lo = w * f(a + offset);
            if (std::isfinite(lo)) { total += lo; abs_sum += std::abs(lo); }
        }
        return total;
    };

    // Level 0, h = 1: the midpoint plus pairs at t = 1..6.
    double sum = d * 0.5 * M_PI * f(c);
    abs_sum += std::abs(sum);
    for (double t = 1.0; t <= t_max; t += 1.0) sum += term_pair(t);
    double h = 1.0;
    double prev = h * sum;

    // Double-precision tanh-sinh saturates around level 12; deeper levels
    // only accumulate roundoff.
    const int max_level = std::min(spec.max_refinement_depth, 12);
    double best = prev;
    double best_err = std::numeric_limits<double>::infinity();
    for (int level = 1; level <= max_level; ++level) {
        h *= 0.5;
        for (double t = h; t <= t_max; t += 2.0 * h) sum += term_pair(t);
        const double cur = h * sum;
        const double err = std::abs(cur - prev);
        best = cur;
        best_err = err;
        if (level >= 2 && err <= tolerance_for(spec, cur)) return {cur, err};
        prev = cur;
    }
    // Roundoff floor relative to the accumulated magnitude.
    if (best_err <= 64.0 * std::numeric_limits<double>::epsilon() * h * abs_sum)
        return {best, best_err};
    throw NonConvergent("tanh-sinh quadrature did not converge", best, best_err);
}

// ---------------------------------------------------------------------------
// Gauss-Kronrod 7-15 (QUADPACK dqk15 constants; polynomial exactness is
// verified in the test suite).
// ---------------------------------------------------------------------------

constexpr double kXgk[8] = {
    0.991455371120813, 0.949107912342759, 0.864864423359769, 0.741531185599394,
    0.586087235467691, 0.405845151377397, 0.207784955007898, 0.000000000000000};
constexpr double kWgk[8] = {
    0.022935322010529, 0.063092092629979, 0.104790010322250, 0.140653259715525,
    0.169004726639267, 0.190350578064785, 0.204432940075298, 0.209482141084728};
constexpr double kWg[4] = {
    0.129484966168870, 0.279705391489277, 0.381830050505119, 0.417959183673469};

struct Segment {
    double a, b;
    double value;
    double err;
    int depth;
    bool operator<(const Segment& other) const { return err < other.err; }
};

Segment gk15(const RealFn& f, double a, double b, int depth) {
    const double c = 0.5 * (a + b);
    const double d = 0.5 * (b - a);
    double kron = kWgk[7] * f(c);
    double gauss = kWg[3] * f(c);
    for (int i = 0; i < 7; ++i) {
        const double fa = f(c - d * kXgk[i]);
        const double fb = f(c + d * kXgk[i]);
        kron += kWgk[i] * (fa + fb);
        if (i % 2 == 1) gauss += kWg[i / 2] * (fa + fb);
    }
    kron *= d;
    gauss *= d;
    return {a, b, kron, std::abs(kron - gauss), depth};
}

IntegrationResult gk_adaptive(const RealFn& f, double a, double b,
                              const QuadratureSpec& spec) {
    std::priority_queue<Segment> queue;
    Segment root = gk15(f, a, b, 0);
    double total = root.value;
    double total_err = root.err;
    queue.push(root);

    while (total_err > tolerance_for(spec, total)) {
        Segment worst = queue.top();
        queue.pop();
        if (worst.depth >= spec.max_refinement_depth)
            throw NonConvergent("Gauss-Kronrod refinement depth exhausted", total, total_err);
        const double mid = 0.5 * (worst.a + worst.b);
        Segment left = gk15(f, worst.a, mid, worst.depth + 1);
        Segment right = gk15(f, mid, worst.b, worst.depth + 1);
        total += left.value + right.value - worst.value;
        total_err += left.err + right.err - worst.err;
        queue.push(left);
        queue.push(right);
        if (queue.size() > 200000)
            throw NonConvergent("Gauss-Kronrod segment budget exhausted", total, total_err);
    }
    return {total, total_err};
}

// Truncation point for a decaying integrand on (a, inf): grow the span until
// |f| is below cut at several staggered probes (staggering dodges isolated
// zeros of sign-changing integrands).
double find_cutoff(const RealFn& f, double a, double cut) {
    constexpr double kProbes[6] = {1.0, 1.37, 1.73, 2.0, 2.74, 3.46};
    for (double span = 1.0; span <= 1.0e9; span *= 2.0) {
        bool decayed = true;
        for (double p : kProbes) {
            if (std::abs(f(a + span * p)) >= cut) {
                decayed = false;
                break;
            }
        }
        if (decayed) return a + 4.0 * span;
    }
    throw NonConvergent("semi-infinite integrand does not decay", 0.0,
                        std::numeric_limits<double>::infinity());
}

} // namespace

IntegrationResult integrate(const RealFn& f, double a, double b,
                            const QuadratureSpec& spec) {
    spec.validate();
    if (!std::isfinite(a)) throw std::invalid_argument("integrate: lower limit must be finite");
    if (std::isinf(b)) {
        const double floor_tol = spec.abs_tol > 0.0 ? spec.abs_tol : 1e-14;
        const double upper = find_cutoff(f, a, floor_tol / 1000.0);
        return tanh_sinh(f, a, upper, spec);
    }
    if (!(b >= a)) throw std::invalid_argument("integrate: reversed interval");
    if (a == b) return {0.0, 0.0};
    switch (spec.rule) {
        case QuadratureSpec::Rule::tanh_sinh:
            return tanh_sinh(f, a, b, spec);
        case QuadratureSpec::Rule::adaptive_gauss_kronrod:
        default:
            return gk_adaptive(f, a, b, spec);
    }
}

double l2_norm_halfline(const RealFn& f, const QuadratureSpec& spec) {
    auto square = [&f](double x) {
        const double v = f(x);
        return v * v;
    };
    const double integral = integrate(square, 0.0, std::numeric_limits<double>::infinity(), spec).value;
    return std::sqrt(2.0 * std::max(integral, 0.0));
}

double l2_norm_halfline(const ComplexFn& f, const QuadratureSpec& spec) {
    auto square = [&f](double x) { return std::norm(f(x)); };
    const double integral = integrate(square, 0.0, std::numeric_limits<double>::infinity(), spec).value;
    return std::sqrt(2.0 * std::max(integral, 0.0));
}

} // namespace heatreach
