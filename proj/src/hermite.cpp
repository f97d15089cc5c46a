#include "heatreach/hermite.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <memory>
#include <numbers>
#include <sstream>

namespace heatreach {

namespace {
constexpr int kMaxHermiteDegree = 200;
constexpr int kMaxBasisOrder = 12; // (2N+3)! growth caps double-precision use
} // namespace

double hermite_poly(int n, double x) {
    if (n < 0) throw std::invalid_argument("hermite_poly: negative degree");
    if (n > kMaxHermiteDegree) {
        std::ostringstream msg;
        msg << "hermite_poly: degree " << n << " exceeds guarded range " << kMaxHermiteDegree;
        throw DegreeTooLarge(msg.str());
    }
    double prev = 0.0; // H_{-1}
    double cur = 1.0;  // H_0
    for (int k = 0; k < n; ++k) {
        const double next = 2.0 * x * cur - 2.0 * k * prev;
        prev = cur;
        cur = next;
    }
    return cur;
}

double psi(int n, double x) { return hermite_poly(n, x) * std::exp(-0.5 * x * x); }

double psi_T(int n, double x, double T) {
    if (n < 0) throw std::invalid_argument("psi_T: negative order");
    if (!(T > 0.0)) throw std::invalid_argument("psi_T: T must be positive");
    return psi(2 * n + 1, x / std::sqrt(2.0 * T));
}

std::complex<double> psi_hat_T(int n, double sigma, double T) {
    if (n < 0) throw std::invalid_argument("psi_hat_T: negative order");
    if (!(T > 0.0)) throw std::invalid_argument("psi_hat_T: T must be positive");
    const double root = std::sqrt(2.0 * T);
    const double sign = (n % 2 == 0) ? -1.0 : 1.0; // (-1)^{n+1}
    return {0.0, sign * root * psi(2 * n + 1, root * sigma)};
}

double gram_diagonal(int n, double T) {
    if (n < 0 || n > kMaxBasisOrder) throw DegreeTooLarge("gram_diagonal: order outside [0,12]");
    if (!(T > 0.0)) throw std::invalid_argument("gram_diagonal: T must be positive");
    if (n <= 8) {
        double fact = 1.0;
        for (int k = 2; k <= 2 * n + 1; ++k) fact *= k;
        return std::sqrt(2.0 * std::numbers::pi * T) * std::ldexp(fact, 2 * n + 1);
    }
    const double log_value = 0.5 * std::log(2.0 * std::numbers::pi * T) +
                             (2 * n + 1) * std::numbers::ln2 + std::lgamma(2.0 * n + 2.0);
    return std::exp(log_value);
}

double basis_gram(int n, int m, double T, const QuadratureSpec& spec) {
    if (n < 0 || m < 0 || n > kMaxBasisOrder || m > kMaxBasisOrder)
        throw DegreeTooLarge("basis_gram: order outside [0,12]");
    if (!(T > 0.0)) throw std::invalid_argument("basis_gram: T must be positive");
    auto product = [n, m, T](double x) { return psi_T(n, x, T) * psi_T(m, x, T); };
    // psi_n^T psi_m^T is even, so the R-integral doubles the half-line value.
    return 2.0 * integrate(product, 0.0, std::numeric_limits<double>::infinity(), spec).value;
}

HermiteExpansion expand_target(const RealFn& target, int N, double T,
                               const QuadratureSpec& spec) {
    if (N < 0) throw std::invalid_argument("expand_target: negative truncation");
    if (N > kMaxBasisOrder) throw DegreeTooLarge("expand_target: truncation exceeds 12");
    if (!(T > 0.0)) throw std::invalid_argument("expand_target: T must be positive");
    HermiteExpansion out;
    out.T = T;
    out.coeffs.resize(static_cast<std::size_t>(N) + 1);
    for (int n = 0; n <= N; ++n) {
        auto product = [&target, n, T](double x) { return target(x) * psi_T(n, x, T); };
        const double inner =
            2.0 * integrate(product, 0.0, std::numeric_limits<double>::infinity(), spec).value;
        out.coeffs[static_cast<std::size_t>(n)] = inner / gram_diagonal(n, T);
    }
    return out;
}

double tail_energy(const HermiteExpansion& expansion, int from) {
    const int N = expansion.order();
    if (from < 0 || from > N + 1)
        throw std::invalid_argument("tail_energy: from outside [0, N+1]");
    double sum = 0.0;
    for (int n = from; n <= N; ++n) {
        const double c = expansion.coeffs[static_cast<std::size_t>(n)];
        sum += c * c * gram_diagonal(n, expansion.T);
    }
    return sum;
}

// ---------------------------------------------------------------------------
// SpectralProfile
// ---------------------------------------------------------------------------

SpectralProfile::SpectralProfile(Kind kind, ComplexFn eval)
    : kind_(kind), eval_(std::move(eval)) {
    if (!eval_) throw std::invalid_argument("SpectralProfile: empty evaluator");
}

SpectralProfile SpectralProfile::psi_hat(int n, double T) {
    if (n < 0) throw std::invalid_argument("SpectralProfile::psi_hat: negative order");
    if (!(T > 0.0)) throw std::invalid_argument("SpectralProfile::psi_hat: T must be positive");
    return SpectralProfile(Kind::psi_hat,
                           [n, T](double sigma) { return psi_hat_T(n, sigma, T); });
}

SpectralProfile SpectralProfile::custom(ComplexFn eval) {
    return SpectralProfile(Kind::custom, std::move(eval));
}

SpectralProfile SpectralProfile::from_samples(Grid grid,
                                              std::vector<std::complex<double>> values) {
    if (grid.size() != values.size())
        throw std::invalid_argument("SpectralProfile::from_samples: size mismatch");
    auto pts = std::make_shared<std::vector<double>>(grid.points());
    auto vals = std::make_shared<std::vector<std::complex<double>>>(std::move(values));
    auto eval = [pts, vals](double sigma) -> std::complex<double> {
        const auto& x = *pts;
        const auto& y = *vals;
        const double s = std::abs(sigma);
        // conjugate-odd extension: value(-sigma) = -conj(value(sigma))
        std::complex<double> v{0.0, 0.0};
        if (s >= x.front() && s <= x.back()) {
            auto it = std::upper_bound(x.begin(), x.end(), s);
            std::size_t hi = std::min<std::size_t>(static_cast<std::size_t>(it - x.begin()),
                                                   x.size() - 1);
            std::size_t lo = hi == 0 ? 0 : hi - 1;
            if (hi == lo)
                v = y[lo];
            else {
                const double w = (s - x[lo]) / (x[hi] - x[lo]);
                v = (1.0 - w) * y[lo] + w * y[hi];
            }
        }
        if (sigma < 0.0) return -std::conj(v);
        return v;
    };
    return SpectralProfile(Kind::samples, std::move(eval));
}

} // namespace heatreach
