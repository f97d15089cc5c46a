#include "heatreach/reach_synth.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

#include "heatreach/heat_solver.hpp"

namespace heatreach {

namespace {
constexpr int kMaxOrder = 12;

double binomial(int n, int j) {
    double c = 1.0;
    for (int i = 0; i < j; ++i) c = c * (n - i) / (i + 1);
    return c;
}
} // namespace

StepControl step_control(int n, int l, double T) {
    if (n < 0) throw std::invalid_argument("step_control: negative order");
    if (l < 1) throw std::invalid_argument("step_control: l must be >= 1");
    if (!(T > 0.0)) throw std::invalid_argument("step_control: T must be positive");
    const double support = (n + 1.0) / l;
    if (support > T) {
        std::ostringstream msg;
        msg << "step_control: support (n+1)/l = " << support << " exceeds horizon " << T;
        throw SupportExceedsHorizon(msg.str());
    }
    std::vector<double> breaks;
    std::vector<double> levels;
    const double height = std::pow(static_cast<double>(l), n + 1.0);
    breaks.push_back(0.0);
    for (int j = 0; j <= n; ++j) {
        breaks.push_back((j + 1.0) / l);
        levels.push_back((((n - j) % 2 == 0) ? 1.0 : -1.0) * binomial(n, j) * height);
    }
    if (T - breaks.back() > 1e-15) {
        breaks.push_back(T);
        levels.push_back(0.0);
    } else {
        breaks.back() = T;
    }
    return StepControl(std::move(breaks), std::move(levels));
}

double h_coeff(int p, int n, double T) {
    if (p < 0 || n < p) throw std::invalid_argument("h_coeff: need 0 <= p <= n");
    if (n > kMaxOrder) throw DegreeTooLarge("h_coeff: n exceeds 12");
    if (!(T > 0.0)) throw std::invalid_argument("h_coeff: T must be positive");
    const double sign = (p % 2 == 0) ? -1.0 : 1.0; // (-1)^{p+1}
    if (n <= 8) {
        double fact2n1 = 1.0;
        for (int k = 2; k <= 2 * n + 1; ++k) fact2n1 *= k;
        double factnp = 1.0;
        for (int k = 2; k <= n - p; ++k) factnp *= k;
        double fact2p1 = 1.0;
        for (int k = 2; k <= 2 * p + 1; ++k) fact2p1 *= k;
        return sign * std::ldexp(std::pow(2.0 * T, p + 1.0), 2 * p + 1) * fact2n1 /
               (factnp * fact2p1);
    }
    const double log_mag = (2 * p + 1) * std::numbers::ln2 + (p + 1) * std::log(2.0 * T) +
                           std::lgamma(2.0 * n + 2.0) - std::lgamma(n - p + 1.0) -
                           std::lgamma(2.0 * p + 2.0);
    return sign * std::exp(log_mag);
}

double phi(int n, double sigma, double T) {
    if (n < 0) throw std::invalid_argument("phi: negative order");
    return std::pow(sigma, 2.0 * n + 1.0) * std::exp(-T * sigma * sigma);
}

double phi_l(int n, int l, double sigma, double T) {
    if (n < 0) throw std::invalid_argument("phi_l: negative order");
    if (l < 1) throw std::invalid_argument("phi_l: l must be >= 1");
    const double z = sigma * sigma / l;
    // ((e^z - 1)/z)^{n+1} = e^{(n+1) z} ((1 - e^{-z})/z)^{n+1}; folding the
    // e^{(n+1) z} into the Gaussian keeps large sigma overflow-free.
    const double shaved = (z < 1e-14) ? 1.0 : -std::expm1(-z) / z;
    return std::pow(sigma, 2.0 * n + 1.0) *
           std::exp(-sigma * sigma * (T - (n + 1.0) / l)) * std::pow(shaved, n + 1.0);
}

SpectralProfile phi_profile(int n, double T) {
    return SpectralProfile(SpectralProfile::Kind::phi, [n, T](double sigma) {
        return std::complex<double>{phi(n, sigma, T), 0.0};
    });
}

SpectralProfile phi_l_profile(int n, int l, double T) {
    return SpectralProfile(SpectralProfile::Kind::phi_l, [n, l, T](double sigma) {
        return std::complex<double>{phi_l(n, l, sigma, T), 0.0};
    });
}

bool envelope_condition_holds(int n, int l, double T) {
    return l > (2.0 * n + 2.0) / T;
}

bool tail_estimate_condition_holds(int p, int l, double T) {
    return (p + 1.0) / l < T / 4.0;
}

bool SynthesisPlan::meets_envelope_condition() const {
    for (std::size_t p = 0; p < l_per_p.size(); ++p)
        if (!envelope_condition_holds(static_cast<int>(p), l_per_p[p], T)) return false;
    return true;
}

std::pair<SynthesisPlan, StepControl> synthesize(const HermiteExpansion& expansion,
                                                 const std::vector<int>& l_per_p) {
    const int N = expansion.order();
    if (N < 0) throw std::invalid_argument("synthesize: empty expansion");
    if (N > kMaxOrder) throw DegreeTooLarge("synthesize: truncation exceeds 12");
    if (static_cast<int>(l_per_p.size()) != N + 1)
        throw std::invalid_argument("synthesize: need one l per p = 0..N");
    const double T = expansion.T;

    SynthesisPlan plan;
    plan.N = N;
    plan.l_per_p = l_per_p;
    plan.T = T;
    plan.g.resize(static_cast<std::size_t>(N) + 1);
    for (int p = 0; p <= N; ++p) {
        double g = 0.0;
        for (int n = p; n <= N; ++n)
            g += expansion.coeffs[static_cast<std::size_t>(n)] * h_coeff(p, n, T);
        plan.g[static_cast<std::size_t>(p)] = g;
    }

    const double scale = -std::sqrt(std::numbers::pi / 2.0);
    std::vector<StepControl> parts;
    std::vector<double> weights;
    parts.reserve(static_cast<std::size_t>(N) + 1);
    for (int p = 0; p <= N; ++p) {
        parts.push_back(step_control(p, l_per_p[static_cast<std::size_t>(p)], T));
        weights.push_back(scale * plan.g[static_cast<std::size_t>(p)]);
    }
    StepControl u_N = superpose(parts, weights);
    return {std::move(plan), std::move(u_N)};
}

std::pair<double, double> epsilon_bounds(int N, int l, double T) {
    if (N < 0) throw std::invalid_argument("epsilon_bounds: negative truncation");
    if (N > kMaxOrder) throw DegreeTooLarge("epsilon_bounds: truncation exceeds 12");
    if (l < 1) throw std::invalid_argument("epsilon_bounds: l must be >= 1");
    if (!(T > 0.0)) throw std::invalid_argument("epsilon_bounds: T must be positive");

    double fact = 1.0; // (2N+3)!
    for (int k = 2; k <= 2 * N + 3; ++k) fact *= k;
    const double eps1 = std::sqrt(8.0) * std::pow(2.0 * T / std::numbers::pi, 0.25) *
                        std::sqrt(std::cosh(0.5) / (std::ldexp(1.0, 2 * N + 3) * fact));

    double sum = 0.0;
    for (int p = 0; p <= N; ++p) {
        double fp2 = 1.0; // (p+2)!
        for (int k = 2; k <= p + 2; ++k) fp2 *= k;
        double f2p1 = 1.0; // (2p+1)!
        for (int k = 2; k <= 2 * p + 1; ++k) f2p1 *= k;
        sum += std::ldexp(1.0, 2 * p) * std::sqrt(p + 2.0) * fp2 / f2p1;
    }
    const double eps2 = std::pow(2.0, 2.75) *
                        std::pow(1.0 / (T * T * T * std::pow(std::numbers::pi, 3.0) *
                                        std::numbers::e),
                                 0.25) *
                        sum / l;
    return {eps1, eps2};
}

std::pair<double, double> epsilon_bounds_rounded(int N, int l, double T) {
    auto [e1, e2] = epsilon_bounds(N, l, T);
    auto ceil4 = [](double x) { return std::ceil(x * 1e4) / 1e4; };
    return {ceil4(e1), ceil4(e2)};
}

double verify_identity_phi(int n, int l, double T, const Grid& sigma_grid) {
    StepControl u = step_control(n, l, T);
    const OddState w0 = OddState::zero();
    const double amp = std::sqrt(2.0 / std::numbers::pi);
    double worst = 0.0;
    for (double sigma : sigma_grid.points()) {
        const std::complex<double> lhs = end_state_sigma(u, w0, sigma);
        const std::complex<double> rhs{0.0, amp * phi_l(n, l, sigma, T)};
        worst = std::max(worst, std::abs(lhs + rhs));
    }
    return worst;
}

} // namespace heatreach
