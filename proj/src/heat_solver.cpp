#include "heatreach/heat_solver.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <memory>
#include <numbers>

namespace heatreach {

namespace {

const double kSqrt2OverPi = std::sqrt(2.0 / std::numbers::pi);

// erf(x / (2 sqrt(tau))) for x >= 0, with the tau -> 0+ right limit.
double erf_at(double x, double tau) {
    if (tau <= 0.0) return 1.0;
    return erf(x / (2.0 * std::sqrt(tau)));
}

// int_a^b e^{-xi z} d xi, cancellation-free, continuous at z = 0.
double exp_piece(double a, double b, double z) {
    if (z == 0.0) return b - a;
    return -std::exp(-a * z) * std::expm1(-(b - a) * z) / z;
}

// Targets generated by a control v in the xi variable, for x >= 0:
// c_j [erf(x/(2 sqrt(t_{j-1}))) - erf(x/(2 sqrt(t_j)))].
double control_target_value(const StepControl& v, double x) {
    const auto& tb = v.breakpoints();
    const auto& lv = v.levels();
    double sum = 0.0;
    for (std::size_t j = 0; j < lv.size(); ++j) {
        if (lv[j] == 0.0) continue;
        sum += lv[j] * (erf_at(x, tb[j]) - erf_at(x, tb[j + 1]));
    }
    return sum;
}

// Fourier image of the same target: -sqrt(2/pi) i sigma int_0^T e^{-xi sigma^2} v(xi) d xi.
std::complex<double> control_target_fourier(const StepControl& v, double sigma) {
    const double z = sigma * sigma;
    const auto& tb = v.breakpoints();
    const auto& lv = v.levels();
    double integral = 0.0;
    for (std::size_t j = 0; j < lv.size(); ++j) {
        if (lv[j] == 0.0) continue;
        integral += lv[j] * exp_piece(tb[j], tb[j + 1], z);
    }
    return {0.0, -kSqrt2OverPi * sigma * integral};
}

// Power-series branch of int_0^T xi e^{-z xi} d xi = T^2 g(Tz),
// g(w) = (1 - (1+w) e^{-w}) / w^2 = sum_{j>=0} (-1)^j (j+1) w^j / (j+2)!.
double ramp_weight(double w) {
    if (std::abs(w) < 0.5) {
        double sum = 0.0;
        double wpow = 1.0; // w^j
        double fact = 2.0; // (j+2)!
        for (int j = 0; j <= 40; ++j) {
            const double term = ((j % 2 == 0) ? 1.0 : -1.0) * (j + 1) * wpow / fact;
            sum += term;
            if (std::abs(term) < 1e-18 * std::abs(sum)) break;
            wpow *= w;
            fact *= (j + 3);
        }
        return sum;
    }
    return (1.0 - (1.0 + w) * std::exp(-w)) / (w * w);
}

} // namespace

// ---------------------------------------------------------------------------
// OddState
// ---------------------------------------------------------------------------

OddState::OddState(Kind kind, RealFn eval, ComplexFn fourier, std::optional<double> horizon)
    : kind_(kind), eval_(std::move(eval)), fourier_(std::move(fourier)), horizon_(horizon) {}

OddState OddState::zero() {
    return OddState(Kind::zero, [](double) { return 0.0; },
                    [](double) { return std::complex<double>{0.0, 0.0}; }, std::nullopt);
}

OddState OddState::basis_element(int n, double T) {
    if (n < 0) throw std::invalid_argument("OddState::basis_element: negative order");
    if (!(T > 0.0)) throw std::invalid_argument("OddState::basis_element: T must be positive");
    return OddState(
        Kind::basis_element, [n, T](double x) { return psi_T(n, x, T); },
        [n, T](double sigma) { return psi_hat_T(n, sigma, T); }, T);
}

OddState OddState::from_control(const StepControl& v) {
    auto shared = std::make_shared<StepControl>(v);
    return OddState(
        Kind::control_image,
        [shared](double x) {
            if (x < 0.0) return -control_target_value(*shared, -x);
            return control_target_value(*shared, x);
        },
        [shared](double sigma) { return control_target_fourier(*shared, sigma); }, v.T());
}

OddState OddState::example1(double T) {
    if (!(T > 0.0)) throw std::invalid_argument("OddState::example1: T must be positive");
    // Ramp control v(xi) = xi gives
    // W^T(x) = sqrt(T/pi) x e^{-x^2/(4T)} - (x^2/2) erfc(x/(2 sqrt(T))).
    auto eval = [T](double x) {
        const double s = x < 0.0 ? -1.0 : 1.0;
        const double ax = std::abs(x);
        const double a = ax / (2.0 * std::sqrt(T));
        return s * (std::sqrt(T / std::numbers::pi) * ax * std::exp(-a * a) -
                    0.5 * ax * ax * erfc(a));
    };
    auto fourier = [T](double sigma) -> std::complex<double> {
        const double z = sigma * sigma;
        return {0.0, -kSqrt2OverPi * sigma * T * T * ramp_weight(T * z)};
    };
    return OddState(Kind::example1, eval, fourier, T);
}

OddState OddState::example2(double T) {
    if (!(T > 0.0)) throw std::invalid_argument("OddState::example2: T must be positive");
    // v(xi) = 1 - xi: the constant part telescopes to erfc, the ramp part is example1.
    auto eval = [T](double x) {
        const double s = x < 0.0 ? -1.0 : 1.0;
        const double ax = std::abs(x);
        const double a = ax / (2.0 * std::sqrt(T));
        return s * ((1.0 + 0.5 * ax * ax) * erfc(a) -
                    std::sqrt(T / std::numbers::pi) * ax * std::exp(-a * a));
    };
    auto fourier = [T](double sigma) -> std::complex<double> {
        const double z = sigma * sigma;
        // int_0^T (1 - xi) e^{-z xi} d xi
        const double constant_part = (z == 0.0) ? T : -std::expm1(-T * z) / z;
        const double integral = constant_part - T * T * ramp_weight(T * z);
        return {0.0, -kSqrt2OverPi * sigma * integral};
    };
    return OddState(Kind::example2, eval, fourier, T);
}

OddState OddState::example3(double T) {
    if (!(T > 0.0)) throw std::invalid_argument("OddState::example3: T must be positive");
    const double amp_x = 2.0 * kSqrt2OverPi * std::exp(0.25);
    const double amp_s = 4.0 * std::sqrt(T / std::numbers::pi) * std::exp(-0.25);
    auto eval = [T, amp_x](double x) {
        return amp_x * std::exp(-x * x / (4.0 * T)) * std::sin(x / std::sqrt(2.0 * T));
    };
    auto fourier = [T, amp_s](double sigma) -> std::complex<double> {
        return {0.0, -amp_s * std::exp(-T * sigma * sigma) * std::sinh(std::sqrt(2.0 * T) * sigma)};
    };
    return OddState(Kind::example3, eval, fourier, T);
}

OddState OddState::from_samples(Grid grid, std::vector<double> values) {
    if (grid.domain() != Domain::half_line)
        throw std::invalid_argument("OddState::from_samples: grid must live on the half-line");
    if (grid.size() != values.size())
        throw std::invalid_argument("OddState::from_samples: size mismatch");
    auto pts = std::make_shared<std::vector<double>>(grid.points());
    auto vals = std::make_shared<std::vector<double>>(std::move(values));
    auto eval = [pts, vals](double x) -> double {
        const auto& xs = *pts;
        const auto& ys = *vals;
        const double s = x < 0.0 ? -1.0 : 1.0;
        const double ax = std::abs(x);
        if (ax < xs.front() || ax > xs.back()) return 0.0;
        auto it = std::upper_bound(xs.begin(), xs.end(), ax);
        std::size_t hi = std::min<std::size_t>(static_cast<std::size_t>(it - xs.begin()),
                                               xs.size() - 1);
        std::size_t lo = hi == 0 ? 0 : hi - 1;
        if (hi == lo) return s * ys[lo];
        const double w = (ax - xs[lo]) / (xs[hi] - xs[lo]);
        return s * ((1.0 - w) * ys[lo] + w * ys[hi]);
    };
    return OddState(Kind::samples, std::move(eval), ComplexFn{}, std::nullopt);
}

std::complex<double> OddState::fourier(double sigma) const {
    if (!fourier_) throw Error("OddState: no closed-form Fourier image for sampled states");
    return fourier_(sigma);
}

// ---------------------------------------------------------------------------
// Forward evaluation
// ---------------------------------------------------------------------------

namespace {

// Control term of the end state at time T for x > 0: the piece (a, b) of u occupies
// (T-b, T-a) in the xi = T - t variable and telescopes into erf differences.
double control_term_x(const StepControl& u, double x) {
    const double T = u.T();
    const auto& tb = u.breakpoints();
    const auto& lv = u.levels();
    double sum = 0.0;
    for (std::size_t j = 0; j < lv.size(); ++j) {
        if (lv[j] == 0.0) continue;
        sum += lv[j] * (erf_at(x, T - tb[j + 1]) - erf_at(x, T - tb[j]));
    }
    return sum;
}

// Heat-kernel convolution by the substitution y = x + 2 sqrt(t) s: the kernel
// becomes e^{-s^2}/sqrt(pi), spectrally friendly for quadrature.
double homogeneous_term(const OddState& w0, double x, double t, const QuadratureSpec& spec) {
    const double root = 2.0 * std::sqrt(t);
    auto integrand = [&w0, x, root](double s) {
        return std::exp(-s * s) * (w0(x + root * s) + w0(x - root * s));
    };
    try {
        const double integral =
            integrate(integrand, 0.0, std::numeric_limits<double>::infinity(), spec).value;
        return integral / std::sqrt(std::numbers::pi);
    } catch (const NonConvergent& e) {
        if (w0.kind() == OddState::Kind::samples)
            throw QuadratureFailure(std::string("convolution quadrature failed: ") + e.what());
        throw;
    }
}

} // namespace

double end_state_x(const StepControl& u, const OddState& w0, double x,
                   const QuadratureSpec& spec) {
    if (x < 0.0) return -end_state_x(u, w0, -x, spec);
    double value = control_term_x(u, x);
    if (!w0.is_zero()) value += homogeneous_term(w0, x, u.T(), spec);
    return value;
}

double state_at(const StepControl& u, const OddState& w0, double x, double t,
                const QuadratureSpec& spec) {
    if (!(t > 0.0) || t > u.T())
        throw std::invalid_argument("state_at: t outside (0, T]");
    return end_state_x(u.restricted(t), w0, x, spec);
}

std::complex<double> end_state_sigma(const StepControl& u, const OddState& w0, double sigma) {
    const double T = u.T();
    const double z = sigma * sigma;
    std::complex<double> out{0.0, 0.0};
    if (!w0.is_zero()) out = std::exp(-T * z) * w0.fourier(sigma);

    // int_0^T e^{-(T-xi) sigma^2} u(xi) d xi, per piece via the s = T - xi flip.
    const auto& tb = u.breakpoints();
    const auto& lv = u.levels();
    double integral = 0.0;
    for (std::size_t j = 0; j < lv.size(); ++j) {
        if (lv[j] == 0.0) continue;
        integral += lv[j] * exp_piece(T - tb[j + 1], T - tb[j], z);
    }
    out += std::complex<double>{0.0, -kSqrt2OverPi * sigma * integral};
    return out;
}

double linfty_envelope(const StepControl& u, double sigma, double t) {
    if (sigma == 0.0) throw std::invalid_argument("linfty_envelope: sigma must be nonzero");
    if (t < 0.0 || t > u.T()) throw std::invalid_argument("linfty_envelope: t outside [0, T]");
    return kSqrt2OverPi * u.sup_norm() * (-std::expm1(-t * sigma * sigma)) / std::abs(sigma);
}

double error_norm(const OddState& a, const OddState& b, const QuadratureSpec& spec) {
    return l2_norm_halfline(RealFn([&a, &b](double x) { return a(x) - b(x); }), spec);
}

double error_norm(const SpectralProfile& a, const SpectralProfile& b,
                  const QuadratureSpec& spec) {
    return l2_norm_halfline(ComplexFn([&a, &b](double s) { return a(s) - b(s); }), spec);
}

SpectralProfile sigma_image(const StepControl& u, const OddState& w0) {
    auto uc = std::make_shared<StepControl>(u);
    auto wc = std::make_shared<OddState>(w0);
    return SpectralProfile(SpectralProfile::Kind::control_image, [uc, wc](double sigma) {
        return end_state_sigma(*uc, *wc, sigma);
    });
}

SpectralProfile fourier_image(const OddState& w) {
    auto wc = std::make_shared<OddState>(w);
    return SpectralProfile(SpectralProfile::Kind::target_image,
                           [wc](double sigma) { return wc->fourier(sigma); });
}

} // namespace heatreach
