#pragma once

#include <complex>
#include <optional>

#include "heatreach/control.hpp"
#include "heatreach/hermite.hpp"
#include "heatreach/numerics.hpp"

namespace heatreach {

/// An odd function on R represented on the half-line: the system state
/// W(., t) or a target W^T. Held as a closed-form tag or grid samples.
/// Values at x < 0 come from the odd extension; x = 0 evaluates the right
/// limit x -> 0+ (odd states may jump across 0).
class OddState {
public:
    enum class Kind { zero, basis_element, control_image, example1, example2, example3, samples };

    static OddState zero();

    /// The basis member psi_n^T.
    static OddState basis_element(int n, double T);

    /// The target generated by v through W^T = sqrt(2/pi) x
    /// int_0^T e^{-x^2/(4 xi)} v(xi) (2 xi)^{-3/2} d xi, i.e. the end state
    /// of the system driven by u(t) = v(T - t). Evaluated by exact erf
    /// telescoping per piece.
    static OddState from_control(const StepControl& v);

    /// The reference targets (horizon parameter; the tabulated values use T = 1).
    static OddState example1(double T = 1.0);
    static OddState example2(double T = 1.0);
    static OddState example3(double T = 1.0);

    /// Linear interpolation of samples on a half-line grid, odd-extended,
    /// zero beyond the last abscissa. No closed Fourier image.
    static OddState from_samples(Grid grid, std::vector<double> values);

    double operator()(double x) const { return eval_(x); }

    /// Fourier image (unitary convention). Throws Error for sampled states.
    std::complex<double> fourier(double sigma) const;

    bool has_closed_fourier() const { return kind_ != Kind::samples; }
    bool is_zero() const { return kind_ == Kind::zero; }
    Kind kind() const { return kind_; }

    /// Horizon T used by the tag, when one is attached.
    std::optional<double> horizon() const { return horizon_; }

private:
    OddState(Kind kind, RealFn eval, ComplexFn fourier, std::optional<double> horizon);

    Kind kind_;
    RealFn eval_;
    ComplexFn fourier_; // empty for samples
    std::optional<double> horizon_;
};

/// End state W(x, T) of W_t = W_xx - 2 u delta', W(.,0) = W0, driven by u.
/// The control term telescopes exactly into erf differences per piece; the
/// homogeneous term is evaluated by Gauss-substituted quadrature (zero work
/// when W0 = 0).
double end_state_x(const StepControl& u, const OddState& w0, double x,
                   const QuadratureSpec& spec = {});

/// State W(x, t) at an interior time 0 < t <= T.
double state_at(const StepControl& u, const OddState& w0, double x, double t,
                const QuadratureSpec& spec = {});

/// Fourier-side end state V(sigma, T) = e^{-T sigma^2} V0(sigma)
/// - sqrt(2/pi) i sigma int_0^T e^{-(T-xi) sigma^2} u(xi) d xi, with the
/// control integral in closed form per piece (continuous at sigma = 0).
std::complex<double> end_state_sigma(const StepControl& u, const OddState& w0,
                                     double sigma);

/// sqrt(2/pi) ||u||_inf (1 - e^{-t sigma^2}) / |sigma|, the W0 = 0 envelope.
/// Requires sigma != 0.
double linfty_envelope(const StepControl& u, double sigma, double t);

/// L2(R) norm of the difference, by half-line quadrature doubled.
double error_norm(const OddState& a, const OddState& b,
                  const QuadratureSpec& spec = {});
double error_norm(const SpectralProfile& a, const SpectralProfile& b,
                  const QuadratureSpec& spec = {});

/// V(., T) for the pair (u, W0) as a profile on the Fourier side.
SpectralProfile sigma_image(const StepControl& u, const OddState& w0);

/// Fourier image of a closed-form state as a profile.
SpectralProfile fourier_image(const OddState& w);

} // namespace heatreach
