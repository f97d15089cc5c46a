#pragma once

#include <complex>
#include <vector>

#include "heatreach/numerics.hpp"

namespace heatreach {

/// Physicists' Hermite polynomial H_n(x) by the three-term recurrence
/// H_{n+1} = 2x H_n - 2n H_{n-1}. Guarded at n <= 200 (DegreeTooLarge).
double hermite_poly(int n, double x);

/// Hermite function H_n(x) e^{-x^2/2}.
double psi(int n, double x);

/// Scaled odd basis member psi_{2n+1}(x / sqrt(2T)).
double psi_T(int n, double x, double T);

/// Fourier image of psi_T: (-1)^{n+1} i sqrt(2T) psi_{2n+1}(sqrt(2T) sigma).
/// Purely imaginary for real sigma.
std::complex<double> psi_hat_T(int n, double sigma, double T);

/// Closed-form Gram diagonal <psi_n^T, psi_n^T> = sqrt(2 pi T) 2^{2n+1} (2n+1)!.
/// Evaluated in log space for n > 8. Guarded at n <= 12.
double gram_diagonal(int n, double T);

/// Quadrature value of <psi_n^T, psi_m^T> over R. Guarded at n, m <= 12.
double basis_gram(int n, int m, double T, const QuadratureSpec& spec = {});

/// Coefficients of a target in the basis {psi_n^T}, n = 0..N.
struct HermiteExpansion {
    double T = 1.0;
    std::vector<double> coeffs; // omega_0 .. omega_N

    int order() const { return static_cast<int>(coeffs.size()) - 1; }
};

/// omega_n = <target, psi_n^T> / <psi_n^T, psi_n^T> by half-line quadrature
/// (target odd, so the inner product doubles). N <= 12.
HermiteExpansion expand_target(const RealFn& target, int N, double T,
                               const QuadratureSpec& spec = {});

/// Partial Parseval sum sqrt(2 pi T) sum_{n=from}^{N} |omega_n|^2 2^{2n+1} (2n+1)!.
/// from == N+1 gives 0.
double tail_energy(const HermiteExpansion& expansion, int from);

/// A function of sigma on the Fourier side, held as a tagged evaluator.
/// Real-valued kinds are odd; the i * (real odd) kinds are conjugate-odd.
class SpectralProfile {
public:
    enum class Kind { phi, phi_l, psi_hat, control_image, target_image, samples, custom };

    SpectralProfile(Kind kind, ComplexFn eval);

    static SpectralProfile psi_hat(int n, double T);
    static SpectralProfile custom(ComplexFn eval);
    static SpectralProfile from_samples(Grid grid,
                                        std::vector<std::complex<double>> values);

    std::complex<double> operator()(double sigma) const { return eval_(sigma); }
    Kind kind() const { return kind_; }

private:
    Kind kind_;
    ComplexFn eval_;
};

} // namespace heatreach
