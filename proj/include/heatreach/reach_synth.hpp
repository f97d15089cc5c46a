#pragma once

#include <utility>
#include <vector>

#include "heatreach/control.hpp"
#include "heatreach/hermite.hpp"
#include "heatreach/numerics.hpp"

namespace heatreach {

/// The staircase control u_l^n: level (-1)^{n-j} C(n,j) l^{n+1} on
/// (j/l, (j+1)/l) for j = 0..n, zero on [(n+1)/l, T]. Mimics delta^{(n)} as
/// l grows. Throws SupportExceedsHorizon when (n+1)/l > T.
StepControl step_control(int n, int l, double T);

/// h_p^n = (-1)^{p+1} 2^{2p+1} (2T)^{p+1} (2n+1)! / ((n-p)! (2p+1)!),
/// the expansion of psi_hat_n^T over the profiles phi_p. Log-space for n > 8;
/// guarded at n <= 12.
double h_coeff(int p, int n, double T);

/// phi_n(sigma) = sigma^{2n+1} e^{-T sigma^2}.
double phi(int n, double sigma, double T);

/// phi_n^l(sigma) = phi_n(sigma) ((e^{sigma^2/l} - 1)/(sigma^2/l))^{n+1},
/// evaluated cancellation-free (the sigma -> 0 limit is handled analytically).
double phi_l(int n, int l, double sigma, double T);

/// Profile wrappers for the two kinds above.
SpectralProfile phi_profile(int n, double T);
SpectralProfile phi_l_profile(int n, int l, double T);

/// Sufficient resolution for the envelope |phi_n^l| <=
/// sigma^{2n+1} e^{-sigma^2 T/2}: l > (2n+2)/T.
bool envelope_condition_holds(int n, int l, double T);

/// Stricter resolution (p+1)/l < T/4 under which the tail estimate for
/// ||phi_p - phi_p^l|| applies.
bool tail_estimate_condition_holds(int p, int l, double T);

struct SynthesisPlan {
    int N = 0;
    std::vector<int> l_per_p;
    double T = 1.0;
    std::vector<double> g; // g_p^N = sum_{n=p}^N omega_n h_p^n

    bool meets_envelope_condition() const;
};

/// Build u_N = -sqrt(pi/2) sum_p g_p^N u_{l_p}^p, merged onto a common
/// breakpoint refinement. l_per_p.size() must equal expansion.order() + 1.
std::pair<SynthesisPlan, StepControl> synthesize(const HermiteExpansion& expansion,
                                                 const std::vector<int>& l_per_p);

/// The two bound terms for ||V^T - V_N^l||_0 of the reference example:
/// eps1 = sqrt(8) (2T/pi)^{1/4} sqrt(cosh(1/2) / (2^{2N+3} (2N+3)!)),
/// eps2 = 2^{11/4} (T^3 pi^3 e)^{-1/4} (1/l) sum_{p=0}^N 2^{2p} sqrt(p+2) (p+2)!/(2p+1)!.
std::pair<double, double> epsilon_bounds(int N, int l, double T);

/// The bound terms rounded up to four decimals. Rounding up keeps them valid
/// upper bounds; this is the convention the reference table is printed with.
std::pair<double, double> epsilon_bounds_rounded(int N, int l, double T);

/// Max over the grid of |V(sigma, T) driven by u_l^n  +  sqrt(2/pi) i phi_n^l(sigma)|;
/// the two sides agree identically, so this measures rounding only.
double verify_identity_phi(int n, int l, double T, const Grid& sigma_grid);

} // namespace heatreach
