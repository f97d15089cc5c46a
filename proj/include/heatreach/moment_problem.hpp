#pragma once

#include <vector>

#include "heatreach/control.hpp"
#include "heatreach/heat_solver.hpp"
#include "heatreach/numerics.hpp"

namespace heatreach {

/// Power moments omega_0..omega_N of a control on [0, T] with L-infinity
/// bound L. For any admissible control, |omega_n| <= L T^{n+1} / (n+1).
struct MomentVector {
    double T = 1.0;
    double L = 1.0;
    std::vector<double> omegas;

    int order() const { return static_cast<int>(omegas.size()) - 1; }
    bool satisfies_trivial_bound(double slack = 1e-9) const;
};

/// omega_n = n!/(2n+1)! int_0^inf x^{2n+1} W^T(x) dx, n = 0..N. The horizon
/// is taken from the state's tag unless given explicitly.
MomentVector moments_of_target(const OddState& w_T, int N,
                               const QuadratureSpec& spec = {}, double L = 1.0);
MomentVector moments_of_target(const OddState& w_T, int N, double T,
                               const QuadratureSpec& spec, double L);

/// Exact piecewise power integrals int_0^T xi^n v(xi) d xi, n = 0..N.
MomentVector moments_of_control(const StepControl& v, int N);

struct NecessaryCondition {
    double lhs;
    double rhs;
    bool satisfied;
};

/// Weighted-integral test int_0^inf e^{x^2/(4 T*)} |W^T| dx against
/// L sqrt(T*/pi) ln((sqrt(T*) + sqrt(T)) / (sqrt(T*) - sqrt(T))), T* > T.
/// A violation certifies W^T unreachable with bound L.
NecessaryCondition necessary_condition(const OddState& w_T, double T, double L,
                                       double T_star,
                                       const QuadratureSpec& spec = {});

/// Switching points of a {0,1} control matching prescribed moments:
/// v = 1 on [nu_{2p-1}, nu_{2p}], 0 elsewhere, with
/// 0 = nu_0 <= nu_1 <= ... <= nu_{2P} <= nu_{2P+1} = T.
struct BangBangSolution {
    std::vector<double> nu; // length 2P+2 including the endpoints 0 and T
    int P = 0;
    double T = 1.0;
    std::vector<double> residuals; // achieved moment errors, length 2P
    bool converged = false;

    double residual_inf() const;

    /// Induced step control; coinciding switching points are collapsed.
    StepControl to_control() const;
};

/// Damped Newton on the switching points (Vandermonde-structured Jacobian)
/// with ordered-simplex projection and deterministic multistart. Requires
/// target.omegas.size() == 2P and the trivial moment bound. On failure the
/// best iterate is returned with converged = false; InfeasibleOrdering is
/// thrown only when every start collapses.
BangBangSolution solve_bang_bang(const MomentVector& target, int P,
                                 const std::vector<double>& init = {});

/// mu_m(xi) = (-1)^m (2m+1)!/m! * 2 sqrt(2) T* / (T*-xi)^{3/2}
///            * ((T*+xi)/(T*-xi))^m, for 0 <= xi < T*, m <= 10.
double mu_closed_form(int m, double xi, double T_star);

} // namespace heatreach
