#include "heatreach/moment_problem.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

namespace heatreach {

bool MomentVector::satisfies_trivial_bound(double slack) const {
    for (std::size_t n = 0; n < omegas.size(); ++n) {
        const double bound = L * std::pow(T, static_cast<double>(n) + 1.0) / (n + 1.0);
        if (std::abs(omegas[n]) > bound * (1.0 + slack) + slack) return false;
    }
    return true;
}

MomentVector moments_of_target(const OddState& w_T, int N, const QuadratureSpec& spec,
                               double L) {
    const auto horizon = w_T.horizon();
    if (!horizon)
        throw std::invalid_argument("moments_of_target: state carries no horizon; pass T explicitly");
    return moments_of_target(w_T, N, *horizon, spec, L);
}

MomentVector moments_of_target(const OddState& w_T, int N, double T,
                               const QuadratureSpec& spec, double L) {
    if (N < 0) throw std::invalid_argument("moments_of_target: negative order");
    if (!(T > 0.0) || !(L > 0.0))
        throw std::invalid_argument("moments_of_target: T and L must be positive");
    MomentVector out;
    out.T = T;
    out.L = L;
    out.omegas.resize(static_cast<std::size_t>(N) + 1);
    for (int n = 0; n <= N; ++n) {
        auto weighted = [&w_T, n](double x) {
            return std::pow(x, 2.0 * n + 1.0) * w_T(x);
        };
        const double integral =
            integrate(weighted, 0.0, std::numeric_limits<double>::infinity(), spec).value;
        // n!/(2n+1)! in log space keeps large n safe.
        const double ratio = std::exp(std::lgamma(n + 1.0) - std::lgamma(2.0 * n + 2.0));
        out.omegas[static_cast<std::size_t>(n)] = ratio * integral;
    }
    return out;
}

MomentVector moments_of_control(const StepControl& v, int N) {
    if (N < 0) throw std::invalid_argument("moments_of_control: negative order");
    MomentVector out;
    out.T = v.T();
    out.L = std::max(v.sup_norm(), 1.0);
    out.omegas.assign(static_cast<std::size_t>(N) + 1, 0.0);
    const auto& tb = v.breakpoints();
    const auto& lv = v.levels();
    for (int n = 0; n <= N; ++n) {
        double sum = 0.0;
        for (std::size_t j = 0; j < lv.size(); ++j) {
            if (lv[j] == 0.0) continue;
            sum += lv[j] * (std::pow(tb[j + 1], n + 1.0) - std::pow(tb[j], n + 1.0));
        }
        out.omegas[static_cast<std::size_t>(n)] = sum / (n + 1.0);
    }
    return out;
}

NecessaryCondition necessary_condition(const OddState& w_T, double T, double L,
                                       double T_star, const QuadratureSpec& spec) {
    if (!(T_star > T)) throw std::invalid_argument("necessary_condition: T* must exceed T");
    if (!(T > 0.0) || !(L > 0.0))
        throw std::invalid_argument("necessary_condition: T and L must be positive");
    auto weighted = [&w_T, T_star](double x) {
        return std::exp(x * x / (4.0 * T_star)) * std::abs(w_T(x));
    };
    const double lhs =
        integrate(weighted, 0.0, std::numeric_limits<double>::infinity(), spec).value;
    const double rT = std::sqrt(T_star);
    const double rt = std::sqrt(T);
    const double rhs = L * std::sqrt(T_star / std::numbers::pi) * std::log((rT + rt) / (rT - rt));
    const double tol = 1e-10 * std::max(1.0, rhs);
    return {lhs, rhs, lhs <= rhs + tol};
}

// ---------------------------------------------------------------------------
// Bang-bang moment solver: damped Newton on the switching points.
// ---------------------------------------------------------------------------

namespace {

// F_n(nu) = sum_p (nu_{2p+1}^{n+1} - nu_{2p}^{n+1})/(n+1) - omega_n, 0-based
// pairs (lower endpoints at even positions).
std::vector<double> moment_residual(const std::vector<double>& nu,
                                    const std::vector<double>& omega) {
    const std::size_t m = omega.size();
    std::vector<double> F(m, 0.0);
    for (std::size_t n = 0; n < m; ++n) {
        double s = 0.0;
        for (std::size_t p = 0; 2 * p + 1 < nu.size(); ++p)
            s += (std::pow(nu[2 * p + 1], n + 1.0) - std::pow(nu[2 * p], n + 1.0)) / (n + 1.0);
        F[n] = s - omega[n];
    }
    return F;
}

double norm_inf(const std::vector<double>& v) {
    double m = 0.0;
    for (double x : v) m = std::max(m, std::abs(x));
    return m;
}

double norm2(const std::vector<double>& v) {
    double s = 0.0;
    for (double x : v) s += x * x;
    return std::sqrt(s);
}

// Solve J x = rhs by partial-pivot LU; returns false on a vanishing pivot.
bool lu_solve(std::vector<std::vector<double>> J, std::vector<double> rhs,
              std::vector<double>& x) {
    const std::size_t m = rhs.size();
    for (std::size_t col = 0; col < m; ++col) {
        std::size_t piv = col;
        for (std::size_t r = col + 1; r < m; ++r)
            if (std::abs(J[r][col]) > std::abs(J[piv][col])) piv = r;
        if (std::abs(J[piv][col]) < 1e-300) return false;
        std::swap(J[piv], J[col]);
        std::swap(rhs[piv], rhs[col]);
        for (std::size_t r = col + 1; r < m; ++r) {
            const double factor = J[r][col] / J[col][col];
            if (factor == 0.0) continue;
            for (std::size_t c = col; c < m; ++c) J[r][c] -= factor * J[col][c];
            rhs[r] -= factor * rhs[col];
        }
    }
    x.assign(m, 0.0);
    for (std::size_t ri = m; ri-- > 0;) {
        double s = rhs[ri];
        for (std::size_t c = ri + 1; c < m; ++c) s -= J[ri][c] * x[c];
        x[ri] = s / J[ri][ri];
    }
    return true;
}

// Project onto the ordered simplex {0 <= nu_1 <= ... <= nu_{2P} <= T}.
bool project(std::vector<double>& nu, double T) {
    for (double& x : nu) {
        if (!std::isfinite(x)) return false;
        x = std::clamp(x, 0.0, T);
    }
    std::sort(nu.begin(), nu.end());
    return true;
}

struct NewtonOutcome {
    std::vector<double> nu;
    std::vector<double> residual;
    bool converged = false;
};

NewtonOutcome newton_from(std::vector<double> nu, const std::vector<double>& omega,
                          double T) {
    const std::size_t m = omega.size();
    NewtonOutcome out;
    if (!project(nu, T)) return out;
    std::vector<double> F = moment_residual(nu, omega);
    double fn = norm2(F);
    for (int iter = 0; iter < 80; ++iter) {
        if (norm_inf(F) <= 1e-13) break;
        std::vector<std::vector<double>> J(m, std::vector<double>(m, 0.0));
        for (std::size_t n = 0; n < m; ++n)
            for (std::size_t i = 0; i < m; ++i) {
                const double sign = (i % 2 == 0) ? -1.0 : 1.0;
                J[n][i] = sign * std::pow(nu[i], static_cast<double>(n));
            }
        std::vector<double> rhs(m);
        for (std::size_t n = 0; n < m; ++n) rhs[n] = -F[n];
        std::vector<double> delta;
        if (!lu_solve(J, rhs, delta)) {
            // Coinciding points make the Vandermonde columns collapse; nudge.
            for (std::size_t i = 1; i < nu.size(); ++i)
                if (nu[i] - nu[i - 1] < 1e-9) nu[i] = std::min(T, nu[i] + 1e-6 * (1.0 + i));
            if (!project(nu, T)) return out;
            F = moment_residual(nu, omega);
            fn = norm2(F);
            continue;
        }
        bool stepped = false;
        for (double lambda = 1.0; lambda >= 1e-10; lambda *= 0.5) {
            std::vector<double> trial(nu);
            for (std::size_t i = 0; i < m; ++i) trial[i] += lambda * delta[i];
            if (!project(trial, T)) continue;
            std::vector<double> Ft = moment_residual(trial, omega);
            const double fnt = norm2(Ft);
            if (fnt < (1.0 - 1e-4 * lambda) * fn) {
                nu = std::move(trial);
                F = std::move(Ft);
                fn = fnt;
                stepped = true;
                break;
            }
        }
        if (!stepped) break;
    }
    out.nu = nu;
    out.residual = F;
    out.converged = norm_inf(F) <= 1e-11;
    return out;
}

} // namespace

double BangBangSolution::residual_inf() const { return norm_inf(residuals); }

StepControl BangBangSolution::to_control() const {
    std::vector<double> breaks;
    std::vector<double> levels;
    breaks.push_back(0.0);
    const std::size_t switch_count = nu.size() - 2; // interior points nu_1..nu_2P
    for (std::size_t i = 1; i <= switch_count; ++i) {
        const double t = nu[i];
        if (t - breaks.back() > 1e-13) {
            breaks.push_back(t);
            levels.push_back(i % 2 == 1 ? 0.0 : 1.0); // piece ending at nu_{2p-1} is OFF
        } else if (!levels.empty()) {
            // collapsed pair: drop the empty piece, parity continues
            breaks.back() = t;
        }
    }
    if (T - breaks.back() > 1e-13) {
        breaks.push_back(T);
        levels.push_back(switch_count % 2 == 0 ? 0.0 : 1.0);
    }
    if (levels.empty()) return StepControl::zero(T);

    // Merge adjacent pieces that ended up with the same level.
    std::vector<double> mb{breaks.front()};
    std::vector<double> ml;
    for (std::size_t j = 0; j < levels.size(); ++j) {
        if (!ml.empty() && ml.back() == levels[j])
            mb.back() = breaks[j + 1];
        else {
            mb.push_back(breaks[j + 1]);
            ml.push_back(levels[j]);
        }
    }
    return StepControl(std::move(mb), std::move(ml));
}

BangBangSolution solve_bang_bang(const MomentVector& target, int P,
                                 const std::vector<double>& init) {
    if (P < 1) throw std::invalid_argument("solve_bang_bang: P must be >= 1");
    if (static_cast<int>(target.omegas.size()) != 2 * P) {
        std::ostringstream msg;
        msg << "solve_bang_bang: need 2P = " << 2 * P << " moments, got "
            << target.omegas.size();
        throw std::invalid_argument(msg.str());
    }
    if (!(target.T > 0.0) || !std::isfinite(target.T))
        throw std::invalid_argument("solve_bang_bang: T must be positive and finite");
    for (double w : target.omegas)
        if (!std::isfinite(w)) throw std::invalid_argument("solve_bang_bang: non-finite moment");
    if (!target.satisfies_trivial_bound())
        throw std::invalid_argument("solve_bang_bang: moments violate the trivial bound |omega_n| <= L T^{n+1}/(n+1)");
    const double T = target.T;
    const std::vector<double>& omega = target.omegas;

    // Deterministic multistart: user-provided first, then P intervals with
    // total ON measure omega_0 spread over equally spaced / Chebyshev /
    // shifted centers.
    std::vector<std::vector<double>> starts;
    if (!init.empty()) {
        if (static_cast<int>(init.size()) != 2 * P)
            throw std::invalid_argument("solve_bang_bang: init must list 2P switching points");
        starts.push_back(init);
    }
    const double width = std::clamp(omega[0], 1e-6 * T, T) / (2.0 * P);
    auto centered = [&](auto&& center_of) {
        std::vector<double> s;
        for (int p = 0; p < P; ++p) {
            const double c = center_of(p);
            s.push_back(c - width);
            s.push_back(c + width);
        }
        return s;
    };
    starts.push_back(centered([&](int p) { return T * (p + 0.5) / P; }));
    starts.push_back(centered([&](int p) {
        return 0.5 * T * (1.0 - std::cos(std::numbers::pi * (2.0 * p + 1.0) / (2.0 * P)));
    }));
    starts.push_back(centered([&](int p) { return T * (p + 1.0) / (P + 1.0); }));
    starts.push_back(centered([&](int p) { return T * (p + 0.25) / P; }));

    BangBangSolution best;
    best.P = P;
    best.T = T;
    best.converged = false;
    double best_res = std::numeric_limits<double>::infinity();
    int usable_starts = 0;
    for (const auto& s : starts) {
        std::vector<double> nu(s);
        if (!project(nu, T)) continue;
        ++usable_starts;
        NewtonOutcome outcome = newton_from(nu, omega, T);
        if (outcome.nu.empty()) continue;
        const double res = norm_inf(outcome.residual);
        if (res < best_res) {
            best_res = res;
            best.residuals = outcome.residual;
            best.nu.clear();
            best.nu.push_back(0.0);
            best.nu.insert(best.nu.end(), outcome.nu.begin(), outcome.nu.end());
            best.nu.push_back(T);
            best.converged = outcome.converged;
        }
        if (best.converged) break;
    }
    if (usable_starts == 0 || best.nu.empty())
        throw InfeasibleOrdering("solve_bang_bang: no start survived the ordered-simplex projection");
    return best;
}

double mu_closed_form(int m, double xi, double T_star) {
    if (m < 0 || m > 10) throw DegreeTooLarge("mu_closed_form: m outside [0,10]");
    if (!(T_star > 0.0) || xi < 0.0 || xi >= T_star)
        throw std::invalid_argument("mu_closed_form: need 0 <= xi < T*");
    double ratio = 1.0; // (2m+1)!/m!
    for (int k = m + 1; k <= 2 * m + 1; ++k) ratio *= k;
    const double sign = (m % 2 == 0) ? 1.0 : -1.0;
    const double shrink = T_star - xi;
    return sign * ratio * 2.0 * std::sqrt(2.0) * T_star / std::pow(shrink, 1.5) *
           std::pow((T_star + xi) / shrink, static_cast<double>(m));
}

} // namespace heatreach
