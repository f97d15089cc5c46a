#include <doctest.h>

#include <cmath>
#include <limits>
#include <numbers>

#include "heatreach/heat_solver.hpp"
#include "heatreach/moment_problem.hpp"
#include "heatreach/reach_synth.hpp"

using namespace heatreach;

namespace {

const double kInf = std::numeric_limits<double>::infinity();

double factorial(int n) {
    double f = 1.0;
    for (int k = 2; k <= n; ++k) f *= k;
    return f;
}

double binom(int n, int j) {
    double c = 1.0;
    for (int i = 0; i < j; ++i) c = c * (n - i) / (i + 1);
    return c;
}

HermiteExpansion example3_expansion(int N, double T = 1.0) {
    HermiteExpansion e{T, {}};
    const double s = std::sqrt(2.0 / std::numbers::pi);
    for (int n = 0; n <= N; ++n)
        e.coeffs.push_back(s * ((n % 2 == 0) ? 1.0 : -1.0) /
                           (std::ldexp(1.0, 2 * n) * factorial(2 * n + 1)));
    return e;
}

} // namespace

TEST_CASE("step_control staircase levels") {
    const StepControl u0 = step_control(0, 10, 1.0);
    CHECK(u0.value(0.05) == doctest::Approx(10.0));
    CHECK(u0.value(0.5) == 0.0);

    const StepControl u1 = step_control(1, 7, 1.0);
    CHECK(u1.value(0.05) == doctest::Approx(-49.0));
    CHECK(u1.value(0.2) == doctest::Approx(49.0));
    CHECK(u1.value(0.5) == 0.0);

    const StepControl u2 = step_control(2, 8, 1.0);
    CHECK(u2.value(0.05) == doctest::Approx(512.0));
    CHECK(u2.value(0.18) == doctest::Approx(-1024.0));
    CHECK(u2.value(0.3) == doctest::Approx(512.0));
    CHECK(u2.value(0.9) == 0.0);

    CHECK_THROWS_AS(step_control(3, 2, 1.0), SupportExceedsHorizon);
}

TEST_CASE("step controls mimic delta derivatives through their moments") {
    for (int n = 0; n <= 3; ++n) {
        for (int l : {10, 100}) {
            const StepControl u = step_control(n, l, 1.0);
            const MomentVector m = moments_of_control(u, n + 1);
            // exact closed form sum_j (-1)^{n-j} C(n,j) l^{n+1} ((j+1)^{m+1} - j^{m+1}) / ((m+1) l^{m+1})
            for (int mm = 0; mm <= n + 1; ++mm) {
                double expected = 0.0;
                for (int j = 0; j <= n; ++j)
                    expected += (((n - j) % 2 == 0) ? 1.0 : -1.0) * binom(n, j) *
                                (std::pow(j + 1.0, mm + 1.0) - std::pow(static_cast<double>(j), mm + 1.0));
                expected *= std::pow(static_cast<double>(l), n + 1.0) /
                            ((mm + 1.0) * std::pow(static_cast<double>(l), mm + 1.0));
                const double got = m.omegas[static_cast<std::size_t>(mm)];
                const double scale = std::max(1.0, std::pow(static_cast<double>(l), n - mm));
                CHECK(std::abs(got - expected) <= 1e-10 * scale);
                if (mm < n) CHECK(std::abs(got) <= 1e-9 * scale);
            }
            // m = n moment is exactly n!
            CHECK(m.omegas[static_cast<std::size_t>(n)] ==
                  doctest::Approx(factorial(n)).epsilon(1e-10));
        }
    }
}

TEST_CASE("h_coeff closed-form values") {
    CHECK(h_coeff(0, 0, 1.0) == doctest::Approx(-4.0).epsilon(1e-14));
    CHECK(h_coeff(0, 1, 1.0) == doctest::Approx(-24.0).epsilon(1e-14));
    CHECK(h_coeff(1, 1, 1.0) == doctest::Approx(32.0).epsilon(1e-14));
    CHECK_THROWS_AS(h_coeff(0, 13, 1.0), DegreeTooLarge);
    CHECK_THROWS_AS(h_coeff(2, 1, 1.0), std::invalid_argument);
}

TEST_CASE("h_coeff log-space branch is continuous across n = 8") {
    for (int n : {9, 10, 12}) {
        for (int p : {0, 3, n}) {
            const double direct = ((p % 2 == 0) ? -1.0 : 1.0) * std::ldexp(1.0, 2 * p + 1) *
                                  std::pow(2.0, p + 1.0) * factorial(2 * n + 1) /
                                  (factorial(n - p) * factorial(2 * p + 1));
            CHECK(h_coeff(p, n, 1.0) == doctest::Approx(direct).epsilon(1e-12));
        }
    }
}

TEST_CASE("h expansion reconstructs psi_hat over the phi profiles") {
    // psi_hat_n^T = i sum_p h_p^n phi_p pointwise.
    const double T = 1.0;
    for (int n : {0, 1, 3}) {
        for (double sigma : {0.3, 1.0, 2.1}) {
            double sum = 0.0;
            for (int p = 0; p <= n; ++p) sum += h_coeff(p, n, T) * phi(p, sigma, T);
            const std::complex<double> expected{0.0, sum};
            CHECK(std::abs(psi_hat_T(n, sigma, T) - expected) <=
                  1e-12 * (1.0 + std::abs(sum)));
        }
    }
}

TEST_CASE("phi values and the l -> infinity limit") {
    CHECK(phi(0, 0.0, 1.0) == 0.0);
    CHECK(phi(0, 1.0, 1.0) == doctest::Approx(std::exp(-1.0)).epsilon(1e-14));
    // |phi_l - phi| ~ (n+1) sigma^2 phi / (2l); at l = 1e6 the 1e-9 window
    // holds where that first-order term is small.
    for (double sigma : {0.02, 0.05, 0.1})
        CHECK(std::abs(phi_l(0, 1000000, sigma, 1.0) - phi(0, sigma, 1.0)) <= 1e-9);
    // and the first-order pointwise bound covers moderate sigma as well
    for (int n = 0; n <= 2; ++n)
        for (double sigma = 0.2; sigma <= 3.0; sigma += 0.2) {
            const int l = 100;
            const double bound = (n + 1.0) / (2.0 * l) * std::pow(sigma, 2.0 * n + 3.0) *
                                 std::exp(-sigma * sigma * (1.0 - (n + 1.0) / l));
            CHECK(std::abs(phi_l(n, l, sigma, 1.0) - phi(n, sigma, 1.0)) <= bound * (1.0 + 1e-9));
        }
}

TEST_CASE("phi_l envelope under the resolution condition") {
    const double T = 1.0;
    for (int n = 0; n <= 3; ++n) {
        const int l = static_cast<int>((2 * n + 2) / T) + 1; // minimal admissible l
        CHECK(envelope_condition_holds(n, l, T));
        for (double sigma = 0.1; sigma <= 8.0; sigma += 0.1)
            CHECK(std::abs(phi_l(n, l, sigma, T)) <=
                  std::pow(sigma, 2.0 * n + 1.0) * std::exp(-sigma * sigma * T / 2.0) + 1e-300);
    }
}

TEST_CASE("||phi_n - phi_n^l|| decreases in l and obeys the tail estimate") {
    const double T = 1.0;
    QuadratureSpec spec;
    for (int n = 0; n <= 3; ++n) {
        double prev = kInf;
        for (int l : {10, 100, 1000, 10000}) {
            auto diff = [n, l, T](double s) { return phi(n, s, T) - phi_l(n, l, s, T); };
            const double nrm = l2_norm_halfline(RealFn(diff), spec);
            CHECK(nrm < prev);
            prev = nrm;
            if (tail_estimate_condition_holds(n, l, T)) {
                const double bound = std::pow(1.0 / (2.0 * std::numbers::pi * T), 0.25) *
                                     std::sqrt(n + 2.0) / l *
                                     std::pow(2.0, n + 0.5) / std::pow(T, n + 1.5) *
                                     factorial(n + 2);
                CHECK(nrm <= bound);
            }
        }
    }
}

TEST_CASE("synthesize: single-term superposition") {
    // With omega_0 = 1/h_0^0 the coefficient g_0^0 is 1, so u_0 = -sqrt(pi/2) u_10^0.
    HermiteExpansion e{1.0, {1.0 / h_coeff(0, 0, 1.0)}};
    auto [plan, u] = synthesize(e, {10});
    CHECK(plan.g[0] == doctest::Approx(1.0).epsilon(1e-14));
    const double expected_level = -std::sqrt(std::numbers::pi / 2.0) * 10.0;
    CHECK(u.value(0.05) == doctest::Approx(expected_level).epsilon(1e-13));
    CHECK(u.value(0.5) == 0.0);
}

TEST_CASE("synthesize: reference coefficients at N = 1") {
    auto [plan, u] = synthesize(example3_expansion(1), {10, 10});
    CHECK(plan.g[0] == doctest::Approx(-3.0 * std::sqrt(2.0 / std::numbers::pi)).epsilon(1e-12));
    CHECK(plan.meets_envelope_condition());
    CHECK(u.T() == 1.0);
    // breakpoints are the merged staircase grid {0, 0.1, 0.2, 1}
    CHECK(u.piece_count() == 3);
}

TEST_CASE("synthesize: zero expansion gives the zero control") {
    HermiteExpansion e{1.0, {0.0, 0.0}};
    auto [plan, u] = synthesize(e, {10, 10});
    CHECK(plan.g[0] == 0.0);
    CHECK(plan.g[1] == 0.0);
    CHECK(u.is_zero());
}

TEST_CASE("synthesize validates the resolution list") {
    CHECK_THROWS_AS(synthesize(example3_expansion(1), {10}), std::invalid_argument);
    CHECK_THROWS_AS(synthesize(example3_expansion(1), {10, 1}), SupportExceedsHorizon);
}

TEST_CASE("g coefficients stay under the uniform bound") {
    // |g_p^N| <= 2 sqrt(2/pi) (2T)^{p+1} / (2p+1)! uniformly (the alternating
    // partial sums are bounded by their first term); the e^{-1/4} constant of
    // the printed estimate is only approached as N - p grows.
    const double T = 1.0;
    for (int N = 0; N <= 6; ++N) {
        const HermiteExpansion e = example3_expansion(N);
        std::vector<int> ls(static_cast<std::size_t>(N) + 1, 100);
        auto [plan, u] = synthesize(e, ls);
        (void)u;
        for (int p = 0; p <= N; ++p) {
            const double bound = 2.0 * std::sqrt(2.0 / std::numbers::pi) *
                                 std::pow(2.0 * T, p + 1.0) / factorial(2 * p + 1);
            CHECK(std::abs(plan.g[static_cast<std::size_t>(p)]) <= bound * (1.0 + 1e-12));
        }
    }
    // limit check: for N - p >= 8 the e^{-1/4} factor is accurate to 1e-6
    const HermiteExpansion big = example3_expansion(10);
    std::vector<int> ls(11, 100);
    auto [plan, u] = synthesize(big, ls);
    (void)u;
    const double limit = 2.0 * std::sqrt(2.0 / std::numbers::pi) * 2.0 * std::exp(-0.25);
    CHECK(std::abs(plan.g[0]) == doctest::Approx(limit).epsilon(1e-6));
}

TEST_CASE("epsilon_bounds formula values") {
    auto [e1a, e2a] = epsilon_bounds(1, 10, 1.0);
    CHECK(e1a == doctest::Approx(0.0432944220).epsilon(1e-7));
    CHECK(e2a == doctest::Approx(2.1661888420).epsilon(1e-7));
    auto [e1b, e2b] = epsilon_bounds(1, 100, 1.0);
    CHECK(e1b == doctest::Approx(0.0432944220).epsilon(1e-7));
    CHECK(e2b == doctest::Approx(0.2166188842).epsilon(1e-7));
    auto [e1c, e2c] = epsilon_bounds(2, 100, 1.0);
    CHECK(e1c == doctest::Approx(0.0033402372).epsilon(1e-7));
    CHECK(e2c == doctest::Approx(0.3587131123).epsilon(1e-7));
    auto [e1d, e2d] = epsilon_bounds(2, 1000, 1.0);
    CHECK(e1d == doctest::Approx(0.0033402372).epsilon(1e-7));
    CHECK(e2d == doctest::Approx(0.0358713112).epsilon(1e-7));
}

TEST_CASE("epsilon_bounds_rounded reproduces the printed table digits") {
    auto [r1a, r2a] = epsilon_bounds_rounded(1, 10, 1.0);
    CHECK(r1a == doctest::Approx(0.0433).epsilon(1e-12));
    CHECK(r2a == doctest::Approx(2.1662).epsilon(1e-12));
    auto [r1b, r2b] = epsilon_bounds_rounded(1, 100, 1.0);
    CHECK(r2b == doctest::Approx(0.2167).epsilon(1e-12));
    auto [r1c, r2c] = epsilon_bounds_rounded(2, 100, 1.0);
    CHECK(r1c == doctest::Approx(0.0034).epsilon(1e-12));
    CHECK(r2c == doctest::Approx(0.3588).epsilon(1e-12));
    auto [r1d, r2d] = epsilon_bounds_rounded(2, 1000, 1.0);
    CHECK(r2d == doctest::Approx(0.0359).epsilon(1e-12));
}

TEST_CASE("verify_identity_phi is tiny on the stated pairs") {
    const Grid grid = Grid::uniform(-5.0, 5.0, 50, Domain::full_line);
    CHECK(verify_identity_phi(0, 10, 1.0, grid) <= 1e-10);
    CHECK(verify_identity_phi(1, 100, 1.0, grid) <= 1e-10);
    CHECK(verify_identity_phi(2, 1000, 1.0, grid) <= 1e-9);
}

TEST_CASE("synthesized control drives the state to the sigma-side profile") {
    // V_N^l = i sum_p g_p phi_p^l must match end_state_sigma of u_N.
    const int N = 1, l = 10;
    auto [plan, u] = synthesize(example3_expansion(N), {l, l});
    const OddState w0 = OddState::zero();
    for (double sigma : {0.4, 1.1, 2.7}) {
        double sum = 0.0;
        for (int p = 0; p <= N; ++p)
            sum += plan.g[static_cast<std::size_t>(p)] * phi_l(p, l, sigma, 1.0);
        const std::complex<double> profile{0.0, sum};
        CHECK(std::abs(end_state_sigma(u, w0, sigma) - profile) <= 1e-10);
    }
}
