#include <doctest.h>

#include <cmath>
#include <limits>
#include <numbers>
#include <random>

#include "heatreach/numerics.hpp"

using namespace heatreach;

namespace {

const double kInf = std::numeric_limits<double>::infinity();

// Independent erf oracle: Maclaurin series for |x| <= 2.5, the classical
// continued fraction for erfc beyond, both in long double.
long double erf_series(long double x) {
    long double term = x;
    long double sum = x;
    for (int k = 1; k < 200; ++k) {
        term *= -x * x / k;
        const long double add = term / (2 * k + 1);
        sum += add;
        if (std::abs(add) < 1e-24L * std::abs(sum)) break;
    }
    return sum * 2.0L / std::sqrt(std::numbers::pi_v<long double>);
}

long double erfc_cf(long double x) {
    // erfc(x) = e^{-x^2}/sqrt(pi) * 1/(x + (1/2)/(x + 1/(x + (3/2)/(x + ...))))
    long double tail = 0.0L;
    for (int k = 60; k >= 1; --k) tail = (k / 2.0L) / (x + tail);
    return std::exp(-x * x) / std::sqrt(std::numbers::pi_v<long double>) / (x + tail);
}

long double erf_oracle(long double x) {
    if (x < 0) return -erf_oracle(-x);
    if (x <= 2.5L) return erf_series(x);
    return 1.0L - erfc_cf(x);
}

} // namespace

TEST_CASE("erf matches the stated values") {
    CHECK(heatreach::erf(0.0) == 0.0);
    CHECK(heatreach::erf(1.0) == doctest::Approx(0.8427007929497149).epsilon(1e-15));
    CHECK(heatreach::erf(-1.0) == doctest::Approx(-0.8427007929497149).epsilon(1e-15));
}

TEST_CASE("erf agrees with the series/continued-fraction oracle to 1e-15") {
    for (double x = 0.03125; x <= 6.0; x += 0.09375) {
        const double expected = static_cast<double>(erf_oracle(x));
        CHECK(std::abs(heatreach::erf(x) - expected) <= 1e-15 * std::abs(expected));
    }
}

TEST_CASE("erf is odd on random samples") {
    std::mt19937 gen(20240817);
    std::uniform_real_distribution<double> dist(-10.0, 10.0);
    for (int i = 0; i < 500; ++i) {
        const double x = dist(gen);
        CHECK(heatreach::erf(x) + heatreach::erf(-x) == 0.0);
        CHECK(std::abs(heatreach::erf(x)) <= 1.0);
    }
}

TEST_CASE("erfc complements erf") {
    for (double x : {-2.0, -0.3, 0.0, 0.7, 1.0, 3.5})
        CHECK(heatreach::erf(x) + heatreach::erfc(x) == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(heatreach::erfc(1.0) == doctest::Approx(0.15729920705028513).epsilon(1e-14));
}

TEST_CASE("integrate handles the Gaussian examples") {
    auto gauss = [](double x) { return std::exp(-x * x); };
    auto xgauss = [](double x) { return x * std::exp(-x * x); };
    CHECK(integrate(gauss, 0.0, kInf).value ==
          doctest::Approx(0.8862269254527580).epsilon(1e-12));
    CHECK(integrate(xgauss, 0.0, kInf).value == doctest::Approx(0.5).epsilon(1e-12));
}

TEST_CASE("integrate matches symbolic antiderivatives") {
    // int_0^inf x^3 e^{-x^2/4} dx = 1/(2 a^2) with a = 1/4, i.e. 8.
    auto cubic = [](double x) { return x * x * x * std::exp(-x * x / 4.0); };
    CHECK(integrate(cubic, 0.0, kInf).value == doctest::Approx(8.0).epsilon(1e-12));
    // n = 1 moment weight against W^T = x e^{-x^2/4}:
    // (1!/3!) int_0^inf x^3 * x e^{-x^2/4} dx = (1/6)(3/8) sqrt(pi) * 32 = 2 sqrt(pi).
    auto weighted = [](double x) { return x * x * x * (x * std::exp(-x * x / 4.0)); };
    const double moment = integrate(weighted, 0.0, kInf).value / 6.0;
    CHECK(moment == doctest::Approx(2.0 * std::sqrt(std::numbers::pi)).epsilon(1e-12));
}

TEST_CASE("odd Gaussian power moments reproduce n!/2") {
    for (int n = 0; n <= 10; ++n) {
        auto f = [n](double x) { return std::pow(x, 2.0 * n + 1.0) * std::exp(-x * x); };
        double expected = 0.5;
        for (int k = 2; k <= n; ++k) expected *= k;
        const auto result = integrate(f, 0.0, kInf);
        CHECK(result.value == doctest::Approx(expected).epsilon(1e-10));
    }
}

TEST_CASE("Gauss-Kronrod nodes are exact on polynomials") {
    // Up to degree 13 both the embedded G7 and K15 are exact, so the |K-G|
    // estimate vanishes and no subdivision may happen; any wrong constant
    // breaks this at far coarser levels than 1e-13.
    QuadratureSpec strict;
    strict.rule = QuadratureSpec::Rule::adaptive_gauss_kronrod;
    strict.abs_tol = 1e-13;
    strict.rel_tol = 0.0;
    strict.max_refinement_depth = 1;
    for (int k = 0; k <= 13; ++k) {
        auto mono = [k](double x) { return std::pow(x, static_cast<double>(k)); };
        CHECK(integrate(mono, 0.0, 1.0, strict).value ==
              doctest::Approx(1.0 / (k + 1.0)).epsilon(1e-13));
    }
    // Beyond 13, each K15 panel value is still exact up to degree 22 but the
    // G7-based estimate no longer certifies it, so subdivision is allowed.
    QuadratureSpec spec;
    spec.rule = QuadratureSpec::Rule::adaptive_gauss_kronrod;
    for (int k = 14; k <= 22; ++k) {
        auto mono = [k](double x) { return std::pow(x, static_cast<double>(k)); };
        CHECK(integrate(mono, 0.0, 1.0, spec).value ==
              doctest::Approx(1.0 / (k + 1.0)).epsilon(1e-13));
    }
}

TEST_CASE("both rules agree on a finite smooth integral") {
    auto f = [](double x) { return std::sin(3.0 * x) * std::exp(-x); };
    QuadratureSpec gk;
    gk.rule = QuadratureSpec::Rule::adaptive_gauss_kronrod;
    QuadratureSpec ts;
    ts.rule = QuadratureSpec::Rule::tanh_sinh;
    const double a = integrate(f, 0.0, 5.0, gk).value;
    const double b = integrate(f, 0.0, 5.0, ts).value;
    CHECK(a == doctest::Approx(b).epsilon(1e-11));
}

TEST_CASE("tanh-sinh absorbs endpoint singularities") {
    QuadratureSpec ts;
    ts.rule = QuadratureSpec::Rule::tanh_sinh;
    auto f = [](double x) { return 1.0 / std::sqrt(x); }; // int_0^1 = 2
    CHECK(integrate(f, 0.0, 1.0, ts).value == doctest::Approx(2.0).epsilon(1e-10));
}

TEST_CASE("NonConvergent reports the refinement failure") {
    QuadratureSpec tight;
    tight.abs_tol = 1e-15;
    tight.rel_tol = 0.0;
    tight.max_refinement_depth = 3;
    auto rough = [](double x) { return 1.0 / std::sqrt(std::abs(x - 0.3141)); };
    CHECK_THROWS_AS(integrate(rough, 0.0, 1.0, tight), NonConvergent);
}

TEST_CASE("QuadratureSpec validation") {
    QuadratureSpec bad;
    bad.abs_tol = 0.0;
    bad.rel_tol = 0.0;
    CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
}

TEST_CASE("l2_norm_halfline matches the closed forms") {
    // psi_0^T with T=1 is sqrt(2) x e^{-x^2/4}; its R-norm is sqrt(2 sqrt(2 pi)).
    auto basis0 = [](double x) { return std::sqrt(2.0) * x * std::exp(-x * x / 4.0); };
    CHECK(l2_norm_halfline(RealFn(basis0)) ==
          doctest::Approx(2.2390302698404954).epsilon(1e-10));
    auto zero = [](double) { return 0.0; };
    CHECK(l2_norm_halfline(RealFn(zero)) == 0.0);
    auto gauss = [](double x) { return std::exp(-x * x / 2.0); };
    CHECK(l2_norm_halfline(RealFn(gauss)) ==
          doctest::Approx(1.3313353638003897).epsilon(1e-10));
}

TEST_CASE("l2_norm_halfline is absolutely homogeneous") {
    auto f = [](double x) { return x * std::exp(-x * x / 3.0); };
    const double base = l2_norm_halfline(RealFn(f));
    for (double c : {-3.5, -1.0, 0.25, 7.0}) {
        auto scaled = [f, c](double x) { return c * f(x); };
        CHECK(l2_norm_halfline(RealFn(scaled)) ==
              doctest::Approx(std::abs(c) * base).epsilon(1e-12));
    }
}

TEST_CASE("complex l2 norm uses |f|^2") {
    auto f = [](double x) {
        return std::complex<double>{0.0, std::exp(-x * x / 2.0)};
    };
    CHECK(l2_norm_halfline(ComplexFn(f)) ==
          doctest::Approx(1.3313353638003897).epsilon(1e-10));
}

TEST_CASE("Grid validates ordering and domain") {
    CHECK_THROWS_AS(Grid({1.0, 0.5}, Domain::full_line), std::invalid_argument);
    CHECK_THROWS_AS(Grid({-1.0, 0.5}, Domain::half_line), std::invalid_argument);
    CHECK_THROWS_AS(Grid({0.0, 3.0}, Domain::interval, 0.0, 2.0), std::invalid_argument);
    const Grid g = Grid::uniform(-5.0, 5.0, 11, Domain::full_line);
    CHECK(g.size() == 11);
    CHECK(g.points().front() == -5.0);
    CHECK(g.points().back() == 5.0);
}
