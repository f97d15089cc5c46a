#pragma once

#include <complex>
#include <functional>
#include <vector>

#include "heatreach/errors.hpp"

namespace heatreach {

using RealFn = std::function<double(double)>;
using ComplexFn = std::function<std::complex<double>(double)>;

/// Error function. Odd, |erf| <= 1, relative accuracy <= 1e-15 (validated
/// against a series / continued-fraction oracle in the test suite).
double erf(double x);

/// Complement 1 - erf(x), accurate for large x.
double erfc(double x);

enum class Domain { half_line, full_line, interval };

/// Strictly increasing abscissae tagged with the domain they live on.
class Grid {
public:
    Grid(std::vector<double> points, Domain domain, double a = 0.0, double b = 0.0);

    static Grid uniform(double a, double b, int count, Domain domain);

    const std::vector<double>& points() const { return points_; }
    Domain domain() const { return domain_; }
    std::size_t size() const { return points_.size(); }

private:
    std::vector<double> points_;
    Domain domain_;
    double a_ = 0.0; // interval bounds, meaningful for Domain::interval only
    double b_ = 0.0;
};

struct QuadratureSpec {
    enum class Rule { adaptive_gauss_kronrod, tanh_sinh };

    Rule rule = Rule::adaptive_gauss_kronrod;
    double abs_tol = 1e-12;
    double rel_tol = 1e-10;
    int max_refinement_depth = 20;

    /// Throws std::invalid_argument unless at least one tolerance is positive.
    void validate() const;
};

struct IntegrationResult {
    double value;
    double err_estimate;
};

/// Integrate f over (a, b); b may be +infinity. Semi-infinite integrals are
/// truncated where the integrand has decayed below abs_tol/1000 (all
/// integrands in this library carry a Gaussian factor, so the truncation
/// error is controlled) and the finite remainder is handled by tanh-sinh.
/// Throws NonConvergent when the refinement budget runs out.
IntegrationResult integrate(const RealFn& f, double a, double b,
                            const QuadratureSpec& spec = {});

/// sqrt(2 * int_0^inf |f|^2 dx): the L2(R) norm of an odd function
/// represented on the half-line.
double l2_norm_halfline(const RealFn& f, const QuadratureSpec& spec = {});
double l2_norm_halfline(const ComplexFn& f, const QuadratureSpec& spec = {});

} // namespace heatreach
