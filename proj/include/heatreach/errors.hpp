#pragma once

#include <stdexcept>
#include <string>

namespace heatreach {

/// Base class for every error raised by the toolkit.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Quadrature exhausted its refinement budget without meeting the tolerance.
/// Carries the best value obtained and the error estimate at that point.
class NonConvergent : public Error {
public:
    NonConvergent(const std::string& what, double value, double err_estimate)
        : Error(what), value_(value), err_estimate_(err_estimate) {}

    double value() const { return value_; }
    double err_estimate() const { return err_estimate_; }

private:
    double value_;
    double err_estimate_;
};

/// Convolution quadrature failed on a grid-sampled initial state.
class QuadratureFailure : public Error {
public:
    using Error::Error;
};

/// Polynomial degree / truncation order outside the guarded range.
class DegreeTooLarge : public Error {
public:
    using Error::Error;
};

/// A step control's support (n+1)/l does not fit inside [0,T].
class SupportExceedsHorizon : public Error {
public:
    using Error::Error;
};

/// The moment solver left the ordered switching-point simplex and could not
/// be projected back.
class InfeasibleOrdering : public Error {
public:
    using Error::Error;
};

} // namespace heatreach
