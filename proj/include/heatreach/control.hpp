#pragma once

#include <span>
#include <vector>

#include "heatreach/errors.hpp"

namespace heatreach {

/// Piecewise-constant control on [0, T]: breakpoints 0 = t_0 < ... < t_k = T
/// and a level on each piece (t_{j-1}, t_j). Immutable after construction.
class StepControl {
public:
    /// breakpoints.front() must be 0, breakpoints.back() defines T > 0,
    /// levels.size() == breakpoints.size() - 1. Breakpoints closer than
    /// 1e-15 are fused and the empty piece dropped.
    StepControl(std::vector<double> breakpoints, std::vector<double> levels);

    static StepControl constant(double level, double T);
    static StepControl zero(double T) { return constant(0.0, T); }

    double T() const { return breaks_.back(); }
    std::size_t piece_count() const { return levels_.size(); }
    const std::vector<double>& breakpoints() const { return breaks_; }
    const std::vector<double>& levels() const { return levels_; }

    /// Value at time t; pieces are half-open [t_{j-1}, t_j), last piece closed.
    double value(double t) const;

    /// L-infinity norm sup_j |c_j|.
    double sup_norm() const;

    bool is_zero() const;

    /// Time reversal t -> T - t (switches between the control u(t) and its
    /// xi-form v(xi) = u(T - xi)).
    StepControl reversed() const;

    /// Restriction to [0, t] with new horizon t in (0, T].
    StepControl restricted(double t) const;

    StepControl scaled(double c) const;

private:
    std::vector<double> breaks_;
    std::vector<double> levels_;
};

/// Weighted superposition on the merged breakpoint refinement of all inputs.
/// All controls must share the same horizon.
StepControl superpose(std::span<const StepControl> controls,
                      std::span<const double> weights);

} // namespace heatreach
