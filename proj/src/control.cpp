#include "heatreach/control.hpp"

#include <algorithm>
#include <cmath>

namespace heatreach {

namespace {
constexpr double kFuseTol = 1e-15; // breakpoint collision tolerance
}

StepControl::StepControl(std::vector<double> breakpoints, std::vector<double> levels) {
    if (breakpoints.size() < 2)
        throw std::invalid_argument("StepControl: need at least two breakpoints");
    if (levels.size() + 1 != breakpoints.size())
        throw std::invalid_argument("StepControl: levels length must be breakpoints length - 1");
    for (double t : breakpoints)
        if (!std::isfinite(t)) throw std::invalid_argument("StepControl: non-finite breakpoint");
    for (double c : levels)
        if (!std::isfinite(c)) throw std::invalid_argument("StepControl: non-finite level");
    if (std::abs(breakpoints.front()) > kFuseTol)
        throw std::invalid_argument("StepControl: breakpoints must start at 0");
    breakpoints.front() = 0.0;
    for (std::size_t i = 1; i < breakpoints.size(); ++i)
        if (breakpoints[i] < breakpoints[i - 1] - kFuseTol)
            throw std::invalid_argument("StepControl: breakpoints must be sorted");

    // Fuse coincident breakpoints, dropping the empty pieces.
    breaks_.push_back(breakpoints.front());
    for (std::size_t i = 1; i < breakpoints.size(); ++i) {
        if (breakpoints[i] - breaks_.back() <= kFuseTol) continue;
        breaks_.push_back(breakpoints[i]);
        levels_.push_back(levels[i - 1]);
    }
    if (breaks_.size() < 2) throw std::invalid_argument("StepControl: horizon T must be positive");
}

StepControl StepControl::constant(double level, double T) {
    return StepControl({0.0, T}, {level});
}

double StepControl::value(double t) const {
    if (t < breaks_.front() || t > breaks_.back()) return 0.0;
    auto it = std::upper_bound(breaks_.begin(), breaks_.end(), t);
    std::size_t idx = static_cast<std::size_t>(it - breaks_.begin());
    if (idx == 0) return levels_.front();
    if (idx >= breaks_.size()) return levels_.back(); // t == T
    return levels_[idx - 1];
}

double StepControl::sup_norm() const {
    double s = 0.0;
    for (double c : levels_) s = std::max(s, std::abs(c));
    return s;
}

bool StepControl::is_zero() const {
    return std::all_of(levels_.begin(), levels_.end(), [](double c) { return c == 0.0; });
}

StepControl StepControl::reversed() const {
    const double horizon = T();
    std::vector<double> rb(breaks_.size());
    std::vector<double> rl(levels_.size());
    for (std::size_t i = 0; i < breaks_.size(); ++i)
        rb[breaks_.size() - 1 - i] = horizon - breaks_[i];
    rb.front() = 0.0;
    rb.back() = horizon;
    for (std::size_t j = 0; j < levels_.size(); ++j) rl[levels_.size() - 1 - j] = levels_[j];
    return StepControl(std::move(rb), std::move(rl));
}

StepControl StepControl::restricted(double t) const {
    if (!(t > 0.0) || t > T() + kFuseTol)
        throw std::invalid_argument("StepControl::restricted: t outside (0, T]");
    std::vector<double> rb, rl;
    rb.push_back(0.0);
    for (std::size_t j = 0; j < levels_.size(); ++j) {
        const double hi = std::min(breaks_[j + 1], t);
        if (hi <= rb.back() + kFuseTol) break;
        rb.push_back(hi);
        rl.push_back(levels_[j]);
        if (hi >= t) break;
    }
    if (rb.back() < t) {
        rb.push_back(t);
        rl.push_back(0.0);
    }
    return StepControl(std::move(rb), std::move(rl));
}

StepControl StepControl::scaled(double c) const {
    std::vector<double> lv(levels_);
    for (double& x : lv) x *= c;
    return StepControl(breaks_, std::move(lv));
}

StepControl superpose(std::span<const StepControl> controls,
                      std::span<const double> weights) {
    if (controls.empty()) throw std::invalid_argument("superpose: no controls");
    if (weights.size() != controls.size())
        throw std::invalid_argument("superpose: weight count mismatch");
    const double horizon = controls.front().T();
    for (const StepControl& c : controls)
        if (std::abs(c.T() - horizon) > kFuseTol)
            throw std::invalid_argument("superpose: mismatched horizons");

    std::vector<double> merged;
    for (const StepControl& c : controls)
        merged.insert(merged.end(), c.breakpoints().begin(), c.breakpoints().end());
    std::sort(merged.begin(), merged.end());
    std::vector<double> breaks;
    for (double t : merged)
        if (breaks.empty() || t - breaks.back() > kFuseTol) breaks.push_back(t);
    breaks.front() = 0.0;
    breaks.back() = horizon;

    std::vector<double> levels(breaks.size() - 1, 0.0);
    for (std::size_t j = 0; j + 1 < breaks.size(); ++j) {
        const double mid = 0.5 * (breaks[j] + breaks[j + 1]);
        double v = 0.0;
        for (std::size_t k = 0; k < controls.size(); ++k)
            v += weights[k] * controls[k].value(mid);
        levels[j] = v;
    }
    return StepControl(std::move(breaks), std::move(levels));
}

} // namespace heatreach
