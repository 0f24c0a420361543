#pragma once

#include <utility>
#include <vector>

#include "causalsurv/finite_law.hpp"

namespace causalsurv {

// Right-continuous piecewise-constant function on the tick grid. Jumps sit at
// strictly increasing positive ticks; jump_values[i] is the value on
// [jump_ticks[i], jump_ticks[i+1]).
class StepFn {
  public:
    StepFn() = default;
    explicit StepFn(double initial) : initial_(initial) {}

    static StepFn constant(double v) { return StepFn(v); }
    static StepFn from_jumps(double initial, std::vector<std::pair<Tick, double>> jumps);
    // cumulative function (initial 0) built from per-tick increments
    static StepFn cumulative(std::vector<std::pair<Tick, double>> increments);

    double initial() const { return initial_; }
    const std::vector<Tick>& jump_ticks() const { return ticks_; }
    const std::vector<double>& jump_values() const { return values_; }
    Tick last_jump_tick() const { return ticks_.empty() ? 0 : ticks_.back(); }

    double at(Tick t) const;          // right-continuous value
    double left_limit(Tick t) const;  // value on the interval before t
    double increment(Tick t) const { return at(t) - left_limit(t); }

    bool is_zero() const;

    friend bool operator==(const StepFn&, const StepFn&) = default;

  private:
    double initial_ = 0.0;
    std::vector<Tick> ticks_;
    std::vector<double> values_;
};

// Equality of two step functions as functions on [0, hi], within tol.
bool approx_equal(const StepFn& f, const StepFn& g, Tick hi, double tol);

// S(t) = prod_{u <= t} (1 - dLambda(u)); exact finite product. Increments
// outside [0, 1] raise InvalidHazardError.
StepFn product_integral(const StepFn& cum_hazard);

// Lambda(t) = -int_(0,t] dK(u)/K(u-); inverse of product_integral on step
// survival curves. K(0)=1 required; a nonpositive K value raises
// ZeroSurvivalError.
StepFn hazard_from_survival(const StepFn& survival, double tol = 1e-12);

// prod_{v in (u, t]} (1 - dLambda(v)): the ratio S(t)/S(u) computed from the
// hazard, well defined even where S has hit zero earlier.
double survival_ratio(const StepFn& cum_hazard, Tick u, Tick t);

}  // namespace causalsurv
