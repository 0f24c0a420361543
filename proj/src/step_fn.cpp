#include "causalsurv/step_fn.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <sstream>

namespace causalsurv {

StepFn StepFn::from_jumps(double initial, std::vector<std::pair<Tick, double>> jumps) {
    StepFn f(initial);
    Tick prev = 0;
    for (const auto& [tick, value] : jumps) {
        if (tick <= prev)
            throw ConfigError("StepFn: jump ticks must be strictly increasing and positive");
        prev = tick;
        f.ticks_.push_back(tick);
        f.values_.push_back(value);
    }
    return f;
}

StepFn StepFn::cumulative(std::vector<std::pair<Tick, double>> increments) {
    std::sort(increments.begin(), increments.end());
    StepFn f(0.0);
    double running = 0.0;
    for (const auto& [tick, inc] : increments) {
        if (inc == 0.0) continue;
        if (!f.ticks_.empty() && f.ticks_.back() == tick)
            throw ConfigError("StepFn::cumulative: duplicate increment tick");
        running += inc;
        f.ticks_.push_back(tick);
        f.values_.push_back(running);
    }
    return f;
}

double StepFn::at(Tick t) const {
    // value of the last jump at or before t
    auto it = std::upper_bound(ticks_.begin(), ticks_.end(), t);
    if (it == ticks_.begin()) return initial_;
    return values_[static_cast<std::size_t>(it - ticks_.begin()) - 1];
}

double StepFn::left_limit(Tick t) const {
    auto it = std::lower_bound(ticks_.begin(), ticks_.end(), t);
    if (it == ticks_.begin()) return initial_;
    return values_[static_cast<std::size_t>(it - ticks_.begin()) - 1];
}

bool StepFn::is_zero() const {
    if (initial_ != 0.0) return false;
    return std::all_of(values_.begin(), values_.end(), [](double v) { return v == 0.0; });
}

bool approx_equal(const StepFn& f, const StepFn& g, Tick hi, double tol) {
    std::set<Tick> ticks{0};
    for (Tick t : f.jump_ticks())
        if (t <= hi) ticks.insert(t);
    for (Tick t : g.jump_ticks())
        if (t <= hi) ticks.insert(t);
    for (Tick t : ticks) {
        if (std::abs(f.at(t) - g.at(t)) > tol) return false;
    }
    return true;
}

StepFn product_integral(const StepFn& cum_hazard) {
    if (cum_hazard.initial() != 0.0)
        throw InvalidHazardError("product_integral: cumulative hazard must start at 0");
    // reconstructing increments from cumulative values costs one rounding
    // step, so the [0, 1] cap check gets a matching guard band
    constexpr double kSlack = 1e-12;
    std::vector<std::pair<Tick, double>> jumps;
    double prev = 0.0;
    double survival = 1.0;
    const auto& ticks = cum_hazard.jump_ticks();
    const auto& values = cum_hazard.jump_values();
    for (std::size_t i = 0; i < ticks.size(); ++i) {
        double inc = values[i] - prev;
        prev = values[i];
        if (inc < -kSlack || inc > 1.0 + kSlack) {
            std::ostringstream os;
            os << "product_integral: hazard increment " << inc << " at tick " << ticks[i]
               << " outside [0, 1]";
            throw InvalidHazardError(os.str());
        }
        inc = std::min(std::max(inc, 0.0), 1.0);
        survival *= 1.0 - inc;
        jumps.emplace_back(ticks[i], survival);
    }
    return StepFn::from_jumps(1.0, std::move(jumps));
}

StepFn hazard_from_survival(const StepFn& survival, double tol) {
    if (std::abs(survival.initial() - 1.0) > tol)
        throw InvalidHazardError("hazard_from_survival: survival must start at 1");
    std::vector<std::pair<Tick, double>> jumps;
    double prev = survival.initial();
    double running = 0.0;
    const auto& ticks = survival.jump_ticks();
    const auto& values = survival.jump_values();
    for (std::size_t i = 0; i < ticks.size(); ++i) {
        if (values[i] <= 0.0)
            throw ZeroSurvivalError("hazard_from_survival: survival hits zero on the domain");
        // dLambda(t) = -dK(t)/K(t-)
        running += (prev - values[i]) / prev;
        jumps.emplace_back(ticks[i], running);
        prev = values[i];
    }
    return StepFn::from_jumps(0.0, std::move(jumps));
}

double survival_ratio(const StepFn& cum_hazard, Tick u, Tick t) {
    if (t <= u) return 1.0;
    double ratio = 1.0;
    const auto& ticks = cum_hazard.jump_ticks();
    auto it = std::upper_bound(ticks.begin(), ticks.end(), u);
    for (; it != ticks.end() && *it <= t; ++it) ratio *= 1.0 - cum_hazard.increment(*it);
    return ratio;
}

}  // namespace causalsurv
