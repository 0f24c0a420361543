#pragma once

#include <functional>
#include <string>
#include <utility>

#include "causalsurv/coarsening.hpp"
#include "causalsurv/step_fn.hpp"

namespace causalsurv {

// counting processes derived from one record; never stored
inline int count_failure(const ObservedRecord& r, Tick u) { return r.x <= u && r.delta == 1; }
inline int count_censor(const ObservedRecord& r, Tick u) { return r.x <= u && r.delta == 0; }
inline int at_risk(const ObservedRecord& r, Tick u) { return r.x >= u; }

// Tie-aware at-risk process for censoring: a failure observed at u has
// already left the censoring risk set at u, a censoring has not.
inline int at_risk_tie_aware(const ObservedRecord& r, Tick u) {
    return (r.delta == 1 && r.x > u) || (r.delta == 0 && r.x >= u);
}

// Which at-risk process weighs the compensator in a censoring residual.
enum class AtRisk { TieAware, Plain };

// dLambda(u) = E[dN_fail(u) | a, l] / E[Y(u) | a, l], by exact enumeration
// over the observed law; 0/0 increments are 0. Throws EmptyStratumError.
StepFn failure_cum_hazard(const ObservedLaw& obs, int a, const std::string& l);

// dLambda(u) = E[dN_cens(u) | a, l] / E[Y_tie_aware(u) | a, l]. `risk` selects
// the denominator's at-risk process; Plain is the naive (tie-unaware) variant
// kept for mutation checks.
StepFn censoring_cum_hazard(const ObservedLaw& obs, int a, const std::string& l,
                            AtRisk risk = AtRisk::TieAware);

// half-open-from-the-left tick interval (lo, hi]
struct Interval {
    Tick lo = 0;
    Tick hi = 0;
    bool contains(Tick u) const { return lo < u && u <= hi; }
};

// int_domain h(u) dM(u) with dM(u) = dN_cens(u) - Y_tie_aware(u) dLambda(u);
// finite sum over the jump ticks of the counting process and the hazard
// inside the domain. h is only evaluated where its weight is nonzero.
double censoring_residual_integral(const ObservedRecord& r, const std::function<double(Tick)>& h,
                                   const StepFn& censoring_hazard, Interval domain,
                                   AtRisk risk = AtRisk::TieAware);

// int_domain w(u) dM(u) with dM(u) = dN_fail(u) - Y(u) dLambda(u); the
// ordinary at-risk process, never the tie-aware one.
double failure_residual_integral(const ObservedRecord& r, const std::function<double(Tick)>& w,
                                 const StepFn& failure_hazard, Interval domain);

// Both sides of the two algebraic identities relating an arbitrary pair
// (x, delta) to an arbitrary nonvanishing step survival function K. They hold
// exactly; callers compare lhs and rhs.
struct IdentityPair {
    double lhs = 0.0;
    double rhs = 0.0;
};

// lhs = I(x > t)/K(t); rhs = delta/K(x-) I(x > t) plus the censoring residual
// of 1/K over (t, inf). t >= 0 (tick 0 probes the region before the first
// jump).
IdentityPair tail_weight_identity(Tick x, int delta, const StepFn& K, Tick t);

// lhs = delta/K(x-); rhs = 1 minus the censoring residual of 1/K over
// (0, inf).
IdentityPair full_weight_identity(Tick x, int delta, const StepFn& K);

}  // namespace causalsurv
