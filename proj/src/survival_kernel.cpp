#include "causalsurv/survival_kernel.hpp"

#include <algorithm>
#include <map>
#include <sstream>

#include "causalsurv/numeric.hpp"

namespace causalsurv {

namespace {

struct StratumView {
    std::vector<std::pair<ObservedRecord, double>> atoms;  // conditional masses
};

StratumView stratum_view(const ObservedLaw& obs, int a, const std::string& l) {
    StratumView view;
    CompensatedSum mass;
    for (const auto& [r, p] : obs.atoms) {
        if (r.a != a || r.l != l || p <= 0.0) continue;
        view.atoms.emplace_back(r, p);
        mass.add(p);
    }
    const double total = mass.value();
    if (total <= 0.0) {
        std::ostringstream os;
        os << "stratum (a=" << a << ", l=" << l << ") carries no mass";
        throw EmptyStratumError(os.str());
    }
    for (auto& [r, p] : view.atoms) p /= total;
    return view;
}

StepFn stratum_hazard(const StratumView& view, bool censoring, AtRisk risk) {
    // jump candidates: observed ticks of the relevant counting process
    std::map<Tick, double> numerator;
    for (const auto& [r, p] : view.atoms) {
        if ((censoring && r.delta == 0) || (!censoring && r.delta == 1)) numerator[r.x] += p;
    }
    std::vector<std::pair<Tick, double>> increments;
    for (const auto& [u, num] : numerator) {
        // plain accumulation in atom order, matching the numerator, so an
        // increment of exactly 1 comes out as exactly 1
        double den = 0.0;
        for (const auto& [r, p] : view.atoms) {
            const int w = censoring
                              ? (risk == AtRisk::TieAware ? at_risk_tie_aware(r, u) : at_risk(r, u))
                              : at_risk(r, u);
            if (w) den += p;
        }
        if (num > 0.0 && den <= 0.0) {
            std::ostringstream os;
            os << "hazard numerator positive with empty risk set at tick " << u;
            throw InvalidHazardError(os.str());
        }
        if (den > 0.0) increments.emplace_back(u, num / den);
    }
    return StepFn::cumulative(std::move(increments));
}

}  // namespace

StepFn failure_cum_hazard(const ObservedLaw& obs, int a, const std::string& l) {
    return stratum_hazard(stratum_view(obs, a, l), /*censoring=*/false, AtRisk::Plain);
}

StepFn censoring_cum_hazard(const ObservedLaw& obs, int a, const std::string& l, AtRisk risk) {
    return stratum_hazard(stratum_view(obs, a, l), /*censoring=*/true, risk);
}

namespace {

// Shared walk over the jump ticks of the counting process and the hazard:
// the weight is only evaluated where the per-tick net residual mass is
// nonzero, so structural cancellations (a sure jump against its own
// compensator) never touch it.
template <typename RiskFn>
double residual_integral(const ObservedRecord& r, int counted_delta,
                         const std::function<double(Tick)>& weight, const StepFn& hazard,
                         Interval domain, RiskFn at_risk_fn) {
    CompensatedSum total;
    const bool counts = r.delta == counted_delta && domain.contains(r.x);
    bool counted = false;
    for (Tick u : hazard.jump_ticks()) {
        if (!domain.contains(u)) continue;
        double net = -static_cast<double>(at_risk_fn(r, u)) * hazard.increment(u);
        if (counts && r.x == u) {
            net += 1.0;
            counted = true;
        }
        if (net != 0.0) total.add(weight(u) * net);
    }
    if (counts && !counted) total.add(weight(r.x));
    return total.value();
}

}  // namespace

double censoring_residual_integral(const ObservedRecord& r, const std::function<double(Tick)>& h,
                                   const StepFn& censoring_hazard, Interval domain,
                                   AtRisk risk) {
    const auto risk_fn = [risk](const ObservedRecord& rec, Tick u) {
        return risk == AtRisk::TieAware ? at_risk_tie_aware(rec, u) : at_risk(rec, u);
    };
    return residual_integral(r, /*counted_delta=*/0, h, censoring_hazard, domain, risk_fn);
}

double failure_residual_integral(const ObservedRecord& r, const std::function<double(Tick)>& w,
                                 const StepFn& failure_hazard, Interval domain) {
    return residual_integral(r, /*counted_delta=*/1, w, failure_hazard, domain,
                             [](const ObservedRecord& rec, Tick u) { return at_risk(rec, u); });
}

namespace {

double checked_inverse(const StepFn& K, Tick u) {
    const double v = K.at(u);
    if (v == 0.0) throw ZeroSurvivalError("identity evaluation hit a zero survival value");
    return 1.0 / v;
}

}  // namespace

IdentityPair tail_weight_identity(Tick x, int delta, const StepFn& K, Tick t) {
    if (x <= 0) throw ConfigError("tail_weight_identity: x must be a positive tick");
    const double kx_left = K.left_limit(x);
    if (kx_left == 0.0) throw ZeroSurvivalError("tail_weight_identity: K(x-) is zero");
    const Tick hi = std::max(x, K.last_jump_tick());
    const ObservedRecord r{"", 0, delta, x};

    IdentityPair out;
    out.lhs = (x > t ? 1.0 : 0.0) * checked_inverse(K, t);
    const double lead = x > t ? static_cast<double>(delta) / kx_left : 0.0;
    out.rhs = lead + censoring_residual_integral(
                         r, [&K](Tick u) { return checked_inverse(K, u); },
                         hazard_from_survival(K), Interval{t, hi});
    return out;
}

IdentityPair full_weight_identity(Tick x, int delta, const StepFn& K) {
    if (x <= 0) throw ConfigError("full_weight_identity: x must be a positive tick");
    const double kx_left = K.left_limit(x);
    if (kx_left == 0.0) throw ZeroSurvivalError("full_weight_identity: K(x-) is zero");
    const Tick hi = std::max(x, K.last_jump_tick());
    const ObservedRecord r{"", 0, delta, x};

    IdentityPair out;
    out.lhs = static_cast<double>(delta) / kx_left;
    out.rhs = 1.0 - censoring_residual_integral(
                        r, [&K](Tick u) { return checked_inverse(K, u); },
                        hazard_from_survival(K), Interval{0, hi});
    return out;
}

}  // namespace causalsurv
