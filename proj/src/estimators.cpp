#include "causalsurv/estimators.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include "causalsurv/numeric.hpp"

namespace causalsurv {

IFIndex IFIndex::zero() {
    IFIndex idx;
    idx.h_treatment = [](const std::string&) { return 0.0; };
    idx.h_censoring = [](Tick, int, const std::string&) { return 0.0; };
    idx.bound = 0.0;
    return idx;
}

double ipw_term(const ObservedRecord& r, const NuisanceSet& nuis, int a, Tick t) {
    if (r.a != a || r.delta != 1 || r.x <= t) return 0.0;
    const double pi = nuis.propensity_at(a, r.l);
    const double k_left = nuis.censoring_survival_at(a, r.l).left_limit(r.x);
    if (pi == 0.0) throw PositivityError("ipw_term: zero propensity");
    if (k_left == 0.0) throw ZeroSurvivalError("ipw_term: K(X-) is zero");
    return 1.0 / pi / k_left;
}

double if_class_term(const ObservedRecord& r, const NuisanceSet& nuis, int a, Tick t,
                     const IFIndex& idx, double eta) {
    const double pi = nuis.propensity_at(a, r.l);
    const double treated = r.a == a ? 1.0 : 0.0;
    double v = ipw_term(r, nuis, a, t) - eta - (treated - pi) * idx.h_treatment(r.l);
    // censoring augmentation on the record's own stratum, off-arm included
    v += censoring_residual_integral(
        r, [&](Tick u) { return idx.h_censoring(u, r.a, r.l); }, nuis.censoring_hazard_at(r.a, r.l),
        Interval{0, nuis.tau});
    return v;
}

double restricted_class_term(const ObservedRecord& r, const NuisanceSet& nuis, int a, Tick t,
                             const IFIndex& idx, double eta) {
    const double pi = nuis.propensity_at(a, r.l);
    const double treated = r.a == a ? 1.0 : 0.0;
    double v = ipw_term(r, nuis, a, t) - eta - (treated - pi) / pi * idx.h_treatment(r.l);
    if (r.a == a) {
        const StepFn& K = nuis.censoring_survival_at(a, r.l);
        v += censoring_residual_integral(
                 r,
                 [&](Tick u) {
                     const double k = K.at(u);
                     if (k == 0.0)
                         throw ZeroSurvivalError("restricted_class_term: K(u) is zero under mass");
                     return idx.h_censoring(u, a, r.l) / k;
                 },
                 nuis.censoring_hazard_at(a, r.l), Interval{0, nuis.tau}) /
             pi;
    }
    return v;
}

std::vector<StratumKey> shared_discontinuities(const NuisanceSet& nuis) {
    std::vector<StratumKey> out;
    for (const auto& [key, lt] : nuis.failure_hazard) {
        auto itc = nuis.censoring_hazard.find(key);
        if (itc == nuis.censoring_hazard.end()) continue;
        std::set<Tick> failure_ticks;
        for (Tick u : lt.jump_ticks())
            if (lt.increment(u) != 0.0) failure_ticks.insert(u);
        for (Tick u : itc->second.jump_ticks()) {
            if (itc->second.increment(u) != 0.0 && failure_ticks.count(u)) {
                out.push_back(key);
                break;
            }
        }
    }
    return out;
}

double eif_aipw_term(const ObservedRecord& r, const NuisanceSet& nuis, int a, Tick t, double eta) {
    const double pi = nuis.propensity_at(a, r.l);
    const double treated = r.a == a ? 1.0 : 0.0;
    const double h_t = nuis.failure_survival_at(a, r.l).at(t);
    double v = ipw_term(r, nuis, a, t) - eta - (treated - pi) / pi * h_t;
    if (r.a == a) {
        const StepFn& K = nuis.censoring_survival_at(a, r.l);
        const StepFn& S = nuis.failure_survival_at(a, r.l);
        const StepFn& failure_haz = nuis.failure_hazard_at(a, r.l);
        // S(t v u)/S(u) = prod over (u,t] of (1 - hazard increment), and 1 past t
        v += censoring_residual_integral(
                 r,
                 [&](Tick u) {
                     const double k = K.at(u);
                     if (k == 0.0)
                         throw ZeroSurvivalError("eif_aipw_term: K(u) is zero under mass");
                     if (u <= t && S.at(u) == 0.0)
                         throw ZeroSurvivalError("eif_aipw_term: S(u) is zero under mass");
                     const double ratio = u <= t ? survival_ratio(failure_haz, u, t) : 1.0;
                     return ratio / k;
                 },
                 nuis.censoring_hazard_at(a, r.l), Interval{0, nuis.tau}) /
             pi;
    }
    return v;
}

double eif_gcomp_term(const ObservedRecord& r, const NuisanceSet& nuis, int a, Tick t, double eta) {
    const double h_t = nuis.failure_survival_at(a, r.l).at(t);
    double v = h_t - eta;
    if (r.a == a) {
        const double pi = nuis.propensity_at(a, r.l);
        const StepFn& K = nuis.censoring_survival_at(a, r.l);
        const StepFn& S = nuis.failure_survival_at(a, r.l);
        const StepFn& failure_haz = nuis.failure_hazard_at(a, r.l);
        v -= failure_residual_integral(
                 r,
                 [&](Tick u) {
                     const double k_left = K.left_limit(u);
                     if (k_left == 0.0)
                         throw ZeroSurvivalError("eif_gcomp_term: K(u-) is zero under mass");
                     if (S.at(u) == 0.0)
                         throw ZeroSurvivalError("eif_gcomp_term: S(u) is zero under mass");
                     return survival_ratio(failure_haz, u, t) / k_left;
                 },
                 failure_haz, Interval{0, t}) /
             pi;
    }
    return v;
}

double exact_mean(const ObservedLaw& obs,
                  const std::function<double(const ObservedRecord&)>& term) {
    CompensatedSum s;
    for (const auto& [r, p] : obs.atoms) s.add(p * term(r));
    return s.value();
}

double exact_variance(const ObservedLaw& obs,
                      const std::function<double(const ObservedRecord&)>& term) {
    const double mean = exact_mean(obs, term);
    CompensatedSum s;
    for (const auto& [r, p] : obs.atoms) {
        const double d = term(r) - mean;
        s.add(p * d * d);
    }
    return s.value();
}

double counterfactual_survival(const FiniteLaw& law, int a, Tick t) {
    return expectation(law, [&](const FullAtom& f) { return f.t(a) > t ? 1.0 : 0.0; });
}

const char* method_name(Method m) {
    switch (m) {
        case Method::Ipw: return "ipw";
        case Method::AipwOneStep: return "aipw-onestep";
        case Method::GcompCorrected: return "gcomp-corrected";
    }
    return "?";
}

std::optional<Method> method_from_name(const std::string& name) {
    if (name == "ipw") return Method::Ipw;
    if (name == "aipw-onestep") return Method::AipwOneStep;
    if (name == "gcomp-corrected") return Method::GcompCorrected;
    return std::nullopt;
}

namespace {

Tick resolve_tau(const std::vector<ObservedRecord>& sample, const EstimateOptions& options) {
    if (options.tau) return *options.tau;
    Tick tau = 0;
    for (const auto& r : sample) tau = std::max(tau, r.x);
    return tau;
}

NuisanceSet prepare_nuisance(const std::vector<ObservedRecord>& sample, Tick tau,
                             const EstimateOptions& options, bool* floored) {
    NuisanceSet nuis = options.nuisances ? *options.nuisances : fit_nuisance(sample, tau);
    nuis = floor_positivity(nuis, options.epsilon_floor, floored);
    if (!positivity_violations(nuis, options.epsilon_floor).empty())
        throw PositivityError("estimate: positivity violated after flooring");
    return nuis;
}

// the estimating equations are linear in eta, so the point solves
// mean(expression at eta = 0) directly
double expression_value(const ObservedRecord& r, const NuisanceSet& nuis, Method method, int a,
                        Tick t) {
    switch (method) {
        case Method::Ipw: return ipw_term(r, nuis, a, t);
        case Method::AipwOneStep: return eif_aipw_term(r, nuis, a, t, 0.0);
        case Method::GcompCorrected: return eif_gcomp_term(r, nuis, a, t, 0.0);
    }
    return 0.0;
}

EstimateReport summarize(std::vector<double> values, int a, Tick t, Method method, bool floored,
                         const EstimateOptions& options) {
    const auto n = values.size();
    const double point = compensated_total(values) / static_cast<double>(n);

    double se = 0.0;
    if (n > 1) {
        CompensatedSum ss;
        for (double v : values) {
            const double d = v - point;
            ss.add(d * d);
        }
        se = std::sqrt(ss.value() / static_cast<double>(n - 1) / static_cast<double>(n));
    }

    EstimateReport report;
    report.a = a;
    report.t = t;
    report.method = method;
    report.point = point;
    report.se = se;
    report.ci_low = point - options.z * se;
    report.ci_high = point + options.z * se;
    report.n = n;
    report.floored = floored;
    return report;
}

}  // namespace

EstimateReport estimate(const std::vector<ObservedRecord>& sample, Method method, int a, Tick t,
                        const EstimateOptions& options) {
    if (sample.empty()) throw ConfigError("estimate: empty sample");
    const Tick tau = resolve_tau(sample, options);
    bool floored = false;
    const NuisanceSet nuis = prepare_nuisance(sample, tau, options, &floored);

    std::vector<double> values;
    values.reserve(sample.size());
    for (const auto& r : sample) values.push_back(expression_value(r, nuis, method, a, t));
    return summarize(std::move(values), a, t, method, floored, options);
}

EstimateReport estimate_contrast(const std::vector<ObservedRecord>& sample, Method method, Tick t,
                                 const EstimateOptions& options) {
    if (sample.empty()) throw ConfigError("estimate_contrast: empty sample");
    const Tick tau = resolve_tau(sample, options);
    bool floored = false;
    const NuisanceSet nuis = prepare_nuisance(sample, tau, options, &floored);

    std::vector<double> values;
    values.reserve(sample.size());
    for (const auto& r : sample) {
        values.push_back(expression_value(r, nuis, method, 1, t) -
                         expression_value(r, nuis, method, 0, t));
    }
    return summarize(std::move(values), 1, t, method, floored, options);
}

}  // namespace causalsurv
