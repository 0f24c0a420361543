#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "causalsurv/nuisance.hpp"

namespace causalsurv {

// Free index functions parameterizing the influence-function class:
// h_treatment weighs the treatment residual, h_censoring the censoring one.
struct IFIndex {
    std::function<double(const std::string& l)> h_treatment;
    std::function<double(Tick u, int a, const std::string& l)> h_censoring;
    double bound = 1.0;

    static IFIndex zero();
};

// I(A=a)/propensity(a;L) * Delta/Kc(X-;a,L) * I(X > t), writing Kc for the
// stratum censoring survival
double ipw_term(const ObservedRecord& r, const NuisanceSet& nuis, int a, Tick t);

// Full influence-function class element:
//   ipw - eta - (I(A=a) - propensity) h_treatment(L)
//       + int_(0,tau] h_censoring(u;A,L) dMc(u;A,L).
// The censoring augmentation runs on the record's own (A, L) stratum even
// when A != a.
double if_class_term(const ObservedRecord& r, const NuisanceSet& nuis, int a, Tick t,
                     const IFIndex& idx, double eta);

// The restricted (missing-data) class:
//   ipw - eta - (I(A=a)-propensity)/propensity h_treatment(a,L)
//       + I(A=a)/propensity int_(0,tau] h_censoring(u;a,L) dMc(u;a,L)/Kc(u;a,L).
// Evaluated with the tie-aware residual; its augmentation vanishes off-arm.
double restricted_class_term(const ObservedRecord& r, const NuisanceSet& nuis, int a, Tick t,
                             const IFIndex& idx, double eta);

// Strata where failure and censoring hazards share a jump tick; there the
// tie-aware and plain censoring residuals genuinely differ.
std::vector<StratumKey> shared_discontinuities(const NuisanceSet& nuis);

// Efficient influence function, AIPW form, writing S for the stratum failure
// survival:
//   ipw - eta - (I(A=a)-propensity)/propensity S(t;a,L)
//       + I(A=a)/propensity int_(0,tau] S(t v u)/S(u) dMc(u;a,L)/Kc(u;a,L).
double eif_aipw_term(const ObservedRecord& r, const NuisanceSet& nuis, int a, Tick t, double eta);

// Efficient influence function, g-computation form:
//   S(t;a,L) - eta
//       - I(A=a)/propensity int_(0,t] S(t)/S(u) dMt(u;a,L)/Kc(u-;a,L).
double eif_gcomp_term(const ObservedRecord& r, const NuisanceSet& nuis, int a, Tick t, double eta);

double exact_mean(const ObservedLaw& obs, const std::function<double(const ObservedRecord&)>& term);
double exact_variance(const ObservedLaw& obs,
                      const std::function<double(const ObservedRecord&)>& term);

// P*(T*_a > t), the estimand, by enumeration over the latent law.
double counterfactual_survival(const FiniteLaw& law, int a, Tick t);

enum class Method { Ipw, AipwOneStep, GcompCorrected };

const char* method_name(Method m);
std::optional<Method> method_from_name(const std::string& name);

struct EstimateReport {
    int a = 0;
    Tick t = 0;
    Method method = Method::Ipw;
    double point = 0.0;
    double se = 0.0;
    double ci_low = 0.0;
    double ci_high = 0.0;
    std::size_t n = 0;
    bool floored = false;
};

struct EstimateOptions {
    double epsilon_floor = 0.01;
    double z = 1.96;
    std::optional<Tick> tau;                  // default: max x in the sample
    std::optional<NuisanceSet> nuisances;     // default: fit from the sample
};

EstimateReport estimate(const std::vector<ObservedRecord>& sample, Method method, int a, Tick t,
                        const EstimateOptions& options = {});

// Treated-minus-control survival difference at t, with the standard error
// taken from the per-record difference of the two realized influence values.
// The report's `a` field is 1 by convention.
EstimateReport estimate_contrast(const std::vector<ObservedRecord>& sample, Method method, Tick t,
                                 const EstimateOptions& options = {});

}  // namespace causalsurv
