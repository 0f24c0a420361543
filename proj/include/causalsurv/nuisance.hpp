#pragma once

#include <map>
#include <string>
#include <vector>

#include "causalsurv/survival_kernel.hpp"

namespace causalsurv {

struct StratumKey {
    int a = 0;
    std::string l;

    friend bool operator==(const StratumKey&, const StratumKey&) = default;
    friend auto operator<=>(const StratumKey&, const StratumKey&) = default;
};

// Per-stratum propensity, cumulative hazards, and the survival curves they
// product-integrate to. The survival curves must stay consistent with their
// hazards; the pointwise equality of the two efficient-influence-function
// forms is an algebraic fact about consistent sets only.
struct NuisanceSet {
    Tick tau = 0;
    std::map<StratumKey, double> propensity;
    std::map<StratumKey, StepFn> failure_hazard;
    std::map<StratumKey, StepFn> censoring_hazard;
    std::map<StratumKey, StepFn> censoring_survival;
    std::map<StratumKey, StepFn> failure_survival;

    bool has(int a, const std::string& l) const { return propensity.count({a, l}) > 0; }
    double propensity_at(int a, const std::string& l) const;
    const StepFn& failure_hazard_at(int a, const std::string& l) const;
    const StepFn& censoring_hazard_at(int a, const std::string& l) const;
    const StepFn& censoring_survival_at(int a, const std::string& l) const;
    const StepFn& failure_survival_at(int a, const std::string& l) const;
};

// (a, l) cells carrying positive mass, in canonical order.
std::vector<StratumKey> supported_strata(const ObservedLaw& obs);

// Population nuisances of an observed law, by exact enumeration: pi from
// stratum masses, hazards from the kernel, K and H by product integral.
NuisanceSet identified_nuisance(const ObservedLaw& obs, Tick tau);

// Empirical plug-in: identical formulas on the empirical law of the sample.
NuisanceSet fit_nuisance(const std::vector<ObservedRecord>& sample, Tick tau);

// Each survival curve equals the product integral of its hazard, within tol.
bool internally_consistent(const NuisanceSet& nuis, double tol = 1e-12);

// strata violating propensity >= eps or censoring survival at tau >= eps
std::vector<StratumKey> positivity_violations(const NuisanceSet& nuis, double eps);

// Clamps propensities into [eps, 1] and floors the censoring survival at eps,
// recomputing its hazard from the floored curve so the set stays internally
// consistent. Returns true via `changed` when anything moved.
NuisanceSet floor_positivity(const NuisanceSet& nuis, double eps, bool* changed = nullptr);

}  // namespace causalsurv
