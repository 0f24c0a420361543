#include "causalsurv/nuisance.hpp"

#include <cmath>
#include <set>
#include <sstream>

#include "causalsurv/numeric.hpp"

namespace causalsurv {

namespace {

[[noreturn]] void missing_stratum(int a, const std::string& l) {
    std::ostringstream os;
    os << "nuisance stratum (a=" << a << ", l=" << l << ") is absent";
    throw EmptyStratumError(os.str());
}

template <typename Map>
const auto& lookup(const Map& m, int a, const std::string& l) {
    auto it = m.find(StratumKey{a, l});
    if (it == m.end()) missing_stratum(a, l);
    return it->second;
}

}  // namespace

double NuisanceSet::propensity_at(int a, const std::string& l) const {
    return lookup(propensity, a, l);
}
const StepFn& NuisanceSet::failure_hazard_at(int a, const std::string& l) const {
    return lookup(failure_hazard, a, l);
}
const StepFn& NuisanceSet::censoring_hazard_at(int a, const std::string& l) const {
    return lookup(censoring_hazard, a, l);
}
const StepFn& NuisanceSet::censoring_survival_at(int a, const std::string& l) const {
    return lookup(censoring_survival, a, l);
}
const StepFn& NuisanceSet::failure_survival_at(int a, const std::string& l) const {
    return lookup(failure_survival, a, l);
}

std::vector<StratumKey> supported_strata(const ObservedLaw& obs) {
    std::set<StratumKey> keys;
    for (const auto& [r, p] : obs.atoms)
        if (p > 0.0) keys.insert({r.a, r.l});
    return {keys.begin(), keys.end()};
}

NuisanceSet identified_nuisance(const ObservedLaw& obs, Tick tau) {
    NuisanceSet nuis;
    nuis.tau = tau;

    // stratum and covariate masses
    std::map<std::string, double> l_mass;
    std::map<StratumKey, double> al_mass;
    for (const auto& [r, p] : obs.atoms) {
        if (p <= 0.0) continue;
        l_mass[r.l] += p;
        al_mass[StratumKey{r.a, r.l}] += p;
    }
    if (al_mass.empty()) throw EmptyStratumError("identified_nuisance: observed law is empty");

    for (const auto& [key, mass] : al_mass) {
        nuis.propensity[key] = mass / l_mass[key.l];
        StepFn lt = failure_cum_hazard(obs, key.a, key.l);
        StepFn lc = censoring_cum_hazard(obs, key.a, key.l);
        nuis.failure_survival[key] = product_integral(lt);
        nuis.censoring_survival[key] = product_integral(lc);
        nuis.failure_hazard[key] = std::move(lt);
        nuis.censoring_hazard[key] = std::move(lc);
    }
    return nuis;
}

NuisanceSet fit_nuisance(const std::vector<ObservedRecord>& sample, Tick tau) {
    return identified_nuisance(empirical_law(sample), tau);
}

bool internally_consistent(const NuisanceSet& nuis, double tol) {
    for (const auto& [key, lc] : nuis.censoring_hazard) {
        auto itk = nuis.censoring_survival.find(key);
        if (itk == nuis.censoring_survival.end() || !approx_equal(product_integral(lc), itk->second, nuis.tau, tol))
            return false;
    }
    for (const auto& [key, lt] : nuis.failure_hazard) {
        auto ith = nuis.failure_survival.find(key);
        if (ith == nuis.failure_survival.end() || !approx_equal(product_integral(lt), ith->second, nuis.tau, tol))
            return false;
    }
    return true;
}

std::vector<StratumKey> positivity_violations(const NuisanceSet& nuis, double eps) {
    std::vector<StratumKey> bad;
    for (const auto& [key, pi] : nuis.propensity) {
        if (pi < eps || nuis.censoring_survival_at(key.a, key.l).at(nuis.tau) < eps) bad.push_back(key);
    }
    return bad;
}

NuisanceSet floor_positivity(const NuisanceSet& nuis, double eps, bool* changed) {
    NuisanceSet out = nuis;
    bool moved = false;
    for (auto& [key, pi] : out.propensity) {
        if (pi < eps) {
            pi = eps;
            moved = true;
        } else if (pi > 1.0) {
            pi = 1.0;
            moved = true;
        }
    }
    for (auto& [key, K] : out.censoring_survival) {
        bool k_moved = false;
        std::vector<std::pair<Tick, double>> jumps;
        for (std::size_t i = 0; i < K.jump_ticks().size(); ++i) {
            double v = K.jump_values()[i];
            if (v < eps) {
                v = eps;
                k_moved = true;
            }
            jumps.emplace_back(K.jump_ticks()[i], v);
        }
        if (k_moved) {
            K = StepFn::from_jumps(1.0, std::move(jumps));
            out.censoring_hazard[key] = hazard_from_survival(K);
            moved = true;
        }
    }
    if (changed) *changed = moved;
    return out;
}

}  // namespace causalsurv
