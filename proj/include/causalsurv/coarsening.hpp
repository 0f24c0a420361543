#pragma once

#include <functional>
#include <string>
#include <vector>

#include "causalsurv/finite_law.hpp"

namespace causalsurv {

// One observation (L, A, Delta, X) produced by the observed-data mapping.
struct ObservedRecord {
    std::string l;
    int a = 0;
    int delta = 0;
    Tick x = 1;

    friend bool operator==(const ObservedRecord&, const ObservedRecord&) = default;
    friend auto operator<=>(const ObservedRecord&, const ObservedRecord&) = default;
};

struct ObservedLaw {
    // unique records in canonical (l, a, delta, x) order
    std::vector<std::pair<ObservedRecord, double>> atoms;

    double total_mass() const;
};

// Delta = I(t_a <= c_a), X = min(t_a, c_a); a tie is observed as a failure.
ObservedRecord observe(const FullAtom& full);

// Image law of observe; coinciding images merged, mass preserved.
ObservedLaw push_forward(const FiniteLaw& law);

// Empirical law of a sample (equal weights, duplicates merged).
ObservedLaw empirical_law(const std::vector<ObservedRecord>& sample);

// n i.i.d. draws by inverse-CDF over the atom list in its stored order;
// deterministic per seed and stable across platforms.
std::vector<ObservedRecord> sample_records(const ObservedLaw& obs, std::size_t n,
                                           std::uint64_t seed);

// Predicate over full tuples selecting exactly those consistent with obs:
// l matches; t_a = x (delta=1) or t_a > x (delta=0); c_a >= x (delta=1) or
// c_a = x (delta=0); the off-arm coordinates and the atom's own a are free.
AtomPredicate fiber(const ObservedRecord& obs);

// Membership of a full-data point (l, t0, t1) in the fiber of obs; the
// coarsening coordinates are integrated out at this granularity.
bool fiber_contains_full_data(const ObservedRecord& obs, const std::string& l, Tick t0, Tick t1);

// Density-level coarsening-at-random: for every supported observed value, the
// conditional density of the observation given the full data (L, T*_0, T*_1)
// is constant across supported full-data points in its fiber. Computed by
// exact enumeration.
bool car_by_definition(const FiniteLaw& law, double tol = 1e-12);

// The three-condition characterization of CAR: (i) (T*_0,T*_1) indep A | L;
// (ii) per arm, (T*_0,T*_1) indep C*_a | L on {c_a < t_a} given A=a, in the
// within-event-constancy sense; (iii) per arm, T*_{1-a} indep Delta*_a given
// (A=a, L, T*_a).
bool car_characterization(const FiniteLaw& law, double tol = 1e-12);

// The two-condition characterization of sequential CAR: (i) as above;
// (ii) per arm, T*_a indep C*_a | L on {c_a < t_a} given A=a, in the
// event-factorization sense.
bool scar_characterization(const FiniteLaw& law, double tol = 1e-12);

}  // namespace causalsurv
