#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "causalsurv/errors.hpp"

namespace causalsurv {

// integer grid time; tick 0 is the time origin, event times are >= 1
using Tick = std::int64_t;

// Coordinates of the joint full/coarsening tuple. DeltaStar0/1 are derived
// indicators I(t_a <= c_a), usable in independence queries but not stored.
enum class Coord { L, A, T0, T1, C0, C1, DeltaStar0, DeltaStar1 };

const char* coord_name(Coord c);

// One support point of the joint law over (L, A, T*_0, T*_1, C*_0, C*_1).
struct FullAtom {
    std::string l;
    int a = 0;
    Tick t0 = 1;
    Tick t1 = 1;
    Tick c0 = 1;
    Tick c1 = 1;
    double p = 0.0;

    Tick t(int arm) const { return arm == 0 ? t0 : t1; }
    Tick c(int arm) const { return arm == 0 ? c0 : c1; }
    int delta_star(int arm) const { return t(arm) <= c(arm) ? 1 : 0; }

    bool same_point(const FullAtom& o) const {
        return l == o.l && a == o.a && t0 == o.t0 && t1 == o.t1 && c0 == o.c0 && c1 == o.c1;
    }
};

struct FiniteLaw {
    std::vector<FullAtom> atoms;
    double mass_tolerance = 1e-12;

    double total_mass() const;
};

// Validates atom invariants (positive ticks, a in {0,1}, p >= 0, unique
// points) and total mass 1 within tolerance. Zero-mass atoms are retained.
FiniteLaw make_law(std::vector<FullAtom> atoms, double mass_tolerance = 1e-12);

// A law plus its serialization envelope (time unit label and horizon).
struct LawDocument {
    std::string time_unit = "ticks";
    Tick tau = 0;
    FiniteLaw law;
};

using AtomPredicate = std::function<bool(const FullAtom&)>;

// Projection of a law onto a coordinate subset. Label values are interned;
// `labels` decodes key entries for Coord::L.
struct MarginalLaw {
    std::vector<Coord> coords;
    std::vector<std::string> labels;
    struct Row {
        std::vector<std::int64_t> key;
        double p;
    };
    std::vector<Row> rows;  // sorted by key

    double mass_of(const std::vector<std::int64_t>& key) const;
};

// coords must be non-empty and drawn from the six stored coordinates.
MarginalLaw marginal(const FiniteLaw& law, const std::vector<Coord>& coords);

// Renormalized restriction of the law to `event`. Throws
// ZeroProbabilityEventError when the event has zero mass.
FiniteLaw condition(const FiniteLaw& law, const AtomPredicate& event);

double probability(const FiniteLaw& law, const AtomPredicate& event);

double expectation(const FiniteLaw& law, const std::function<double(const FullAtom&)>& f);

// Semantics of "X indep Y given Z on event E" over a finite law.
//
// WithinEventConstancy: for every z and y, the conditional density
//   [Y=y | X=x, Z=z] takes one value across all supported x with (x,y,z) in E.
//   This is the form the coarsening-at-random characterization manipulates.
// EventFactorization: P(X=x, Y=y | Z=z) = P(X=x | Z=z) P(Y=y | Z=z) for all
//   supported (x,y) with (x,y,z) in E. This is the form the censoring-hazard
//   identification argument consumes.
// Without a restriction the two coincide with ordinary conditional
// independence.
enum class RestrictionSemantics { WithinEventConstancy, EventFactorization };

// `restriction` (when present) must be measurable with respect to the
// coordinates in xs+ys+zs; it is evaluated on value assignments of those
// coordinates only. zs may be empty (unconditional independence).
bool cond_indep(const FiniteLaw& law, const std::vector<Coord>& xs, const std::vector<Coord>& ys,
                const std::vector<Coord>& zs, const AtomPredicate& restriction = nullptr,
                double tol = 1e-12,
                RestrictionSemantics semantics = RestrictionSemantics::WithinEventConstancy);

}  // namespace causalsurv
