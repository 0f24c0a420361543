#include "causalsurv/coarsening.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <tuple>

#include "causalsurv/numeric.hpp"
#include "causalsurv/rng.hpp"

namespace causalsurv {

double ObservedLaw::total_mass() const {
    CompensatedSum s;
    for (const auto& [r, p] : atoms) s.add(p);
    return s.value();
}

ObservedRecord observe(const FullAtom& full) {
    const Tick t = full.t(full.a);
    const Tick c = full.c(full.a);
    ObservedRecord obs;
    obs.l = full.l;
    obs.a = full.a;
    obs.delta = t <= c ? 1 : 0;  // a tie is a failure
    obs.x = std::min(t, c);
    return obs;
}

namespace {

ObservedLaw merge_records(std::map<ObservedRecord, CompensatedSum>&& mass) {
    ObservedLaw out;
    out.atoms.reserve(mass.size());
    for (auto& [record, sum] : mass) out.atoms.emplace_back(record, sum.value());
    return out;
}

}  // namespace

ObservedLaw push_forward(const FiniteLaw& law) {
    std::map<ObservedRecord, CompensatedSum> mass;
    for (const auto& atom : law.atoms) {
        if (atom.p <= 0.0) continue;
        mass[observe(atom)].add(atom.p);
    }
    return merge_records(std::move(mass));
}

ObservedLaw empirical_law(const std::vector<ObservedRecord>& sample) {
    if (sample.empty()) throw ConfigError("empirical_law: empty sample");
    const double w = 1.0 / static_cast<double>(sample.size());
    std::map<ObservedRecord, CompensatedSum> mass;
    for (const auto& r : sample) mass[r].add(w);
    return merge_records(std::move(mass));
}

std::vector<ObservedRecord> sample_records(const ObservedLaw& obs, std::size_t n,
                                           std::uint64_t seed) {
    if (obs.atoms.empty()) throw ConfigError("sample_records: empty observed law");
    Rng rng(seed);
    std::vector<ObservedRecord> out;
    out.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
        double u = rng.uniform();
        std::size_t pick = obs.atoms.size() - 1;
        for (std::size_t k = 0; k < obs.atoms.size(); ++k) {
            if (u < obs.atoms[k].second) {
                pick = k;
                break;
            }
            u -= obs.atoms[k].second;
        }
        out.push_back(obs.atoms[pick].first);
    }
    return out;
}

AtomPredicate fiber(const ObservedRecord& obs) {
    return [obs](const FullAtom& f) {
        if (f.l != obs.l) return false;
        const Tick t = f.t(obs.a);
        const Tick c = f.c(obs.a);
        if (obs.delta == 1) return t == obs.x && c >= obs.x;
        return t > obs.x && c == obs.x;
    };
}

bool fiber_contains_full_data(const ObservedRecord& obs, const std::string& l, Tick t0, Tick t1) {
    if (l != obs.l) return false;
    const Tick t = obs.a == 0 ? t0 : t1;
    return obs.delta == 1 ? t == obs.x : t > obs.x;
}

bool car_by_definition(const FiniteLaw& law, double tol) {
    using FullData = std::tuple<std::string, Tick, Tick>;  // (l, t0, t1)

    std::map<FullData, double> full_mass;
    std::map<FullData, std::map<ObservedRecord, double>> obs_given_full;
    std::map<ObservedRecord, double> obs_mass;
    for (const auto& atom : law.atoms) {
        if (atom.p <= 0.0) continue;
        FullData f{atom.l, atom.t0, atom.t1};
        const ObservedRecord o = observe(atom);
        full_mass[f] += atom.p;
        obs_given_full[f][o] += atom.p;
        obs_mass[o] += atom.p;
    }

    for (const auto& [o, po] : obs_mass) {
        bool have_ref = false;
        double ref = 0.0;
        for (const auto& [f, pf] : full_mass) {
            const auto& [l, t0, t1] = f;
            if (!fiber_contains_full_data(o, l, t0, t1)) continue;
            const auto& row = obs_given_full[f];
            auto it = row.find(o);
            const double density = (it == row.end() ? 0.0 : it->second) / pf;
            if (!have_ref) {
                ref = density;
                have_ref = true;
            } else if (std::abs(density - ref) > tol) {
                return false;
            }
        }
    }
    return true;
}

namespace {

// Both characterizations share treatment ignorability and per-arm conditions
// evaluated on the law conditioned to that arm.
bool arm_supported(const FiniteLaw& law, int a) {
    return probability(law, [a](const FullAtom& f) { return f.a == a; }) > 0.0;
}

}  // namespace

bool car_characterization(const FiniteLaw& law, double tol) {
    if (!cond_indep(law, {Coord::T0, Coord::T1}, {Coord::A}, {Coord::L}, nullptr, tol))
        return false;
    for (int a : {0, 1}) {
        if (!arm_supported(law, a)) continue;
        const FiniteLaw sub = condition(law, [a](const FullAtom& f) { return f.a == a; });
        const Coord ca = a == 0 ? Coord::C0 : Coord::C1;
        const Coord ta = a == 0 ? Coord::T0 : Coord::T1;
        const Coord t_other = a == 0 ? Coord::T1 : Coord::T0;
        const Coord dstar = a == 0 ? Coord::DeltaStar0 : Coord::DeltaStar1;
        const auto censored_first = [a](const FullAtom& f) { return f.c(a) < f.t(a); };
        if (!cond_indep(sub, {Coord::T0, Coord::T1}, {ca}, {Coord::L}, censored_first, tol,
                        RestrictionSemantics::WithinEventConstancy))
            return false;
        if (!cond_indep(sub, {t_other}, {dstar}, {Coord::L, ta}, nullptr, tol)) return false;
    }
    return true;
}

bool scar_characterization(const FiniteLaw& law, double tol) {
    if (!cond_indep(law, {Coord::T0, Coord::T1}, {Coord::A}, {Coord::L}, nullptr, tol))
        return false;
    for (int a : {0, 1}) {
        if (!arm_supported(law, a)) continue;
        const FiniteLaw sub = condition(law, [a](const FullAtom& f) { return f.a == a; });
        const Coord ca = a == 0 ? Coord::C0 : Coord::C1;
        const Coord ta = a == 0 ? Coord::T0 : Coord::T1;
        const auto censored_first = [a](const FullAtom& f) { return f.c(a) < f.t(a); };
        if (!cond_indep(sub, {ta}, {ca}, {Coord::L}, censored_first, tol,
                        RestrictionSemantics::EventFactorization))
            return false;
    }
    return true;
}

}  // namespace causalsurv
