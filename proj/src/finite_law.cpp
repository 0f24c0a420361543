#include "causalsurv/finite_law.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <sstream>

#include "causalsurv/numeric.hpp"

namespace causalsurv {

const char* coord_name(Coord c) {
    switch (c) {
        case Coord::L: return "l";
        case Coord::A: return "a";
        case Coord::T0: return "t0";
        case Coord::T1: return "t1";
        case Coord::C0: return "c0";
        case Coord::C1: return "c1";
        case Coord::DeltaStar0: return "delta_star0";
        case Coord::DeltaStar1: return "delta_star1";
    }
    return "?";
}

double FiniteLaw::total_mass() const {
    CompensatedSum s;
    for (const auto& atom : atoms) s.add(atom.p);
    return s.value();
}

FiniteLaw make_law(std::vector<FullAtom> atoms, double mass_tolerance) {
    if (atoms.empty()) throw InvalidAtomError("make_law: empty atom list");

    std::set<std::tuple<std::string, int, Tick, Tick, Tick, Tick>> seen;
    CompensatedSum mass;
    for (const auto& atom : atoms) {
        if (atom.a != 0 && atom.a != 1)
            throw InvalidAtomError("make_law: treatment must be 0 or 1");
        if (atom.t0 <= 0 || atom.t1 <= 0 || atom.c0 <= 0 || atom.c1 <= 0)
            throw InvalidAtomError("make_law: time coordinates must be strictly positive ticks");
        if (atom.p < 0.0) throw MassError("make_law: negative probability mass");
        auto key = std::make_tuple(atom.l, atom.a, atom.t0, atom.t1, atom.c0, atom.c1);
        if (!seen.insert(key).second) {
            std::ostringstream os;
            os << "make_law: duplicate atom (" << atom.l << "," << atom.a << "," << atom.t0 << ","
               << atom.t1 << "," << atom.c0 << "," << atom.c1 << ")";
            throw DuplicateAtomError(os.str());
        }
        mass.add(atom.p);
    }
    if (std::abs(mass.value() - 1.0) > mass_tolerance) {
        std::ostringstream os;
        os << "make_law: total mass " << mass.value() << " deviates from 1 beyond tolerance "
           << mass_tolerance;
        throw MassError(os.str());
    }
    FiniteLaw law;
    law.atoms = std::move(atoms);
    law.mass_tolerance = mass_tolerance;
    return law;
}

namespace {

bool is_stored_coord(Coord c) {
    return c == Coord::L || c == Coord::A || c == Coord::T0 || c == Coord::T1 || c == Coord::C0 ||
           c == Coord::C1;
}

std::vector<std::string> sorted_labels(const FiniteLaw& law) {
    std::set<std::string> labels;
    for (const auto& atom : law.atoms) labels.insert(atom.l);
    return {labels.begin(), labels.end()};
}

std::int64_t label_index(const std::vector<std::string>& labels, const std::string& l) {
    auto it = std::lower_bound(labels.begin(), labels.end(), l);
    return static_cast<std::int64_t>(it - labels.begin());
}

std::int64_t coord_value(const FullAtom& atom, Coord c, const std::vector<std::string>& labels) {
    switch (c) {
        case Coord::L: return label_index(labels, atom.l);
        case Coord::A: return atom.a;
        case Coord::T0: return atom.t0;
        case Coord::T1: return atom.t1;
        case Coord::C0: return atom.c0;
        case Coord::C1: return atom.c1;
        case Coord::DeltaStar0: return atom.delta_star(0);
        case Coord::DeltaStar1: return atom.delta_star(1);
    }
    return 0;
}

using Key = std::vector<std::int64_t>;

Key project(const FullAtom& atom, const std::vector<Coord>& coords,
            const std::vector<std::string>& labels) {
    Key key;
    key.reserve(coords.size());
    for (Coord c : coords) key.push_back(coord_value(atom, c, labels));
    return key;
}

// assigns key values of stored coordinates back into a representative atom
void assign(FullAtom& atom, const std::vector<Coord>& coords, const Key& key,
            const std::vector<std::string>& labels) {
    for (std::size_t i = 0; i < coords.size(); ++i) {
        switch (coords[i]) {
            case Coord::L: atom.l = labels[static_cast<std::size_t>(key[i])]; break;
            case Coord::A: atom.a = static_cast<int>(key[i]); break;
            case Coord::T0: atom.t0 = key[i]; break;
            case Coord::T1: atom.t1 = key[i]; break;
            case Coord::C0: atom.c0 = key[i]; break;
            case Coord::C1: atom.c1 = key[i]; break;
            default: break;
        }
    }
}

}  // namespace

double MarginalLaw::mass_of(const std::vector<std::int64_t>& key) const {
    for (const auto& row : rows) {
        if (row.key == key) return row.p;
    }
    return 0.0;
}

MarginalLaw marginal(const FiniteLaw& law, const std::vector<Coord>& coords) {
    if (coords.empty()) throw ConfigError("marginal: coordinate subset must be non-empty");
    for (Coord c : coords) {
        if (!is_stored_coord(c))
            throw ConfigError(std::string("marginal: derived coordinate ") + coord_name(c) +
                              " cannot be marginalized over");
    }
    MarginalLaw out;
    out.coords = coords;
    out.labels = sorted_labels(law);

    std::map<Key, CompensatedSum> mass;
    for (const auto& atom : law.atoms) mass[project(atom, coords, out.labels)].add(atom.p);
    for (const auto& [key, sum] : mass) out.rows.push_back({key, sum.value()});
    return out;
}

double probability(const FiniteLaw& law, const AtomPredicate& event) {
    CompensatedSum s;
    for (const auto& atom : law.atoms) {
        if (event(atom)) s.add(atom.p);
    }
    return s.value();
}

FiniteLaw condition(const FiniteLaw& law, const AtomPredicate& event) {
    const double mass = probability(law, event);
    if (mass <= 0.0)
        throw ZeroProbabilityEventError("condition: event has zero probability");
    FiniteLaw out;
    out.mass_tolerance = law.mass_tolerance;
    for (const auto& atom : law.atoms) {
        if (!event(atom)) continue;
        FullAtom scaled = atom;
        scaled.p = atom.p / mass;
        out.atoms.push_back(std::move(scaled));
    }
    return out;
}

double expectation(const FiniteLaw& law, const std::function<double(const FullAtom&)>& f) {
    CompensatedSum s;
    for (const auto& atom : law.atoms) s.add(atom.p * f(atom));
    return s.value();
}

bool cond_indep(const FiniteLaw& law, const std::vector<Coord>& xs, const std::vector<Coord>& ys,
                const std::vector<Coord>& zs, const AtomPredicate& restriction, double tol,
                RestrictionSemantics semantics) {
    if (xs.empty() || ys.empty()) throw ConfigError("cond_indep: X and Y must be non-empty");
    if (restriction) {
        for (const auto* coords : {&xs, &ys, &zs}) {
            for (Coord c : *coords) {
                if (!is_stored_coord(c))
                    throw ConfigError(
                        "cond_indep: restrictions are unsupported with derived coordinates");
            }
        }
    }

    const auto labels = sorted_labels(law);

    // positive-mass cells only; zero-mass atoms are support bookkeeping
    std::map<Key, double> z_mass;
    std::map<Key, std::map<Key, double>> xz_mass;  // z -> x -> mass
    std::map<Key, std::map<Key, double>> yz_mass;  // z -> y -> mass
    std::map<Key, std::map<std::pair<Key, Key>, double>> xyz_mass;
    for (const auto& atom : law.atoms) {
        if (atom.p <= 0.0) continue;
        Key kz = project(atom, zs, labels);
        Key kx = project(atom, xs, labels);
        Key ky = project(atom, ys, labels);
        z_mass[kz] += atom.p;
        xz_mass[kz][kx] += atom.p;
        yz_mass[kz][ky] += atom.p;
        xyz_mass[kz][{kx, ky}] += atom.p;
    }
    if (z_mass.empty())
        throw ZeroProbabilityEventError("cond_indep: law carries no positive mass");

    auto in_event = [&](const Key& kx, const Key& ky, const Key& kz) {
        if (!restriction) return true;
        FullAtom rep;  // representative assignment of the covered coordinates
        assign(rep, zs, kz, labels);
        assign(rep, xs, kx, labels);
        assign(rep, ys, ky, labels);
        return restriction(rep);
    };

    for (const auto& [kz, pz] : z_mass) {
        const auto& xm = xz_mass[kz];
        const auto& ym = yz_mass[kz];
        const auto& xym = xyz_mass[kz];
        auto joint = [&](const Key& kx, const Key& ky) {
            auto it = xym.find({kx, ky});
            return it == xym.end() ? 0.0 : it->second;
        };

        if (semantics == RestrictionSemantics::WithinEventConstancy) {
            // [Y=y | X=x, Z=z] constant over supported x inside the event
            for (const auto& [ky, py] : ym) {
                bool have_ref = false;
                double ref = 0.0;
                for (const auto& [kx, px] : xm) {
                    if (!in_event(kx, ky, kz)) continue;
                    const double r = joint(kx, ky) / px;
                    if (!have_ref) {
                        ref = r;
                        have_ref = true;
                    } else if (std::abs(r - ref) > tol) {
                        return false;
                    }
                }
            }
        } else {
            // P(x, y | z) = P(x | z) P(y | z) on the event
            for (const auto& [kx, px] : xm) {
                for (const auto& [ky, py] : ym) {
                    if (!in_event(kx, ky, kz)) continue;
                    const double lhs = joint(kx, ky) / pz;
                    const double rhs = (px / pz) * (py / pz);
                    if (std::abs(lhs - rhs) > tol) return false;
                }
            }
        }
    }
    return true;
}

}  // namespace causalsurv
