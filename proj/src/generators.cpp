#include "causalsurv/generators.hpp"

#include <cmath>
#include <map>
#include <vector>

#include "causalsurv/coarsening.hpp"
#include "causalsurv/rng.hpp"

namespace causalsurv {

namespace {

void check_sizes(const GenSizes& sizes) {
    if (sizes.labels < 1 || sizes.grid < 2 || (sizes.arms != 1 && sizes.arms != 2))
        throw ConfigError("generator sizes: need labels >= 1, grid >= 2, arms in {1, 2}");
}

std::vector<std::string> label_alphabet(int n) {
    std::vector<std::string> out;
    for (int i = 0; i < n; ++i) out.push_back("l" + std::to_string(i));
    return out;
}

// strictly positive lattice weights normalized to a distribution
std::vector<double> random_simplex(Rng& rng, std::size_t n, int hi = 9) {
    std::vector<double> w(n);
    double total = 0.0;
    for (auto& x : w) {
        x = static_cast<double>(rng.uniform_int(1, hi));
        total += x;
    }
    for (auto& x : w) x /= total;
    return w;
}

std::vector<int> arms_of(const GenSizes& sizes) {
    return sizes.arms == 1 ? std::vector<int>{1} : std::vector<int>{0, 1};
}

LawDocument assemble(const GenSizes& sizes, Tick tau, std::vector<FullAtom> atoms) {
    LawDocument doc;
    doc.tau = tau;
    doc.law = make_law(std::move(atoms));
    (void)sizes;
    return doc;
}

}  // namespace

LawDocument gen_scar_law(std::uint64_t seed, const GenSizes& sizes) {
    check_sizes(sizes);
    Rng rng(split_seed(seed, 0x5ca8));
    const auto labels = label_alphabet(sizes.labels);
    const auto arms = arms_of(sizes);
    const Tick t_hi = sizes.grid - 1;  // failure grid 1..tau
    const Tick c_hi = sizes.grid;      // censoring support tops out past tau

    // Censoring support skips tau itself: failures cannot outlive tau, so a
    // censoring jump exactly at tau would be unobservable and the identified
    // K could not match it. Mass beyond tau keeps positivity instead.
    std::vector<Tick> c_support;
    for (Tick c = 1; c < t_hi; ++c) c_support.push_back(c);
    c_support.push_back(c_hi);

    const auto p_label = random_simplex(rng, labels.size());
    std::vector<FullAtom> atoms;
    for (std::size_t li = 0; li < labels.size(); ++li) {
        // propensity bounded away from 0 and 1
        const double pi1 =
            sizes.arms == 1 ? 1.0 : static_cast<double>(rng.uniform_int(2, 8)) / 10.0;
        // joint failure table (arbitrary dependence between the arms)
        std::vector<double> joint_t = random_simplex(rng, static_cast<std::size_t>(t_hi * t_hi));
        // censoring conditionals per (arm, censoring arm); the beyond-tau
        // point gets extra weight so K*(tau) stays bounded away from zero
        std::map<std::pair<int, int>, std::vector<double>> p_c;
        for (int a : arms) {
            for (int arm : {0, 1}) {
                std::vector<double> w(c_support.size());
                double total = 0.0;
                for (auto& x : w) {
                    x = static_cast<double>(rng.uniform_int(1, 9));
                    total += x;
                }
                w.back() = std::max(w.back(), total / 4.0);
                total = 0.0;
                for (double x : w) total += x;
                for (auto& x : w) x /= total;
                p_c[{a, arm}] = std::move(w);
            }
        }
        for (int a : arms) {
            const double pa = a == 1 ? pi1 : 1.0 - pi1;
            for (Tick t0 = 1; t0 <= t_hi; ++t0) {
                for (Tick t1 = 1; t1 <= t_hi; ++t1) {
                    const double pt =
                        joint_t[static_cast<std::size_t>((t0 - 1) * t_hi + (t1 - 1))];
                    for (std::size_t i0 = 0; i0 < c_support.size(); ++i0) {
                        for (std::size_t i1 = 0; i1 < c_support.size(); ++i1) {
                            const double p = p_label[li] * pa * pt * p_c[{a, 0}][i0] *
                                             p_c[{a, 1}][i1];
                            atoms.push_back(
                                {labels[li], a, t0, t1, c_support[i0], c_support[i1], p});
                        }
                    }
                }
            }
        }
    }
    return assemble(sizes, t_hi, std::move(atoms));
}

LawDocument gen_joint_random_law(std::uint64_t seed, const GenSizes& sizes) {
    check_sizes(sizes);
    Rng rng(split_seed(seed, 0x10c4));
    const auto labels = label_alphabet(sizes.labels);
    const auto arms = arms_of(sizes);
    const Tick t_hi = sizes.grid - 1;
    const Tick c_hi = sizes.grid;

    std::vector<FullAtom> proto;
    for (const auto& l : labels) {
        for (int a : arms) {
            for (Tick t0 = 1; t0 <= t_hi; ++t0)
                for (Tick t1 = 1; t1 <= t_hi; ++t1)
                    for (Tick c0 = 1; c0 <= c_hi; ++c0)
                        for (Tick c1 = 1; c1 <= c_hi; ++c1)
                            proto.push_back({l, a, t0, t1, c0, c1, 0.0});
        }
    }
    const auto mass = random_simplex(rng, proto.size(), 24);
    for (std::size_t i = 0; i < proto.size(); ++i) proto[i].p = mass[i];
    return assemble(sizes, t_hi, std::move(proto));
}

LawDocument gen_car_not_scar_candidate(std::uint64_t seed, const GenSizes& sizes) {
    check_sizes(sizes);
    Rng rng(split_seed(seed, 0xca6));
    const auto labels = label_alphabet(sizes.labels);
    const auto arms = arms_of(sizes);
    const Tick t_hi = sizes.grid - 1;
    const Tick c_hi = sizes.grid;

    const auto p_label = random_simplex(rng, labels.size());
    std::vector<FullAtom> atoms;
    for (std::size_t li = 0; li < labels.size(); ++li) {
        const double pi1 =
            sizes.arms == 1 ? 1.0 : static_cast<double>(rng.uniform_int(3, 7)) / 10.0;
        const auto joint_t = random_simplex(rng, static_cast<std::size_t>(t_hi * t_hi));

        // Censoring depends on the own-arm failure time only, and its density
        // below the failure time is a fixed sub-distribution g: constant on
        // the fiber (so CAR survives) yet different from the censoring
        // marginal (so sequential CAR breaks).
        struct ArmScheme {
            std::vector<double> g;                     // mass for c < t, scaled
            std::map<Tick, std::vector<double>> tail;  // remaining mass on c >= t
        };
        std::map<int, ArmScheme> scheme;  // by censoring arm
        for (int arm : {0, 1}) {
            ArmScheme s;
            s.g = random_simplex(rng, static_cast<std::size_t>(c_hi));
            const double scale = 0.3 + 0.3 * rng.uniform();
            for (auto& x : s.g) x *= scale;
            for (Tick t = 1; t <= t_hi; ++t) {
                double below = 0.0;
                for (Tick c = 1; c < t; ++c) below += s.g[static_cast<std::size_t>(c - 1)];
                auto tail = random_simplex(rng, static_cast<std::size_t>(c_hi - t + 1));
                for (auto& x : tail) x *= 1.0 - below;
                s.tail[t] = std::move(tail);
            }
            scheme[arm] = std::move(s);
        }
        auto p_c_given_t = [&](int arm, Tick c, Tick t) {
            const auto& s = scheme[arm];
            if (c < t) return s.g[static_cast<std::size_t>(c - 1)];
            return s.tail.at(t)[static_cast<std::size_t>(c - t)];
        };

        for (int a : arms) {
            const double pa = a == 1 ? pi1 : 1.0 - pi1;
            for (Tick t0 = 1; t0 <= t_hi; ++t0) {
                for (Tick t1 = 1; t1 <= t_hi; ++t1) {
                    const double pt =
                        joint_t[static_cast<std::size_t>((t0 - 1) * t_hi + (t1 - 1))];
                    for (Tick c0 = 1; c0 <= c_hi; ++c0) {
                        for (Tick c1 = 1; c1 <= c_hi; ++c1) {
                            const double p = p_label[li] * pa * pt * p_c_given_t(0, c0, t0) *
                                             p_c_given_t(1, c1, t1);
                            atoms.push_back({labels[li], a, t0, t1, c0, c1, p});
                        }
                    }
                }
            }
        }
    }
    return assemble(sizes, t_hi, std::move(atoms));
}

LawDocument gen_scar_not_car_candidate(std::uint64_t seed, const GenSizes& sizes) {
    check_sizes(sizes);
    Rng rng(split_seed(seed, 0x5c42));
    const auto labels = label_alphabet(sizes.labels);
    const auto arms = arms_of(sizes);
    const Tick t_hi = sizes.grid - 1;
    const Tick c_hi = sizes.grid;

    const auto p_label = random_simplex(rng, labels.size());
    std::vector<FullAtom> atoms;
    for (std::size_t li = 0; li < labels.size(); ++li) {
        const double pi1 =
            sizes.arms == 1 ? 1.0 : static_cast<double>(rng.uniform_int(3, 7)) / 10.0;
        // independent failure arms, so cross-arm censoring stays marginally
        // independent of the own-arm failure time
        const auto f0 = random_simplex(rng, static_cast<std::size_t>(t_hi));
        const auto f1 = random_simplex(rng, static_cast<std::size_t>(t_hi));
        // censoring for arm `arm` driven by the opposite arm's failure time
        std::map<std::pair<int, Tick>, std::vector<double>> q;
        for (int arm : {0, 1}) {
            for (Tick s = 1; s <= t_hi; ++s)
                q[{arm, s}] = random_simplex(rng, static_cast<std::size_t>(c_hi));
        }
        for (int a : arms) {
            const double pa = a == 1 ? pi1 : 1.0 - pi1;
            for (Tick t0 = 1; t0 <= t_hi; ++t0) {
                for (Tick t1 = 1; t1 <= t_hi; ++t1) {
                    const double pt = f0[static_cast<std::size_t>(t0 - 1)] *
                                      f1[static_cast<std::size_t>(t1 - 1)];
                    for (Tick c0 = 1; c0 <= c_hi; ++c0) {
                        for (Tick c1 = 1; c1 <= c_hi; ++c1) {
                            const double p = p_label[li] * pa * pt *
                                             q[{0, t1}][static_cast<std::size_t>(c0 - 1)] *
                                             q[{1, t0}][static_cast<std::size_t>(c1 - 1)];
                            atoms.push_back({labels[li], a, t0, t1, c0, c1, p});
                        }
                    }
                }
            }
        }
    }
    return assemble(sizes, t_hi, std::move(atoms));
}

std::optional<WitnessMode> witness_mode_from_name(const std::string& name) {
    if (name == "car-not-scar") return WitnessMode::CarNotScar;
    if (name == "scar-not-car") return WitnessMode::ScarNotCar;
    return std::nullopt;
}

const char* witness_mode_name(WitnessMode mode) {
    return mode == WitnessMode::CarNotScar ? "car-not-scar" : "scar-not-car";
}

std::optional<LawDocument> search_witness(WitnessMode mode, std::uint64_t seed, int budget,
                                          double tol) {
    const GenSizes sizes{2, 2, 3};  // binary covariate, small grid
    for (int attempt = 0; attempt < budget; ++attempt) {
        const std::uint64_t s = split_seed(seed, static_cast<std::uint64_t>(attempt));
        LawDocument candidate = mode == WitnessMode::CarNotScar
                                    ? gen_car_not_scar_candidate(s, sizes)
                                    : gen_scar_not_car_candidate(s, sizes);
        const bool car = car_characterization(candidate.law, tol);
        const bool scar = scar_characterization(candidate.law, tol);
        if (mode == WitnessMode::CarNotScar ? (car && !scar) : (scar && !car))
            return candidate;
    }
    return std::nullopt;
}

}  // namespace causalsurv
