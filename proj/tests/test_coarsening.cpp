#include <doctest.h>

#include "causalsurv/coarsening.hpp"
#include "causalsurv/fixtures.hpp"
#include "causalsurv/generators.hpp"

using namespace causalsurv;

namespace {

FiniteLaw product_law_small() {
    std::vector<FullAtom> atoms;
    for (int a : {0, 1}) {
        for (Tick t0 : {1, 2})
            for (Tick t1 : {1, 2})
                for (Tick c0 : {1, 2})
                    for (Tick c1 : {1, 2}) atoms.push_back({"l0", a, t0, t1, c0, c1, 1.0 / 32.0});
    }
    return make_law(std::move(atoms));
}

// censoring tracks the failure time one tick below it
FiniteLaw censoring_anticipates_failure_law() {
    return make_law({
        {"l0", 1, 2, 2, 1, 1, 0.5},
        {"l0", 1, 3, 3, 2, 2, 0.5},
    });
}

}  // namespace

TEST_CASE("observe selects the assigned arm and resolves ties to failure") {
    const ObservedRecord uncensored = observe({"l0", 1, 1, 2, 4, 4, 1.0});
    CHECK(uncensored == ObservedRecord{"l0", 1, 1, 2});

    const ObservedRecord tie = observe({"l0", 1, 1, 2, 4, 2, 1.0});
    CHECK(tie == ObservedRecord{"l0", 1, 1, 2});

    const ObservedRecord censored = observe({"l0", 0, 3, 2, 1, 4, 1.0});
    CHECK(censored == ObservedRecord{"l0", 0, 0, 1});
}

TEST_CASE("push_forward merges images and preserves mass") {
    const ObservedLaw w1 = push_forward(world_no_censoring().law);
    REQUIRE(w1.atoms.size() == 2);
    CHECK(w1.atoms[0].first == ObservedRecord{"l0", 0, 1, 1});
    CHECK(w1.atoms[0].second == doctest::Approx(0.5));
    CHECK(w1.atoms[1].first == ObservedRecord{"l0", 1, 1, 2});
    CHECK(w1.atoms[1].second == doctest::Approx(0.5));

    const ObservedLaw w3 = push_forward(world_all_ties().law);
    REQUIRE(w3.atoms.size() == 1);
    CHECK(w3.atoms[0].first == ObservedRecord{"l0", 1, 1, 2});
    CHECK(w3.atoms[0].second == doctest::Approx(1.0));

    const ObservedLaw point = push_forward(make_law({{"l0", 1, 1, 1, 2, 2, 1.0}}));
    REQUIRE(point.atoms.size() == 1);
    CHECK(point.atoms[0].second == doctest::Approx(1.0));

    for (std::uint64_t seed = 1; seed <= 10; ++seed) {
        const ObservedLaw obs = push_forward(gen_joint_random_law(seed, {2, 2, 4}).law);
        CHECK(obs.total_mass() == doctest::Approx(1.0).epsilon(1e-13));
    }
}

TEST_CASE("fiber constraints") {
    const auto in_failure_fiber = fiber({"l0", 1, 1, 2});
    CHECK(in_failure_fiber({"l0", 0, 7, 2, 9, 2, 0.0}));
    CHECK_FALSE(in_failure_fiber({"l0", 0, 7, 3, 9, 2, 0.0}));
    CHECK_FALSE(in_failure_fiber({"l1", 0, 7, 2, 9, 2, 0.0}));

    const auto in_censor_fiber = fiber({"l0", 1, 0, 2});
    CHECK_FALSE(in_censor_fiber({"l0", 1, 1, 2, 1, 2, 0.0}));  // t1 = x not allowed
    CHECK(in_censor_fiber({"l0", 1, 1, 3, 1, 2, 0.0}));

    // off-arm failure time is unconstrained
    const auto in_control_fiber = fiber({"l0", 0, 1, 3});
    for (Tick t1 : {1, 5, 9}) CHECK(in_control_fiber({"l0", 0, 3, t1, 4, 1, 0.0}));
}

TEST_CASE("fiber soundness and completeness on small supports") {
    for (std::uint64_t seed = 1; seed <= 5; ++seed) {
        const FiniteLaw law = gen_joint_random_law(seed, {2, 2, 3}).law;
        for (const auto& atom : law.atoms) {
            if (atom.p <= 0.0) continue;
            const ObservedRecord o = observe(atom);
            CHECK(fiber(o)(atom));
        }
        // completeness: accepted tuples with a consistent arm map back to o
        const ObservedLaw obs = push_forward(law);
        for (const auto& [o, p] : obs.atoms) {
            const auto accepts = fiber(o);
            for (FullAtom atom : law.atoms) {
                atom.a = o.a;
                if (accepts(atom)) CHECK(observe(atom) == o);
            }
        }
    }
}

TEST_CASE("car_by_definition by exact enumeration") {
    CHECK(car_by_definition(product_law_small()));
    CHECK_FALSE(car_by_definition(censoring_anticipates_failure_law()));
    CHECK(car_by_definition(world_uniform_censoring().law));
}

TEST_CASE("car and scar characterizations") {
    const FiniteLaw prod = product_law_small();
    CHECK(car_characterization(prod));
    CHECK(scar_characterization(prod));

    const FiniteLaw dep = make_law({{"l0", 0, 1, 1, 3, 3, 0.5}, {"l0", 1, 1, 2, 3, 3, 0.5}});
    CHECK_FALSE(car_characterization(dep));  // t1 follows a

    CHECK(scar_characterization(world_uniform_censoring().law));
    CHECK_FALSE(scar_characterization(censoring_anticipates_failure_law()));
    CHECK_FALSE(car_characterization(censoring_anticipates_failure_law()));
}

TEST_CASE("scar generator output is sequentially coarsened at random") {
    for (std::uint64_t seed = 1; seed <= 10; ++seed) {
        const LawDocument doc = gen_scar_law(seed, {2, 2, 4});
        CHECK(scar_characterization(doc.law));
        CHECK(doc.law.total_mass() == doctest::Approx(1.0).epsilon(1e-12));
        CHECK(doc.law.atoms.size() <= 2 * 2 * 4 * 4 * 4 * 4);
    }
    // deterministic per seed
    const LawDocument a = gen_scar_law(7, {2, 2, 4});
    const LawDocument b = gen_scar_law(7, {2, 2, 4});
    REQUIRE(a.law.atoms.size() == b.law.atoms.size());
    for (std::size_t i = 0; i < a.law.atoms.size(); ++i) {
        CHECK(a.law.atoms[i].same_point(b.law.atoms[i]));
        CHECK(a.law.atoms[i].p == b.law.atoms[i].p);
    }
}

TEST_CASE("witness search separates the two coarsening notions") {
    CHECK_FALSE(search_witness(WitnessMode::ScarNotCar, 1, 0).has_value());

    const auto scar_only = search_witness(WitnessMode::ScarNotCar, 11, 50);
    REQUIRE(scar_only.has_value());
    CHECK(scar_characterization(scar_only->law));
    CHECK_FALSE(car_characterization(scar_only->law));
    CHECK_FALSE(car_by_definition(scar_only->law));

    const auto car_only = search_witness(WitnessMode::CarNotScar, 11, 50);
    REQUIRE(car_only.has_value());
    CHECK(car_characterization(car_only->law));
    CHECK(car_by_definition(car_only->law));
    CHECK_FALSE(scar_characterization(car_only->law));
}

TEST_CASE("characterization matches the density-level definition") {
    int checked = 0;
    for (std::uint64_t seed = 1; seed <= 12; ++seed) {
        for (const LawDocument& doc :
             {gen_scar_law(seed, {2, 2, 3}), gen_joint_random_law(seed, {2, 2, 3}),
              gen_car_not_scar_candidate(seed, {2, 2, 3}),
              gen_scar_not_car_candidate(seed, {2, 2, 3})}) {
            CHECK(car_by_definition(doc.law) == car_characterization(doc.law));
            ++checked;
        }
    }
    CHECK(checked == 48);
}
